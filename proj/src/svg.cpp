#include "rumorgame/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace rumorgame::svg {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 420;
constexpr int kLeft = 60;
constexpr int kRight = 20;
constexpr int kTop = 40;
constexpr int kBottom = 50;

constexpr const char* kColourP = "#d62728";
constexpr const char* kColourQ = "#1f77b4";

std::string fixed(double x, int digits = 2) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;

  double px(double x) const {
    const double w = kWidth - kLeft - kRight;
    return kLeft + (x1 > x0 ? (x - x0) / (x1 - x0) : 0.0) * w;
  }
  double py(double y) const {
    const double h = kHeight - kTop - kBottom;
    return kTop + h - (y1 > y0 ? (y - y0) / (y1 - y0) : 0.0) * h;
  }
};

void open(std::ostringstream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(title) << "</text>\n";
}

void axes(std::ostringstream& out, const Frame& f, const std::string& xlabel,
          const std::string& ylabel, int xticks, int yticks) {
  out << "<g stroke=\"black\" fill=\"none\">\n"
      << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight
      << "\" height=\"" << kHeight - kTop - kBottom << "\"/>\n</g>\n";
  for (int i = 0; i <= xticks; ++i) {
    const double x = f.x0 + (f.x1 - f.x0) * i / xticks;
    const double px = f.px(x);
    out << "<line x1=\"" << fixed(px) << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << fixed(px)
        << "\" y2=\"" << kHeight - kBottom + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fixed(px) << "\" y=\"" << kHeight - kBottom + 18
        << "\" text-anchor=\"middle\">" << fixed(x, 1) << "</text>\n";
  }
  for (int i = 0; i <= yticks; ++i) {
    const double y = f.y0 + (f.y1 - f.y0) * i / yticks;
    const double py = f.py(y);
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fixed(py) << "\" x2=\"" << kLeft
        << "\" y2=\"" << fixed(py) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << kLeft - 8 << "\" y=\"" << fixed(py + 4) << "\" text-anchor=\"end\">"
        << fixed(y, 1) << "</text>\n";
  }
  out << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\">" << escape(xlabel) << "</text>\n"
      << "<text x=\"16\" y=\"" << (kTop + kHeight - kBottom) / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << (kTop + kHeight - kBottom) / 2
      << ")\">" << escape(ylabel) << "</text>\n";
}

void polyline(std::ostringstream& out, const Frame& f, const Trajectory& traj, bool phase_plot,
              bool use_q, const char* colour) {
  out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
  for (const auto& s : traj.samples) {
    const double x = phase_plot ? s.p : s.t;
    const double y = phase_plot ? s.q : (use_q ? s.q : s.p);
    out << fixed(f.px(x)) << ',' << fixed(f.py(y)) << ' ';
  }
  out << "\"/>\n";
}

void legend_entry(std::ostringstream& out, int row, const char* colour, const std::string& label) {
  const int x = kWidth - kRight - 110;
  const int y = kTop + 14 + 18 * row;
  out << "<rect x=\"" << x << "\" y=\"" << y - 9 << "\" width=\"12\" height=\"12\" fill=\"" << colour
      << "\"/>\n<text x=\"" << x + 18 << "\" y=\"" << y + 1 << "\">" << escape(label) << "</text>\n";
}

const char* regime_colour(Regime r) {
  switch (r) {
    case Regime::Risk: return "#ff7f0e";
    case Regime::Opportunity: return "#9467bd";
    case Regime::Ideal: return "#2ca02c";
    case Regime::Security: return "#1f77b4";
    case Regime::Opposition: return "#d62728";
  }
  return "#7f7f7f";
}

}  // namespace

std::string timeseries(const Trajectory& traj, const std::string& title) {
  const double t_end = traj.samples.empty() ? 1.0 : traj.samples.back().t;
  const Frame f{0.0, t_end, 0.0, 1.0};
  std::ostringstream out;
  open(out, title);
  axes(out, f, "t", "probability", 10, 10);
  polyline(out, f, traj, false, false, kColourP);
  polyline(out, f, traj, false, true, kColourQ);
  legend_entry(out, 0, kColourP, "p (spread)");
  legend_entry(out, 1, kColourQ, "q (monitor)");
  out << "</svg>\n";
  return out.str();
}

std::string phase(const Trajectory& traj, const std::string& title) {
  const Frame f{0.0, 1.0, 0.0, 1.0};
  std::ostringstream out;
  open(out, title);
  axes(out, f, "p", "q", 10, 10);
  polyline(out, f, traj, true, true, kColourQ);
  if (!traj.samples.empty()) {
    const auto& s = traj.samples.front();
    out << "<circle cx=\"" << fixed(f.px(s.p)) << "\" cy=\"" << fixed(f.py(s.q))
        << "\" r=\"4\" fill=\"" << kColourP << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string regime_heatmap(const SweepGrid& grid, const std::string& title) {
  const auto [r1_lo, r1_hi] = std::minmax_element(grid.r1_values.begin(), grid.r1_values.end());
  const auto [r2_lo, r2_hi] = std::minmax_element(grid.r2_values.begin(), grid.r2_values.end());
  const std::size_t n1 = grid.r1_values.size();
  const std::size_t n2 = grid.r2_values.size();
  const double w = static_cast<double>(kWidth - kLeft - kRight - 130) / static_cast<double>(n1);
  const double h = static_cast<double>(kHeight - kTop - kBottom) / static_cast<double>(n2);

  std::ostringstream out;
  open(out, title);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      const SweepCell& cell = grid.at(i, j);
      const char* colour = "#bbbbbb";
      std::string tip = "r1=" + fixed(cell.r1) + " r2=" + fixed(cell.r2) + ": ";
      if (cell.outcome) {
        const RegimeLabel label = regime_label(cell.r1, cell.r2, *cell.outcome);
        colour = regime_colour(label.label);
        tip += to_string(label.label);
      } else {
        tip += "error";
      }
      const double x = kLeft + w * static_cast<double>(i);
      const double y = kTop + h * static_cast<double>(n2 - 1 - j);
      out << "<rect x=\"" << fixed(x) << "\" y=\"" << fixed(y) << "\" width=\"" << fixed(w)
          << "\" height=\"" << fixed(h) << "\" fill=\"" << colour << "\" stroke=\"white\"><title>"
          << escape(tip) << "</title></rect>\n";
    }
  }
  out << "<text x=\"" << kLeft << "\" y=\"" << kHeight - 28 << "\">r1 " << fixed(*r1_lo) << " .. "
      << fixed(*r1_hi) << " (left to right)</text>\n"
      << "<text x=\"" << kLeft << "\" y=\"" << kHeight - 12 << "\">r2 " << fixed(*r2_lo) << " .. "
      << fixed(*r2_hi) << " (bottom to top)</text>\n";
  int row = 0;
  for (Regime r : {Regime::Risk, Regime::Opportunity, Regime::Ideal, Regime::Security,
                   Regime::Opposition}) {
    legend_entry(out, row++, regime_colour(r), to_string(r));
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace rumorgame::svg
