#include "rumorgame/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "rumorgame/errors.hpp"
#include "rumorgame/format.hpp"

namespace rumorgame {

namespace {

constexpr double kCornerSnap = 1e-12;

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

std::optional<GameState> snapped_corner(const GameState& s) {
  const double cp = std::round(s.p);
  const double cq = std::round(s.q);
  if (std::abs(s.p - cp) <= kCornerSnap && std::abs(s.q - cq) <= kCornerSnap) {
    return GameState{cp, cq};
  }
  return std::nullopt;
}

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

Range range_of(const std::vector<double>& xs) {
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  return {*lo, *hi};
}

// True when the normalised autocorrelation, after first dropping below zero,
// climbs back above `threshold` at some lag up to half the series. Smooth
// series have autocorrelation near 1 at small lags whether or not they
// recur, so only peaks past the first zero crossing count.
bool has_recurrence(const std::vector<double>& xs, double threshold) {
  const std::size_t n = xs.size();
  if (n < 4) return false;
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
  std::vector<double> centred(n);
  std::transform(xs.begin(), xs.end(), centred.begin(), [mean](double x) { return x - mean; });
  const double denom = std::inner_product(centred.begin(), centred.end(), centred.begin(), 0.0);
  if (!(denom > 0.0)) return false;

  bool crossed = false;
  for (std::size_t lag = 1; lag <= n / 2; ++lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) acc += centred[i] * centred[i + lag];
    const double rho = acc / denom;
    if (!crossed) {
      crossed = rho < 0.0;
    } else if (rho > threshold) {
      return true;
    }
  }
  return false;
}

// strtod rather than std::stod: the latter rejects subnormal values.
bool parse_double(const std::string& text, double& out) {
  if (text.empty()) return false;
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return end == text.c_str() + text.size();
}

}  // namespace

void validate(const IntegratorConfig& cfg) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw DomainError("dt must be positive");
  if (!(cfg.horizon >= 10.0 * cfg.dt) || !std::isfinite(cfg.horizon)) {
    throw DomainError("horizon must be at least 10 * dt");
  }
  if (cfg.record_stride < 1) throw DomainError("record_stride must be >= 1");
}

const char* to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::PureStable: return "PureStable";
    case OutcomeKind::HybridStable: return "HybridStable";
    case OutcomeKind::Oscillation: return "Oscillation";
    case OutcomeKind::NonConvergent: return "NonConvergent";
  }
  return "NonConvergent";
}

GameState corner_point(int corner) {
  switch (corner) {
    case 1: return {0.0, 0.0};
    case 2: return {0.0, 1.0};
    case 3: return {1.0, 0.0};
    case 4: return {1.0, 1.0};
    default: throw DomainError("corner index must be 1..4");
  }
}

Trajectory integrate(const GameState& initial, const EmotionProfile& profile,
                     const PayoffMatrix& m, const IntegratorConfig& cfg) {
  validate(initial);
  validate(cfg);

  const long long steps = std::llround(cfg.horizon / cfg.dt);
  const double dt = cfg.dt;
  const double r1 = profile.netizen.value();
  const double r2 = profile.government.value();
  const PayoffValues& v = m.values();

  Trajectory traj;
  traj.samples.reserve(static_cast<std::size_t>(steps / cfg.record_stride + 2));

  const auto record = [&](long long k, double p, double q) {
    traj.samples.push_back({static_cast<double>(k) * dt, p, q});
  };
  const auto due = [&](long long k) { return k % cfg.record_stride == 0 || k == steps; };

  if (const auto corner = snapped_corner(initial)) {
    for (long long k = 0; k <= steps; ++k) {
      if (due(k)) record(k, corner->p, corner->q);
    }
    return traj;
  }

  double p = initial.p;
  double q = initial.q;
  record(0, p, q);
  for (long long k = 1; k <= steps; ++k) {
    // Stage points are projected as well: the field is only defined on the
    // square (fractional powers of negative bases).
    const Drift k1 = detail::drift_unchecked(p, q, r1, r2, v);
    const Drift k2 = detail::drift_unchecked(clamp01(p + 0.5 * dt * k1.dp),
                                             clamp01(q + 0.5 * dt * k1.dq), r1, r2, v);
    const Drift k3 = detail::drift_unchecked(clamp01(p + 0.5 * dt * k2.dp),
                                             clamp01(q + 0.5 * dt * k2.dq), r1, r2, v);
    const Drift k4 = detail::drift_unchecked(clamp01(p + dt * k3.dp), clamp01(q + dt * k3.dq),
                                             r1, r2, v);
    const double np = p + dt / 6.0 * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);
    const double nq = q + dt / 6.0 * (k1.dq + 2.0 * k2.dq + 2.0 * k3.dq + k4.dq);
    if (!std::isfinite(np) || !std::isfinite(nq)) {
      std::ostringstream msg;
      msg << "non-finite state at t=" << static_cast<double>(k) * dt << " (r1=" << r1
          << ", r2=" << r2 << ")";
      throw NumericError(msg.str());
    }
    p = clamp01(np);
    q = clamp01(nq);
    if (due(k)) record(k, p, q);
  }
  return traj;
}

OutcomeClass classify_outcome(const Trajectory& traj, const ClassifyOptions& opts) {
  const std::size_t n = traj.samples.size();
  if (n < kMinClassifySamples) {
    throw InsufficientDataError("classification needs at least " +
                                std::to_string(kMinClassifySamples) + " samples, got " +
                                std::to_string(n));
  }
  const auto tail_len = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(opts.tail_fraction * static_cast<double>(n))), 2, n);
  const std::size_t tail_start = n - tail_len;

  std::vector<double> tail_p;
  std::vector<double> tail_q;
  tail_p.reserve(tail_len);
  tail_q.reserve(tail_len);
  for (std::size_t i = tail_start; i < n; ++i) {
    tail_p.push_back(traj.samples[i].p);
    tail_q.push_back(traj.samples[i].q);
  }
  const Range rp = range_of(tail_p);
  const Range rq = range_of(tail_q);

  OutcomeClass out;
  if (std::max(rp.width(), rq.width()) < opts.conv_tol) {
    const double mp = std::accumulate(tail_p.begin(), tail_p.end(), 0.0) / tail_len;
    const double mq = std::accumulate(tail_q.begin(), tail_q.end(), 0.0) / tail_len;
    out.kind = OutcomeKind::HybridStable;
    out.point = {mp, mq};
    for (int c = 1; c <= 4; ++c) {
      const GameState v = corner_point(c);
      if (std::hypot(mp - v.p, mq - v.q) <= opts.corner_tol) {
        out.kind = OutcomeKind::PureStable;
        out.corner = c;
        out.point = v;
        break;
      }
    }

    // Earliest sample from which the remaining variation stays below conv_tol.
    double lo_p = traj.samples[n - 1].p, hi_p = lo_p;
    double lo_q = traj.samples[n - 1].q, hi_q = lo_q;
    std::size_t first = n - 1;
    for (std::size_t i = n; i-- > 0;) {
      const Sample& s = traj.samples[i];
      lo_p = std::min(lo_p, s.p);
      hi_p = std::max(hi_p, s.p);
      lo_q = std::min(lo_q, s.q);
      hi_q = std::max(hi_q, s.q);
      if (hi_p - lo_p >= opts.conv_tol || hi_q - lo_q >= opts.conv_tol) break;
      first = i;
    }
    out.convergence_time = traj.samples[first].t;
    return out;
  }

  const bool recurrent = rp.width() > 0.0 ? has_recurrence(tail_p, opts.recurrence_threshold)
                                          : has_recurrence(tail_q, opts.recurrence_threshold);
  if (recurrent) {
    out.kind = OutcomeKind::Oscillation;
    out.p_band = {rp.lo, rp.hi};
    out.q_band = {rq.lo, rq.hi};
  } else {
    out.kind = OutcomeKind::NonConvergent;
  }
  return out;
}

std::string describe(const OutcomeClass& o) {
  const auto pt = [](double a, double b) { return "(" + format_sig9(a) + "," + format_sig9(b) + ")"; };
  switch (o.kind) {
    case OutcomeKind::PureStable: return "corner " + pt(o.point.p, o.point.q);
    case OutcomeKind::HybridStable: return "point " + pt(o.point.p, o.point.q);
    case OutcomeKind::Oscillation:
      return "p in [" + format_sig9(o.p_band.lo) + ";" + format_sig9(o.p_band.hi) + "] q in [" +
             format_sig9(o.q_band.lo) + ";" + format_sig9(o.q_band.hi) + "]";
    case OutcomeKind::NonConvergent: return "no convergence";
  }
  return "";
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,p,q\n";
  for (const auto& s : traj.samples) {
    out << format_sig9(s.t) << ',' << format_sig9(s.p) << ',' << format_sig9(s.q) << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "t,p,q") {
    throw DomainError("trajectory CSV must start with header t,p,q");
  }
  Trajectory traj;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b, c;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c)) {
      throw DomainError("malformed trajectory CSV row at line " + std::to_string(line_no));
    }
    double t = 0.0, p = 0.0, q = 0.0;
    if (!parse_double(a, t) || !parse_double(b, p) || !parse_double(c, q)) {
      throw DomainError("malformed number in trajectory CSV at line " + std::to_string(line_no));
    }
    traj.samples.push_back({t, p, q});
  }
  return traj;
}

Trajectory quantized(const Trajectory& traj) {
  Trajectory out;
  out.samples.reserve(traj.samples.size());
  for (const auto& s : traj.samples) {
    out.samples.push_back({round_sig9(s.t), round_sig9(s.p), round_sig9(s.q)});
  }
  return out;
}

}  // namespace rumorgame
