#include "rumorgame/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "rumorgame/errors.hpp"

namespace rumorgame {

namespace {

OutcomeClass run_one(double r1, double r2, const GameState& initial, const PayoffMatrix& m,
                     const IntegratorConfig& cfg, const ClassifyOptions& classify) {
  return classify_outcome(integrate(initial, EmotionProfile(r1, r2), m, cfg), classify);
}

bool converged(const OutcomeClass& o) {
  return o.kind == OutcomeKind::PureStable || o.kind == OutcomeKind::HybridStable;
}

}  // namespace

SweepGrid sweep_grid(const std::vector<double>& r1_values, const std::vector<double>& r2_values,
                     const GameState& initial, const PayoffMatrix& m,
                     const IntegratorConfig& cfg, const SweepOptions& opts) {
  if (r1_values.empty() || r2_values.empty()) throw DomainError("sweep value lists must be non-empty");
  for (const auto* list : {&r1_values, &r2_values}) {
    for (double r : *list) {
      if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("sweep values must be positive");
    }
  }
  validate(initial);
  validate(cfg);

  SweepGrid grid;
  grid.r1_values = r1_values;
  grid.r2_values = r2_values;
  const std::size_t total = r1_values.size() * r2_values.size();
  grid.cells.resize(total);
  for (std::size_t i = 0; i < r1_values.size(); ++i) {
    for (std::size_t j = 0; j < r2_values.size(); ++j) {
      auto& cell = grid.cells[i * r2_values.size() + j];
      cell.r1 = r1_values[i];
      cell.r2 = r2_values[j];
    }
  }

  std::vector<std::size_t> order = opts.order;
  if (order.empty()) {
    order.resize(total);
    for (std::size_t k = 0; k < total; ++k) order[k] = k;
  } else {
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      if (sorted.size() != total || sorted[k] != k) {
        throw DomainError("evaluation order must be a permutation of the cell indices");
      }
    }
  }

  // Each cell is written by exactly one worker; no shared accumulation.
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      SweepCell& cell = grid.cells[order[k]];
      try {
        cell.outcome = run_one(cell.r1, cell.r2, initial, m, cfg, opts.classify);
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
    }
  };

  unsigned threads = opts.threads != 0 ? opts.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(total));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return grid;
}

OutcomeKey key_of(const OutcomeClass& o) {
  return {o.kind, o.kind == OutcomeKind::PureStable ? o.corner : 0};
}

std::string to_string(const OutcomeKey& k) {
  std::string s = to_string(k.kind);
  if (k.kind == OutcomeKind::PureStable) {
    const GameState v = corner_point(k.corner);
    s += v.p == 0.0 ? "(0," : "(1,";
    s += v.q == 0.0 ? "0)" : "1)";
  }
  return s;
}

const char* to_string(Axis a) { return a == Axis::R1 ? "r1" : "r2"; }

ThresholdReport find_threshold(Axis axis, double fixed_other, double lo, double hi,
                               const GameState& initial, const PayoffMatrix& m,
                               const IntegratorConfig& cfg, double tol,
                               const ClassifyOptions& classify) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
    throw DomainError("threshold bracket must satisfy 0 < lo < hi");
  }
  if (!(tol > 0.0)) throw DomainError("threshold tolerance must be positive");
  if (!(fixed_other > 0.0)) throw DomainError("fixed emotion index must be positive");

  const auto probe = [&](double r) {
    return axis == Axis::R1 ? run_one(r, fixed_other, initial, m, cfg, classify)
                            : run_one(fixed_other, r, initial, m, cfg, classify);
  };

  ThresholdReport report;
  report.axis = axis;
  report.fixed_other = fixed_other;
  report.lo = lo;
  report.hi = hi;
  report.tol = tol;
  report.at_lo = probe(lo);
  report.at_hi = probe(hi);

  const OutcomeKey target = key_of(report.at_hi);
  if (key_of(report.at_lo) == target) return report;

  double a = lo;
  double b = hi;
  while (b - a >= tol) {
    const double mid = 0.5 * (a + b);
    const OutcomeKey k = key_of(probe(mid));
    report.history.push_back({a, b, mid, k});
    if (k == target) {
      b = mid;
    } else {
      a = mid;
    }
  }
  report.threshold = 0.5 * (a + b);
  return report;
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Risk: return "Risk";
    case Regime::Opportunity: return "Opportunity";
    case Regime::Ideal: return "Ideal";
    case Regime::Security: return "Security";
    case Regime::Opposition: return "Opposition";
  }
  return "Security";
}

RegimeLabel regime_label(double r1, double r2, const OutcomeClass& outcome, double corner_tol) {
  const EmotionClass netizen = EmotionIndex(r1).classification();
  const EmotionClass government = EmotionIndex(r2).classification();

  RegimeLabel out;
  out.basis = std::string(to_string(netizen)) + "/" + to_string(government) + ", " +
              to_string(outcome.kind) + " " + describe(outcome);

  const auto expect = [&](bool matches, const char* description) {
    if (!matches) out.note = std::string("cell describes ") + description;
  };

  if (netizen != EmotionClass::Pessimistic) {
    switch (government) {
      case EmotionClass::Optimistic:
        out.label = Regime::Risk;
        expect(outcome.kind == OutcomeKind::HybridStable, "a hybrid stable state");
        break;
      case EmotionClass::Pessimistic:
        out.label = Regime::Ideal;
        expect(outcome.kind == OutcomeKind::PureStable && outcome.corner == 2,
               "convergence to (NS,AM)");
        break;
      case EmotionClass::Rational:
        out.label = Regime::Security;
        expect(!converged(outcome), "no convergence");
        break;
    }
    return out;
  }

  const bool favourable = converged(outcome) && outcome.point.p <= corner_tol;
  if (government == EmotionClass::Optimistic) {
    out.label = favourable ? Regime::Opportunity : Regime::Risk;
  } else {
    out.label = favourable ? Regime::Opportunity : Regime::Opposition;
  }
  return out;
}

const char* to_string(Direction d) { return d == Direction::Rising ? "rising" : "falling"; }

std::vector<Crossing> event_scan(const Trajectory& traj, Coordinate coordinate, double level) {
  if (!(level >= 0.0 && level <= 1.0)) throw DomainError("event level must lie in [0,1]");
  const auto value = [coordinate](const Sample& s) {
    return coordinate == Coordinate::P ? s.p : s.q;
  };

  std::vector<Crossing> out;
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    const Sample& a = traj.samples[i - 1];
    const Sample& b = traj.samples[i];
    const double va = value(a);
    const double vb = value(b);
    Direction dir;
    if (va < level && vb >= level) {
      dir = Direction::Rising;
    } else if (va > level && vb <= level) {
      dir = Direction::Falling;
    } else {
      continue;
    }
    const double t = a.t + (level - va) / (vb - va) * (b.t - a.t);
    out.push_back({t, dir, i});
  }
  return out;
}

std::vector<double> range_values(double start, double stop, double step) {
  if (!(start > 0.0) || !(step > 0.0) || !(stop >= start) || !std::isfinite(stop)) {
    throw DomainError("range must satisfy 0 < start <= stop and step > 0");
  }
  std::vector<double> out;
  for (long long i = 0;; ++i) {
    const double v = start + static_cast<double>(i) * step;
    if (v > stop + 0.5 * step) break;
    out.push_back(std::round(v * 1e12) / 1e12);
    if (out.size() > 1000000) throw DomainError("range has too many values");
  }
  return out;
}

}  // namespace rumorgame
