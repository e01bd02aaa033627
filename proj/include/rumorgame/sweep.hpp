#pragma once

// Exploration of the (r1, r2) plane: grid sweeps, bisection for emotional
// thresholds, regime labels and level-crossing scans.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rumorgame/dynamics.hpp"

namespace rumorgame {

struct SweepCell {
  double r1 = 1.0;
  double r2 = 1.0;
  std::optional<OutcomeClass> outcome;  // empty when the cell failed
  std::string error;
};

struct SweepGrid {
  std::vector<double> r1_values;
  std::vector<double> r2_values;
  std::vector<SweepCell> cells;  // row-major, row = r1 index

  const SweepCell& at(std::size_t i1, std::size_t i2) const {
    return cells[i1 * r2_values.size() + i2];
  }
};

struct SweepOptions {
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  // Cell evaluation order as flat indices; empty means row-major. Results do
  // not depend on it.
  std::vector<std::size_t> order;
  ClassifyOptions classify;
};

SweepGrid sweep_grid(const std::vector<double>& r1_values, const std::vector<double>& r2_values,
                     const GameState& initial, const PayoffMatrix& m,
                     const IntegratorConfig& cfg = {}, const SweepOptions& opts = {});

// What bisection compares: the outcome kind, plus the vertex for PureStable.
struct OutcomeKey {
  OutcomeKind kind = OutcomeKind::NonConvergent;
  int corner = 0;

  friend bool operator==(const OutcomeKey&, const OutcomeKey&) = default;
};

OutcomeKey key_of(const OutcomeClass& o);
std::string to_string(const OutcomeKey& k);

enum class Axis { R1, R2 };

const char* to_string(Axis a);

struct BisectionStep {
  double lo = 0.0;
  double hi = 0.0;
  double mid = 0.0;
  OutcomeKey mid_key;
};

struct ThresholdReport {
  Axis axis = Axis::R1;
  double fixed_other = 1.0;
  double lo = 0.0;
  double hi = 0.0;
  double tol = 0.01;
  OutcomeClass at_lo;
  OutcomeClass at_hi;
  std::optional<double> threshold;
  std::vector<BisectionStep> history;
};

// Bisects the swept index until the bracket is narrower than tol. Each probe
// that reproduces the outcome at `hi` moves the upper end; anything else
// moves the lower end, so the result is the edge of the hi-side regime.
// threshold is empty when both ends classify the same. Throws DomainError
// unless 0 < lo < hi and tol > 0.
ThresholdReport find_threshold(Axis axis, double fixed_other, double lo, double hi,
                               const GameState& initial, const PayoffMatrix& m,
                               const IntegratorConfig& cfg = {}, double tol = 0.01,
                               const ClassifyOptions& classify = {});

enum class Regime { Risk, Opportunity, Ideal, Security, Opposition };

const char* to_string(Regime r);

struct RegimeLabel {
  Regime label = Regime::Security;
  std::string basis;  // e.g. "pessimistic/optimistic, PureStable corner (1,1)"
  std::string note;   // set when the outcome is not the one the cell describes
};

// Maps the emotion-class pair and the observed outcome to one of the five
// regimes. Cells with two candidate labels resolve to the favourable one
// (Opportunity) only for a converged outcome with p near 0.
RegimeLabel regime_label(double r1, double r2, const OutcomeClass& outcome,
                         double corner_tol = 0.02);

enum class Coordinate { P, Q };
enum class Direction { Rising, Falling };

const char* to_string(Direction d);

struct Crossing {
  double t = 0.0;
  Direction direction = Direction::Rising;
  std::size_t index = 0;  // first sample at or past the level
};

// Every crossing of `level` by the coordinate, with the time interpolated
// linearly between samples.
std::vector<Crossing> event_scan(const Trajectory& traj, Coordinate coordinate, double level);

// Evenly spaced values from start to stop (inclusive within half a step),
// snapped to 12 decimals so that e.g. 1.0 is produced exactly.
std::vector<double> range_values(double start, double stop, double step);

}  // namespace rumorgame
