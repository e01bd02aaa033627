#pragma once

// Fixed-step integration of the replicator field on the unit square and
// classification of the resulting trajectories.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rumorgame/game.hpp"

namespace rumorgame {

struct IntegratorConfig {
  double dt = 0.01;
  double horizon = 200.0;
  int record_stride = 10;
};

// Throws DomainError unless dt > 0, horizon >= 10 dt and record_stride >= 1.
void validate(const IntegratorConfig& cfg);

struct Sample {
  double t = 0.0;
  double p = 0.0;
  double q = 0.0;

  friend bool operator==(const Sample&, const Sample&) = default;
};

struct Trajectory {
  std::vector<Sample> samples;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

enum class OutcomeKind { PureStable, HybridStable, Oscillation, NonConvergent };

const char* to_string(OutcomeKind k);

struct Band {
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const Band&, const Band&) = default;
};

struct OutcomeClass {
  OutcomeKind kind = OutcomeKind::NonConvergent;
  // PureStable: 1..4 for (0,0), (0,1), (1,0), (1,1). 0 otherwise.
  int corner = 0;
  // PureStable: the vertex. HybridStable: mean of the converged tail.
  GameState point{0.0, 0.0};
  // Oscillation: tail ranges.
  Band p_band{};
  Band q_band{};
  std::optional<double> convergence_time;

  friend bool operator==(const OutcomeClass&, const OutcomeClass&) = default;
};

struct ClassifyOptions {
  double corner_tol = 0.02;
  double conv_tol = 1e-4;
  double tail_fraction = 0.2;
  // Minimum autocorrelation peak (past the first zero crossing) that counts as
  // recurrence.
  double recurrence_threshold = 0.5;
};

inline constexpr std::size_t kMinClassifySamples = 50;

// Vertex coordinates for corner index 1..4.
GameState corner_point(int corner);

// Classical RK4 with projection onto [0,1]^2 after every step. Records step 0,
// every record_stride-th step and the final step. Initial states within 1e-12
// of a vertex yield a constant trajectory at that vertex.
Trajectory integrate(const GameState& initial, const EmotionProfile& profile,
                     const PayoffMatrix& m, const IntegratorConfig& cfg = {});

OutcomeClass classify_outcome(const Trajectory& traj, const ClassifyOptions& opts = {});

// Short human-readable description, e.g. "corner (0,1)".
std::string describe(const OutcomeClass& o);

// CSV with header t,p,q and 9 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
Trajectory read_trajectory_csv(std::istream& in);

// The trajectory as it reads back from write_trajectory_csv.
Trajectory quantized(const Trajectory& traj);

}  // namespace rumorgame
