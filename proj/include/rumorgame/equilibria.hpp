#pragma once

// Rest points of the replicator field and their local stability.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rumorgame/game.hpp"

namespace rumorgame {

// Row-major [[dFp/dp, dFp/dq], [dFq/dp, dFq/dq]].
using Matrix2 = std::array<std::array<double, 2>, 2>;

enum class Stability { ESS, Saddle, Unstable, Center, Indeterminate };

const char* to_string(Stability s);

inline constexpr double kDetTolerance = 1e-8;
inline constexpr double kTraceTolerance = 1e-8;

// ESS iff det > tol and trace < -tol; Saddle iff det < -tol; Center iff det > tol
// and |trace| <= tol; Unstable for det > tol and trace > tol; Indeterminate when
// |det| <= tol.
Stability classify_stability(double det, double trace);

enum class EquilibriumKind { Corner, Interior };

struct Equilibrium {
  GameState point;
  EquilibriumKind kind = EquilibriumKind::Corner;
  int corner = 0;  // 1..4 for corners
  Matrix2 jacobian{};
  double det = 0.0;
  double trace = 0.0;
  Stability stability = Stability::Indeterminate;
  std::string note;
};

// (0,0), (0,1), (1,0), (1,1).
std::array<GameState, 4> corner_equilibria();

struct NewtonOptions {
  int grid_n = 11;
  double tol = 1e-10;
  int max_iter = 200;
};

// Common zeros of both payoff advantages strictly inside the unit square,
// found by damped Newton from every node of a grid_n x grid_n interior grid.
// Roots further than 1e-6 apart are reported separately, in start order.
// Empty when no start converges.
std::vector<GameState> interior_equilibria(const EmotionProfile& profile, const PayoffMatrix& m,
                                           const NewtonOptions& opts = {});

// Central differences of the drift with step h; second-order one-sided
// differences (same h) within h of an edge. Throws NumericError on
// non-finite entries.
Matrix2 jacobian(const GameState& at, const EmotionProfile& profile, const PayoffMatrix& m,
                 double h = 1e-6);

// Corners first (E1..E4), then interior points. Where the field is not
// differentiable (entries move with the difference step) or the Jacobian is
// non-finite, the point is Indeterminate with a note.
std::vector<Equilibrium> classify_all(const EmotionProfile& profile, const PayoffMatrix& m,
                                      const NewtonOptions& opts = {});

}  // namespace rumorgame
