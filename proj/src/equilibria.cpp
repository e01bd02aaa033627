#include "rumorgame/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rumorgame/errors.hpp"

namespace rumorgame {

namespace {

// Entries of J(h) and J(2h) further apart than this mean the field is not
// differentiable at the point (e.g. x^r with r < 1 at x = 0).
constexpr double kSmoothnessTolerance = 1e-6;
constexpr double kDedupRadius = 1e-6;
constexpr double kInteriorMargin = 1e-9;
constexpr int kMaxHalvings = 40;

using Vec2 = std::array<double, 2>;

Vec2 residual(double p, double q, double r1, double r2, const PayoffValues& v) {
  const Drift a = detail::advantage_unchecked(p, q, r1, r2, v);
  return {a.dp, a.dq};
}

double max_abs(const Vec2& x) { return std::max(std::abs(x[0]), std::abs(x[1])); }

bool strictly_inside(double p, double q) {
  return p > kInteriorMargin && p < 1.0 - kInteriorMargin && q > kInteriorMargin &&
         q < 1.0 - kInteriorMargin;
}

// One derivative of f along a coordinate whose current value is x.
template <typename F>
double derivative(F&& f, double x, double h) {
  if (x - h >= 0.0 && x + h <= 1.0) return (f(x + h) - f(x - h)) / (2.0 * h);
  if (x + 2.0 * h <= 1.0) return (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h);
  return (3.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) / (2.0 * h);
}

std::optional<GameState> newton_from(double p, double q, double r1, double r2,
                                     const PayoffValues& v, const NewtonOptions& opts) {
  Vec2 f = residual(p, q, r1, r2, v);
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    if (!std::isfinite(f[0]) || !std::isfinite(f[1])) return std::nullopt;
    if (max_abs(f) < opts.tol) {
      if (strictly_inside(p, q)) return GameState{p, q};
      return std::nullopt;
    }

    const double hp = std::min({1e-7, p / 2.0, (1.0 - p) / 2.0});
    const double hq = std::min({1e-7, q / 2.0, (1.0 - q) / 2.0});
    const Vec2 fp1 = residual(p + hp, q, r1, r2, v);
    const Vec2 fp0 = residual(p - hp, q, r1, r2, v);
    const Vec2 fq1 = residual(p, q + hq, r1, r2, v);
    const Vec2 fq0 = residual(p, q - hq, r1, r2, v);
    const double a = (fp1[0] - fp0[0]) / (2.0 * hp);
    const double b = (fq1[0] - fq0[0]) / (2.0 * hq);
    const double c = (fp1[1] - fp0[1]) / (2.0 * hp);
    const double d = (fq1[1] - fq0[1]) / (2.0 * hq);
    const double det = a * d - b * c;
    if (!std::isfinite(det) || std::abs(det) < 1e-300) return std::nullopt;
    const double step_p = (d * f[0] - b * f[1]) / det;
    const double step_q = (-c * f[0] + a * f[1]) / det;

    const double current = max_abs(f);
    double lambda = 1.0;
    bool accepted = false;
    for (int k = 0; k <= kMaxHalvings; ++k, lambda *= 0.5) {
      const double np = p - lambda * step_p;
      const double nq = q - lambda * step_q;
      if (!strictly_inside(np, nq)) continue;
      const Vec2 nf = residual(np, nq, r1, r2, v);
      if (max_abs(nf) < current) {
        p = np;
        q = nq;
        f = nf;
        accepted = true;
        break;
      }
    }
    if (!accepted) return std::nullopt;
  }
  if (max_abs(f) < opts.tol && strictly_inside(p, q)) return GameState{p, q};
  return std::nullopt;
}

double max_entry_gap(const Matrix2& a, const Matrix2& b) {
  double gap = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) gap = std::max(gap, std::abs(a[i][j] - b[i][j]));
  }
  return gap;
}

Equilibrium analyse(const GameState& point, EquilibriumKind kind, int corner,
                    const EmotionProfile& profile, const PayoffMatrix& m) {
  Equilibrium e;
  e.point = point;
  e.kind = kind;
  e.corner = corner;
  try {
    e.jacobian = jacobian(point, profile, m);
    const Matrix2 coarse = jacobian(point, profile, m, 2e-6);
    const auto& j = e.jacobian;
    e.det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    e.trace = j[0][0] + j[1][1];
    if (max_entry_gap(e.jacobian, coarse) > kSmoothnessTolerance) {
      e.stability = Stability::Indeterminate;
      e.note = "field not differentiable here; finite-difference Jacobian depends on the step";
    } else {
      e.stability = classify_stability(e.det, e.trace);
    }
  } catch (const NumericError& err) {
    e.stability = Stability::Indeterminate;
    e.det = std::numeric_limits<double>::quiet_NaN();
    e.trace = std::numeric_limits<double>::quiet_NaN();
    e.note = err.what();
  }
  return e;
}

}  // namespace

const char* to_string(Stability s) {
  switch (s) {
    case Stability::ESS: return "ESS";
    case Stability::Saddle: return "Saddle";
    case Stability::Unstable: return "Unstable";
    case Stability::Center: return "Center";
    case Stability::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

Stability classify_stability(double det, double trace) {
  if (!std::isfinite(det) || !std::isfinite(trace)) return Stability::Indeterminate;
  if (std::abs(det) <= kDetTolerance) return Stability::Indeterminate;
  if (det < 0.0) return Stability::Saddle;
  if (trace < -kTraceTolerance) return Stability::ESS;
  if (trace > kTraceTolerance) return Stability::Unstable;
  return Stability::Center;
}

std::array<GameState, 4> corner_equilibria() {
  return {GameState{0.0, 0.0}, GameState{0.0, 1.0}, GameState{1.0, 0.0}, GameState{1.0, 1.0}};
}

std::vector<GameState> interior_equilibria(const EmotionProfile& profile, const PayoffMatrix& m,
                                           const NewtonOptions& opts) {
  if (opts.grid_n < 1) throw DomainError("grid_n must be >= 1");
  const double r1 = profile.netizen.value();
  const double r2 = profile.government.value();
  const PayoffValues& v = m.values();

  std::vector<GameState> roots;
  const double spacing = 1.0 / (opts.grid_n + 1);
  for (int i = 1; i <= opts.grid_n; ++i) {
    for (int j = 1; j <= opts.grid_n; ++j) {
      const auto root = newton_from(i * spacing, j * spacing, r1, r2, v, opts);
      if (!root) continue;
      const bool seen = std::any_of(roots.begin(), roots.end(), [&](const GameState& r) {
        return std::hypot(r.p - root->p, r.q - root->q) <= kDedupRadius;
      });
      if (!seen) roots.push_back(*root);
    }
  }
  return roots;
}

Matrix2 jacobian(const GameState& at, const EmotionProfile& profile, const PayoffMatrix& m,
                 double h) {
  validate(at);
  if (!(h > 0.0 && h < 0.25)) throw DomainError("difference step must lie in (0, 0.25)");
  const auto along_p = [&](double p) { return drift(GameState{p, at.q}, profile, m); };
  const auto along_q = [&](double q) { return drift(GameState{at.p, q}, profile, m); };

  Matrix2 j{};
  j[0][0] = derivative([&](double p) { return along_p(p).dp; }, at.p, h);
  j[0][1] = derivative([&](double q) { return along_q(q).dp; }, at.q, h);
  j[1][0] = derivative([&](double p) { return along_p(p).dq; }, at.p, h);
  j[1][1] = derivative([&](double q) { return along_q(q).dq; }, at.q, h);
  for (const auto& row : j) {
    for (double x : row) {
      if (!std::isfinite(x)) throw NumericError("non-finite Jacobian entry");
    }
  }
  return j;
}

std::vector<Equilibrium> classify_all(const EmotionProfile& profile, const PayoffMatrix& m,
                                      const NewtonOptions& opts) {
  std::vector<Equilibrium> out;
  const auto corners = corner_equilibria();
  for (int c = 0; c < 4; ++c) {
    out.push_back(analyse(corners[c], EquilibriumKind::Corner, c + 1, profile, m));
  }

  const bool rational = profile.netizen.classification() == EmotionClass::Rational &&
                        profile.government.classification() == EmotionClass::Rational;
  for (const auto& point : interior_equilibria(profile, m, opts)) {
    Equilibrium e = analyse(point, EquilibriumKind::Interior, 0, profile, m);
    if (rational && e.stability != Stability::Saddle && e.note.empty()) {
      // The closed-form rational analysis is commonly tabulated as a saddle,
      // but its own off-diagonal entries have opposite signs.
      e.note = "Det > 0 here although the rational interior point is often listed as a saddle";
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace rumorgame
