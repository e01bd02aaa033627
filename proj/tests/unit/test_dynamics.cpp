#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "rumorgame/dynamics.hpp"
#include "rumorgame/errors.hpp"

using namespace rumorgame;

namespace {

const PayoffMatrix kBase;

OutcomeClass run(double r1, double r2, IntegratorConfig cfg = {}) {
  return classify_outcome(integrate({0.5, 0.5}, EmotionProfile(r1, r2), kBase, cfg));
}

Trajectory synthetic(std::size_t n, auto f) {
  Trajectory t;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [p, q] = f(static_cast<double>(i));
    t.samples.push_back({0.1 * static_cast<double>(i), p, q});
  }
  return t;
}

}  // namespace

TEST_CASE("integrator config validation") {
  CHECK_NOTHROW(validate(IntegratorConfig{}));
  CHECK_THROWS_AS(validate(IntegratorConfig{0.0, 200, 10}), DomainError);
  CHECK_THROWS_AS(validate(IntegratorConfig{0.1, 0.5, 10}), DomainError);
  CHECK_THROWS_AS(validate(IntegratorConfig{0.01, 200, 0}), DomainError);
  CHECK_THROWS_AS(integrate({1.2, 0.5}, EmotionProfile(1, 1), kBase), DomainError);
}

TEST_CASE("recorded samples") {
  const Trajectory t = integrate({0.5, 0.5}, EmotionProfile(1, 2), kBase, {0.01, 10.0, 10});
  REQUIRE(t.samples.size() == 101);
  CHECK(t.samples.front().t == 0.0);
  CHECK(t.samples.back().t == doctest::Approx(10.0));
  for (std::size_t i = 1; i < t.samples.size(); ++i) CHECK(t.samples[i].t > t.samples[i - 1].t);
}

TEST_CASE("scenario outcomes") {
  const OutcomeClass b = run(1, 2);
  CHECK(b.kind == OutcomeKind::PureStable);
  CHECK(b.corner == 2);
  CHECK(b.convergence_time.has_value());

  const OutcomeClass osc = run(1, 1);
  CHECK(osc.kind == OutcomeKind::Oscillation);
  CHECK_FALSE(osc.convergence_time.has_value());
  CHECK(osc.p_band.lo >= 0.19);
  CHECK(osc.p_band.hi <= 0.56);
  CHECK(osc.q_band.lo >= 0.21);
  CHECK(osc.q_band.hi <= 0.63);
  // The orbit circles the rational rest point.
  CHECK(osc.p_band.lo < 0.375);
  CHECK(osc.p_band.hi > 0.375);

  const OutcomeClass h = run(0.6, 1);
  CHECK(h.kind == OutcomeKind::HybridStable);
  CHECK(std::abs(h.point.p - 0.24) <= 0.05);
  CHECK(std::abs(h.point.q - 0.29) <= 0.05);
}

TEST_CASE("corners are stationary for every profile") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> r(0.2, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const EmotionProfile prof(r(rng), r(rng));
    for (int c = 1; c <= 4; ++c) {
      const GameState v = corner_point(c);
      const Trajectory t = integrate(v, prof, kBase, {0.01, 5.0, 10});
      for (const auto& s : t.samples) {
        CHECK(s.p == v.p);
        CHECK(s.q == v.q);
      }
    }
  }
  const OutcomeClass o = classify_outcome(integrate({0, 0}, EmotionProfile(1.3, 0.4), kBase));
  CHECK(o.kind == OutcomeKind::PureStable);
  CHECK(o.corner == 1);
  CHECK(o.convergence_time == 0.0);
  CHECK_THROWS_AS(corner_point(5), DomainError);
}

TEST_CASE("trajectories stay inside the square and are reproducible") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> r(0.2, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    const GameState s0{u(rng), u(rng)};
    const EmotionProfile prof(r(rng), r(rng));
    const IntegratorConfig cfg{0.01, 30.0, 5};
    const Trajectory a = integrate(s0, prof, kBase, cfg);
    for (const auto& s : a.samples) {
      CHECK(s.p >= 0.0);
      CHECK(s.p <= 1.0);
      CHECK(s.q >= 0.0);
      CHECK(s.q <= 1.0);
    }
    CHECK(a == integrate(s0, prof, kBase, cfg));
  }
}

TEST_CASE("halving the step keeps every scenario outcome") {
  const std::pair<double, double> scenarios[] = {{1, 2},   {0.6, 1},   {1, 1},   {1.2, 1.2},
                                                 {1.2, 2}, {1.5, 1.5}, {2, 2},   {2.5, 2.5},
                                                 {0.5, 2}, {1.6, 0.7}, {1.5, 1}, {1.4, 1}};
  for (const auto& [r1, r2] : scenarios) {
    CAPTURE(r1);
    CAPTURE(r2);
    const OutcomeClass a = run(r1, r2);
    const OutcomeClass b = run(r1, r2, {0.005, 200.0, 20});
    CHECK(a.kind == b.kind);
    CHECK(a.corner == b.corner);
    if (a.kind == OutcomeKind::HybridStable || a.kind == OutcomeKind::PureStable) {
      CHECK(std::abs(a.point.p - b.point.p) < 1e-3);
      CHECK(std::abs(a.point.q - b.point.q) < 1e-3);
    }
  }
}

TEST_CASE("classification of synthetic series") {
  const Trajectory flat = synthetic(100, [](double) { return std::pair{0.3, 0.6}; });
  const OutcomeClass h = classify_outcome(flat);
  CHECK(h.kind == OutcomeKind::HybridStable);
  CHECK(h.point.p == doctest::Approx(0.3));
  CHECK(h.convergence_time == 0.0);

  const Trajectory near_corner = synthetic(100, [](double) { return std::pair{0.99, 0.015}; });
  const OutcomeClass c = classify_outcome(near_corner);
  CHECK(c.kind == OutcomeKind::PureStable);
  CHECK(c.corner == 3);
  CHECK(c.point == GameState{1.0, 0.0});

  const Trajectory wave = synthetic(400, [](double i) {
    return std::pair{0.5 + 0.2 * std::sin(i / 2.0), 0.5 + 0.2 * std::cos(i / 2.0)};
  });
  const OutcomeClass o = classify_outcome(wave);
  CHECK(o.kind == OutcomeKind::Oscillation);
  CHECK(o.p_band.lo >= 0.3 - 1e-12);
  CHECK(o.p_band.hi <= 0.7 + 1e-12);

  // Slow monotone drift that never settles.
  const Trajectory drift = synthetic(400, [](double i) { return std::pair{0.1 + i / 1000.0, 0.5}; });
  CHECK(classify_outcome(drift).kind == OutcomeKind::NonConvergent);

  // Convergence time is the start of the settled suffix.
  const Trajectory step = synthetic(100, [](double i) { return std::pair{i < 30 ? 0.2 : 0.0, 1.0}; });
  const OutcomeClass s = classify_outcome(step);
  CHECK(s.corner == 2);
  CHECK(s.convergence_time == doctest::Approx(3.0));

  CHECK_THROWS_AS(classify_outcome(synthetic(49, [](double) { return std::pair{0.1, 0.1}; })),
                  InsufficientDataError);
}

TEST_CASE("descriptions") {
  OutcomeClass o;
  o.kind = OutcomeKind::PureStable;
  o.corner = 2;
  o.point = corner_point(2);
  CHECK(describe(o) == "corner (0,1)");
  CHECK(describe(OutcomeClass{}) == "no convergence");
}

TEST_CASE("CSV round trip reproduces the classification") {
  const Trajectory t = integrate({0.5, 0.5}, EmotionProfile(1, 2), kBase);
  std::stringstream csv;
  write_trajectory_csv(csv, t);
  CHECK(csv.str().rfind("t,p,q\n", 0) == 0);
  const Trajectory back = read_trajectory_csv(csv);
  CHECK(back == quantized(t));
  CHECK(classify_outcome(back) == classify_outcome(quantized(t)));
  CHECK(quantized(back) == back);

  std::istringstream bad_header("time,p,q\n0,0.5,0.5\n");
  CHECK_THROWS_AS(read_trajectory_csv(bad_header), DomainError);
  std::istringstream bad_row("t,p,q\n0,0.5\n");
  CHECK_THROWS_AS(read_trajectory_csv(bad_row), DomainError);
  std::istringstream bad_number("t,p,q\n0,abc,0.5\n");
  CHECK_THROWS_AS(read_trajectory_csv(bad_number), DomainError);
}
