#include "rumorgame/game.hpp"

#include <cmath>
#include <string>

#include "rumorgame/errors.hpp"

namespace rumorgame {

namespace {

constexpr double kTieTolerance = 1e-12;

void check_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0,1], got " + std::to_string(x));
  }
}

}  // namespace

bool satisfies_ordering(const PayoffValues& v) {
  const bool netizen = v.beta > v.gamma && std::abs(v.gamma - v.delta) <= kTieTolerance &&
                       v.gamma > v.alpha;
  const bool government = v.epsilon > v.theta && v.theta > v.eta && v.eta > v.zeta;
  return netizen && government;
}

PayoffMatrix PayoffMatrix::make(const PayoffValues& v) {
  if (!satisfies_ordering(v)) {
    throw DomainError(
        "payoffs violate the required ordering beta > gamma = delta > alpha and "
        "epsilon > theta > eta > zeta");
  }
  return PayoffMatrix(v, true);
}

PayoffMatrix PayoffMatrix::make_unchecked(const PayoffValues& v) {
  return PayoffMatrix(v, satisfies_ordering(v));
}

void validate(const GameState& s) {
  check_unit(s.p, "p");
  check_unit(s.q, "q");
}

double safe_pow(double x, double r) {
  if (x <= 0.0) return 0.0;
  return std::pow(x, r);
}

double u_spread(double q, const EmotionProfile& profile, const PayoffMatrix& m) {
  check_unit(q, "q");
  return m.beta() + (m.alpha() - m.beta()) * safe_pow(q, profile.government.value());
}

double e_u_netizen(const GameState& s, const EmotionProfile& profile, const PayoffMatrix& m) {
  validate(s);
  const double r1 = profile.netizen.value();
  const double pq = s.p * s.q;
  return (m.beta() - m.gamma()) * safe_pow(s.p - pq, r1) +
         (m.gamma() - m.alpha()) * safe_pow(1.0 - pq, r1) + m.alpha();
}

double u_monitor(double p, const EmotionProfile& profile, const PayoffMatrix& m) {
  check_unit(p, "p");
  return m.eta() + (m.epsilon() - m.eta()) * safe_pow(p, profile.netizen.value());
}

double e_u_government(const GameState& s, const EmotionProfile& profile, const PayoffMatrix& m) {
  validate(s);
  const double r2 = profile.government.value();
  const double p = s.p;
  const double q = s.q;
  const double pq = p * q;
  return (m.epsilon() - m.theta()) * safe_pow(pq, r2) +
         (m.theta() - m.eta()) * safe_pow(1.0 - p - q + 2.0 * pq, r2) +
         (m.eta() - m.zeta()) * safe_pow(1.0 - p + pq, r2) + m.zeta();
}

Lottery netizen_lottery(const GameState& s, const PayoffMatrix& m) {
  validate(s);
  const double p = s.p;
  const double q = s.q;
  return Lottery({{m.alpha(), p * q},
                  {m.beta(), p * (1.0 - q)},
                  {m.gamma(), (1.0 - p) * q},
                  {m.delta(), (1.0 - p) * (1.0 - q)}});
}

Lottery government_lottery(const GameState& s, const PayoffMatrix& m) {
  validate(s);
  const double p = s.p;
  const double q = s.q;
  return Lottery({{m.epsilon(), p * q},
                  {m.zeta(), p * (1.0 - q)},
                  {m.eta(), (1.0 - p) * q},
                  {m.theta(), (1.0 - p) * (1.0 - q)}});
}

namespace detail {

Drift advantage_unchecked(double p, double q, double r1, double r2, const PayoffValues& v) {
  const double pq = p * q;
  const double adv_p = (v.alpha - v.beta) * (safe_pow(q, r2) - 1.0) -
                       (v.beta - v.gamma) * safe_pow(p - pq, r1) -
                       (v.gamma - v.alpha) * safe_pow(1.0 - pq, r1);
  const double adv_q = (v.eta - v.zeta) * (1.0 - safe_pow(1.0 - p + pq, r2)) +
                       (v.epsilon - v.eta) * safe_pow(p, r1) -
                       (v.epsilon - v.theta) * safe_pow(pq, r2) -
                       (v.theta - v.eta) * safe_pow(1.0 - p - q + 2.0 * pq, r2);
  return {adv_p, adv_q};
}

Drift drift_unchecked(double p, double q, double r1, double r2, const PayoffValues& v) {
  const Drift adv = advantage_unchecked(p, q, r1, r2, v);
  return {safe_pow(p, r1) * adv.dp, safe_pow(q, r2) * adv.dq};
}

}  // namespace detail

Drift payoff_advantage(const GameState& s, const EmotionProfile& profile, const PayoffMatrix& m) {
  validate(s);
  return detail::advantage_unchecked(s.p, s.q, profile.netizen.value(), profile.government.value(),
                                     m.values());
}

Drift drift(const GameState& s, const EmotionProfile& profile, const PayoffMatrix& m) {
  validate(s);
  return detail::drift_unchecked(s.p, s.q, profile.netizen.value(), profile.government.value(),
                                 m.values());
}

}  // namespace rumorgame
