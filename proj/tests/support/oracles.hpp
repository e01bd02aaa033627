#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls into the library's numerics.

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "rumorgame/game.hpp"

namespace oracle {

inline double pw(double x, double r) { return x <= 0.0 ? 0.0 : std::pow(x, r); }

// Decision weights straight from the definitions: merge ties, order best
// first, pi_i = w(p_i + 1 - RP_i) - w(1 - RP_i) with RP_i = P(payoff <= x_i).
// 1 - RP_i is summed directly as P(payoff > x_i); subtracting from 1 leaves
// residue of order 1e-17 that w(x) = x^0.3 magnifies to 1e-5.
inline std::vector<std::pair<double, double>> weights(
    const std::vector<std::pair<double, double>>& lottery, double r) {
  std::map<double, double, std::greater<>> merged;
  for (const auto& [x, p] : lottery) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const auto& e) { return std::abs(e.first - x) <= 1e-12; });
    if (it == merged.end()) {
      merged[x] = p;
    } else {
      it->second += p;
    }
  }
  std::vector<std::pair<double, double>> out;
  for (const auto& [x, p] : merged) {
    double better = 0.0;
    for (const auto& [y, py] : merged) {
      if (y > x) better += py;
    }
    out.emplace_back(x, pw(p + better, r) - pw(better, r));
  }
  return out;
}

inline double rdeu(const std::vector<std::pair<double, double>>& lottery, double r) {
  double s = 0.0;
  for (const auto& [x, w] : weights(lottery, r)) s += x * w;
  return s;
}

// Closed forms of the four utilities from the rank tables.
inline double up(double q, double r2, const rumorgame::PayoffValues& v) {
  return v.beta + (v.alpha - v.beta) * pw(q, r2);
}
inline double eup(double p, double q, double r1, const rumorgame::PayoffValues& v) {
  return (v.beta - v.gamma) * pw(p - p * q, r1) + (v.gamma - v.alpha) * pw(1 - p * q, r1) + v.alpha;
}
inline double uq(double p, double r1, const rumorgame::PayoffValues& v) {
  return v.eta + (v.epsilon - v.eta) * pw(p, r1);
}
inline double euq(double p, double q, double r2, const rumorgame::PayoffValues& v) {
  return (v.epsilon - v.theta) * pw(p * q, r2) + (v.theta - v.eta) * pw(1 - p - q + 2 * p * q, r2) +
         (v.eta - v.zeta) * pw(1 - p + p * q, r2) + v.zeta;
}

// Textbook two-population replicator field with expected payoffs.
inline std::pair<double, double> replicator(double p, double q, const rumorgame::PayoffValues& v) {
  const double us = q * v.alpha + (1 - q) * v.beta;
  const double uns = q * v.gamma + (1 - q) * v.delta;
  const double uam = p * v.epsilon + (1 - p) * v.eta;
  const double unm = p * v.zeta + (1 - p) * v.theta;
  return {p * (1 - p) * (us - uns), q * (1 - q) * (uam - unm)};
}

// Rest point of the textbook field.
inline std::pair<double, double> interior(const rumorgame::PayoffValues& v) {
  return {(v.theta - v.eta) / (v.epsilon - v.zeta + v.theta - v.eta),
          (v.beta - v.gamma) / (v.beta - v.alpha)};
}

// beta > gamma = delta > alpha and epsilon > theta > eta > zeta, gaps >= 0.1.
inline rumorgame::PayoffValues random_ordered(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> base(-5.0, 5.0);
  std::uniform_real_distribution<double> gap(0.1, 4.0);
  rumorgame::PayoffValues v;
  v.alpha = base(rng);
  v.gamma = v.alpha + gap(rng);
  v.delta = v.gamma;
  v.beta = v.gamma + gap(rng);
  v.zeta = base(rng);
  v.eta = v.zeta + gap(rng);
  v.theta = v.eta + gap(rng);
  v.epsilon = v.theta + gap(rng);
  return v;
}

// Random lottery with n outcomes; payoffs drawn from a small integer set so
// that ties occur.
inline std::vector<std::pair<double, double>> random_lottery(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> payoff(-4, 4);
  std::uniform_real_distribution<double> mass(0.0, 1.0);
  std::vector<std::pair<double, double>> out;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    out.emplace_back(payoff(rng), mass(rng) + 1e-3);
    total += out.back().second;
  }
  for (auto& o : out) o.second /= total;
  return out;
}

}  // namespace oracle
