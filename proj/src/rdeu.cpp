#include "rumorgame/rdeu.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rumorgame/errors.hpp"

namespace rumorgame {

namespace {

constexpr double kProbabilitySumTolerance = 1e-9;
constexpr double kPayoffTieTolerance = 1e-12;

// w(x) for arguments produced internally by cumulative sums, which may stray
// from [0,1] by rounding.
double weight_unchecked(double x, double r) {
  x = std::clamp(x, 0.0, 1.0);
  if (x == 0.0) return 0.0;
  return std::pow(x, r);
}

}  // namespace

const char* to_string(EmotionClass c) {
  switch (c) {
    case EmotionClass::Optimistic: return "optimistic";
    case EmotionClass::Rational: return "rational";
    case EmotionClass::Pessimistic: return "pessimistic";
  }
  return "rational";
}

EmotionIndex::EmotionIndex(double r) : r_(r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw DomainError("emotion index must be a finite positive number, got " + std::to_string(r));
  }
}

EmotionClass EmotionIndex::classification() const {
  if (std::abs(r_ - 1.0) <= kRationalTolerance) return EmotionClass::Rational;
  return r_ < 1.0 ? EmotionClass::Optimistic : EmotionClass::Pessimistic;
}

Lottery::Lottery(std::vector<Outcome> outcomes) : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) throw DomainError("lottery must have at least one outcome");
  double total = 0.0;
  for (const auto& o : outcomes_) {
    if (!std::isfinite(o.payoff)) throw DomainError("lottery payoff must be finite");
    if (!(o.probability >= 0.0) || o.probability > 1.0 + kProbabilitySumTolerance) {
      throw DomainError("lottery probability outside [0,1]: " + std::to_string(o.probability));
    }
    total += o.probability;
  }
  if (std::abs(total - 1.0) > kProbabilitySumTolerance) {
    throw DomainError("lottery probabilities sum to " + std::to_string(total) + ", expected 1");
  }
}

double emotion_weight(double x, EmotionIndex r) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("emotion weight argument outside [0,1]: " + std::to_string(x));
  }
  if (x == 0.0) return 0.0;
  return std::pow(x, r.value());
}

std::vector<RankedOutcome> rank_positions(const Lottery& lottery) {
  std::vector<Outcome> sorted(lottery.outcomes().begin(), lottery.outcomes().end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Outcome& a, const Outcome& b) { return a.payoff > b.payoff; });

  std::vector<RankedOutcome> merged;
  for (const auto& o : sorted) {
    if (!merged.empty() && std::abs(merged.back().payoff - o.payoff) <= kPayoffTieTolerance) {
      merged.back().probability += o.probability;
    } else {
      merged.push_back({o.payoff, o.probability, 0.0});
    }
  }

  double tail = 0.0;
  for (auto it = merged.rbegin(); it != merged.rend(); ++it) {
    tail += it->probability;
    it->rank_position = tail;
  }
  return merged;
}

std::vector<WeightedOutcome> decision_weights(const Lottery& lottery, EmotionIndex r) {
  const auto ranked = rank_positions(lottery);
  std::vector<WeightedOutcome> out;
  out.reserve(ranked.size());
  // 1 - RP_i is the probability of doing strictly better than x_i. Accumulating
  // it from the top keeps the weights telescoping to exactly w(1) - w(0).
  double better = 0.0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const auto& o = ranked[i];
    const double upper = (i + 1 == ranked.size()) ? 1.0 : better + o.probability;
    const double w = weight_unchecked(upper, r.value()) - weight_unchecked(better, r.value());
    out.push_back({o.payoff, std::max(w, 0.0)});
    better = upper;
  }
  return out;
}

double rdeu_value(const Lottery& lottery, EmotionIndex r) {
  double v = 0.0;
  for (const auto& w : decision_weights(lottery, r)) v += w.weight * w.payoff;
  return v;
}

}  // namespace rumorgame
