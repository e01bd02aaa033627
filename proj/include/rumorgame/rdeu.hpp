#pragma once

// Rank-dependent expected utility for finite lotteries with the power
// emotion function w(x) = x^r.

#include <span>
#include <vector>

namespace rumorgame {

enum class EmotionClass { Optimistic, Rational, Pessimistic };

const char* to_string(EmotionClass c);

// Indices within this distance of 1 count as rational.
inline constexpr double kRationalTolerance = 1e-12;

// Emotion index r > 0. r < 1 is optimistic (concave w), r > 1 pessimistic.
class EmotionIndex {
 public:
  explicit EmotionIndex(double r);

  double value() const { return r_; }
  EmotionClass classification() const;

 private:
  double r_;
};

struct Outcome {
  double payoff = 0.0;
  double probability = 0.0;
};

// Non-empty outcome list whose probabilities are non-negative and sum to 1
// (absolute tolerance 1e-9). Validated on construction.
class Lottery {
 public:
  explicit Lottery(std::vector<Outcome> outcomes);

  std::span<const Outcome> outcomes() const { return outcomes_; }

 private:
  std::vector<Outcome> outcomes_;
};

struct RankedOutcome {
  double payoff = 0.0;
  double probability = 0.0;
  double rank_position = 0.0;  // probability of this payoff or worse
};

struct WeightedOutcome {
  double payoff = 0.0;
  double weight = 0.0;
};

// x^r on [0,1]; throws DomainError outside the domain.
double emotion_weight(double x, EmotionIndex r);

// Merges equal payoffs (within 1e-12), sorts strictly descending and attaches
// tail-cumulative rank positions.
std::vector<RankedOutcome> rank_positions(const Lottery& lottery);

// pi_i = w(p_i + 1 - RP_i) - w(1 - RP_i) over merged outcomes, best first.
std::vector<WeightedOutcome> decision_weights(const Lottery& lottery, EmotionIndex r);

// Sum of weight * payoff with the identity utility.
double rdeu_value(const Lottery& lottery, EmotionIndex r);

}  // namespace rumorgame
