#pragma once

// The netizen/government 2x2 rumor game: payoffs, emotion-weighted utilities
// and the replicator vector field.
//
// Netizens spread (S) with probability p, otherwise not (NS). The government
// monitors actively (AM) with probability q, otherwise negatively (NM).

#include "rumorgame/rdeu.hpp"

namespace rumorgame {

// Payoffs in the order (S,AM), (S,NM), (NS,AM), (NS,NM).
struct PayoffValues {
  // netizen
  double alpha = -3.0;
  double beta = 3.0;
  double gamma = 0.5;
  double delta = 0.5;
  // government
  double epsilon = 1.0;
  double zeta = -4.0;
  double eta = -3.0;
  double theta = 0.0;
};

class PayoffMatrix {
 public:
  // The baseline parameterisation (alpha=-3, beta=3, gamma=delta=0.5,
  // epsilon=1, zeta=-4, eta=-3, theta=0).
  PayoffMatrix() = default;

  // Enforces beta > gamma = delta > alpha and epsilon > theta > eta > zeta.
  static PayoffMatrix make(const PayoffValues& v);
  // Skips the ordering check; results derived from it carry a warning flag.
  static PayoffMatrix make_unchecked(const PayoffValues& v);

  const PayoffValues& values() const { return v_; }
  bool ordering_checked() const { return checked_; }

  double alpha() const { return v_.alpha; }
  double beta() const { return v_.beta; }
  double gamma() const { return v_.gamma; }
  double delta() const { return v_.delta; }
  double epsilon() const { return v_.epsilon; }
  double zeta() const { return v_.zeta; }
  double eta() const { return v_.eta; }
  double theta() const { return v_.theta; }

 private:
  PayoffMatrix(const PayoffValues& v, bool checked) : v_(v), checked_(checked) {}

  PayoffValues v_{};
  bool checked_ = true;
};

bool satisfies_ordering(const PayoffValues& v);

struct EmotionProfile {
  EmotionProfile(double r1, double r2) : netizen(r1), government(r2) {}
  EmotionProfile(EmotionIndex r1, EmotionIndex r2) : netizen(r1), government(r2) {}

  EmotionIndex netizen;     // r1
  EmotionIndex government;  // r2
};

struct GameState {
  double p = 0.5;
  double q = 0.5;

  friend bool operator==(const GameState&, const GameState&) = default;
};

// Throws DomainError unless the state lies in the unit square.
void validate(const GameState& s);

// x^r with 0^r = 0 for every r > 0 (also for r -> 0 limits), and 0 for x < 0
// round-off residue.
double safe_pow(double x, double r);

// Expected utility of spreading, weighted by the government's index.
double u_spread(double q, const EmotionProfile& profile, const PayoffMatrix& m);
// Netizen RDEU over the four-outcome lottery.
double e_u_netizen(const GameState& s, const EmotionProfile& profile, const PayoffMatrix& m);
// Expected utility of active monitoring, weighted by the netizens' index.
double u_monitor(double p, const EmotionProfile& profile, const PayoffMatrix& m);
// Government RDEU over the four-outcome lottery.
double e_u_government(const GameState& s, const EmotionProfile& profile, const PayoffMatrix& m);

// The four-outcome lotteries each player faces in state s.
Lottery netizen_lottery(const GameState& s, const PayoffMatrix& m);
Lottery government_lottery(const GameState& s, const PayoffMatrix& m);

struct Drift {
  double dp = 0.0;
  double dq = 0.0;
};

// Utility advantage of S over the netizen average and of AM over the government
// average. Interior equilibria are the common zeros of both components.
Drift payoff_advantage(const GameState& s, const EmotionProfile& profile, const PayoffMatrix& m);

// dp/dt = p^r1 * advantage_p, dq/dt = q^r2 * advantage_q.
Drift drift(const GameState& s, const EmotionProfile& profile, const PayoffMatrix& m);

namespace detail {
// drift() without validating s; callers guarantee s is in the unit square.
Drift drift_unchecked(double p, double q, double r1, double r2, const PayoffValues& v);
Drift advantage_unchecked(double p, double q, double r1, double r2, const PayoffValues& v);
}  // namespace detail

}  // namespace rumorgame
