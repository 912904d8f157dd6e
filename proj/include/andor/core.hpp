#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>

namespace andor {

// Thrown when v is outside the regime a computation is defined for
// (the mixed equilibrium forms require v > 1/2).
struct RegimeError : std::domain_error {
  using std::domain_error::domain_error;
};

inline double default_bid_cap(double v) { return v > 1.0 ? v : 1.0; }

struct BidPair {
  double x1 = 0.0;
  double x2 = 0.0;
  bool operator==(const BidPair&) const = default;
};

// Per-item probability that the AND player wins a tied bid. Depends only on
// the tied bid of that item.
struct TieBreakRule {
  std::function<double(double)> q1;
  std::function<double(double)> q2;

  double q(int item, double bid) const { return item == 1 ? q1(bid) : q2(bid); }

  static TieBreakRule constant(double q);
  static TieBreakRule and_wins() { return constant(1.0); }
  static TieBreakRule or_wins() { return constant(0.0); }
  static TieBreakRule fair() { return constant(0.5); }
};

// Outcome distribution of a single auction for fixed pure bids; the only
// randomness is tie-breaking, independent across items.
struct AllocationDistribution {
  double p_and_both = 0.0;
  double p_and_1_only = 0.0;
  double p_and_2_only = 0.0;
  double p_and_none = 0.0;
  double pay_and = 0.0;
  double pay_or = 0.0;
  double u_and = 0.0;
  double u_or = 0.0;
};

// A single realized auction.
struct Outcome {
  bool and_wins_1 = false;
  bool and_wins_2 = false;
  double pay_and = 0.0;
  double pay_or = 0.0;
  double u_and = 0.0;
  double u_or = 0.0;
};

using Rng = std::mt19937_64;

// Resolves one simultaneous first-price auction: each item goes to the
// strictly higher bidder; equal bids go to AND with probability q_i(bid).
AllocationDistribution resolve(const BidPair& and_bid, const BidPair& or_bid,
                               const TieBreakRule& tie, double v,
                               double bid_cap);

// One draw consistent with resolve()'s distribution.
Outcome sample_outcome(const BidPair& and_bid, const BidPair& or_bid,
                       const TieBreakRule& tie, double v, double bid_cap,
                       Rng& rng);

// AND's expected utility from a pure bid against a pure OR bid. Does not
// depend on v.
double and_utility_vs_pure(const BidPair& and_bid, const BidPair& or_bid,
                           const TieBreakRule& tie);

}  // namespace andor
