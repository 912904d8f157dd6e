#include "andor/core.hpp"

#include <sstream>

namespace andor {

TieBreakRule TieBreakRule::constant(double q) {
  auto f = [q](double) { return q; };
  return TieBreakRule{f, f};
}

namespace {

void check_bid(const BidPair& b, double cap, const char* who) {
  auto bad = [&](const char* coord, double x) {
    std::ostringstream os;
    os << who << " bid " << coord << " = " << x << " outside [0," << cap << "]";
    throw std::domain_error(os.str());
  };
  if (b.x1 < 0.0 || b.x1 > cap) bad("x1", b.x1);
  if (b.x2 < 0.0 || b.x2 > cap) bad("x2", b.x2);
}

// Probability that AND wins item `item` for fixed pure bids.
double and_win_prob(int item, double a, double o, const TieBreakRule& tie) {
  if (a > o) return 1.0;
  if (a < o) return 0.0;
  return tie.q(item, a);
}

}  // namespace

AllocationDistribution resolve(const BidPair& and_bid, const BidPair& or_bid,
                               const TieBreakRule& tie, double v,
                               double bid_cap) {
  check_bid(and_bid, bid_cap, "AND");
  check_bid(or_bid, bid_cap, "OR");

  const double p1 = and_win_prob(1, and_bid.x1, or_bid.x1, tie);
  const double p2 = and_win_prob(2, and_bid.x2, or_bid.x2, tie);

  AllocationDistribution d;
  d.p_and_both = p1 * p2;
  d.p_and_1_only = p1 * (1.0 - p2);
  d.p_and_2_only = (1.0 - p1) * p2;
  d.p_and_none = (1.0 - p1) * (1.0 - p2);
  d.pay_and = p1 * and_bid.x1 + p2 * and_bid.x2;
  d.pay_or = (1.0 - p1) * or_bid.x1 + (1.0 - p2) * or_bid.x2;
  d.u_and = d.p_and_both * 1.0 - d.pay_and;
  d.u_or = (1.0 - d.p_and_both) * v - d.pay_or;
  return d;
}

Outcome sample_outcome(const BidPair& and_bid, const BidPair& or_bid,
                       const TieBreakRule& tie, double v, double bid_cap,
                       Rng& rng) {
  check_bid(and_bid, bid_cap, "AND");
  check_bid(or_bid, bid_cap, "OR");
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto win = [&](int item, double a, double o) {
    if (a > o) return true;
    if (a < o) return false;
    return unit(rng) < tie.q(item, a);
  };

  Outcome out;
  out.and_wins_1 = win(1, and_bid.x1, or_bid.x1);
  out.and_wins_2 = win(2, and_bid.x2, or_bid.x2);
  out.pay_and = (out.and_wins_1 ? and_bid.x1 : 0.0) +
                (out.and_wins_2 ? and_bid.x2 : 0.0);
  out.pay_or = (!out.and_wins_1 ? or_bid.x1 : 0.0) +
               (!out.and_wins_2 ? or_bid.x2 : 0.0);
  out.u_and = (out.and_wins_1 && out.and_wins_2 ? 1.0 : 0.0) - out.pay_and;
  out.u_or = (!(out.and_wins_1 && out.and_wins_2) ? v : 0.0) - out.pay_or;
  return out;
}

double and_utility_vs_pure(const BidPair& and_bid, const BidPair& or_bid,
                           const TieBreakRule& tie) {
  const double p1 = and_win_prob(1, and_bid.x1, or_bid.x1, tie);
  const double p2 = and_win_prob(2, and_bid.x2, or_bid.x2, tie);
  return p1 * p2 - (p1 * and_bid.x1 + p2 * and_bid.x2);
}

}  // namespace andor
