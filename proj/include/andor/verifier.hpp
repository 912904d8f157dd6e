#pragma once

#include <span>
#include <vector>

#include "andor/distributions.hpp"

namespace andor {

enum class Exec { Serial, Parallel };

// Expected outcome of the auction when both players play mixed strategies.
struct DuelStats {
  double p_and_both = 0.0;
  double p_and_1 = 0.0;   // AND wins item 1
  double p_and_2 = 0.0;
  double p_and_none = 0.0;
  double p_or_any = 0.0;
  double pay_and = 0.0;
  double pay_or = 0.0;
  double u_and = 0.0;
  double u_or = 0.0;
  double revenue = 0.0;
  double welfare = 0.0;
};

struct EquilibriumReport {
  double eps_and = 0.0;
  double eps_or = 0.0;
  double u_and_star = 0.0;
  double u_or_star = 0.0;
  double epsilon = 0.0;    // the threshold is_eps_nash was judged at
  bool is_eps_nash = false;
};

struct Violation {
  int clause = 0;          // 1: F_or != F*or, 2: AND marginals, 3: origin atom
  double x = 0.0;
  double y = 0.0;
  double magnitude = 0.0;
};

struct CharacterizationResult {
  bool ok = true;
  std::vector<Violation> violations;
};

// The five jointly-ordered outcome quantities under two pairings that share
// AND marginals.
struct EquivalenceReport {
  DuelStats first;
  DuelStats second;
  bool orderings_consistent = false;
  double payment_diff_and = 0.0;
  double payment_diff_or = 0.0;
};

// Expected utility of a pure OR bid against the AND mixed strategy.
// For strictly positive bids this is the inclusion-exclusion form
// F(x,H)(v-x) + F(H,y)(v-y) - F(x,y)v; a zero coordinate ties against the
// AND atom at 0 and is split by the tie rule.
double or_utility_of_bid(const JointBidDistribution& f_and, double v,
                         const BidPair& bid, const TieBreakRule& tie);

// Right-limit of OR's utility as the bid approaches (0+,0+); the supremum
// is approached there but not attained.
double or_utility_origin_limit(const JointBidDistribution& f_and, double v);

// Expected utility of a pure AND bid against the OR mixed strategy. Uses the
// separable axis decomposition when F_or is axis-supported and atomless;
// otherwise falls back to direct expectation.
double and_utility_of_bid(const JointBidDistribution& f_or,
                          const BidPair& bid, const TieBreakRule& tie);

// Allocation probabilities, payments and utilities of the mixed pair.
DuelStats duel_stats(const JointBidDistribution& f_and,
                     const JointBidDistribution& f_or, double v,
                     const TieBreakRule& tie);

// Best-response gaps over a bid grid containing 0, 1/2, H and all multiples
// of grid_step, plus the analytic right-limit at the origin for OR.
EquilibriumReport best_response_gap(const JointBidDistribution& f_and,
                                    const JointBidDistribution& f_or,
                                    double v, const TieBreakRule& tie,
                                    double grid_step, double epsilon = 1e-6,
                                    Exec exec = Exec::Parallel);

// Equilibrium characterization: (i) F_or == F*or pointwise,
// (ii) AND marginals match F*and, (iii) origin mass is 1 - 1/(2v).
CharacterizationResult check_characterization(const JointBidDistribution& f_and,
                                              const JointBidDistribution& f_or,
                                              double v, double tol);

// True iff max_correlate(F) does at least as well as F against every
// supplied pure OR bid.
bool weak_dominance_check(const JointBidDistribution& f,
                          const TieBreakRule& tie,
                          std::span<const BidPair> pure_or_bids,
                          double tol = 1e-10);

SupportDiagnostics support_diagnostics(const JointBidDistribution& f);

// Requires F and F' to have identical marginals (checked on a grid).
EquivalenceReport identical_marginal_equivalences(
    const JointBidDistribution& f, const JointBidDistribution& f_prime,
    const JointBidDistribution& f_or, double v, const TieBreakRule& tie);

}  // namespace andor
