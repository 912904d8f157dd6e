#pragma once

#include <cstdint>
#include <vector>

#include "andor/verifier.hpp"

namespace andor {

enum class GridMode { Full, Structured };

// Finite bimatrix discretization of the auction. Row player is AND.
struct GridGame {
  double v = 1.0;
  double bid_cap = 1.0;
  GridMode mode = GridMode::Structured;
  std::vector<double> levels;  // sorted, contains 0 and 1/2
  std::vector<BidPair> and_strategies;
  std::vector<BidPair> or_strategies;
  std::vector<double> u_and;  // flattened na x no
  std::vector<double> u_or;

  int na() const { return static_cast<int>(and_strategies.size()); }
  int no() const { return static_cast<int>(or_strategies.size()); }
  double payoff_and(int i, int j) const { return u_and[i * no() + j]; }
  double payoff_or(int i, int j) const { return u_or[i * no() + j]; }
};

GridGame build_grid_game(double v, int n_levels, GridMode mode,
                         const TieBreakRule& tie, Exec exec = Exec::Parallel);

// Exhaustive scan: profiles where neither player has a strictly improving
// pure deviation.
std::vector<std::pair<int, int>> enumerate_pure_nash(const GridGame& game,
                                                     Exec exec = Exec::Parallel);

struct MixedProfile {
  std::vector<double> and_probs;
  std::vector<double> or_probs;
  double eps = 0.0;  // exploitability against the exact matrices
};

double exploitability(const GridGame& game, const std::vector<double>& and_probs,
                      const std::vector<double>& or_probs);

// Simultaneous fictitious play over empirical opponent averages. Ties among
// best responses go to the lowest index unless randomize_ties is set, in
// which case the seeded generator picks among them.
MixedProfile solve_fictitious_play(const GridGame& game, long iterations,
                                   std::uint64_t seed,
                                   bool randomize_ties = true);

// Enumerates support pairs up to max_support_size, solves the indifference
// systems, and keeps exact equilibria of the discrete game. Singular or
// inconsistent systems are skipped and counted.
struct SupportEnumerationResult {
  std::vector<MixedProfile> equilibria;
  long candidates_skipped = 0;
};

SupportEnumerationResult solve_support_enumeration(const GridGame& game,
                                                   int max_support_size);

// KS distances of the profile's per-item marginals to the closed forms,
// plus the AND origin-atom deviation.
struct AnalyticComparison {
  double ks_and_1 = 0.0;
  double ks_and_2 = 0.0;
  double ks_or_1 = 0.0;
  double ks_or_2 = 0.0;
  double origin_atom_deviation = 0.0;
};

AnalyticComparison compare_to_analytic(const GridGame& game,
                                       const MixedProfile& profile, double v);


// Restriction of a mixed profile to a joint bid distribution over the
// strategies played with positive probability.
GridDistribution profile_distribution(const GridGame& game,
                                      const std::vector<double>& probs,
                                      Role player);

}  // namespace andor
