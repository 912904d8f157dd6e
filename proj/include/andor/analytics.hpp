#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "andor/core.hpp"

namespace andor {

// Closed-form quantities of the equilibrium at a given v.
struct AnalyticsReport {
  double v = 0.0;
  double p_and_wins = 0.0;
  double revenue_and = 0.0;  // equals p_and_wins
  double revenue_or = 0.0;
  double revenue_total = 0.0;
  double welfare = 0.0;
  double optimal_welfare = 0.0;  // max(v, 1)
  double poa = 0.0;
  double welfare_loss = 0.0;
};

struct MonteCarloReport {
  AnalyticsReport mean;
  double se_p_and_wins = 0.0;
  double se_revenue_or = 0.0;
  double se_welfare = 0.0;
  long samples = 0;
};

// Probability that AND wins both items. Closed form away from v=1; the
// (v-1)^2 denominator loses precision near v=1, where the quadrature value
// of the defining integral is used instead (the singularity is removable).
double prob_and_wins(double v);

// Expected revenue collected from the OR player.
double revenue_or(double v);

AnalyticsReport report(double v);

// Golden-section minima of the price of anarchy on (1/2,1) and (1,20).
struct PoaMinimum {
  double v = 0.0;
  double poa = 0.0;
};
std::pair<PoaMinimum, PoaMinimum> find_poa_minima();

struct FigureSeries {
  std::string figure_id;
  std::vector<std::pair<double, double>> rows;  // (v, value)
};

// figure_id in {and-wins, revenue-or, revenue-total, poa, welfare-loss}.
// The v=1 crossover row is always included exactly.
FigureSeries figure_series(const std::string& figure_id, double v_min,
                           double v_max, double step);

std::vector<std::string> figure_ids();

MonteCarloReport monte_carlo_report(double v, long samples,
                                    const TieBreakRule& tie,
                                    std::uint64_t seed);

}  // namespace andor
