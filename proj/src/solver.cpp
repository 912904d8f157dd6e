#include "andor/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace andor {

namespace {

std::vector<double> make_levels(double v, int n_levels) {
  if (n_levels < 2) throw std::invalid_argument("n_levels must be >= 2");
  const double cap = default_bid_cap(v);
  std::vector<double> levels;
  levels.reserve(n_levels + 1);
  for (int i = 0; i < n_levels; ++i) {
    levels.push_back(cap * i / (n_levels - 1));
  }
  const bool has_half = std::any_of(levels.begin(), levels.end(), [](double l) {
    return std::abs(l - 0.5) < 1e-12;
  });
  if (!has_half) levels.push_back(0.5);
  std::sort(levels.begin(), levels.end());
  return levels;
}

}  // namespace

GridGame build_grid_game(double v, int n_levels, GridMode mode,
                         const TieBreakRule& tie, Exec exec) {
  GridGame g;
  g.v = v;
  g.bid_cap = default_bid_cap(v);
  g.mode = mode;
  g.levels = make_levels(v, n_levels);

  if (mode == GridMode::Full) {
    for (double a : g.levels) {
      for (double b : g.levels) {
        g.and_strategies.push_back({a, b});
      }
    }
    g.or_strategies = g.and_strategies;
  } else {
    for (double l : g.levels) g.and_strategies.push_back({l, l});
    g.or_strategies.push_back({0.0, 0.0});
    for (double l : g.levels) {
      if (l > 0.0) g.or_strategies.push_back({l, 0.0});
    }
    for (double l : g.levels) {
      if (l > 0.0) g.or_strategies.push_back({0.0, l});
    }
  }

  const int na = g.na();
  const int no = g.no();
  g.u_and.assign(static_cast<std::size_t>(na) * no, 0.0);
  g.u_or.assign(static_cast<std::size_t>(na) * no, 0.0);

#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < no; ++j) {
      const AllocationDistribution d =
          resolve(g.and_strategies[i], g.or_strategies[j], tie, v, g.bid_cap);
      g.u_and[static_cast<std::size_t>(i) * no + j] = d.u_and;
      g.u_or[static_cast<std::size_t>(i) * no + j] = d.u_or;
    }
  }
  return g;
}

std::vector<std::pair<int, int>> enumerate_pure_nash(const GridGame& game,
                                                     Exec exec) {
  const int na = game.na();
  const int no = game.no();
  std::vector<double> col_max(no, -1e300);  // best AND reply per OR strategy
  std::vector<double> row_max(na, -1e300);  // best OR reply per AND strategy

#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
  for (int j = 0; j < no; ++j) {
    double m = -1e300;
    for (int i = 0; i < na; ++i) m = std::max(m, game.payoff_and(i, j));
    col_max[j] = m;
  }
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
  for (int i = 0; i < na; ++i) {
    double m = -1e300;
    for (int j = 0; j < no; ++j) m = std::max(m, game.payoff_or(i, j));
    row_max[i] = m;
  }

  std::vector<std::pair<int, int>> nash;
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < no; ++j) {
      if (game.payoff_and(i, j) == col_max[j] &&
          game.payoff_or(i, j) == row_max[i]) {
        nash.emplace_back(i, j);
      }
    }
  }
  return nash;
}

double exploitability(const GridGame& game, const std::vector<double>& and_probs,
                      const std::vector<double>& or_probs) {
  const int na = game.na();
  const int no = game.no();
  double value_and = 0.0;
  double value_or = 0.0;
  double best_and = -1e300;
  double best_or = -1e300;
  for (int i = 0; i < na; ++i) {
    double u = 0.0;
    for (int j = 0; j < no; ++j) u += game.payoff_and(i, j) * or_probs[j];
    best_and = std::max(best_and, u);
    value_and += and_probs[i] * u;
  }
  for (int j = 0; j < no; ++j) {
    double u = 0.0;
    for (int i = 0; i < na; ++i) u += game.payoff_or(i, j) * and_probs[i];
    best_or = std::max(best_or, u);
    value_or += or_probs[j] * u;
  }
  return std::max(best_and - value_and, best_or - value_or);
}

MixedProfile solve_fictitious_play(const GridGame& game, long iterations,
                                   std::uint64_t seed, bool randomize_ties) {
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  const int na = game.na();
  const int no = game.no();
  Rng rng(seed);

  std::vector<double> sum_and(na, 0.0);  // cumulative payoff vs OR history
  std::vector<double> sum_or(no, 0.0);
  std::vector<double> count_and(na, 0.0);
  std::vector<double> count_or(no, 0.0);
  std::vector<int> ties;

  auto pick = [&](const std::vector<double>& sums) {
    const double m = *std::max_element(sums.begin(), sums.end());
    if (!randomize_ties) {
      return static_cast<int>(std::find(sums.begin(), sums.end(), m) -
                              sums.begin());
    }
    ties.clear();
    for (int k = 0; k < static_cast<int>(sums.size()); ++k) {
      if (sums[k] == m) ties.push_back(k);
    }
    std::uniform_int_distribution<std::size_t> d(0, ties.size() - 1);
    return ties[d(rng)];
  };

  for (long t = 0; t < iterations; ++t) {
    const int i = pick(sum_and);
    const int j = pick(sum_or);
    count_and[i] += 1.0;
    count_or[j] += 1.0;
    for (int k = 0; k < na; ++k) sum_and[k] += game.payoff_and(k, j);
    for (int k = 0; k < no; ++k) sum_or[k] += game.payoff_or(i, k);
  }

  MixedProfile p;
  p.and_probs.resize(na);
  p.or_probs.resize(no);
  for (int k = 0; k < na; ++k) p.and_probs[k] = count_and[k] / iterations;
  for (int k = 0; k < no; ++k) p.or_probs[k] = count_or[k] / iterations;
  p.eps = exploitability(game, p.and_probs, p.or_probs);
  return p;
}

namespace {

bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> c(k);
  std::iota(c.begin(), c.end(), 0);
  do {
    out.push_back(c);
  } while (next_combination(c, n));
  return out;
}

// Solves the indifference system for one side: mixture y over `own_support`
// of the column player making every row in `opp_support` indifferent.
// Returns false when the system is inconsistent.
bool solve_indifference(const std::vector<double>& payoff, int stride,
                        const std::vector<int>& rows,
                        const std::vector<int>& cols, bool transpose,
                        std::vector<double>& probs, double& value) {
  const int nr = static_cast<int>(rows.size());
  const int nc = static_cast<int>(cols.size());
  Eigen::MatrixXd m(nr + 1, nc + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nr + 1);
  m.setZero();
  for (int r = 0; r < nr; ++r) {
    for (int c = 0; c < nc; ++c) {
      const double u = transpose ? payoff[cols[c] * stride + rows[r]]
                                 : payoff[rows[r] * stride + cols[c]];
      m(r, c) = u;
    }
    m(r, nc) = -1.0;
  }
  for (int c = 0; c < nc; ++c) m(nr, c) = 1.0;
  rhs(nr) = 1.0;

  Eigen::VectorXd sol = m.colPivHouseholderQr().solve(rhs);
  if (!sol.allFinite()) return false;
  if ((m * sol - rhs).norm() > 1e-8) return false;

  probs.assign(nc, 0.0);
  double total = 0.0;
  for (int c = 0; c < nc; ++c) {
    if (sol(c) < -1e-8) return false;
    probs[c] = std::max(0.0, sol(c));
    total += probs[c];
  }
  if (total <= 0.0) return false;
  for (double& p : probs) p /= total;
  value = sol(nc);
  return true;
}

}  // namespace

SupportEnumerationResult solve_support_enumeration(const GridGame& game,
                                                   int max_support_size) {
  if (max_support_size < 1) {
    throw std::invalid_argument("max_support_size must be >= 1");
  }
  const int na = game.na();
  const int no = game.no();
  const int ka = std::min(max_support_size, na);
  const int ko = std::min(max_support_size, no);

  SupportEnumerationResult result;

  for (int sa = 1; sa <= ka; ++sa) {
    const auto and_supports = combinations(na, sa);
    for (int so = 1; so <= ko; ++so) {
      const auto or_supports = combinations(no, so);
      for (const auto& SA : and_supports) {
        for (const auto& SO : or_supports) {
          std::vector<double> y;
          std::vector<double> x;
          double u_and_val = 0.0;
          double u_or_val = 0.0;
          if (!solve_indifference(game.u_and, no, SA, SO, false, y,
                                  u_and_val) ||
              !solve_indifference(game.u_or, no, SO, SA, true, x, u_or_val)) {
            ++result.candidates_skipped;
            continue;
          }

          std::vector<double> and_probs(na, 0.0);
          std::vector<double> or_probs(no, 0.0);
          for (int r = 0; r < sa; ++r) and_probs[SA[r]] = x[r];
          for (int c = 0; c < so; ++c) or_probs[SO[c]] = y[c];

          // No profitable outside deviation for either player.
          bool ok = true;
          for (int i = 0; i < na && ok; ++i) {
            double u = 0.0;
            for (int c = 0; c < so; ++c) {
              u += game.payoff_and(i, SO[c]) * y[c];
            }
            if (u > u_and_val + 1e-8) ok = false;
          }
          for (int j = 0; j < no && ok; ++j) {
            double u = 0.0;
            for (int r = 0; r < sa; ++r) {
              u += game.payoff_or(SA[r], j) * x[r];
            }
            if (u > u_or_val + 1e-8) ok = false;
          }
          if (!ok) continue;

          const bool duplicate = std::any_of(
              result.equilibria.begin(), result.equilibria.end(),
              [&](const MixedProfile& q) {
                for (int i = 0; i < na; ++i) {
                  if (std::abs(q.and_probs[i] - and_probs[i]) > 1e-7) {
                    return false;
                  }
                }
                for (int j = 0; j < no; ++j) {
                  if (std::abs(q.or_probs[j] - or_probs[j]) > 1e-7) {
                    return false;
                  }
                }
                return true;
              });
          if (duplicate) continue;

          MixedProfile p;
          p.and_probs = std::move(and_probs);
          p.or_probs = std::move(or_probs);
          p.eps = exploitability(game, p.and_probs, p.or_probs);
          result.equilibria.push_back(std::move(p));
        }
      }
    }
  }
  return result;
}

namespace {

double and_marginal_closed_form(double v, double t) {
  const double c = std::clamp(t, 0.0, 0.5);
  return std::min(1.0, (v - 0.5) / (v - c));
}

double or_marginal_closed_form(double t) {
  const double c = std::clamp(t, 0.0, 0.5);
  return 0.5 + c / (2.0 * (1.0 - c));
}

}  // namespace

AnalyticComparison compare_to_analytic(const GridGame& game,
                                       const MixedProfile& profile, double v) {
  AnalyticComparison cmp;
  auto ks = [&](const std::vector<BidPair>& strategies,
                const std::vector<double>& probs, bool first_coord,
                auto&& closed_form) {
    double worst = 0.0;
    for (double t : game.levels) {
      double emp = 0.0;
      for (std::size_t s = 0; s < strategies.size(); ++s) {
        const double c = first_coord ? strategies[s].x1 : strategies[s].x2;
        if (c <= t) emp += probs[s];
      }
      worst = std::max(worst, std::abs(emp - closed_form(t)));
    }
    return worst;
  };

  cmp.ks_and_1 = ks(game.and_strategies, profile.and_probs, true,
                    [&](double t) { return and_marginal_closed_form(v, t); });
  cmp.ks_and_2 = ks(game.and_strategies, profile.and_probs, false,
                    [&](double t) { return and_marginal_closed_form(v, t); });
  cmp.ks_or_1 = ks(game.or_strategies, profile.or_probs, true,
                   or_marginal_closed_form);
  cmp.ks_or_2 = ks(game.or_strategies, profile.or_probs, false,
                   or_marginal_closed_form);

  double origin = 0.0;
  for (int i = 0; i < game.na(); ++i) {
    if (game.and_strategies[i].x1 == 0.0 && game.and_strategies[i].x2 == 0.0) {
      origin += profile.and_probs[i];
    }
  }
  cmp.origin_atom_deviation = std::abs(origin - (1.0 - 1.0 / (2.0 * v)));
  return cmp;
}

GridDistribution profile_distribution(const GridGame& game,
                                      const std::vector<double>& probs,
                                      Role player) {
  const auto& strategies =
      player == Role::And ? game.and_strategies : game.or_strategies;
  std::vector<std::pair<BidPair, double>> masses;
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    if (probs[i] > 0.0) masses.push_back({strategies[i], probs[i]});
  }
  return GridDistribution(std::move(masses), game.bid_cap);
}

}  // namespace andor
