#include "andor/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace andor {

namespace {

void check_box(const BidPair& b, double cap) {
  if (b.x1 < 0.0 || b.x1 > cap || b.x2 < 0.0 || b.x2 > cap) {
    std::ostringstream os;
    os << "bid (" << b.x1 << "," << b.x2 << ") outside [0," << cap << "]^2";
    throw std::domain_error(os.str());
  }
}

// Atom masses of F on the coordinate axes, used when an OR bid has a zero
// coordinate and ties against the AND mass at 0.
struct AxisMasses {
  double x1_zero = 0.0;  // mass { X == 0 }
  double x2_zero = 0.0;  // mass { Y == 0 }
};

AxisMasses axis_masses(const JointBidDistribution& f) {
  AxisMasses a;
  for (const auto& [p, m] : f.atoms()) {
    if (p.x1 == 0.0) a.x1_zero += m;
    if (p.x2 == 0.0) a.x2_zero += m;
  }
  return a;
}

double mass_below(const JointBidDistribution& f, bool zero_coord_is_2,
                  double other) {
  // mass { X <= other, Y == 0 } (or the mirror image)
  double s = 0.0;
  for (const auto& [p, m] : f.atoms()) {
    if (zero_coord_is_2 ? (p.x2 == 0.0 && p.x1 <= other)
                        : (p.x1 == 0.0 && p.x2 <= other)) {
      s += m;
    }
  }
  return s;
}

}  // namespace

double or_utility_of_bid(const JointBidDistribution& f_and, double v,
                         const BidPair& bid, const TieBreakRule& tie) {
  check_box(bid, f_and.bid_cap());
  const double x = bid.x1;
  const double y = bid.x2;

  if (x > 0.0 && y > 0.0) {
    return f_and.marginal1(x) * (v - x) + f_and.marginal2(y) * (v - y) -
           f_and.cdf(x, y) * v;
  }

  const AxisMasses am = axis_masses(f_and);
  const double lose1 = 1.0 - tie.q1(0.0);  // OR's tie-win probability at 0
  const double lose2 = 1.0 - tie.q2(0.0);

  const double p1 = x > 0.0 ? f_and.marginal1(x) : lose1 * am.x1_zero;
  const double p2 = y > 0.0 ? f_and.marginal2(y) : lose2 * am.x2_zero;
  double p_both = 0.0;
  if (x > 0.0) {
    p_both = lose2 * mass_below(f_and, true, x);
  } else if (y > 0.0) {
    p_both = lose1 * mass_below(f_and, false, y);
  } else {
    for (const auto& [p, m] : f_and.atoms()) {
      if (p.x1 == 0.0 && p.x2 == 0.0) p_both += lose1 * lose2 * m;
    }
  }
  return p1 * (v - x) + p2 * (v - y) - p_both * v;
}

double or_utility_origin_limit(const JointBidDistribution& f_and, double v) {
  return v * (f_and.marginal1(0.0) + f_and.marginal2(0.0) - f_and.cdf(0.0, 0.0));
}

double and_utility_of_bid(const JointBidDistribution& f_or,
                          const BidPair& bid, const TieBreakRule& tie) {
  check_box(bid, f_or.bid_cap());
  const double x = bid.x1;
  const double y = bid.x2;

  if (f_or.axis_supported() && f_or.atoms().empty()) {
    const double alpha = f_or.marginal1(0.0);  // P[OR bids 0 on item 1]
    const double t1 = x > 0.0 ? 1.0 : tie.q1(0.0);
    const double t2 = y > 0.0 ? 1.0 : tie.q2(0.0);
    const double a = f_or.cdf(x, 0.0);  // P[OR on axis 1, bid <= x]
    const double b = f_or.cdf(0.0, y);
    const double value = t2 * a + t1 * b;
    const double pay = x * (alpha * t1 + a) + y * ((1.0 - alpha) * t2 + b);
    return value - pay;
  }
  return f_or.expect(
      [&](BidPair o) { return and_utility_vs_pure(bid, o, tie); });
}

DuelStats duel_stats(const JointBidDistribution& f_and,
                     const JointBidDistribution& f_or, double v,
                     const TieBreakRule& tie) {
  DuelStats s;
  // Allocation probabilities and OR's payment, seen from the OR side.
  s.p_and_both = f_or.expect([&](BidPair o) {
    return f_and.win_probs(o, tie, Role::And).both;
  });
  s.p_and_1 = f_or.expect([&](BidPair o) {
    return f_and.win_probs(o, tie, Role::And).item1;
  });
  s.p_and_2 = f_or.expect([&](BidPair o) {
    return f_and.win_probs(o, tie, Role::And).item2;
  });
  s.pay_or = f_or.expect([&](BidPair o) {
    const WinProbs w = f_and.win_probs(o, tie, Role::And);
    return (1.0 - w.item1) * o.x1 + (1.0 - w.item2) * o.x2;
  });
  // AND's payment depends on its own bid, seen from the AND side.
  s.pay_and = f_and.expect([&](BidPair a) {
    const WinProbs w = f_or.win_probs(a, tie, Role::Or);
    return (1.0 - w.item1) * a.x1 + (1.0 - w.item2) * a.x2;
  });
  s.p_and_none = 1.0 - s.p_and_1 - s.p_and_2 + s.p_and_both;
  s.p_or_any = 1.0 - s.p_and_both;
  s.u_and = s.p_and_both - s.pay_and;
  s.u_or = s.p_or_any * v - s.pay_or;
  s.revenue = s.pay_and + s.pay_or;
  s.welfare = s.p_and_both + s.p_or_any * v;
  return s;
}

EquilibriumReport best_response_gap(const JointBidDistribution& f_and,
                                    const JointBidDistribution& f_or,
                                    double v, const TieBreakRule& tie,
                                    double grid_step, double epsilon,
                                    Exec exec) {
  if (!(grid_step > 0.0)) throw std::invalid_argument("grid_step must be > 0");
  const double cap = f_and.bid_cap();

  std::vector<double> grid;
  for (double t = 0.0; t < cap; t += grid_step) grid.push_back(t);
  grid.push_back(cap);
  grid.push_back(0.5);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  const int n = static_cast<int>(grid.size());

  const DuelStats stats = duel_stats(f_and, f_or, v, tie);

  double best_and = -1e300;
  double best_or = or_utility_origin_limit(f_and, v);

#pragma omp parallel for schedule(static) reduction(max : best_and, best_or) \
    if (exec == Exec::Parallel)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const BidPair b{grid[i], grid[j]};
      best_and = std::max(best_and, and_utility_of_bid(f_or, b, tie));
      best_or = std::max(best_or, or_utility_of_bid(f_and, v, b, tie));
    }
  }

  EquilibriumReport r;
  r.u_and_star = stats.u_and;
  r.u_or_star = stats.u_or;
  r.eps_and = best_and - stats.u_and;
  r.eps_or = best_or - stats.u_or;
  r.epsilon = epsilon;
  r.is_eps_nash = std::max(r.eps_and, r.eps_or) <= epsilon;
  return r;
}

CharacterizationResult check_characterization(const JointBidDistribution& f_and,
                                              const JointBidDistribution& f_or,
                                              double v, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  CharacterizationResult res;
  const OrEquilibrium or_star(v);
  const AndEquilibrium and_star(v);
  const double cap = f_and.bid_cap();

  const int kGridPoints = 101;
  std::vector<double> grid;
  grid.reserve(kGridPoints + 2);
  for (int i = 0; i < kGridPoints; ++i) {
    grid.push_back(cap * i / (kGridPoints - 1));
  }
  grid.push_back(0.5);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  auto flag = [&](int clause, double x, double y, double mag) {
    res.ok = false;
    res.violations.push_back({clause, x, y, mag});
  };

  for (double x : grid) {
    for (double y : grid) {
      const double d = std::abs(f_or.cdf(x, y) - or_star.cdf(x, y));
      if (d > tol) flag(1, x, y, d);
    }
  }
  for (double x : grid) {
    const double d1 = std::abs(f_and.marginal1(x) - and_star.marginal1(x));
    if (d1 > tol) flag(2, x, cap, d1);
    const double d2 = std::abs(f_and.marginal2(x) - and_star.marginal2(x));
    if (d2 > tol) flag(2, cap, x, d2);
  }
  const double d0 = std::abs(f_and.cdf(0.0, 0.0) - and_star.origin_mass());
  if (d0 > tol) flag(3, 0.0, 0.0, d0);
  return res;
}

bool weak_dominance_check(const JointBidDistribution& f,
                          const TieBreakRule& tie,
                          std::span<const BidPair> pure_or_bids, double tol) {
  const auto bf = max_correlate(f);
  for (const BidPair& o : pure_or_bids) {
    const double u = f.expect(
        [&](BidPair a) { return and_utility_vs_pure(a, o, tie); });
    const double ub = bf->expect(
        [&](BidPair a) { return and_utility_vs_pure(a, o, tie); });
    if (ub < u - tol) return false;
  }
  return true;
}

SupportDiagnostics support_diagnostics(const JointBidDistribution& f) {
  return f.support();
}

EquivalenceReport identical_marginal_equivalences(
    const JointBidDistribution& f, const JointBidDistribution& f_prime,
    const JointBidDistribution& f_or, double v, const TieBreakRule& tie) {
  const double cap = f.bid_cap();
  const int kGridPoints = 201;
  for (int i = 0; i < kGridPoints; ++i) {
    const double t = cap * i / (kGridPoints - 1);
    if (std::abs(f.marginal1(t) - f_prime.marginal1(t)) > 1e-9 ||
        std::abs(f.marginal2(t) - f_prime.marginal2(t)) > 1e-9) {
      throw std::invalid_argument(
          "distributions do not have identical marginals");
    }
  }

  EquivalenceReport rep;
  rep.first = duel_stats(f, f_or, v, tie);
  rep.second = duel_stats(f_prime, f_or, v, tie);

  // The five orderings must agree in direction; |d| below tol counts as either
  // direction.
  const double tol = 1e-9;
  auto dir = [tol](double d) { return d > tol ? 1 : (d < -tol ? -1 : 0); };
  const int c1 = dir(rep.second.u_and - rep.first.u_and);
  const int c2 = dir(rep.first.u_or - rep.second.u_or);
  const int c3 = dir(rep.second.p_and_both - rep.first.p_and_both);
  const int c4 = dir(rep.first.p_or_any - rep.second.p_or_any);
  const int c5 = dir(rep.second.p_and_none - rep.first.p_and_none);
  auto agree = [](int a, int b) { return a == 0 || b == 0 || a == b; };
  rep.orderings_consistent = agree(c1, c2) && agree(c1, c3) && agree(c1, c4) &&
                             agree(c1, c5) && agree(c2, c3) && agree(c2, c4) &&
                             agree(c2, c5) && agree(c3, c4) && agree(c3, c5) &&
                             agree(c4, c5);
  rep.payment_diff_and = rep.second.pay_and - rep.first.pay_and;
  rep.payment_diff_or = rep.second.pay_or - rep.first.pay_or;
  return rep;
}

}  // namespace andor
