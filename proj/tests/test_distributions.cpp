#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "andor/distributions.hpp"

using namespace andor;

namespace {

double and_marginal_star(double v, double t) {
  const double c = std::clamp(t, 0.0, 0.5);
  return (v - 0.5) / (v - c);
}

double or_branch_star(double t) {
  const double c = std::clamp(t, 0.0, 0.5);
  return c / (1.0 - c);
}

}  // namespace

TEST_CASE("and_joint_cdf closed-form values") {
  CHECK(and_joint_cdf(1.0, 0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(and_joint_cdf(1.0, 0.5, 0.7) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(and_joint_cdf(2.0, 0.25, 0.4) ==
        doctest::Approx(1.5 / 1.75).epsilon(1e-12));
  CHECK_THROWS_AS(and_joint_cdf(0.5, 0.1, 0.1), RegimeError);
  CHECK_THROWS_AS(and_joint_cdf(0.3, 0.1, 0.1), RegimeError);
}

TEST_CASE("or_joint_cdf closed-form values") {
  CHECK(or_joint_cdf(1.0, 0.0, 0.0) == doctest::Approx(0.0));
  CHECK(or_joint_cdf(1.0, 0.5, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(or_joint_cdf(1.0, 1.0 / 3.0, 0.0) ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("AndEquilibrium marginals, atom, support") {
  const AndEquilibrium f(1.0);
  CHECK(f.marginal1(0.25) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(f.marginal2(0.25) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(f.cdf(1.0, 1.0) == doctest::Approx(1.0));
  REQUIRE(f.atoms().size() == 1);
  CHECK(f.atoms()[0].first == BidPair{0.0, 0.0});
  CHECK(f.atoms()[0].second == doctest::Approx(0.5).epsilon(1e-15));
  const auto s = f.support();
  CHECK(s.low_1 == 0.0);
  CHECK(s.high_1 == 0.5);
  CHECK(s.high_2 == 0.5);
  CHECK(s.atom_at_origin == doctest::Approx(0.5));
}

TEST_CASE("OrEquilibrium marginals and support") {
  const OrEquilibrium f(1.0);
  // marginal_1(x) = x/(2(1-x)) + 1/2 on [0,1/2]
  for (double x : {0.1, 0.25, 0.4, 0.5}) {
    CHECK(f.marginal1(x) ==
          doctest::Approx(0.5 * or_branch_star(x) + 0.5).epsilon(1e-12));
  }
  CHECK(f.atoms().empty());
  CHECK(f.axis_supported());
  const auto s = f.support();
  CHECK(s.high_1 == 0.5);
  CHECK(s.atom_at_origin == 0.0);
}

TEST_CASE("sample_and inverse transform") {
  Rng rng(99);
  const long n = 1000000;
  long at_origin = 0;
  std::vector<double> ys;
  ys.reserve(n);
  for (long k = 0; k < n; ++k) {
    const BidPair b = sample_and(1.0, rng);
    CHECK(b.x1 == b.x2);  // diagonal support
    if (b.x1 == 0.0) {
      ++at_origin;
    } else {
      CHECK(b.x1 > 0.0);
      CHECK(b.x1 <= 0.5);
      ys.push_back(b.x1);
    }
  }
  // atom frequency
  const double se = std::sqrt(0.25 / n);
  CHECK(std::abs(static_cast<double>(at_origin) / n - 0.5) < 3.0 * se);
  // KS of the full empirical CDF vs closed form
  std::sort(ys.begin(), ys.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double emp_lo = static_cast<double>(at_origin + i) / n;
    const double emp_hi = static_cast<double>(at_origin + i + 1) / n;
    const double f = and_marginal_star(1.0, ys[i]);
    ks = std::max({ks, std::abs(emp_lo - f), std::abs(emp_hi - f)});
  }
  CHECK(ks < 0.005);
}

TEST_CASE("sample_or inverse transform") {
  Rng rng(7);
  const long n = 1000000;
  long axis1 = 0;
  std::vector<double> x1s, x2s;
  for (long k = 0; k < n; ++k) {
    const BidPair b = sample_or(1.0, rng);
    CHECK(std::min(b.x1, b.x2) == 0.0);
    const double hi = std::max(b.x1, b.x2);
    CHECK(hi > 0.0);
    CHECK(hi < 0.5);
    if (b.x1 > 0.0) {
      ++axis1;
      x1s.push_back(b.x1);
    } else {
      x2s.push_back(b.x2);
    }
  }
  const double se = std::sqrt(0.25 / n);
  CHECK(std::abs(static_cast<double>(axis1) / n - 0.5) < 3.0 * se);
  for (auto* xs : {&x1s, &x2s}) {
    std::sort(xs->begin(), xs->end());
    const double m = static_cast<double>(xs->size());
    double ks = 0.0;
    for (std::size_t i = 0; i < xs->size(); ++i) {
      const double f = or_branch_star((*xs)[i]);
      ks = std::max({ks, std::abs(i / m - f), std::abs((i + 1) / m - f)});
    }
    CHECK(ks < 0.005);
  }
}

TEST_CASE("max_correlate is min of marginals and idempotent") {
  const IndependentAtomAnd f(1.0);
  const auto bf = max_correlate(f);
  for (double x : {0.0, 0.1, 0.2, 0.35, 0.5}) {
    for (double y : {0.0, 0.15, 0.3, 0.45, 0.5}) {
      CHECK(bf->cdf(x, y) ==
            doctest::Approx(std::min(f.marginal1(x), f.marginal2(y)))
                .epsilon(1e-12));
      CHECK(f.cdf(x, y) <= bf->cdf(x, y) + 1e-12);  // stochastic dominance
    }
  }
  // already maximally correlated: bF == F pointwise on a 50x50 grid
  const AndEquilibrium g(1.0);
  const auto bg = max_correlate(g);
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 50; ++j) {
      const double x = i / 49.0;
      const double y = j / 49.0;
      CHECK(bg->cdf(x, y) == doctest::Approx(g.cdf(x, y)).epsilon(1e-12));
    }
  }
}

TEST_CASE("max_correlate marginal preservation") {
  const IndependentAtomAnd f(2.0);
  const auto bf = max_correlate(f);
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    CHECK(bf->cdf(t, f.bid_cap()) ==
          doctest::Approx(f.marginal1(t)).epsilon(1e-12));
    CHECK(bf->cdf(f.bid_cap(), t) ==
          doctest::Approx(f.marginal2(t)).epsilon(1e-12));
  }
}

TEST_CASE("max_correlate of a two-point grid is the comonotone coupling") {
  const GridDistribution f({{{0.1, 0.4}, 0.5}, {{0.3, 0.2}, 0.5}}, 1.0);
  const auto bf = max_correlate(f);
  std::map<std::pair<double, double>, double> atoms;
  for (const auto& [p, m] : bf->atoms()) atoms[{p.x1, p.x2}] += m;
  REQUIRE(atoms.size() == 2);
  CHECK(atoms[{0.1, 0.2}] == doctest::Approx(0.5));
  CHECK(atoms[{0.3, 0.4}] == doctest::Approx(0.5));
}

TEST_CASE("grid distribution validates masses") {
  CHECK_THROWS(GridDistribution({{{0.1, 0.1}, 0.7}}, 1.0));
  CHECK_THROWS(GridDistribution({{{0.1, 0.1}, 1.5}, {{0.2, 0.2}, -0.5}}, 1.0));
}

TEST_CASE("grid expect against brute force") {
  const GridDistribution f(
      {{{0.0, 0.0}, 0.25}, {{0.1, 0.3}, 0.25}, {{0.4, 0.2}, 0.5}}, 1.0);
  const double e = f.expect([](BidPair b) { return b.x1 + 2.0 * b.x2; });
  CHECK(e == doctest::Approx(0.25 * (0.1 + 0.6) + 0.5 * (0.4 + 0.4))
                 .epsilon(1e-14));
}

TEST_CASE("parametric expectations against quadrature identities") {
  const AndEquilibrium f(1.0);
  CHECK(f.expect([](BidPair) { return 1.0; }) ==
        doctest::Approx(1.0).epsilon(1e-10));
  // E[x] for F*and at v=1: int y/(2(1-y)^2) dy on (0,1/2] = (1 - ln 2)/2
  const double ex = f.expect([](BidPair b) { return b.x1; });
  CHECK(ex == doctest::Approx(0.5 * (1.0 - std::log(2.0))).epsilon(1e-9));

  const OrEquilibrium g(1.0);
  CHECK(g.expect([](BidPair) { return 1.0; }) ==
        doctest::Approx(1.0).epsilon(1e-10));
  // E[max coordinate]: int x/(1-x)^2 dx on (0,1/2] = 1 - ln 2
  const double em = g.expect([](BidPair b) { return std::max(b.x1, b.x2); });
  CHECK(em == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("variant distributions share the equilibrium marginals") {
  for (double v : {0.6, 1.0, 2.0}) {
    const AndEquilibrium star(v);
    const IndependentAtomAnd ind(v);
    const BlockCoupledAnd blk(v, {2, 0, 1, 3});
    for (int i = 0; i <= 60; ++i) {
      const double t = 0.5 * i / 60.0;
      CHECK(ind.marginal1(t) ==
            doctest::Approx(star.marginal1(t)).epsilon(1e-9));
      CHECK(blk.marginal1(t) ==
            doctest::Approx(star.marginal1(t)).epsilon(1e-9));
      CHECK(blk.marginal2(t) ==
            doctest::Approx(star.marginal2(t)).epsilon(1e-9));
    }
    CHECK(ind.cdf(0.0, 0.0) == doctest::Approx(star.origin_mass()));
    CHECK(blk.cdf(0.0, 0.0) == doctest::Approx(star.origin_mass()));
  }
}

TEST_CASE("empirical distribution reproduces marginals of its source") {
  Rng rng(3);
  std::vector<BidPair> draws;
  for (int k = 0; k < 100000; ++k) draws.push_back(sample_or(1.0, rng));
  const EmpiricalDistribution emp(draws, 1.0);
  const auto s = emp.support();
  CHECK(std::abs(s.high_1 - 0.5) < 0.01);
  CHECK(std::abs(s.high_2 - 0.5) < 0.01);
  const OrEquilibrium star(1.0);
  for (double t : {0.1, 0.25, 0.4}) {
    CHECK(std::abs(emp.marginal1(t) - star.marginal1(t)) < 0.01);
  }
}

TEST_CASE("marginals helper matches member marginals") {
  const AndEquilibrium f(2.0);
  const auto [m1, m2] = marginals(f);
  for (double t : {0.0, 0.2, 0.5, 1.3}) {
    CHECK(m1(t) == doctest::Approx(f.marginal1(t)).epsilon(1e-15));
    CHECK(m2(t) == doctest::Approx(f.marginal2(t)).epsilon(1e-15));
  }
}
