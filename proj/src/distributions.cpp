#include "andor/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "andor/quadrature.hpp"

namespace andor {

namespace {

constexpr double kHalf = 0.5;

double clamp_half(double t) { return std::clamp(t, 0.0, kHalf); }

void require_regime(double v, const char* what) {
  if (!(v > kHalf)) {
    std::ostringstream os;
    os << what << " requires v > 1/2, got v = " << v;
    throw RegimeError(os.str());
  }
}

void require_in_box(double v, double x, double y) {
  const double cap = default_bid_cap(v);
  if (x < 0.0 || x > cap || y < 0.0 || y > cap) {
    std::ostringstream os;
    os << "bid (" << x << "," << y << ") outside [0," << cap << "]^2";
    throw std::domain_error(os.str());
  }
}

// Equilibrium AND marginal CDF on [0,1/2].
double and_marginal_cdf(double v, double t) {
  return (v - kHalf) / (v - clamp_half(t));
}

}  // namespace

// ---------------------------------------------------------------------------
// Base-class win probabilities.
//
// Strict comparisons come from the CDFs; tie mass at the opponent's exact bid
// is read off the atom list (the continuous part is atomless by contract).

WinProbs JointBidDistribution::win_probs(const BidPair& opponent,
                                         const TieBreakRule& tie,
                                         Role self) const {
  const double b1 = opponent.x1;
  const double b2 = opponent.x2;
  const double t1 = self == Role::And ? tie.q1(b1) : 1.0 - tie.q1(b1);
  const double t2 = self == Role::And ? tie.q2(b2) : 1.0 - tie.q2(b2);

  double on_b1 = 0.0;       // mass { X == b1 }
  double on_b2 = 0.0;       // mass { Y == b2 }
  double on_b1_above = 0.0; // mass { X == b1, Y > b2 }
  double on_b2_above = 0.0; // mass { X > b1, Y == b2 }
  double on_both = 0.0;     // mass { X == b1, Y == b2 }
  for (const auto& [p, m] : atoms()) {
    const bool e1 = p.x1 == b1;
    const bool e2 = p.x2 == b2;
    if (e1) {
      on_b1 += m;
      if (p.x2 > b2) on_b1_above += m;
    }
    if (e2) {
      on_b2 += m;
      if (p.x1 > b1) on_b2_above += m;
    }
    if (e1 && e2) on_both += m;
  }

  WinProbs w;
  w.item1 = 1.0 - marginal1(b1) + t1 * on_b1;
  w.item2 = 1.0 - marginal2(b2) + t2 * on_b2;
  w.both = 1.0 - marginal1(b1) - marginal2(b2) + cdf(b1, b2) +
           t1 * on_b1_above + t2 * on_b2_above + t1 * t2 * on_both;
  return w;
}

// ---------------------------------------------------------------------------
// AndEquilibrium

AndEquilibrium::AndEquilibrium(double v)
    : JointBidDistribution(default_bid_cap(v)), v_(v) {
  require_regime(v, "AndEquilibrium");
}

double AndEquilibrium::cdf(double x, double y) const {
  return and_marginal_cdf(v_, std::min(x, y));
}

std::vector<std::pair<BidPair, double>> AndEquilibrium::atoms() const {
  return {{BidPair{0.0, 0.0}, origin_mass()}};
}

SupportDiagnostics AndEquilibrium::support() const {
  return {0.0, 0.0, kHalf, kHalf, origin_mass()};
}

std::unique_ptr<JointBidDistribution> AndEquilibrium::clone() const {
  return std::make_unique<AndEquilibrium>(*this);
}

double AndEquilibrium::expect(const std::function<double(BidPair)>& f) const {
  const double density_scale = v_ - kHalf;
  const double cont = integrate(
      [&](double y) { return f({y, y}) * density_scale / ((v_ - y) * (v_ - y)); },
      0.0, kHalf);
  return origin_mass() * f({0.0, 0.0}) + cont;
}

// ---------------------------------------------------------------------------
// OrEquilibrium

OrEquilibrium::OrEquilibrium(double v)
    : JointBidDistribution(default_bid_cap(v)), v_(v) {}

double OrEquilibrium::cdf(double x, double y) const {
  const double a = clamp_half(x);
  const double b = clamp_half(y);
  return a / (2.0 * (1.0 - a)) + b / (2.0 * (1.0 - b));
}

std::vector<std::pair<BidPair, double>> OrEquilibrium::atoms() const {
  return {};
}

SupportDiagnostics OrEquilibrium::support() const {
  return {0.0, 0.0, kHalf, kHalf, 0.0};
}

std::unique_ptr<JointBidDistribution> OrEquilibrium::clone() const {
  return std::make_unique<OrEquilibrium>(*this);
}

double OrEquilibrium::expect(const std::function<double(BidPair)>& f) const {
  // Density of the positive coordinate: d/dx [x/(1-x)] = 1/(1-x)^2.
  const double axis1 = integrate(
      [&](double x) { return f({x, 0.0}) / ((1.0 - x) * (1.0 - x)); }, 0.0,
      kHalf);
  const double axis2 = integrate(
      [&](double x) { return f({0.0, x}) / ((1.0 - x) * (1.0 - x)); }, 0.0,
      kHalf);
  return 0.5 * (axis1 + axis2);
}

// ---------------------------------------------------------------------------
// IndependentAtomAnd

IndependentAtomAnd::IndependentAtomAnd(double v)
    : JointBidDistribution(default_bid_cap(v)), v_(v) {
  require_regime(v, "IndependentAtomAnd");
}

double IndependentAtomAnd::quantile(double u) const {
  const double p = origin_mass() + (1.0 - origin_mass()) * u;
  return v_ - (v_ - kHalf) / p;
}

double IndependentAtomAnd::cdf(double x, double y) const {
  const double m0 = origin_mass();
  const double gx = (and_marginal_cdf(v_, x) - m0) / (1.0 - m0);
  const double gy = (and_marginal_cdf(v_, y) - m0) / (1.0 - m0);
  return m0 + (1.0 - m0) * gx * gy;
}

std::vector<std::pair<BidPair, double>> IndependentAtomAnd::atoms() const {
  return {{BidPair{0.0, 0.0}, origin_mass()}};
}

SupportDiagnostics IndependentAtomAnd::support() const {
  return {0.0, 0.0, kHalf, kHalf, origin_mass()};
}

std::unique_ptr<JointBidDistribution> IndependentAtomAnd::clone() const {
  return std::make_unique<IndependentAtomAnd>(*this);
}

double IndependentAtomAnd::expect(
    const std::function<double(BidPair)>& f) const {
  const double m0 = origin_mass();
  const double cont = integrate(
      [&](double u) {
        const double x = quantile(u);
        return integrate([&](double w) { return f({x, quantile(w)}); }, 0.0,
                         1.0, 1e-11);
      },
      0.0, 1.0, 1e-10);
  return m0 * f({0.0, 0.0}) + (1.0 - m0) * cont;
}

// ---------------------------------------------------------------------------
// BlockCoupledAnd

BlockCoupledAnd::BlockCoupledAnd(double v, std::vector<int> permutation)
    : JointBidDistribution(default_bid_cap(v)), v_(v),
      perm_(std::move(permutation)) {
  require_regime(v, "BlockCoupledAnd");
  std::vector<int> sorted = perm_;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < static_cast<int>(sorted.size()); ++k) {
    if (sorted[k] != k) {
      throw std::invalid_argument("block map is not a permutation");
    }
  }
  if (perm_.empty()) throw std::invalid_argument("empty block permutation");
}

double BlockCoupledAnd::quantile(double u) const {
  const double m0 = origin_mass();
  const double p = m0 + (1.0 - m0) * u;
  return v_ - (v_ - kHalf) / p;
}

double BlockCoupledAnd::shift(int block) const {
  const double K = static_cast<double>(perm_.size());
  return (perm_[block] - block) / K;
}

double BlockCoupledAnd::cdf(double x, double y) const {
  const double m0 = origin_mass();
  const double a = (and_marginal_cdf(v_, x) - m0) / (1.0 - m0);
  const double b = (and_marginal_cdf(v_, y) - m0) / (1.0 - m0);
  const int K = static_cast<int>(perm_.size());
  double lambda = 0.0;
  for (int k = 0; k < K; ++k) {
    const double lo = static_cast<double>(k) / K;
    const double hi = static_cast<double>(k + 1) / K;
    // u in this block contributes when u <= a and u + shift <= b.
    const double top = std::min({hi, a, b - shift(k)});
    lambda += std::max(0.0, top - lo);
  }
  return m0 + (1.0 - m0) * lambda;
}

std::vector<std::pair<BidPair, double>> BlockCoupledAnd::atoms() const {
  return {{BidPair{0.0, 0.0}, origin_mass()}};
}

SupportDiagnostics BlockCoupledAnd::support() const {
  return {0.0, 0.0, kHalf, kHalf, origin_mass()};
}

std::unique_ptr<JointBidDistribution> BlockCoupledAnd::clone() const {
  return std::make_unique<BlockCoupledAnd>(*this);
}

double BlockCoupledAnd::expect(const std::function<double(BidPair)>& f) const {
  const double m0 = origin_mass();
  const int K = static_cast<int>(perm_.size());
  double cont = 0.0;
  for (int k = 0; k < K; ++k) {
    const double lo = static_cast<double>(k) / K;
    const double hi = static_cast<double>(k + 1) / K;
    const double d = shift(k);
    cont += integrate(
        [&](double u) { return f({quantile(u), quantile(u + d)}); }, lo, hi);
  }
  return m0 * f({0.0, 0.0}) + (1.0 - m0) * cont;
}

// ---------------------------------------------------------------------------
// GridDistribution

GridDistribution::GridDistribution(
    std::vector<std::pair<BidPair, double>> masses, double bid_cap)
    : JointBidDistribution(bid_cap), masses_(std::move(masses)) {
  double total = 0.0;
  for (const auto& [p, m] : masses_) {
    if (m < 0.0) throw std::invalid_argument("negative atom mass");
    if (p.x1 < 0.0 || p.x1 > cap_ || p.x2 < 0.0 || p.x2 > cap_) {
      throw std::domain_error("atom outside [0,H]^2");
    }
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("atom masses must sum to 1");
  }
}

double GridDistribution::cdf(double x, double y) const {
  double s = 0.0;
  for (const auto& [p, m] : masses_) {
    if (p.x1 <= x && p.x2 <= y) s += m;
  }
  return s;
}

std::vector<std::pair<BidPair, double>> GridDistribution::atoms() const {
  return masses_;
}

SupportDiagnostics GridDistribution::support() const {
  SupportDiagnostics s{cap_, cap_, 0.0, 0.0, 0.0};
  for (const auto& [p, m] : masses_) {
    if (m <= 0.0) continue;
    s.low_1 = std::min(s.low_1, p.x1);
    s.low_2 = std::min(s.low_2, p.x2);
    s.high_1 = std::max(s.high_1, p.x1);
    s.high_2 = std::max(s.high_2, p.x2);
    if (p.x1 == 0.0 && p.x2 == 0.0) s.atom_at_origin += m;
  }
  return s;
}

std::unique_ptr<JointBidDistribution> GridDistribution::clone() const {
  return std::make_unique<GridDistribution>(*this);
}

double GridDistribution::expect(
    const std::function<double(BidPair)>& f) const {
  double s = 0.0;
  for (const auto& [p, m] : masses_) s += m * f(p);
  return s;
}

bool GridDistribution::axis_supported() const {
  return std::all_of(masses_.begin(), masses_.end(), [](const auto& a) {
    return a.second == 0.0 || std::min(a.first.x1, a.first.x2) == 0.0;
  });
}

// ---------------------------------------------------------------------------
// EmpiricalDistribution

EmpiricalDistribution::EmpiricalDistribution(std::vector<BidPair> samples,
                                             double bid_cap)
    : JointBidDistribution(bid_cap), samples_(std::move(samples)) {
  if (samples_.empty()) throw std::invalid_argument("no samples");
}

double EmpiricalDistribution::cdf(double x, double y) const {
  std::size_t n = 0;
  for (const auto& p : samples_) {
    if (p.x1 <= x && p.x2 <= y) ++n;
  }
  return static_cast<double>(n) / static_cast<double>(samples_.size());
}

std::vector<std::pair<BidPair, double>> EmpiricalDistribution::atoms() const {
  std::map<std::pair<double, double>, double> agg;
  const double w = 1.0 / static_cast<double>(samples_.size());
  for (const auto& p : samples_) agg[{p.x1, p.x2}] += w;
  std::vector<std::pair<BidPair, double>> out;
  out.reserve(agg.size());
  for (const auto& [k, m] : agg) out.push_back({{k.first, k.second}, m});
  return out;
}

SupportDiagnostics EmpiricalDistribution::support() const {
  SupportDiagnostics s{cap_, cap_, 0.0, 0.0, 0.0};
  const double w = 1.0 / static_cast<double>(samples_.size());
  for (const auto& p : samples_) {
    s.low_1 = std::min(s.low_1, p.x1);
    s.low_2 = std::min(s.low_2, p.x2);
    s.high_1 = std::max(s.high_1, p.x1);
    s.high_2 = std::max(s.high_2, p.x2);
    if (p.x1 == 0.0 && p.x2 == 0.0) s.atom_at_origin += w;
  }
  return s;
}

std::unique_ptr<JointBidDistribution> EmpiricalDistribution::clone() const {
  return std::make_unique<EmpiricalDistribution>(*this);
}

double EmpiricalDistribution::expect(
    const std::function<double(BidPair)>& f) const {
  double s = 0.0;
  for (const auto& p : samples_) s += f(p);
  return s / static_cast<double>(samples_.size());
}

// ---------------------------------------------------------------------------
// Closed-form CDFs and samplers.

double and_joint_cdf(double v, double x, double y) {
  require_regime(v, "and_joint_cdf");
  require_in_box(v, x, y);
  return and_marginal_cdf(v, std::min(x, y));
}

double or_joint_cdf(double v, double x, double y) {
  require_in_box(v, x, y);
  const double a = clamp_half(x);
  const double b = clamp_half(y);
  return a / (2.0 * (1.0 - a)) + b / (2.0 * (1.0 - b));
}

namespace {

double uniform_open(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double u;
  do {
    u = unit(rng);
  } while (u == 0.0);
  return u;
}

}  // namespace

BidPair sample_and(double v, Rng& rng) {
  require_regime(v, "sample_and");
  const double u = uniform_open(rng);
  const double atom = 1.0 - 1.0 / (2.0 * v);
  if (u <= atom) return {0.0, 0.0};
  const double y = v - (v - kHalf) / u;
  return {y, y};
}

BidPair sample_or(double v, Rng& rng) {
  (void)v;
  std::uniform_int_distribution<int> coin(0, 1);
  const bool first_axis = coin(rng) == 0;
  const double u = uniform_open(rng);
  const double x = u / (1.0 + u);  // inverse of x/(1-x)
  return first_axis ? BidPair{x, 0.0} : BidPair{0.0, x};
}

// ---------------------------------------------------------------------------
// Maximal correlation.

namespace {

// min(F(x,H), F(H,y)) over a clone of the base distribution. Intended for
// parametric bases whose only atom is at the origin; grid bases are
// materialized instead.
class MaxCorrelatedView final : public JointBidDistribution {
 public:
  explicit MaxCorrelatedView(std::unique_ptr<JointBidDistribution> base)
      : JointBidDistribution(base->bid_cap()), base_(std::move(base)) {}
  MaxCorrelatedView(const MaxCorrelatedView& o)
      : JointBidDistribution(o.cap_), base_(o.base_->clone()) {}

  double cdf(double x, double y) const override {
    return std::min(base_->marginal1(x), base_->marginal2(y));
  }

  std::vector<std::pair<BidPair, double>> atoms() const override {
    double at0_1 = 0.0;
    double at0_2 = 0.0;
    for (const auto& [p, m] : base_->atoms()) {
      if (p.x1 == 0.0) at0_1 += m;
      if (p.x2 == 0.0) at0_2 += m;
    }
    const double m0 = std::min(at0_1, at0_2);
    if (m0 > 0.0) return {{BidPair{0.0, 0.0}, m0}};
    return {};
  }

  Tag tag() const override { return Tag::Parametric; }

  SupportDiagnostics support() const override {
    SupportDiagnostics s = base_->support();
    auto a = atoms();
    s.atom_at_origin = a.empty() ? 0.0 : a.front().second;
    return s;
  }

  std::unique_ptr<JointBidDistribution> clone() const override {
    return std::make_unique<MaxCorrelatedView>(*this);
  }

  double expect(const std::function<double(BidPair)>& f) const override {
    // Comonotone coupling: both coordinates read the same quantile level.
    auto a = atoms();
    const double m0 = a.empty() ? 0.0 : a.front().second;
    const double cont = integrate(
        [&](double u) { return f({quantile1(u), quantile2(u)}); }, m0, 1.0,
        1e-11);
    return m0 * f({0.0, 0.0}) + cont;
  }

 private:
  double quantile(double u, bool first) const {
    double lo = 0.0;
    double hi = cap_;
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (lo + hi);
      const double c = first ? base_->marginal1(mid) : base_->marginal2(mid);
      (c >= u ? hi : lo) = mid;
    }
    return hi;
  }
  double quantile1(double u) const { return quantile(u, true); }
  double quantile2(double u) const { return quantile(u, false); }

  std::unique_ptr<JointBidDistribution> base_;
};

// Comonotone coupling of the marginals of a discrete distribution: sort both
// marginals and pair equal quantile slices.
GridDistribution comonotone_grid(const GridDistribution& f) {
  std::map<double, double> m1;
  std::map<double, double> m2;
  for (const auto& [p, m] : f.atoms()) {
    m1[p.x1] += m;
    m2[p.x2] += m;
  }
  std::vector<std::pair<double, double>> a(m1.begin(), m1.end());
  std::vector<std::pair<double, double>> b(m2.begin(), m2.end());
  std::vector<std::pair<BidPair, double>> out;
  std::size_t i = 0;
  std::size_t j = 0;
  double r1 = a.empty() ? 0.0 : a[0].second;
  double r2 = b.empty() ? 0.0 : b[0].second;
  while (i < a.size() && j < b.size()) {
    const double t = std::min(r1, r2);
    if (t > 0.0) out.push_back({{a[i].first, b[j].first}, t});
    r1 -= t;
    r2 -= t;
    if (r1 <= 1e-15) {
      if (++i < a.size()) r1 = a[i].second;
    }
    if (r2 <= 1e-15) {
      if (++j < b.size()) r2 = b[j].second;
    }
  }
  return GridDistribution(std::move(out), f.bid_cap());
}

}  // namespace

std::unique_ptr<JointBidDistribution> max_correlate(
    const JointBidDistribution& f) {
  if (const auto* g = dynamic_cast<const GridDistribution*>(&f)) {
    return std::make_unique<GridDistribution>(comonotone_grid(*g));
  }
  return std::make_unique<MaxCorrelatedView>(f.clone());
}

std::pair<std::function<double(double)>, std::function<double(double)>>
marginals(const JointBidDistribution& f) {
  std::shared_ptr<JointBidDistribution> held = f.clone();
  auto m1 = [held](double x) { return held->marginal1(x); };
  auto m2 = [held](double y) { return held->marginal2(y); };
  return {m1, m2};
}

}  // namespace andor
