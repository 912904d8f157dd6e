#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "andor/core.hpp"

namespace andor {

enum class Role { And, Or };

// Per-item support bounds and the origin atom of a joint bid distribution.
struct SupportDiagnostics {
  double low_1 = 0.0;
  double low_2 = 0.0;
  double high_1 = 0.0;
  double high_2 = 0.0;
  double atom_at_origin = 0.0;
};

// Probabilities that one player's mixed bid beats a fixed opponent bid.
struct WinProbs {
  double item1 = 0.0;
  double item2 = 0.0;
  double both = 0.0;
};

// A two-dimensional bid distribution exposing the joint CDF, marginals and
// explicit atoms. Atoms must list every point mass; the remaining mass is
// assumed atomless. Immutable after construction.
class JointBidDistribution {
 public:
  enum class Tag { Parametric, Grid, Empirical };

  explicit JointBidDistribution(double bid_cap) : cap_(bid_cap) {}
  virtual ~JointBidDistribution() = default;

  virtual double cdf(double x, double y) const = 0;
  double marginal1(double x) const { return cdf(x, cap_); }
  double marginal2(double y) const { return cdf(cap_, y); }

  virtual std::vector<std::pair<BidPair, double>> atoms() const = 0;
  virtual Tag tag() const = 0;
  virtual SupportDiagnostics support() const = 0;
  virtual std::unique_ptr<JointBidDistribution> clone() const = 0;

  // E[f(bid)] over this distribution.
  virtual double expect(const std::function<double(BidPair)>& f) const = 0;

  // Probability of winning each item / both against a fixed opponent bid,
  // with ties split by the rule. `self` orients the tie rule.
  virtual WinProbs win_probs(const BidPair& opponent, const TieBreakRule& tie,
                             Role self) const;

  // True when every bid has min coordinate 0 (the OR equilibrium shape).
  virtual bool axis_supported() const { return false; }

  double bid_cap() const { return cap_; }

 protected:
  double cap_;
};

// ---------------------------------------------------------------------------
// Closed-form equilibrium strategies.

// AND equilibrium: bids (y,y), y in [0,1/2], marginal CDF (v-1/2)/(v-y),
// atom of mass 1-1/(2v) at the origin. Requires v > 1/2.
class AndEquilibrium final : public JointBidDistribution {
 public:
  explicit AndEquilibrium(double v);

  double cdf(double x, double y) const override;
  std::vector<std::pair<BidPair, double>> atoms() const override;
  Tag tag() const override { return Tag::Parametric; }
  SupportDiagnostics support() const override;
  std::unique_ptr<JointBidDistribution> clone() const override;
  double expect(const std::function<double(BidPair)>& f) const override;

  double v() const { return v_; }
  double origin_mass() const { return 1.0 - 1.0 / (2.0 * v_); }

 private:
  double v_;
};

// OR equilibrium: axis bids (x,0) / (0,x) with equal probability,
// x ~ CDF x/(1-x) on (0,1/2]. Atomless.
class OrEquilibrium final : public JointBidDistribution {
 public:
  explicit OrEquilibrium(double v);

  double cdf(double x, double y) const override;
  std::vector<std::pair<BidPair, double>> atoms() const override;
  Tag tag() const override { return Tag::Parametric; }
  SupportDiagnostics support() const override;
  std::unique_ptr<JointBidDistribution> clone() const override;
  double expect(const std::function<double(BidPair)>& f) const override;
  bool axis_supported() const override { return true; }

  double v() const { return v_; }

 private:
  double v_;
};

// AND-strategy variant with the equilibrium marginals and origin atom, but
// the two coordinates drawn independently conditional on not bidding (0,0).
class IndependentAtomAnd final : public JointBidDistribution {
 public:
  explicit IndependentAtomAnd(double v);

  double cdf(double x, double y) const override;
  std::vector<std::pair<BidPair, double>> atoms() const override;
  Tag tag() const override { return Tag::Parametric; }
  SupportDiagnostics support() const override;
  std::unique_ptr<JointBidDistribution> clone() const override;
  double expect(const std::function<double(BidPair)>& f) const override;

  double v() const { return v_; }
  double origin_mass() const { return 1.0 - 1.0 / (2.0 * v_); }

 private:
  double quantile(double u) const;  // inverse of the conditional marginal
  double v_;
};

// AND-strategy variant coupling the two coordinates through a block
// permutation of the conditional quantile scale: the continuous quantile
// range (0,1) is cut into `blocks` equal pieces and coordinate 2 reads its
// quantile from the permuted piece. Marginals and origin atom match the
// equilibrium exactly; the coupling does not.
class BlockCoupledAnd final : public JointBidDistribution {
 public:
  BlockCoupledAnd(double v, std::vector<int> permutation);

  double cdf(double x, double y) const override;
  std::vector<std::pair<BidPair, double>> atoms() const override;
  Tag tag() const override { return Tag::Parametric; }
  SupportDiagnostics support() const override;
  std::unique_ptr<JointBidDistribution> clone() const override;
  double expect(const std::function<double(BidPair)>& f) const override;

  double v() const { return v_; }
  double origin_mass() const { return 1.0 - 1.0 / (2.0 * v_); }

 private:
  double quantile(double u) const;
  double shift(int block) const;
  double v_;
  std::vector<int> perm_;
};

// ---------------------------------------------------------------------------
// Discrete and empirical representations.

class GridDistribution final : public JointBidDistribution {
 public:
  // Masses must be nonnegative and sum to 1 (tolerance 1e-9).
  GridDistribution(std::vector<std::pair<BidPair, double>> masses,
                   double bid_cap);

  double cdf(double x, double y) const override;
  std::vector<std::pair<BidPair, double>> atoms() const override;
  Tag tag() const override { return Tag::Grid; }
  SupportDiagnostics support() const override;
  std::unique_ptr<JointBidDistribution> clone() const override;
  double expect(const std::function<double(BidPair)>& f) const override;
  bool axis_supported() const override;

 private:
  std::vector<std::pair<BidPair, double>> masses_;
};

class EmpiricalDistribution final : public JointBidDistribution {
 public:
  EmpiricalDistribution(std::vector<BidPair> samples, double bid_cap);

  double cdf(double x, double y) const override;
  std::vector<std::pair<BidPair, double>> atoms() const override;
  Tag tag() const override { return Tag::Empirical; }
  SupportDiagnostics support() const override;
  std::unique_ptr<JointBidDistribution> clone() const override;
  double expect(const std::function<double(BidPair)>& f) const override;

  const std::vector<BidPair>& samples() const { return samples_; }

 private:
  std::vector<BidPair> samples_;
};

// ---------------------------------------------------------------------------
// Closed-form CDFs and samplers.

// (v-1/2)/(v-min(x,y)) with min(x,y) clamped to [0,1/2]. Requires v > 1/2.
double and_joint_cdf(double v, double x, double y);

// x'/(2(1-x')) + y'/(2(1-y')) with coordinates clamped to [0,1/2].
double or_joint_cdf(double v, double x, double y);

// Inverse-transform samplers for the equilibrium strategies.
BidPair sample_and(double v, Rng& rng);
BidPair sample_or(double v, Rng& rng);

// The maximally correlated transform bF(x,y) = min(F(x,H), F(H,y)).
// Grid inputs are materialized as the comonotone coupling of their
// marginals; other inputs get a parametric view over a clone of F.
std::unique_ptr<JointBidDistribution> max_correlate(
    const JointBidDistribution& f);

// The two marginal CDFs x -> F(x,H) and y -> F(H,y).
std::pair<std::function<double(double)>, std::function<double(double)>>
marginals(const JointBidDistribution& f);

}  // namespace andor
