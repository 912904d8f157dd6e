#include "andor/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "andor/distributions.hpp"
#include "andor/quadrature.hpp"

namespace andor {

namespace {

// Width of the band around v=1 where the closed forms' (v-1)^2 denominator
// loses ~8 digits and the quadrature value is used instead.
constexpr double kSwitchBand = 1e-4;

void require_regime(double v, const char* what) {
  if (!(v > 0.5)) {
    std::ostringstream os;
    os << what << " requires v > 1/2, got v = " << v;
    throw RegimeError(os.str());
  }
}

double prob_and_wins_quadrature(double v) {
  // integral of F*or d F*and over the continuous part; the origin atom
  // contributes nothing since F*or(0) = 0.
  return integrate(
      [v](double x) {
        return (v - 0.5) / ((v - x) * (v - x)) * x / (1.0 - x);
      },
      0.0, 0.5);
}

double revenue_or_quadrature(double v) {
  return integrate(
      [v](double x) {
        return x / ((1.0 - x) * (1.0 - x)) * (v - 0.5) / (v - x);
      },
      0.0, 0.5);
}

template <class F>
PoaMinimum golden_min(const F& f, double a, double b, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

}  // namespace

double prob_and_wins(double v) {
  require_regime(v, "prob_and_wins");
  if (std::abs(v - 1.0) <= kSwitchBand) return prob_and_wins_quadrature(v);
  const double d = v - 1.0;
  return ((v - 0.5) * std::log(2.0 - 1.0 / v) - 0.5 * d) / (d * d);
}

double revenue_or(double v) {
  require_regime(v, "revenue_or");
  if (std::abs(v - 1.0) <= kSwitchBand) return revenue_or_quadrature(v);
  const double d = v - 1.0;
  return (v - 0.5) / (d * d) *
         (d - v * std::log(2.0) + v * std::log(v / (v - 0.5)));
}

AnalyticsReport report(double v) {
  require_regime(v, "report");
  AnalyticsReport r;
  r.v = v;
  r.p_and_wins = prob_and_wins(v);
  r.revenue_and = r.p_and_wins;
  r.revenue_or = revenue_or(v);
  r.revenue_total = r.revenue_and + r.revenue_or;
  r.welfare = r.p_and_wins * 1.0 + (1.0 - r.p_and_wins) * v;
  r.optimal_welfare = std::max(v, 1.0);
  r.poa = r.welfare / r.optimal_welfare;
  r.welfare_loss = r.optimal_welfare - r.welfare;
  return r;
}

std::pair<PoaMinimum, PoaMinimum> find_poa_minima() {
  auto poa = [](double v) { return report(v).poa; };
  const PoaMinimum below = golden_min(poa, 0.5 + 1e-9, 1.0, 1e-6);
  const PoaMinimum above = golden_min(poa, 1.0, 20.0, 1e-6);
  return {below, above};
}

std::vector<std::string> figure_ids() {
  return {"and-wins", "revenue-or", "revenue-total", "poa", "welfare-loss"};
}

FigureSeries figure_series(const std::string& figure_id, double v_min,
                           double v_max, double step) {
  if (!(v_min > 0.5) || !(v_max > v_min) || !(step > 0.0)) {
    throw std::invalid_argument("need 1/2 < v_min < v_max and step > 0");
  }
  double (*value)(const AnalyticsReport&) = nullptr;
  if (figure_id == "and-wins") {
    value = +[](const AnalyticsReport& r) { return r.p_and_wins; };
  } else if (figure_id == "revenue-or") {
    value = +[](const AnalyticsReport& r) { return r.revenue_or; };
  } else if (figure_id == "revenue-total") {
    value = +[](const AnalyticsReport& r) { return r.revenue_total; };
  } else if (figure_id == "poa") {
    value = +[](const AnalyticsReport& r) { return r.poa; };
  } else if (figure_id == "welfare-loss") {
    value = +[](const AnalyticsReport& r) { return r.welfare_loss; };
  } else {
    std::ostringstream os;
    os << "unknown figure id '" << figure_id << "'; valid ids:";
    for (const auto& id : figure_ids()) os << " " << id;
    throw std::invalid_argument(os.str());
  }

  FigureSeries s;
  s.figure_id = figure_id;
  std::vector<double> vs;
  for (double v = v_min; v <= v_max + 1e-12; v += step) vs.push_back(v);
  if (v_min < 1.0 && 1.0 < v_max &&
      std::none_of(vs.begin(), vs.end(),
                   [](double v) { return v == 1.0; })) {
    vs.push_back(1.0);  // the crossover row is always present exactly
    std::sort(vs.begin(), vs.end());
  }
  s.rows.reserve(vs.size());
  for (double v : vs) s.rows.emplace_back(v, value(report(v)));
  return s;
}

MonteCarloReport monte_carlo_report(double v, long samples,
                                    const TieBreakRule& tie,
                                    std::uint64_t seed) {
  require_regime(v, "monte_carlo_report");
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const double cap = default_bid_cap(v);

  // Fixed-size chunks with per-chunk generators and an in-order reduction,
  // so results are identical for any thread count.
  constexpr long kChunk = 1 << 16;
  const long n_chunks = (samples + kChunk - 1) / kChunk;
  struct Sums {
    double wins = 0.0, wins2 = 0.0;
    double rev_or = 0.0, rev_or2 = 0.0;
    double rev_and = 0.0;
    double welfare = 0.0, welfare2 = 0.0;
  };
  std::vector<Sums> chunk_sums(n_chunks);

#pragma omp parallel for schedule(static)
  for (long c = 0; c < n_chunks; ++c) {
    Rng rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(c + 1));
    const long lo = c * kChunk;
    const long hi = std::min(samples, lo + kChunk);
    Sums s;
    for (long k = lo; k < hi; ++k) {
      const BidPair a = sample_and(v, rng);
      const BidPair o = sample_or(v, rng);
      const Outcome out = sample_outcome(a, o, tie, v, cap, rng);
      const double win = out.and_wins_1 && out.and_wins_2 ? 1.0 : 0.0;
      const double w = win > 0.0 ? 1.0 : v;
      s.wins += win;
      s.wins2 += win * win;
      s.rev_or += out.pay_or;
      s.rev_or2 += out.pay_or * out.pay_or;
      s.rev_and += out.pay_and;
      s.welfare += w;
      s.welfare2 += w * w;
    }
    chunk_sums[c] = s;
  }

  Sums total;
  for (const Sums& s : chunk_sums) {
    total.wins += s.wins;
    total.wins2 += s.wins2;
    total.rev_or += s.rev_or;
    total.rev_or2 += s.rev_or2;
    total.rev_and += s.rev_and;
    total.welfare += s.welfare;
    total.welfare2 += s.welfare2;
  }

  const double n = static_cast<double>(samples);
  auto se = [n](double sum, double sum2) {
    const double mean = sum / n;
    const double var = std::max(0.0, sum2 / n - mean * mean);
    return std::sqrt(var / n);
  };

  MonteCarloReport mc;
  mc.samples = samples;
  mc.mean.v = v;
  mc.mean.p_and_wins = total.wins / n;
  mc.mean.revenue_and = total.rev_and / n;
  mc.mean.revenue_or = total.rev_or / n;
  mc.mean.revenue_total = mc.mean.revenue_and + mc.mean.revenue_or;
  mc.mean.welfare = total.welfare / n;
  mc.mean.optimal_welfare = std::max(v, 1.0);
  mc.mean.poa = mc.mean.welfare / mc.mean.optimal_welfare;
  mc.mean.welfare_loss = mc.mean.optimal_welfare - mc.mean.welfare;
  mc.se_p_and_wins = se(total.wins, total.wins2);
  mc.se_revenue_or = se(total.rev_or, total.rev_or2);
  mc.se_welfare = se(total.welfare, total.welfare2);
  return mc;
}

}  // namespace andor
