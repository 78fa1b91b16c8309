#ifndef REFINEDP_HARNESS_HPP
#define REFINEDP_HARNESS_HPP

#include <boost/math/special_functions/gamma.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "refinedp/bigfloat.hpp"
#include "refinedp/bit_tape.hpp"
#include "refinedp/distributions.hpp"
#include "refinedp/float_grid.hpp"
#include "refinedp/sampler.hpp"

namespace refinedp {

/// Grid-aligned breakpoints partitioning the line into right-closed
/// buckets: (-inf, b0], (b0, b1], ..., (b_last, +inf).
struct BucketSpec {
  std::vector<double> breakpoints;

  explicit BucketSpec(std::vector<double> bps) : breakpoints(std::move(bps)) {
    if (breakpoints.empty())
      throw std::invalid_argument("BucketSpec: need at least one breakpoint");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
      if (!(breakpoints[i - 1] < breakpoints[i]))
        throw std::invalid_argument("breakpoints must strictly increase");
  }

  std::size_t bucket_count() const { return breakpoints.size() + 1; }

  std::size_t bucket_of(double x) const {
    std::size_t i = 0;
    while (i < breakpoints.size() && x > breakpoints[i]) ++i;
    return i;
  }

  // Edges of bucket i as BigFloats (+-inf for the tails).
  std::pair<BigFloat, BigFloat> edges(std::size_t i) const {
    BigFloat lo = (i == 0) ? BigFloat::neg_infinity()
                           : BigFloat::from_double(breakpoints[i - 1]);
    BigFloat hi = (i == breakpoints.size())
                      ? BigFloat::pos_infinity()
                      : BigFloat::from_double(breakpoints[i]);
    return {lo, hi};
  }
};

/// Enclosure of F(hi) - F(lo) over a bucket; width shrinks with prec.
inline Enclosure exact_bucket_probability(const IntervalDistribution& dist,
                                          const BigFloat& lo,
                                          const BigFloat& hi, int prec) {
  Enclosure f_lo = lo.is_neg_inf() ? Enclosure::point(BigFloat(0))
                                   : dist.interval_cdf(Enclosure::point(lo), prec);
  Enclosure f_hi = hi.is_pos_inf() ? Enclosure::point(BigFloat(1))
                                   : dist.interval_cdf(Enclosure::point(hi), prec);
  BigFloat p_lo = f_hi.lo - f_lo.hi;
  BigFloat p_hi = f_hi.hi - f_lo.lo;
  if (p_lo.sign() < 0) p_lo = BigFloat(0);
  if (p_hi > BigFloat(1)) p_hi = BigFloat(1);
  return Enclosure(p_lo, p_hi);
}

struct FitReport {
  double chi_square = 0.0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 0.0;
  std::vector<long> observed;
  std::vector<double> expected;
  std::vector<double> z_scores;
};

/// Chi-square goodness of fit of samples against a distribution, with
/// bucket probabilities computed from interval CDF enclosures whose width
/// is driven below 1e-6 of the probability itself.
inline FitReport goodness_of_fit(const std::vector<double>& samples,
                                 const IntervalDistribution& dist,
                                 const BucketSpec& spec) {
  if (samples.empty()) throw std::invalid_argument("empty sample set");
  if (samples.size() < 10000)
    throw std::invalid_argument("need at least 10^4 samples");
  const std::size_t nb = spec.bucket_count();
  std::vector<long> observed(nb, 0);
  for (double s : samples) ++observed[spec.bucket_of(s)];

  const double n = static_cast<double>(samples.size());
  FitReport rep;
  rep.observed = observed;
  rep.degrees_of_freedom = nb - 1;
  for (std::size_t i = 0; i < nb; ++i) {
    auto [lo, hi] = spec.edges(i);
    double p = 0.0;
    for (int prec = 64; prec <= 4096; prec *= 2) {
      Enclosure e = exact_bucket_probability(dist, lo, hi, prec);
      double w = next_float_up(e.width());
      double mid = next_float_up(BigFloat::midpoint(e.lo, e.hi));
      if (mid > 0 && w <= 1e-6 * mid) {
        p = mid;
        break;
      }
    }
    if (p <= 0) throw std::runtime_error("bucket probability did not resolve");
    double expd = n * p;
    if (expd < 20.0)
      throw std::invalid_argument("under-filled bucket: expected count < 20");
    rep.expected.push_back(expd);
    double diff = static_cast<double>(observed[i]) - expd;
    rep.chi_square += diff * diff / expd;
    rep.z_scores.push_back(diff / std::sqrt(expd * (1.0 - p)));
  }
  rep.p_value = boost::math::gamma_q(
      static_cast<double>(rep.degrees_of_freedom) / 2.0, rep.chi_square / 2.0);
  return rep;
}

/// Breakpoints at the 1/n, 2/n, ... quantiles of Laplace(mu, beta), making
/// roughly equal-probability buckets. Double precision is fine here; the
/// exact probabilities are recomputed from the breakpoints afterwards.
inline BucketSpec equal_probability_buckets(double mu, double beta,
                                            std::size_t n_buckets) {
  std::vector<double> bps;
  for (std::size_t i = 1; i < n_buckets; ++i) {
    double u = static_cast<double>(i) / static_cast<double>(n_buckets);
    double q = (u < 0.5) ? mu + beta * std::log(2.0 * u)
                         : mu - beta * std::log(2.0 * (1.0 - u));
    bps.push_back(q);
  }
  return BucketSpec(std::move(bps));
}

/// An exact distribution over toy-grid points plus the explicit bottom.
struct ExactDistribution {
  std::map<int, Rational> probs;
  Rational bottom = 0;

  Rational total() const {
    Rational t = bottom;
    for (const auto& [s, p] : probs) t += p;
    return t;
  }
};

/// Exhaustive enumeration of the k-round, single-bit-per-round sampling
/// process on a toy grid: every tape of length k is covered, each leaf
/// carrying probability 2^-k, with non-terminating paths aggregated into
/// bottom. All arithmetic on probabilities is exact rational.
inline ExactDistribution enumerate_process(const ToyGrid& grid,
                                           const IntervalDistribution& dist,
                                           const SamplerConfig& cfg, int k) {
  cfg.validate();
  if (cfg.chunk_bits != 1)
    throw std::invalid_argument("enumeration requires chunk_bits = 1");
  if (grid.size() > 32) throw std::invalid_argument("grid too large");
  if (k < 1 || k > 20) throw std::invalid_argument("rounds in [1, 20]");

  ExactDistribution out;
  Rational half(1, 2);

  // Depth-first over the binary tape tree; a subtree below a terminating
  // interval contributes the whole prefix probability at once.
  auto recurse = [&](auto&& self, const BigFloat& a, const BigFloat& b,
                     int depth, Rational prob) -> void {
    for (std::uint64_t raw : {std::uint64_t{0}, std::uint64_t{1}}) {
      auto [na, nb] = bisect_step(a, b, chunk_to_index(raw, 1), 1);
      Rational p = prob * half;
      Enclosure image = dist.interval_inv_cdf(na, nb, cfg.precision_at(depth));
      if (auto point = terminate_check(image, grid)) {
        out.probs[*point] += p;
      } else if (depth == k) {
        out.bottom += p;
      } else {
        self(self, na, nb, depth + 1, p);
      }
    }
  };
  recurse(recurse, BigFloat(0), BigFloat(1), 1, Rational(1));
  return out;
}

/// Exact rounded distribution Q on a toy grid for a distribution with an
/// exact rational CDF: Q(s_i) = F(s_i) - F(s_{i-1}), Q(s_0) = F(s_0).
/// Requires the distribution's support to end at or below the top point.
inline ExactDistribution exact_rounded_distribution(
    const ToyGrid& grid, const PiecewiseLinearDistribution& dist) {
  if (dist.support_max() > grid.points().back())
    throw std::invalid_argument("support exceeds the grid's top point");
  ExactDistribution q;
  Rational prev = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Rational f = dist.exact_cdf(grid.points()[i]);
    q.probs[static_cast<int>(i)] = f - prev;
    prev = f;
  }
  return q;
}

/// Total variation distance, exact: (1/2) * sum |p - q| over grid points
/// plus the bottom outcome.
inline Rational tvd(const ExactDistribution& p, const ExactDistribution& q) {
  Rational acc = boost::multiprecision::abs(p.bottom - q.bottom);
  std::map<int, Rational> merged = p.probs;
  for (const auto& [s, v] : q.probs) merged.try_emplace(s, 0);
  for (const auto& [s, unused] : merged) {
    Rational pv = p.probs.count(s) ? p.probs.at(s) : Rational(0);
    Rational qv = q.probs.count(s) ? q.probs.at(s) : Rational(0);
    acc += boost::multiprecision::abs(pv - qv);
  }
  return acc / 2;
}

struct BenchReport {
  long samples = 0;
  double seconds = 0.0;
  double samples_per_second = 0.0;
  std::vector<long> iteration_histogram;  // index i = terminated in i iters
  long bottom_count = 0;
};

/// Wall-clock throughput and iterations-to-terminate histogram.
inline BenchReport bench(const LaplaceParams& params, const SamplerConfig& cfg,
                         long n, BitTape& tape) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  LaplaceDistribution dist(params);
  Binary64Grid grid;
  BenchReport rep;
  rep.samples = n;
  rep.iteration_histogram.assign(
      static_cast<std::size_t>(cfg.max_iterations) + 1, 0);
  auto t0 = std::chrono::steady_clock::now();
  for (long i = 0; i < n; ++i) {
    auto r = refine_sample(dist, cfg, tape, grid);
    if (r.value)
      ++rep.iteration_histogram[static_cast<std::size_t>(r.iterations)];
    else
      ++rep.bottom_count;
  }
  auto t1 = std::chrono::steady_clock::now();
  rep.seconds = std::chrono::duration<double>(t1 - t0).count();
  rep.samples_per_second = rep.seconds > 0 ? n / rep.seconds : 0.0;
  return rep;
}

}  // namespace refinedp

#endif  // REFINEDP_HARNESS_HPP
