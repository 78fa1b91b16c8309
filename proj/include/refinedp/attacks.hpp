#ifndef REFINEDP_ATTACKS_HPP
#define REFINEDP_ATTACKS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "refinedp/bigfloat.hpp"
#include "refinedp/bit_tape.hpp"
#include "refinedp/enclosure.hpp"
#include "refinedp/float_grid.hpp"
#include "refinedp/mechanisms.hpp"
#include "refinedp/sampler.hpp"

namespace refinedp {

// Reference re-implementations of vulnerable sampling patterns. These are
// deliberately broken fixtures for demonstrating distinguishing events;
// never use them to release data.

/// Result of running a distinguisher over two neighboring inputs.
struct AttackReport {
  std::string mechanism;
  std::string input0;
  std::string input1;
  long samples_per_side = 0;
  std::string predicate;
  long count0 = 0;
  long count1 = 0;
  double fraction0 = 0.0;
  double fraction1 = 0.0;
  std::string verdict;  // "vulnerable" or "no finding"
  std::uint64_t seed = 0;
};

inline std::string verdict_for(long count0, long count1) {
  return ((count0 > 0) != (count1 > 0)) ? "vulnerable" : "no finding";
}

/// The add-after-sampling pattern: x (+) r in plain binary64 arithmetic,
/// with r a hole-free Laplace(0, beta) sample. This is the forbidden
/// pattern: the sum is forced onto the ulp(x)/2 grid.
inline double naive_additive_sample(double x, double beta,
                                    const SamplerConfig& cfg, BitTape& tape) {
  LaplaceParams params(BigFloat(0), BigFloat::from_double(beta));
  auto r = sample_laplace(params, cfg, tape);
  if (!r.value) throw std::runtime_error("noise sampler returned bottom");
  return x + *r.value;  // the vulnerable float addition
}

/// Hole-free uniform double in (0, 1): geometric exponent from leading
/// zero bits, then a full 52-bit mantissa. Emulates arbitrary-precision
/// uniform generation where every double in the range is reachable.
inline double hole_free_uniform(BitTape& tape) {
  int g = 0;
  while (g < 600 && !tape.next_bit()) ++g;
  std::uint64_t mant = (tape.next_bits(32) << 20) | tape.next_bits(20);
  std::uint64_t m = (std::uint64_t{1} << 52) | mant;
  return std::ldexp(static_cast<double>(m), -g - 53);
}

/// Standard-library-style uniform: multiples of 2^-53 only.
inline double coarse_uniform(BitTape& tape) {
  std::uint64_t m = (tape.next_bits(32) << 21) | tape.next_bits(21);
  return std::ldexp(static_cast<double>(m), -53);
}

enum class UniformVariant { coarse, fine };

/// The naive uniform-in-interval pattern x (+) (y (-) x) (*) r with IEEE
/// semantics; r is coarse (2^-53 multiples) or hole-free per variant.
inline double naive_uniform_interval(double x, double y, UniformVariant v,
                                     BitTape& tape) {
  if (!(x < y)) throw std::invalid_argument("need x < y");
  double r = (v == UniformVariant::coarse) ? coarse_uniform(tape)
                                           : hole_free_uniform(tape);
  return x + (y - x) * r;
}

namespace detail {

inline int half_ulp_log2(double reference) {
  FloatDecomposition d = decompose(reference);
  int ulp_log2 = (d.exponent == 0) ? -1074 : d.exponent - 1023 - 52;
  return ulp_log2 - 1;
}

}  // namespace detail

/// Draw n naive (or safe) samples per side and count outputs that fall off
/// the ulp(mu1)/2 grid; membership is decided exactly from bit patterns.
inline AttackReport run_additive_attack(double mu0, double mu1, double beta,
                                        long n, std::uint64_t seed,
                                        bool use_safe_mechanism = false) {
  if (n < 1000) throw std::invalid_argument("need n >= 1000");
  double reference = mu1 != 0.0 ? mu1 : (mu0 != 0.0 ? mu0 : 1.0);
  int step = detail::half_ulp_log2(reference);
  SamplerConfig cfg;
  BitTape tape = BitTape::seeded(seed);

  auto draw = [&](double mu) -> double {
    if (use_safe_mechanism) {
      LaplaceParams params(BigFloat::from_double(mu),
                           BigFloat::from_double(beta));
      auto r = sample_laplace(params, cfg, tape);
      if (!r.value) throw std::runtime_error("sampler returned bottom");
      return *r.value;
    }
    return naive_additive_sample(mu, beta, cfg, tape);
  };

  long count0 = 0, count1 = 0;
  for (long i = 0; i < n; ++i)
    if (!is_on_grid_multiple(draw(mu0), step)) ++count0;
  for (long i = 0; i < n; ++i)
    if (!is_on_grid_multiple(draw(mu1), step)) ++count1;

  AttackReport rep;
  rep.mechanism = use_safe_mechanism ? "laplace_interval_refining"
                                     : "naive_additive_laplace";
  rep.input0 = std::to_string(mu0);
  rep.input1 = std::to_string(mu1);
  rep.samples_per_side = n;
  std::ostringstream pred;
  pred << "output is not a multiple of 2^" << step;
  rep.predicate = pred.str();
  rep.count0 = count0;
  rep.count1 = count1;
  rep.fraction0 = static_cast<double>(count0) / static_cast<double>(n);
  rep.fraction1 = static_cast<double>(count1) / static_cast<double>(n);
  rep.verdict = verdict_for(count0, count1);
  rep.seed = seed;
  return rep;
}

namespace detail {

// Exponential-mechanism interval selection with exact weights: widths are
// exact dyadics, the exponential factors are enclosures refined until the
// cumulative comparison against an exact dyadic uniform draw resolves.
// The selection rule itself is standard (utility = distance to the median
// interval); the distinguisher downstream does not depend on it.
inline std::size_t select_interval_exact(
    const std::vector<std::pair<BigFloat, BigFloat>>& intervals,
    BitTape& tape) {
  const std::size_t m = intervals.size();
  std::vector<BigFloat> widths(m);
  std::vector<BigFloat> exponents(m);  // -u_i/2, exact dyadic
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < m; ++i) {
    widths[i] = intervals[i].second - intervals[i].first;
    long scaled_u = std::labs(2 * static_cast<long>(i) -
                              (static_cast<long>(m) - 1));  // 2*|i-(m-1)/2|
    exponents[i] = BigFloat(-scaled_u, 0).mul_pow2(-2);     // -u_i/2
    if (widths[i].sign() > 0) live.push_back(i);
  }
  if (live.empty()) throw std::logic_error("no selectable interval");
  if (live.size() == 1) return live[0];

  // Exact dyadic uniform draw with 128 bits of resolution.
  BigFloat u = (BigFloat(BigInt(tape.next_bits(63)), 0).mul_pow2(63) +
                BigFloat(BigInt(tape.next_bits(63)), 0))
                   .mul_pow2(-126);

  for (int prec = 64; prec <= 4096; prec *= 2) {
    std::vector<Enclosure> cum;
    Enclosure total = Enclosure::point(BigFloat(0));
    for (std::size_t i : live) {
      Enclosure w = Enclosure::point(widths[i]) *
                    exp_enclosure(Enclosure::point(exponents[i]), prec);
      total = total + w;
      cum.push_back(total);
    }
    Enclosure target = Enclosure::point(u) * total;
    BigFloat prev_hi(0);
    for (std::size_t j = 0; j < live.size(); ++j) {
      if (target.hi < cum[j].lo && (j == 0 || target.lo > prev_hi))
        return live[j];
      prev_hi = cum[j].hi;
    }
  }
  throw std::runtime_error("interval selection did not resolve");
}

}  // namespace detail

/// Naive exponential-mechanism quantile on both datasets: select an
/// interval with exact weights, then run the vulnerable uniform-in-interval
/// step. Distinguisher: output off the 2^-53 grid, verified bit-exactly.
inline AttackReport run_quantile_attack(std::vector<double> d1,
                                        std::vector<double> d2,
                                        UniformVariant variant, long n,
                                        std::uint64_t seed) {
  if (d1.size() > 10 || d2.size() > 10)
    throw std::invalid_argument("datasets of at most 10 values");
  std::sort(d1.begin(), d1.end());
  std::sort(d2.begin(), d2.end());

  auto draw = [&](const std::vector<double>& data, BitTape& tape) -> double {
    std::vector<std::pair<BigFloat, BigFloat>> intervals;
    for (std::size_t i = 0; i + 1 < data.size(); ++i)
      intervals.emplace_back(BigFloat::from_double(data[i]),
                             BigFloat::from_double(data[i + 1]));
    std::size_t j = detail::select_interval_exact(intervals, tape);
    return naive_uniform_interval(data[j], data[j + 1], variant, tape);
  };

  BitTape tape = BitTape::seeded(seed);
  long count0 = 0, count1 = 0;
  for (long i = 0; i < n; ++i)
    if (!is_on_grid_multiple(draw(d1, tape), -53)) ++count0;
  for (long i = 0; i < n; ++i)
    if (!is_on_grid_multiple(draw(d2, tape), -53)) ++count1;

  auto describe = [](const std::vector<double>& d) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < d.size(); ++i)
      os << (i ? "," : "") << d[i];
    os << ']';
    return os.str();
  };

  AttackReport rep;
  rep.mechanism = variant == UniformVariant::coarse
                      ? "naive_quantile_coarse_uniform"
                      : "naive_quantile_holefree_uniform";
  rep.input0 = describe(d1);
  rep.input1 = describe(d2);
  rep.samples_per_side = n;
  rep.predicate = "output is not a multiple of 2^-53";
  rep.count0 = count0;
  rep.count1 = count1;
  rep.fraction0 = static_cast<double>(count0) / static_cast<double>(n);
  rep.fraction1 = static_cast<double>(count1) / static_cast<double>(n);
  rep.verdict = verdict_for(count0, count1);
  rep.seed = seed;
  return rep;
}

}  // namespace refinedp

#endif  // REFINEDP_ATTACKS_HPP
