#ifndef REFINEDP_MECHANISMS_HPP
#define REFINEDP_MECHANISMS_HPP

#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "refinedp/bigfloat.hpp"
#include "refinedp/bit_tape.hpp"
#include "refinedp/distributions.hpp"
#include "refinedp/sampler.hpp"

namespace refinedp {

/// Privacy parameters, held exactly: epsilon as a rational, sensitivity as
/// a dyadic. No float rounding happens at this level.
struct PrivacyBudget {
  Rational epsilon;
  BigFloat sensitivity;

  PrivacyBudget(Rational eps, BigFloat sens)
      : epsilon(std::move(eps)), sensitivity(std::move(sens)) {
    if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
    if (!sensitivity.is_finite() || sensitivity.sign() <= 0)
      throw std::invalid_argument("sensitivity must be positive and finite");
  }
};

/// Upper bound on sensitivity/epsilon with at most prec significant bits.
/// Rounding up: a larger scale means more noise, so the realized guarantee
/// is at least the requested epsilon.
inline BigFloat noise_scale_upper(const PrivacyBudget& budget, int prec = 128) {
  BigInt num = boost::multiprecision::numerator(budget.epsilon);
  BigInt den = boost::multiprecision::denominator(budget.epsilon);
  // sensitivity * den / num, quotient rounded toward +inf.
  BigFloat scaled = budget.sensitivity * BigFloat(den, 0);
  return div_directed(scaled, BigFloat(num, 0), prec, Round::up);
}

/// The Laplace mechanism, invoked with the query answer as the location
/// parameter. The raw noise value never exists as a double and is never
/// added to f_value in floating point; the sampler rounds the already
/// shifted distribution.
inline SampleResult<Binary64Grid> laplace_mechanism(
    const BigFloat& f_value, const PrivacyBudget& budget,
    const SamplerConfig& cfg, BitTape& tape,
    SampleTrace<double>* trace = nullptr) {
  if (!f_value.is_finite())
    throw std::invalid_argument("query value must be finite and exact");
  LaplaceParams params(f_value, noise_scale_upper(budget));
  return sample_laplace(params, cfg, tape, Binary64Grid(), trace);
}

/// Noisy argmax by interval refining (EXPERIMENTAL; excluded from privacy
/// claims). Keeps one enclosure per noisy candidate and refines all of
/// them in lockstep until one enclosure lies strictly above every other.
/// Individual noise values are never rounded.
inline std::optional<std::size_t> noisy_argmax(
    const std::vector<BigFloat>& values,
    const std::vector<const IntervalDistribution*>& noise,
    const SamplerConfig& cfg, std::vector<BitTape>& tapes) {
  cfg.validate();
  const std::size_t n = values.size();
  if (n < 2) throw std::invalid_argument("noisy_argmax: need >= 2 values");
  if (noise.size() != n || tapes.size() != n)
    throw std::invalid_argument("noisy_argmax: per-index noise and tapes");

  std::vector<BigFloat> a(n, BigFloat(0));
  std::vector<BigFloat> b(n, BigFloat(1));
  std::vector<Enclosure> noisy(n);
  for (int k = 1; k <= cfg.max_iterations; ++k) {
    int prec = cfg.precision_at(k);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t raw = tapes[i].next_bits(cfg.chunk_bits);
      auto [na, nb] = bisect_step(a[i], b[i],
                                  chunk_to_index(raw, cfg.chunk_bits),
                                  cfg.chunk_bits);
      a[i] = na;
      b[i] = nb;
      noisy[i] = Enclosure::point(values[i]) +
                 noise[i]->interval_inv_cdf(a[i], b[i], prec);
    }
    for (std::size_t i = 0; i < n; ++i) {
      bool dominates = true;
      for (std::size_t j = 0; j < n && dominates; ++j)
        if (j != i && !(noisy[i].lo > noisy[j].hi)) dominates = false;
      if (dominates) return i;
    }
  }
  return std::nullopt;  // tie not resolved within the iteration cap
}

}  // namespace refinedp

#endif  // REFINEDP_MECHANISMS_HPP
