#ifndef REFINEDP_DISTRIBUTIONS_HPP
#define REFINEDP_DISTRIBUTIONS_HPP

#include <stdexcept>
#include <utility>
#include <vector>

#include "refinedp/bigfloat.hpp"
#include "refinedp/enclosure.hpp"

namespace refinedp {

/// A distribution exposed through interval-valued CDF machinery.
///
/// interval_inv_cdf([a,b], prec) returns an enclosure containing F^-1(x)
/// for every x in [a,b]; over a point input its width tends to 0 as prec
/// grows. interval_cdf is the forward direction, used by verification.
class IntervalDistribution {
 public:
  virtual ~IntervalDistribution() = default;

  virtual Enclosure interval_inv_cdf(const BigFloat& a, const BigFloat& b,
                                     int prec) const = 0;

  virtual Enclosure interval_cdf(const Enclosure& v, int prec) const = 0;
};

/// Location/scale parameters of the Laplace distribution, both exact.
struct LaplaceParams {
  BigFloat mu;
  BigFloat beta;

  LaplaceParams(BigFloat location, BigFloat scale)
      : mu(std::move(location)), beta(std::move(scale)) {
    if (!mu.is_finite()) throw std::invalid_argument("mu must be finite");
    if (!beta.is_finite() || beta.sign() <= 0)
      throw std::invalid_argument("beta must be finite and positive");
  }
};

/// Laplace(mu, beta). Quantile: F^-1(u) = mu + beta*ln(2u) for u <= 1/2 and
/// mu - beta*ln(2(1-u)) for u >= 1/2; doubling and the branch test at 1/2
/// are exact on dyadics, so the only approximation is the log enclosure.
class LaplaceDistribution : public IntervalDistribution {
 public:
  explicit LaplaceDistribution(LaplaceParams params)
      : params_(std::move(params)) {}

  const LaplaceParams& params() const { return params_; }

  Enclosure interval_inv_cdf(const BigFloat& a, const BigFloat& b,
                             int prec) const override {
    check_unit_interval(a, b);
    // The quantile is monotone: evaluate endpoint-wise.
    return Enclosure(quantile_point(a, prec).lo, quantile_point(b, prec).hi);
  }

  /// Enclosure of F^-1(u) for a single dyadic u in [0,1].
  Enclosure quantile_point(const BigFloat& u, int prec) const {
    const BigFloat half(1, -1);
    if (u.is_zero()) return Enclosure::point(BigFloat::neg_infinity());
    if (u == BigFloat(1)) return Enclosure::point(BigFloat::pos_infinity());
    Enclosure lnv = (u <= half)
                        ? ln_enclosure(Enclosure::point(u.mul_pow2(1)), prec)
                        : -ln_enclosure(
                              Enclosure::point((BigFloat(1) - u).mul_pow2(1)),
                              prec);
    // mu and beta are exact, so shift and scale introduce no extra error.
    return Enclosure::point(params_.mu) +
           Enclosure::point(params_.beta) * lnv;
  }

  Enclosure interval_cdf(const Enclosure& v, int prec) const override {
    return Enclosure(cdf_point(v.lo, prec).lo, cdf_point(v.hi, prec).hi);
  }

  /// Enclosure of F(x): (1/2)e^((x-mu)/beta) below mu, 1-(1/2)e^(-(x-mu)/beta)
  /// above; the branch test against mu is exact.
  Enclosure cdf_point(const BigFloat& x, int prec) const {
    if (x.is_neg_inf()) return Enclosure(BigFloat(0), BigFloat(1, -(prec + 2)));
    if (x.is_pos_inf())
      return Enclosure(BigFloat(1) - BigFloat(1, -(prec + 2)), BigFloat(1));
    Enclosure t = div_rounded(Enclosure::point(x - params_.mu),
                              Enclosure::point(params_.beta), prec + 8);
    Enclosure r;
    if (x <= params_.mu) {
      Enclosure e = exp_enclosure(t, prec + 4);
      r = Enclosure(e.lo.mul_pow2(-1), e.hi.mul_pow2(-1));
    } else {
      Enclosure e = exp_enclosure(-t, prec + 4);
      r = Enclosure(BigFloat(1) - e.hi.mul_pow2(-1),
                    BigFloat(1) - e.lo.mul_pow2(-1));
    }
    if (r.lo.sign() < 0) r.lo = BigFloat(0);
    if (r.hi > BigFloat(1)) r.hi = BigFloat(1);
    return r.rounded(prec + 8);
  }

 private:
  static void check_unit_interval(const BigFloat& a, const BigFloat& b) {
    if (a > b) throw std::invalid_argument("malformed interval: a > b");
    if (a.sign() < 0 || b > BigFloat(1))
      throw std::invalid_argument("interval must lie within [0,1]");
  }

  LaplaceParams params_;
};

/// A distribution given by a piecewise-linear CDF through dyadic
/// breakpoints (x_i, u_i), u_0 = 0, u_n = 1, both strictly increasing.
/// Its CDF values at dyadic points are exact rationals, which lets the
/// verification harness compute grid-point probabilities with no error.
class PiecewiseLinearDistribution : public IntervalDistribution {
 public:
  PiecewiseLinearDistribution(std::vector<BigFloat> xs, std::vector<BigFloat> us)
      : xs_(std::move(xs)), us_(std::move(us)) {
    if (xs_.size() != us_.size() || xs_.size() < 2)
      throw std::invalid_argument("need matching breakpoint lists, size >= 2");
    if (!us_.front().is_zero() || us_.back() != BigFloat(1))
      throw std::invalid_argument("CDF must run from 0 to 1");
    for (std::size_t i = 1; i < xs_.size(); ++i)
      if (!(xs_[i - 1] < xs_[i]) || !(us_[i - 1] < us_[i]))
        throw std::invalid_argument("breakpoints must strictly increase");
  }

  const BigFloat& support_min() const { return xs_.front(); }
  const BigFloat& support_max() const { return xs_.back(); }

  Enclosure interval_inv_cdf(const BigFloat& a, const BigFloat& b,
                             int prec) const override {
    if (a > b) throw std::invalid_argument("malformed interval: a > b");
    return Enclosure(inv_point(a, prec).lo, inv_point(b, prec).hi);
  }

  Enclosure interval_cdf(const Enclosure& v, int prec) const override {
    return Enclosure(cdf_point(v.lo, prec).lo, cdf_point(v.hi, prec).hi);
  }

  /// Exact CDF value at a dyadic point (or +-inf).
  Rational exact_cdf(const BigFloat& x) const {
    if (x.is_neg_inf() || x <= xs_.front()) {
      if (x == xs_.front()) return 0;
      return 0;
    }
    if (x.is_pos_inf() || x >= xs_.back()) return 1;
    std::size_t i = segment_of(x);
    Rational span_u = us_[i + 1].to_rational() - us_[i].to_rational();
    Rational span_x = xs_[i + 1].to_rational() - xs_[i].to_rational();
    return us_[i].to_rational() +
           (x.to_rational() - xs_[i].to_rational()) * span_u / span_x;
  }

 private:
  Enclosure inv_point(const BigFloat& u, int prec) const {
    if (u.sign() < 0 || u > BigFloat(1))
      throw std::invalid_argument("quantile argument outside [0,1]");
    // Segment with u in [u_i, u_{i+1}].
    std::size_t i = 0;
    while (i + 2 < us_.size() && u >= us_[i + 1]) ++i;
    Enclosure slope = div_rounded(
        Enclosure::point(xs_[i + 1] - xs_[i]),
        Enclosure::point(us_[i + 1] - us_[i]), prec);
    return (Enclosure::point(xs_[i]) +
            slope * Enclosure::point(u - us_[i]))
        .rounded(prec);
  }

  Enclosure cdf_point(const BigFloat& x, int prec) const {
    if (x.is_neg_inf() || x <= xs_.front())
      return Enclosure::point(BigFloat(0));
    if (x.is_pos_inf() || x >= xs_.back())
      return Enclosure::point(BigFloat(1));
    std::size_t i = segment_of(x);
    Enclosure slope = div_rounded(
        Enclosure::point(us_[i + 1] - us_[i]),
        Enclosure::point(xs_[i + 1] - xs_[i]), prec);
    return (Enclosure::point(us_[i]) +
            slope * Enclosure::point(x - xs_[i]))
        .rounded(prec);
  }

  std::size_t segment_of(const BigFloat& x) const {
    std::size_t i = 0;
    while (i + 2 < xs_.size() && x >= xs_[i + 1]) ++i;
    return i;
  }

  std::vector<BigFloat> xs_;
  std::vector<BigFloat> us_;
};

}  // namespace refinedp

#endif  // REFINEDP_DISTRIBUTIONS_HPP
