#ifndef REFINEDP_ENCLOSURE_HPP
#define REFINEDP_ENCLOSURE_HPP

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "refinedp/bigfloat.hpp"

namespace refinedp {

/// A closed interval [lo, hi] of dyadic rationals (endpoints may be +-inf)
/// guaranteed to contain some true real value. Every operation preserves
/// containment: if the true inputs lie in the input enclosures, the true
/// result lies in the output enclosure.
struct Enclosure {
  BigFloat lo;
  BigFloat hi;

  Enclosure() = default;
  Enclosure(BigFloat l, BigFloat h) : lo(std::move(l)), hi(std::move(h)) {
    if (BigFloat::compare(lo, hi) > 0)
      throw std::invalid_argument("Enclosure: lo > hi");
  }

  static Enclosure point(const BigFloat& v) { return Enclosure(v, v); }

  bool is_point() const { return lo == hi; }

  bool contains(const BigFloat& v) const { return lo <= v && v <= hi; }

  bool contains(const Enclosure& other) const {
    return lo <= other.lo && other.hi <= hi;
  }

  /// Exact width; infinite if either endpoint is infinite.
  BigFloat width() const {
    if (!lo.is_finite() || !hi.is_finite()) return BigFloat::pos_infinity();
    return hi - lo;
  }

  /// Outward rounding to at most prec significant bits per endpoint.
  Enclosure rounded(int prec) const {
    return Enclosure(lo.round_to_precision(prec, Round::down),
                     hi.round_to_precision(prec, Round::up));
  }
};

inline Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  return Enclosure(a.lo + b.lo, a.hi + b.hi);
}

inline Enclosure operator-(const Enclosure& a) {
  return Enclosure(-a.hi, -a.lo);
}

inline Enclosure operator-(const Enclosure& a, const Enclosure& b) {
  return a + (-b);
}

inline Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  // All four endpoint products; exact, so min/max is the tight hull.
  BigFloat p1 = a.lo * b.lo;
  BigFloat p2 = a.lo * b.hi;
  BigFloat p3 = a.hi * b.lo;
  BigFloat p4 = a.hi * b.hi;
  BigFloat lo = std::min({p1, p2, p3, p4});
  BigFloat hi = std::max({p1, p2, p3, p4});
  return Enclosure(lo, hi);
}

/// a / b with directed rounding: the result has at most prec significant
/// bits per endpoint and is guaranteed to bracket the true quotient.
inline BigFloat div_directed(const BigFloat& a, const BigFloat& b, int prec,
                             Round dir) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (!a.is_finite() || !b.is_finite()) {
    if (!a.is_finite() && !b.is_finite())
      throw std::domain_error("inf / inf");
    if (!a.is_finite())
      return a.sign() * b.sign() > 0 ? BigFloat::pos_infinity()
                                     : BigFloat::neg_infinity();
    // A zero quotient cannot be bracketed with directed rounding.
    throw std::domain_error("division by infinite enclosure endpoint");
  }
  if (a.is_zero()) return BigFloat();
  bool neg = a.sign() * b.sign() < 0;
  BigInt na = boost::multiprecision::abs(a.mantissa());
  BigInt nb = boost::multiprecision::abs(b.mantissa());
  // Scale the numerator so the integer quotient carries prec+2 bits.
  std::int64_t shift = (b.bit_length() - a.bit_length()) + prec + 2;
  if (shift < 0) shift = 0;
  na <<= static_cast<unsigned>(shift);
  BigInt q;
  BigInt r;
  boost::multiprecision::divide_qr(na, nb, q, r);
  bool inexact = !r.is_zero();
  // True magnitude lies in [q, q+1) * 2^e.
  if (inexact && ((dir == Round::up && !neg) || (dir == Round::down && neg)))
    ++q;
  std::int64_t e = a.exponent() - b.exponent() - shift;
  BigFloat out(neg ? -q : q, e);
  return out.round_to_precision(prec, dir);
}

inline Enclosure div_rounded(const Enclosure& a, const Enclosure& b,
                             int prec) {
  if (b.lo.sign() <= 0 && b.hi.sign() >= 0)
    throw std::domain_error("div_rounded: divisor encloses zero");
  BigFloat lo = BigFloat::pos_infinity();
  BigFloat hi = BigFloat::neg_infinity();
  for (const BigFloat* x : {&a.lo, &a.hi}) {
    for (const BigFloat* y : {&b.lo, &b.hi}) {
      lo = std::min(lo, div_directed(*x, *y, prec, Round::down));
      hi = std::max(hi, div_directed(*x, *y, prec, Round::up));
    }
  }
  return Enclosure(lo, hi);
}

namespace detail {

// a / b for a positive point divisor: division is monotone, so two
// directed divisions suffice.
inline Enclosure div_by_positive_point(const Enclosure& a, const BigFloat& b,
                                       int prec) {
  return Enclosure(div_directed(a.lo, b, prec, Round::down),
                   div_directed(a.hi, b, prec, Round::up));
}

// Integer shift toward zero; the dropped bits are an error below 1 ulp.
inline BigInt shift_trunc(const BigInt& v, unsigned s) {
  if (v.sign() >= 0) return v >> s;
  return -(BigInt(-v) >> s);
}

// atanh at a single dyadic point z with |z| <= 1/2 and z^2 <= 2^-h, h >= 2.
// The series sum z^(2j+1)/(2j+1) runs in integer fixed point scaled by
// 2^wp, truncating toward zero between steps. Error accounting in ulps of
// 2^-wp: representing z costs at most 1; each squared/propagated power
// stays below 8 (the 2^-h decay damps inherited error); each term and
// addition costs at most 1 more; the tail after N terms is 2^(1-h*N),
// which the choice of N keeps below 1 ulp. Everything is widened outward
// at the end.
inline Enclosure atanh_fixed_point(const BigFloat& z, int h, int wp) {
  BigInt zz;  // z scaled by 2^wp, error at most 1 ulp toward zero
  std::int64_t shift = wp + z.exponent();
  if (shift >= 0)
    zz = z.mantissa() << static_cast<unsigned>(shift);
  else
    zz = shift_trunc(z.mantissa(), static_cast<unsigned>(-shift));
  const unsigned w = static_cast<unsigned>(wp);
  BigInt z2 = (zz * zz) >> w;  // nonnegative, so floor = toward zero
  int n_terms = (wp + 4) / h + 2;
  BigInt sum = zz;
  BigInt power = zz;
  for (int j = 1; j < n_terms; ++j) {
    power = shift_trunc(power * z2, w);
    sum += power / (2 * j + 1);  // built-in truncation toward zero
  }
  long err = 10 * n_terms + 10;
  return Enclosure(BigFloat(sum - err, -wp), BigFloat(sum + err, -wp));
}

// atanh over an enclosure z with z^2 <= 2^-h; monotone increasing, so
// endpoint-wise.
inline Enclosure atanh_series(const Enclosure& z, int h, int wp) {
  BigFloat zmax = std::max(z.lo.abs(), z.hi.abs());
  if (zmax * zmax > BigFloat(1, -h) || zmax > BigFloat(1, -1))
    throw std::logic_error("atanh_series: argument bound violated");
  if (z.is_point()) return atanh_fixed_point(z.lo, h, wp);
  return Enclosure(atanh_fixed_point(z.lo, h, wp).lo,
                   atanh_fixed_point(z.hi, h, wp).hi);
}

// ln 2 = 2 * atanh(1/3).
inline Enclosure ln2_enclosure(int wp) {
  Enclosure third = div_rounded(Enclosure::point(BigFloat(1)),
                                Enclosure::point(BigFloat(3)), wp);
  Enclosure at = atanh_series(third, 3, wp);  // (1/3)^2 = 1/9 < 2^-3
  return Enclosure(at.lo.mul_pow2(1), at.hi.mul_pow2(1));
}

// Cached ln 2: a tighter enclosure than requested stays valid, so keep the
// widest-precision result computed so far and reuse it.
inline const Enclosure& ln2_cached(int wp) {
  thread_local int cached_wp = 0;
  thread_local Enclosure cached;
  if (wp > cached_wp) {
    cached_wp = wp + 64;
    cached = ln2_enclosure(cached_wp);
  }
  return cached;
}

// ln of an exact dyadic point c > 0.
inline Enclosure ln_point(const BigFloat& c, int prec) {
  if (c.sign() <= 0)
    throw std::domain_error("ln_point: argument must be positive");
  if (c.is_pos_inf()) return Enclosure::point(BigFloat::pos_infinity());
  int wp = prec + 16;
  // Reduce c = f * 2^n with f in [3/4, 3/2); dyadic comparisons are exact.
  std::int64_t n = c.floor_log2();  // f0 = c * 2^-n in [1, 2)
  BigFloat f = c.mul_pow2(-n);
  if (f >= BigFloat(3, -1)) {
    f = f.mul_pow2(-1);
    ++n;
  }
  // z = (f-1)/(f+1) in [-1/7, 1/5], so z^2 <= 1/25 < 2^-4.
  Enclosure z = div_by_positive_point(Enclosure::point(f - BigFloat(1)),
                                      f + BigFloat(1), wp);
  Enclosure lnf = atanh_series(z, 4, wp);
  lnf = Enclosure(lnf.lo.mul_pow2(1), lnf.hi.mul_pow2(1));
  if (n != 0) {
    const Enclosure& ln2 = ln2_cached(wp);
    Enclosure nln2 = Enclosure::point(BigFloat(BigInt(n), 0)) * ln2;
    lnf = lnf + nln2;
  }
  return lnf.rounded(prec);
}

// e^c for an exact dyadic point c, as a two-sided enclosure.
inline Enclosure exp_point(const BigFloat& c, int prec) {
  if (c.is_pos_inf()) return Enclosure::point(BigFloat::pos_infinity());
  if (c.is_neg_inf()) return Enclosure(BigFloat(0), BigFloat(1, -(prec + 4)));
  // Far-negative fast path: e^c <= 2^c for c <= 0.
  if (c.sign() < 0 && c <= BigFloat(-(static_cast<long>(prec) + 4)))
    return Enclosure(BigFloat(0), BigFloat(1, -(prec + 4)));
  if (c.is_zero()) return Enclosure::point(BigFloat(1));
  // Reduce: r = c / 2^k with |r| <= 1/2, then square k times.
  std::int64_t k = c.floor_log2() + 2;
  if (k < 0) k = 0;
  int wp = prec + 2 * static_cast<int>(k) + 24;
  BigFloat r = c.mul_pow2(-k);
  // Taylor sum of r^i / i!; ratio between consecutive terms <= 1/2.
  Enclosure sum = Enclosure::point(BigFloat(1)) + Enclosure::point(r);
  Enclosure term = Enclosure::point(r);
  BigFloat bound(1, -1);  // |term| upper bound, starts at 1/2
  int i = 2;
  while (bound > BigFloat(1, -(wp + 2))) {
    term = div_by_positive_point(term * Enclosure::point(r), BigFloat(i), wp);
    sum = (sum + term).rounded(wp);
    bound = std::max(term.lo.abs(), term.hi.abs());
    ++i;
  }
  // Remaining tail is below twice the last term bound.
  BigFloat tail = bound.mul_pow2(1).round_to_precision(8, Round::up);
  sum = Enclosure(sum.lo - tail, sum.hi + tail);
  for (std::int64_t j = 0; j < k; ++j) sum = (sum * sum).rounded(wp);
  if (sum.lo.sign() < 0) sum.lo = BigFloat(0);  // exp is positive
  return sum.rounded(prec);
}

}  // namespace detail

/// Natural log over an enclosure with lo >= 0 (lo == 0 gives a -inf lower
/// endpoint). Containment holds for every x in the input; for a point input
/// [c,c] the width is bounded by 2^(2-prec) * max(1, |ln c|).
inline Enclosure ln_enclosure(const Enclosure& x, int prec) {
  if (x.hi.sign() <= 0)
    throw std::domain_error("ln_enclosure: upper endpoint must be positive");
  if (x.lo.sign() < 0)
    throw std::domain_error("ln_enclosure: lower endpoint must be >= 0");
  BigFloat lo = x.lo.is_zero() ? BigFloat::neg_infinity()
                               : detail::ln_point(x.lo, prec).lo;
  BigFloat hi = x.hi.is_pos_inf() ? BigFloat::pos_infinity()
                                  : detail::ln_point(x.hi, prec).hi;
  return Enclosure(lo, hi);
}

/// exp over an enclosure; monotone, so endpoint-wise with directed rounding.
inline Enclosure exp_enclosure(const Enclosure& x, int prec) {
  BigFloat lo = detail::exp_point(x.lo, prec).lo;
  BigFloat hi = detail::exp_point(x.hi, prec).hi;
  if (lo.sign() < 0) lo = BigFloat(0);
  return Enclosure(lo, hi);
}

}  // namespace refinedp

#endif  // REFINEDP_ENCLOSURE_HPP
