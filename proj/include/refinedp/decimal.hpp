#ifndef REFINEDP_DECIMAL_HPP
#define REFINEDP_DECIMAL_HPP

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "refinedp/bigfloat.hpp"

namespace refinedp {

/// Parse a decimal string ("-12", "0.25", "1e-3", "3/4") as an exact
/// rational. No floating point is involved, so nothing is lost.
inline Rational parse_exact_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational num = parse_exact_rational(text.substr(0, slash));
    Rational den = parse_exact_rational(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return num / den;
  }
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') neg = (text[i++] == '-');
  BigInt digits = 0;
  std::int64_t frac_digits = 0;
  std::int64_t exp10 = 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      if (seen_dot) ++frac_digits;
      seen_digit = true;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if ((c == 'e' || c == 'E') && seen_digit) {
      exp10 = std::stoll(text.substr(i + 1));
      break;
    } else {
      throw std::invalid_argument("malformed number: " + text);
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed number: " + text);
  Rational r(digits);
  std::int64_t net = exp10 - frac_digits;
  BigInt p10 = boost::multiprecision::pow(BigInt(10),
                                          static_cast<unsigned>(net < 0 ? -net : net));
  if (net >= 0) r *= Rational(p10);
  else r /= Rational(p10);
  return neg ? -r : r;
}

/// True iff the rational is a dyadic (denominator a power of two), in
/// which case the BigFloat conversion is exact.
inline bool is_dyadic(const Rational& r) {
  BigInt den = boost::multiprecision::denominator(r);
  return BigInt(den & (den - 1)).is_zero();
}

/// Exact conversion for dyadic rationals; throws otherwise.
inline BigFloat dyadic_to_bigfloat(const Rational& r) {
  if (!is_dyadic(r)) throw std::invalid_argument("not a dyadic rational");
  BigInt den = boost::multiprecision::denominator(r);
  return BigFloat(boost::multiprecision::numerator(r),
                  -static_cast<std::int64_t>(boost::multiprecision::lsb(den)));
}

/// Smallest BigFloat with at most prec mantissa bits that is >= r.
inline BigFloat rational_to_bigfloat_round_up(const Rational& r, int prec) {
  if (is_dyadic(r)) return dyadic_to_bigfloat(r);
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  std::int64_t ln = boost::multiprecision::msb(boost::multiprecision::abs(num));
  std::int64_t ld = boost::multiprecision::msb(den);
  std::int64_t shift = (ld - ln) + prec + 2;
  if (shift < 0) shift = 0;
  BigInt scaled = boost::multiprecision::abs(num) << static_cast<unsigned>(shift);
  BigInt q = scaled / den;
  bool exact = q * den == scaled;
  bool negative = num.sign() < 0;
  if (!exact && !negative) ++q;  // ceiling
  BigFloat out(negative ? -q : q, -shift);
  return out.round_to_precision(prec, Round::up);
}

}  // namespace refinedp

#endif  // REFINEDP_DECIMAL_HPP
