#ifndef REFINEDP_BIGFLOAT_HPP
#define REFINEDP_BIGFLOAT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace refinedp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Rounding direction for operations that cannot be exact.
enum class Round { down, up };  // toward -inf / toward +inf

/// An exact dyadic rational: mantissa * 2^exponent, plus signed infinities.
///
/// Canonical form keeps the mantissa odd (or zero), so every value has a
/// unique representation. Addition, subtraction, multiplication, negation
/// and comparison of finite values are exact; nothing here ever rounds
/// unless you explicitly ask for it via round_to_precision().
class BigFloat {
 public:
  enum class Kind : std::uint8_t { finite, pos_inf, neg_inf };

  BigFloat() : kind_(Kind::finite), mantissa_(0), exponent_(0) {}

  BigFloat(long value) : BigFloat(BigInt(value), 0) {}  // NOLINT(runtime/explicit)

  BigFloat(BigInt mantissa, std::int64_t exponent)
      : kind_(Kind::finite),
        mantissa_(std::move(mantissa)),
        exponent_(exponent) {
    normalize();
  }

  static BigFloat pos_infinity() { return BigFloat(Kind::pos_inf); }
  static BigFloat neg_infinity() { return BigFloat(Kind::neg_inf); }

  /// Exact conversion; every finite double is a dyadic rational.
  static BigFloat from_double(double x) {
    if (std::isnan(x)) throw std::domain_error("BigFloat: NaN has no value");
    if (std::isinf(x)) return x > 0 ? pos_infinity() : neg_infinity();
    if (x == 0.0) return BigFloat();
    int exp = 0;
    double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
    auto scaled = static_cast<std::int64_t>(std::ldexp(m, 53));
    return BigFloat(BigInt(scaled), exp - 53);
  }

  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
  bool is_neg_inf() const { return kind_ == Kind::neg_inf; }
  bool is_zero() const { return kind_ == Kind::finite && mantissa_.is_zero(); }

  /// -1, 0 or +1.
  int sign() const {
    if (kind_ == Kind::pos_inf) return 1;
    if (kind_ == Kind::neg_inf) return -1;
    return mantissa_.sign();
  }

  const BigInt& mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }

  /// Number of significant bits of the mantissa (0 for zero).
  std::int64_t bit_length() const {
    if (mantissa_.is_zero()) return 0;
    return static_cast<std::int64_t>(boost::multiprecision::msb(
               boost::multiprecision::abs(mantissa_))) +
           1;
  }

  /// floor(log2 |x|) for finite nonzero x.
  std::int64_t floor_log2() const {
    if (!is_finite() || is_zero())
      throw std::domain_error("BigFloat: floor_log2 of zero or infinity");
    return exponent_ + bit_length() - 1;
  }

  BigFloat operator-() const {
    switch (kind_) {
      case Kind::pos_inf: return neg_infinity();
      case Kind::neg_inf: return pos_infinity();
      default: break;
    }
    BigFloat r = *this;
    r.mantissa_ = -r.mantissa_;
    return r;
  }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    if (!a.is_finite() || !b.is_finite()) {
      if (a.is_pos_inf() && b.is_neg_inf()) throw std::domain_error("inf - inf");
      if (a.is_neg_inf() && b.is_pos_inf()) throw std::domain_error("inf - inf");
      return a.is_finite() ? b : a;
    }
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    std::int64_t e = std::min(a.exponent_, b.exponent_);
    BigInt ma = a.mantissa_ << static_cast<unsigned>(a.exponent_ - e);
    BigInt mb = b.mantissa_ << static_cast<unsigned>(b.exponent_ - e);
    return BigFloat(ma + mb, e);
  }

  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    return a + (-b);
  }

  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    if (!a.is_finite() || !b.is_finite()) {
      if (a.is_zero() || b.is_zero()) throw std::domain_error("0 * inf");
      return a.sign() * b.sign() > 0 ? pos_infinity() : neg_infinity();
    }
    return BigFloat(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
  }

  /// Exact multiplication by 2^k.
  BigFloat mul_pow2(std::int64_t k) const {
    if (!is_finite() || is_zero()) return *this;
    return BigFloat(mantissa_, exponent_ + k);
  }

  /// Exact (a+b)/2; dyadics are closed under halving.
  static BigFloat midpoint(const BigFloat& a, const BigFloat& b) {
    if (!a.is_finite() || !b.is_finite())
      throw std::domain_error("BigFloat: midpoint of infinite endpoint");
    return (a + b).mul_pow2(-1);
  }

  /// Three-way comparison: negative, zero or positive as a <=> b.
  static int compare(const BigFloat& a, const BigFloat& b) {
    if (a.kind_ != Kind::finite || b.kind_ != Kind::finite) {
      int ra = a.is_pos_inf() ? 2 : (a.is_neg_inf() ? -2 : 0);
      int rb = b.is_pos_inf() ? 2 : (b.is_neg_inf() ? -2 : 0);
      if (ra != rb) return ra < rb ? -1 : 1;
      if (ra != 0) return 0;  // same infinity
    }
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    BigFloat d = a - b;
    return d.sign();
  }

  friend bool operator==(const BigFloat& a, const BigFloat& b) {
    return compare(a, b) == 0;
  }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) {
    return compare(a, b) != 0;
  }
  friend bool operator<(const BigFloat& a, const BigFloat& b) {
    return compare(a, b) < 0;
  }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) {
    return compare(a, b) <= 0;
  }
  friend bool operator>(const BigFloat& a, const BigFloat& b) {
    return compare(a, b) > 0;
  }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) {
    return compare(a, b) >= 0;
  }

  BigFloat abs() const { return sign() < 0 ? -*this : *this; }

  /// Round to at most `prec` significant mantissa bits in direction `dir`.
  BigFloat round_to_precision(int prec, Round dir) const {
    if (prec < 1) throw std::invalid_argument("precision must be positive");
    if (!is_finite() || is_zero()) return *this;
    std::int64_t drop = bit_length() - prec;
    if (drop <= 0) return *this;
    bool neg = mantissa_.sign() < 0;
    BigInt mag = boost::multiprecision::abs(mantissa_);
    BigInt kept = mag >> static_cast<unsigned>(drop);
    bool inexact = (kept << static_cast<unsigned>(drop)) != mag;
    // Directed rounding: bump the magnitude only when moving away from zero
    // in the requested direction.
    if (inexact && ((dir == Round::up && !neg) || (dir == Round::down && neg)))
      ++kept;
    return BigFloat(neg ? -kept : kept, exponent_ + drop);
  }

  /// Exact rational value (finite only).
  Rational to_rational() const {
    if (!is_finite())
      throw std::domain_error("BigFloat: infinity has no rational value");
    Rational r(mantissa_);
    if (exponent_ >= 0)
      r *= Rational(BigInt(1) << static_cast<unsigned>(exponent_));
    else
      r /= Rational(BigInt(1) << static_cast<unsigned>(-exponent_));
    return r;
  }

  /// Hex-dyadic text form, e.g. "+0x5p-3" for 5/8. Bit-exact round trip.
  std::string to_hex_string() const {
    if (is_pos_inf()) return "+inf";
    if (is_neg_inf()) return "-inf";
    std::ostringstream os;
    os << (mantissa_.sign() < 0 ? '-' : '+') << "0x" << std::hex
       << boost::multiprecision::abs(mantissa_) << std::dec << 'p'
       << (exponent_ < 0 ? '-' : '+')
       << (exponent_ < 0 ? -exponent_ : exponent_);
    return os.str();
  }

  static BigFloat from_hex_string(const std::string& s) {
    if (s == "+inf" || s == "inf") return pos_infinity();
    if (s == "-inf") return neg_infinity();
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
    if (s.compare(i, 2, "0x") != 0)
      throw std::invalid_argument("BigFloat: malformed hex-dyadic: " + s);
    i += 2;
    std::size_t p = s.find_first_of("pP", i);
    if (p == std::string::npos || p == i)
      throw std::invalid_argument("BigFloat: malformed hex-dyadic: " + s);
    BigInt m("0x" + s.substr(i, p - i));
    std::int64_t e = std::stoll(s.substr(p + 1));
    return BigFloat(neg ? -m : m, e);
  }

 private:
  explicit BigFloat(Kind k) : kind_(k), mantissa_(0), exponent_(0) {}

  void normalize() {
    if (mantissa_.is_zero()) {
      exponent_ = 0;
      return;
    }
    unsigned tz = boost::multiprecision::lsb(
        boost::multiprecision::abs(mantissa_));
    if (tz > 0) {
      mantissa_ >>= tz;
      exponent_ += tz;
    }
  }

  Kind kind_;
  BigInt mantissa_;
  std::int64_t exponent_;
};

}  // namespace refinedp

#endif  // REFINEDP_BIGFLOAT_HPP
