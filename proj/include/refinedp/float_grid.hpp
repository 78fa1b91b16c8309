#ifndef REFINEDP_FLOAT_GRID_HPP
#define REFINEDP_FLOAT_GRID_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <optional>
#include <stdexcept>
#include <vector>

#include "refinedp/bigfloat.hpp"

namespace refinedp {

/// Bit-level fields of an IEEE-754 binary64 value.
struct FloatDecomposition {
  bool sign;               // true for negative
  int exponent;            // raw biased exponent, 0..2047
  std::uint64_t mantissa;  // 52-bit fraction field
};

inline std::uint64_t to_bits(double x) { return std::bit_cast<std::uint64_t>(x); }
inline double from_bits(std::uint64_t b) { return std::bit_cast<double>(b); }

inline FloatDecomposition decompose(double x) {
  std::uint64_t b = to_bits(x);
  return FloatDecomposition{
      .sign = (b >> 63) != 0,
      .exponent = static_cast<int>((b >> 52) & 0x7ff),
      .mantissa = b & ((std::uint64_t{1} << 52) - 1),
  };
}

inline double recompose(const FloatDecomposition& d) {
  std::uint64_t b = (std::uint64_t{d.sign} << 63) |
                    (static_cast<std::uint64_t>(d.exponent) << 52) |
                    d.mantissa;
  return from_bits(b);
}

/// Distance from x to the next consecutive binary64 away from zero.
/// For normal x with 2^k <= |x| < 2^(k+1) this is 2^(k-52); for subnormals
/// it is 2^-1074. Zero, infinities and NaN are errors.
inline double ulp(double x) {
  if (x == 0.0 || !std::isfinite(x))
    throw std::domain_error("ulp: argument must be finite and nonzero");
  FloatDecomposition d = decompose(x);
  if (d.exponent == 0) return std::ldexp(1.0, -1074);  // subnormal
  return std::ldexp(1.0, d.exponent - 1023 - 52);
}

/// Exact value of a finite double as mantissa * 2^e with integer mantissa,
/// decided purely from the bit pattern.
inline std::pair<std::int64_t, int> integer_scaled(double x) {
  FloatDecomposition d = decompose(x);
  std::int64_t m;
  int e;
  if (d.exponent == 0) {
    m = static_cast<std::int64_t>(d.mantissa);
    e = -1074;
  } else {
    m = static_cast<std::int64_t>(d.mantissa | (std::uint64_t{1} << 52));
    e = d.exponent - 1075;
  }
  return {d.sign ? -m : m, e};
}

/// True iff finite x is an exact integer multiple of 2^step_log2, decided
/// exactly from the bit decomposition (no floating division).
inline bool is_on_grid_multiple(double x, int step_log2) {
  if (!std::isfinite(x))
    throw std::domain_error("is_on_grid_multiple: argument must be finite");
  auto [m, e] = integer_scaled(x);
  if (m == 0) return true;
  if (e >= step_log2) return true;
  int deficit = step_log2 - e;  // need m divisible by 2^deficit
  if (deficit >= 63) return false;
  std::uint64_t mag = static_cast<std::uint64_t>(m < 0 ? -m : m);
  return std::countr_zero(mag) >= deficit;
}

/// Smallest binary64 >= v (ceiling onto the binary64 grid). +inf maps to
/// +inf. Values below the most negative finite double map to -inf, or to
/// that finite minimum when saturate is set. NaN cannot occur (BigFloat has
/// no NaN).
inline double next_float_up(const BigFloat& v, bool saturate = false) {
  if (v.is_pos_inf()) return std::numeric_limits<double>::infinity();
  if (v.is_neg_inf())
    return saturate ? -std::numeric_limits<double>::max()
                    : -std::numeric_limits<double>::infinity();
  if (v.is_zero()) return 0.0;

  bool neg = v.sign() < 0;
  BigFloat mag = v.abs();
  std::int64_t e2 = mag.floor_log2();  // 2^e2 <= mag < 2^(e2+1)
  if (e2 >= 1024 || (e2 == 1023 && mag > BigFloat::from_double(
                                             std::numeric_limits<double>::max()))) {
    // Beyond the finite range.
    double lim = neg ? -std::numeric_limits<double>::infinity()
                     : std::numeric_limits<double>::infinity();
    return saturate ? std::copysign(std::numeric_limits<double>::max(), lim)
                    : lim;
  }
  std::int64_t q = std::max<std::int64_t>(e2 - 52, -1074);  // result quantum
  // Magnitude as n * 2^q; ceiling for positive v, floor for negative.
  BigInt scaled_m = mag.mantissa();
  std::int64_t shift = mag.exponent() - q;
  BigInt n;
  if (shift >= 0) {
    n = scaled_m << static_cast<unsigned>(shift);
  } else {
    unsigned s = static_cast<unsigned>(-shift);
    n = scaled_m >> s;
    bool inexact = (n << s) != scaled_m;
    if (inexact && !neg) ++n;  // ceiling toward +inf
  }
  double d = std::ldexp(n.convert_to<double>(), static_cast<int>(q));
  if (std::isinf(d))  // ceiling bumped past the top binade (positive only)
    return saturate ? std::numeric_limits<double>::max() : d;
  return neg ? -d : d;
}

/// The binary64 grid: round_up is next_float_up, predecessor walks one
/// representable step down. Enumeration is infeasible for this grid.
class Binary64Grid {
 public:
  using grid_point = double;

  explicit Binary64Grid(bool saturate = false) : saturate_(saturate) {}

  std::optional<grid_point> round_up(const BigFloat& v) const {
    return next_float_up(v, saturate_);
  }

  grid_point predecessor(grid_point p) const {
    return std::nextafter(p, -std::numeric_limits<double>::infinity());
  }

 private:
  bool saturate_;
};

/// A tiny explicit grid (a "minifloat" stand-in for binary64) over which
/// the whole sampling process can be enumerated exhaustively. Grid points
/// are exact dyadics; round_up(v) is the smallest point >= v, with values
/// above the top point unrepresentable.
class ToyGrid {
 public:
  using grid_point = int;  // index into points()

  explicit ToyGrid(std::vector<BigFloat> points) : points_(std::move(points)) {
    if (points_.empty()) throw std::invalid_argument("ToyGrid: empty");
    for (std::size_t i = 1; i < points_.size(); ++i)
      if (!(points_[i - 1] < points_[i]))
        throw std::invalid_argument("ToyGrid: points must strictly increase");
  }

  std::optional<grid_point> round_up(const BigFloat& v) const {
    if (v.is_pos_inf() || v > points_.back()) return std::nullopt;
    auto it = std::lower_bound(points_.begin(), points_.end(), v);
    return static_cast<int>(it - points_.begin());
  }

  grid_point predecessor(grid_point p) const {
    if (p <= 0) throw std::out_of_range("ToyGrid: no predecessor");
    return p - 1;
  }

  std::size_t size() const { return points_.size(); }
  const std::vector<BigFloat>& points() const { return points_; }
  const BigFloat& point(grid_point p) const { return points_.at(p); }

  std::vector<grid_point> enumerate() const {
    std::vector<grid_point> out(points_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
    return out;
  }

 private:
  std::vector<BigFloat> points_;
};

}  // namespace refinedp

#endif  // REFINEDP_FLOAT_GRID_HPP
