#include "refinedp/bigfloat.hpp"

#include <gtest/gtest.h>

#include <random>

namespace refinedp {
namespace {

TEST(BigFloat, CanonicalForm) {
  BigFloat a(BigInt(12), 0);  // 12 = 3 * 2^2
  EXPECT_EQ(a.mantissa(), BigInt(3));
  EXPECT_EQ(a.exponent(), 2);
  EXPECT_TRUE(BigFloat(BigInt(0), 17).is_zero());
  EXPECT_EQ(BigFloat(BigInt(0), 17).exponent(), 0);
}

TEST(BigFloat, ExactArithmetic) {
  BigFloat a(3), b(5);
  EXPECT_EQ(a + b, BigFloat(8));
  EXPECT_EQ(a - b, BigFloat(-2));
  EXPECT_EQ(a * b, BigFloat(15));
  EXPECT_EQ(-a, BigFloat(-3));

  // 1/8 + 3/4 = 7/8
  BigFloat eighth(1, -3), three_quarters(3, -2);
  EXPECT_EQ(eighth + three_quarters, BigFloat(7, -3));
}

TEST(BigFloat, FromDoubleIsExact) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    double x = std::ldexp(static_cast<double>(rng() >> 11) - (1ull << 52),
                          static_cast<int>(rng() % 64) - 32);
    BigFloat v = BigFloat::from_double(x);
    EXPECT_EQ(v.to_rational(),
              Rational(BigFloat::from_double(x).to_rational()));
    // Round trip through the rational value.
    EXPECT_EQ(static_cast<double>(v.to_rational().convert_to<double>()), x);
  }
  EXPECT_TRUE(BigFloat::from_double(0.0).is_zero());
  EXPECT_TRUE(BigFloat::from_double(1e308).is_finite());
  EXPECT_THROW(BigFloat::from_double(std::nan("")), std::domain_error);
}

TEST(BigFloat, Midpoint) {
  EXPECT_EQ(BigFloat::midpoint(BigFloat(0), BigFloat(1)), BigFloat(1, -1));
  EXPECT_EQ(BigFloat::midpoint(BigFloat(1, -1), BigFloat(1)), BigFloat(3, -2));
  BigFloat a(-7, -4);
  EXPECT_EQ(BigFloat::midpoint(a, a), a);
}

TEST(BigFloat, MidpointIteratedDenominators) {
  // k halvings from (0,1) give denominators exactly 2^k.
  BigFloat a(0), b(1);
  for (int k = 1; k <= 200; ++k) {
    b = BigFloat::midpoint(a, b);
    Rational r = b.to_rational();
    EXPECT_EQ(boost::multiprecision::denominator(r), BigInt(1) << k);
  }
}

TEST(BigFloat, Comparisons) {
  EXPECT_LT(BigFloat(-1), BigFloat(1, -10));
  EXPECT_LT(BigFloat::neg_infinity(), BigFloat(-1000000));
  EXPECT_LT(BigFloat(1000000), BigFloat::pos_infinity());
  EXPECT_EQ(BigFloat::pos_infinity(), BigFloat::pos_infinity());
  EXPECT_LT(BigFloat(1, -60), BigFloat(1, -59));
}

TEST(BigFloat, InfinityArithmetic) {
  EXPECT_TRUE((BigFloat::pos_infinity() + BigFloat(5)).is_pos_inf());
  EXPECT_THROW(BigFloat::pos_infinity() - BigFloat::pos_infinity(),
               std::domain_error);
  EXPECT_THROW(BigFloat(0) * BigFloat::pos_infinity(), std::domain_error);
  EXPECT_TRUE((BigFloat(-2) * BigFloat::pos_infinity()).is_neg_inf());
}

TEST(BigFloat, DirectedRounding) {
  BigFloat third_approx(0xAAAAAB, -24);  // slightly above 2/3
  BigFloat down = third_approx.round_to_precision(8, Round::down);
  BigFloat up = third_approx.round_to_precision(8, Round::up);
  EXPECT_LE(down, third_approx);
  EXPECT_GE(up, third_approx);
  EXPECT_LE(down.bit_length(), 8);
  EXPECT_LE(up.bit_length(), 8);

  // Negative values: down moves away from zero.
  BigFloat neg = -third_approx;
  EXPECT_LE(neg.round_to_precision(8, Round::down), neg);
  EXPECT_GE(neg.round_to_precision(8, Round::up), neg);

  // Values already within budget are untouched.
  EXPECT_EQ(BigFloat(5).round_to_precision(8, Round::down), BigFloat(5));
}

TEST(BigFloat, RoundingPropertyRandomized) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 2000; ++i) {
    BigInt m = BigInt(rng()) * BigInt(rng()) + BigInt(rng());
    if (rng() & 1) m = -m;
    BigFloat v(m, static_cast<std::int64_t>(rng() % 200) - 100);
    int prec = 1 + static_cast<int>(rng() % 96);
    BigFloat down = v.round_to_precision(prec, Round::down);
    BigFloat up = v.round_to_precision(prec, Round::up);
    ASSERT_LE(down, v);
    ASSERT_GE(up, v);
    ASSERT_LE(down.bit_length(), prec);
    ASSERT_LE(up.bit_length(), prec);
    // The two roundings differ by at most one quantum.
    if (down != up) {
      BigFloat gap = up - down;
      ASSERT_EQ(gap.mantissa(), BigInt(1));
    }
  }
}

TEST(BigFloat, HexSerializationRoundTrip) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 2000; ++i) {
    BigInt m = BigInt(rng()) * BigInt(rng());
    if (rng() & 1) m = -m;
    BigFloat v(m, static_cast<std::int64_t>(rng() % 2000) - 1000);
    EXPECT_EQ(BigFloat::from_hex_string(v.to_hex_string()), v);
  }
  EXPECT_EQ(BigFloat::from_hex_string("+0x5p-3"), BigFloat(5, -3));
  EXPECT_EQ(BigFloat::from_hex_string("-inf"), BigFloat::neg_infinity());
  EXPECT_EQ(BigFloat::from_hex_string(BigFloat(0).to_hex_string()),
            BigFloat(0));
  EXPECT_THROW(BigFloat::from_hex_string("bogus"), std::invalid_argument);
}

}  // namespace
}  // namespace refinedp
