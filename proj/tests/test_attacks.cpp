#include "refinedp/attacks.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace refinedp {
namespace {

TEST(SumPrecision, FloatAdditionLandsOnHalfUlpGrid) {
  // x (+) y is always a multiple of ulp(x)/2, checked exactly.
  BitTape tape = BitTape::seeded(3);
  for (int i = 0; i < 20000; ++i) {
    double x = std::ldexp(static_cast<double>(tape.next_bits(52) + 1),
                          static_cast<int>(tape.next_bits(6)) - 32);
    double y = std::ldexp(static_cast<double>(tape.next_bits(52) + 1),
                          static_cast<int>(tape.next_bits(6)) - 64);
    double s = x + y;
    if (!std::isfinite(s) || s == 0.0) continue;
    ASSERT_TRUE(is_on_grid_multiple(s, detail::half_ulp_log2(x))) << x << " " << y;
  }
}

TEST(NaiveAdditive, OutputsAreMultiplesOfHalfUlp) {
  SamplerConfig cfg;
  BitTape tape = BitTape::seeded(5);
  for (int i = 0; i < 300; ++i) {
    double out = naive_additive_sample(1.0, 1.0, cfg, tape);
    ASSERT_TRUE(is_on_grid_multiple(out, -53)) << out;
  }
}

TEST(Uniforms, CoarseIsOnGridFineEscapesIt) {
  BitTape tape = BitTape::seeded(7);
  for (int i = 0; i < 2000; ++i) {
    double r = coarse_uniform(tape);
    ASSERT_TRUE(is_on_grid_multiple(r, -53));
    ASSERT_GE(r, 0.0);
    ASSERT_LT(r, 1.0);
  }
  int off = 0;
  for (int i = 0; i < 2000; ++i) {
    double r = hole_free_uniform(tape);
    ASSERT_GT(r, 0.0);
    ASSERT_LT(r, 1.0);
    if (!is_on_grid_multiple(r, -53)) ++off;
  }
  // Roughly half the hole-free draws fall in binades below 1/2 and carry
  // mantissa bits finer than 2^-53.
  EXPECT_GT(off, 500);
}

TEST(NaiveUniformInterval, KnownValues) {
  // r = 1/2 exactly: 21 bits then 32 bits... replay gives full control.
  std::vector<bool> bits(53, false);
  bits[0] = true;  // mantissa 2^52 -> r = 1/2
  BitTape tape = BitTape::replay(bits);
  EXPECT_EQ(naive_uniform_interval(0.0, 1.0, UniformVariant::coarse, tape),
            0.5);
  EXPECT_THROW(
      naive_uniform_interval(1.0, 0.0, UniformVariant::coarse,
                             tape),
      std::invalid_argument);
}

TEST(NaiveUniformInterval, MinusOneToOneStaysOnGrid) {
  // x = -1: every output is -1 (+) 2r, a multiple of ulp(-1)/2 = 2^-53,
  // even with the hole-free uniform.
  BitTape tape = BitTape::seeded(11);
  for (int i = 0; i < 3000; ++i) {
    double out = naive_uniform_interval(-1.0, 1.0, UniformVariant::fine, tape);
    ASSERT_TRUE(is_on_grid_multiple(out, -53)) << out;
  }
}

TEST(AdditiveAttack, DistinguishesZeroFromOne) {
  AttackReport rep = run_additive_attack(0.0, 1.0, 1.0, 2000, 42);
  EXPECT_EQ(rep.verdict, "vulnerable");
  // mu = 0 side: noise added to 0.0 keeps full precision, so a sizable
  // share lands off the 2^-53 grid; mu = 1 side is pinned to it.
  EXPECT_GT(rep.count0, 0);
  EXPECT_EQ(rep.count1, 0);
  EXPECT_NEAR(rep.fraction0, 0.25, 0.08);
  EXPECT_EQ(rep.mechanism, "naive_additive_laplace");
  EXPECT_EQ(rep.samples_per_side, 2000);
  EXPECT_EQ(rep.seed, 42u);
}

TEST(AdditiveAttack, SafeMechanismShowsNoFinding) {
  AttackReport rep =
      run_additive_attack(0.0, 1.0, 1.0, 2000, 43, /*use_safe_mechanism=*/true);
  EXPECT_EQ(rep.verdict, "no finding");
  // Both sides produce off-grid outputs: the distinguishing gap is gone.
  EXPECT_GT(rep.count0, 0);
  EXPECT_GT(rep.count1, 0);
  EXPECT_EQ(rep.mechanism, "laplace_interval_refining");
}

TEST(AdditiveAttack, IdenticalInputsShowNoFinding) {
  AttackReport rep = run_additive_attack(0.0, 0.0, 1.0, 1000, 44);
  EXPECT_EQ(rep.verdict, "no finding");
  EXPECT_THROW(run_additive_attack(0.0, 1.0, 1.0, 10, 1),
               std::invalid_argument);
}

TEST(AdditiveAttack, DeterministicForSeed) {
  AttackReport a = run_additive_attack(0.0, 1.0, 1.0, 1000, 7);
  AttackReport b = run_additive_attack(0.0, 1.0, 1.0, 1000, 7);
  EXPECT_EQ(a.count0, b.count0);
  EXPECT_EQ(a.count1, b.count1);
}

TEST(QuantileAttack, CoarseDistinguishesQuarterShift) {
  AttackReport rep = run_quantile_attack({0, 0, 1}, {0, 0.25, 1},
                                         UniformVariant::coarse, 3000, 17);
  EXPECT_EQ(rep.verdict, "vulnerable");
  // [0,0,1] collapses to the unit interval: coarse uniforms stay on the
  // 2^-53 grid. [0,0.25,1] scales them by 1/4 or 3/4, leaving the grid.
  EXPECT_EQ(rep.count0, 0);
  EXPECT_GT(rep.count1, 0);
}

TEST(QuantileAttack, FineCannotDistinguishQuarterShift) {
  AttackReport rep = run_quantile_attack({0, 0, 1}, {0, 0.25, 1},
                                         UniformVariant::fine, 3000, 19);
  EXPECT_EQ(rep.verdict, "no finding");
  EXPECT_GT(rep.count0, 0);
  EXPECT_GT(rep.count1, 0);
}

TEST(QuantileAttack, FineDistinguishesInteriorZero) {
  AttackReport rep = run_quantile_attack({-1, 1, 1}, {-1, 0, 1},
                                         UniformVariant::fine, 3000, 23);
  EXPECT_EQ(rep.verdict, "vulnerable");
  // [-1,1,1]: outputs are -1 (+) 2r, pinned to the 2^-53 grid even with
  // the hole-free uniform. [-1,0,1]: draws from (0,1) keep fine bits.
  EXPECT_EQ(rep.count0, 0);
  EXPECT_GT(rep.count1, 0);
}

TEST(QuantileAttack, ReportFieldsAndDeterminism) {
  AttackReport a = run_quantile_attack({0, 0, 1}, {0, 0.25, 1},
                                       UniformVariant::coarse, 1000, 29);
  AttackReport b = run_quantile_attack({0, 0, 1}, {0, 0.25, 1},
                                       UniformVariant::coarse, 1000, 29);
  EXPECT_EQ(a.count0, b.count0);
  EXPECT_EQ(a.count1, b.count1);
  EXPECT_EQ(a.mechanism, "naive_quantile_coarse_uniform");
  EXPECT_EQ(a.input0, "[0,0,1]");
  EXPECT_EQ(a.input1, "[0,0.25,1]");
  EXPECT_EQ(a.predicate, "output is not a multiple of 2^-53");
}

TEST(IntervalSelection, ExactWeightsFavorCentralIntervals) {
  // Five equal-width intervals: the middle one has utility 0 and the
  // largest weight e^0; the outer ones are damped by e^-1. Frequencies
  // should be ordered center >= shoulders >= edges.
  std::vector<std::pair<BigFloat, BigFloat>> intervals;
  for (int i = 0; i < 5; ++i)
    intervals.emplace_back(BigFloat(i), BigFloat(i + 1));
  BitTape tape = BitTape::seeded(31);
  std::vector<int> hits(5, 0);
  int n = 5000;
  for (int i = 0; i < n; ++i)
    ++hits[detail::select_interval_exact(intervals, tape)];
  EXPECT_GT(hits[2], hits[1]);
  EXPECT_GT(hits[2], hits[3]);
  EXPECT_GT(hits[1], hits[0]);
  EXPECT_GT(hits[3], hits[4]);
  // Symmetric pairs agree within 5 sigma of a fair split.
  double s01 = hits[0] + hits[4];
  EXPECT_NEAR(hits[0], s01 / 2, 5 * std::sqrt(s01 * 0.25) + 1);
}

TEST(IntervalSelection, ZeroWidthIntervalsAreNeverChosen) {
  std::vector<std::pair<BigFloat, BigFloat>> intervals{
      {BigFloat(0), BigFloat(0)}, {BigFloat(0), BigFloat(1)}};
  BitTape tape = BitTape::seeded(37);
  for (int i = 0; i < 50; ++i)
    EXPECT_EQ(detail::select_interval_exact(intervals, tape), 1u);
}

TEST(Verdict, XorOfNonzeroCounts) {
  EXPECT_EQ(verdict_for(5, 0), "vulnerable");
  EXPECT_EQ(verdict_for(0, 5), "vulnerable");
  EXPECT_EQ(verdict_for(0, 0), "no finding");
  EXPECT_EQ(verdict_for(3, 7), "no finding");
}

}  // namespace
}  // namespace refinedp
