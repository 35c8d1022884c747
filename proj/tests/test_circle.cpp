#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sobolab/circle.hpp"
#include "sobolab/homeo.hpp"

using namespace sobolab;

TEST(Triangle, PeakEndpointsAndHalves) {
  const PiecewiseLinear t = triangle(CircleInterval(1.0, 2.0));
  EXPECT_DOUBLE_EQ(t.real_at(1.5), 1.0);
  EXPECT_DOUBLE_EQ(t.real_at(1.0), 0.0);
  EXPECT_DOUBLE_EQ(t.real_at(2.0), 0.0);
  EXPECT_DOUBLE_EQ(t.real_at(1.25), 0.5);
  EXPECT_DOUBLE_EQ(t.real_at(1.75), 0.5);
  EXPECT_DOUBLE_EQ(t.real_at(0.3), 0.0);
  EXPECT_DOUBLE_EQ(t.real_at(5.0), 0.0);
}

TEST(Triangle, RejectsDegenerateIntervals) {
  EXPECT_THROW(CircleInterval(2.0, 1.0), std::invalid_argument);
  EXPECT_THROW(CircleInterval(-0.1, 1.0), std::invalid_argument);
  EXPECT_THROW(CircleInterval(1.0, 7.0), std::invalid_argument);
}

TEST(PiecewiseLinear, ConstantEverywhere) {
  const auto c = PiecewiseLinear::constant(cplx(2.0, -1.0));
  for (double t : {0.0, 1.0, 3.0, 6.2, -1.0, 7.0}) EXPECT_EQ(c(t), cplx(2.0, -1.0));
}

TEST(PiecewiseLinear, GapBetweenDisjointTriangles) {
  const auto f = triangle(CircleInterval(0.5, 1.5)) + triangle(CircleInterval(3.0, 4.0));
  EXPECT_EQ(f.real_at(2.2), 0.0);
  EXPECT_DOUBLE_EQ(f.real_at(1.0), 1.0);
  EXPECT_DOUBLE_EQ(f.real_at(3.5), 1.0);
}

TEST(PiecewiseLinear, ExactAtKnots) {
  std::mt19937_64 rng(3);
  std::vector<double> knots;
  std::vector<cplx> values;
  double t = 0.0;
  for (int i = 0; i < 50; ++i) {
    t += 0.1 + unit_uniform(rng) * 0.02;
    knots.push_back(t);
    values.emplace_back(unit_uniform(rng) - 0.5, unit_uniform(rng));
  }
  const PiecewiseLinear f(knots, values);
  for (std::size_t i = 0; i < knots.size(); ++i) EXPECT_EQ(f(knots[i]), values[i]);
}

TEST(PiecewiseLinear, WrapSegmentInterpolates) {
  const auto f = PiecewiseLinear::from_real({1.0, 5.0}, {0.0, 4.0});
  // From (5, 4) to (1 + 2pi, 0): slope -4 / (2pi - 4).
  const double slope = -4.0 / (kTwoPi - 4.0);
  EXPECT_NEAR(f.real_at(0.0), 4.0 + slope * (kTwoPi - 5.0), 1e-14);
  EXPECT_NEAR(f.real_at(6.0), 4.0 + slope, 1e-14);
}

TEST(PiecewiseLinear, RejectsBadKnots) {
  EXPECT_THROW(PiecewiseLinear::from_real({1.0, 1.0}, {0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(PiecewiseLinear::from_real({1.0, kTwoPi}, {0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(PiecewiseLinear::from_real({1.0}, {0.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(PiecewiseLinear::from_real({}, {}), std::invalid_argument);
}

TEST(PiecewiseLinear, RealOnlyOperationsCheckImaginaryPart) {
  const PiecewiseLinear f({0.0, 1.0}, {cplx(0, 1e-300), 1.0});
  EXPECT_FALSE(f.is_real());
  EXPECT_THROW((void)f.real_at(0.5), std::domain_error);
  EXPECT_TRUE(f.real_part().is_real());
}

TEST(PiecewiseLinear, SimplifyDropsCollinearKnots) {
  const auto f = PiecewiseLinear::from_real({0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, 2.0, 0.0});
  const auto g = f.simplify();
  EXPECT_EQ(g.size(), 3u);
  for (double t = 0.0; t < kTwoPi; t += 0.1) EXPECT_NEAR(f.real_at(t), g.real_at(t), 1e-14);
}

TEST(Sample, KnotsOnGrid) {
  const auto f = triangle(CircleInterval(kPi / 2, 3 * kPi / 2));
  const GridFunction g = sample(f, 4);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_NEAR(g.samples[0].real(), 0.0, 1e-15);
  EXPECT_NEAR(g.samples[1].real(), 0.0, 1e-15);
  EXPECT_NEAR(g.samples[2].real(), 1.0, 1e-15);
  EXPECT_NEAR(g.samples[3].real(), 0.0, 1e-15);
}

TEST(Sample, ZeroAndTwoPoint) {
  for (const cplx& s : sample(PiecewiseLinear::constant(0.0), 8).samples) EXPECT_EQ(s, cplx(0.0));
  const auto f = PiecewiseLinear::from_real({0.5, 2.0, 4.0}, {1.0, -2.0, 3.0});
  const GridFunction g = sample(f, 2);
  EXPECT_EQ(g.samples[0], f(0.0));
  EXPECT_EQ(g.samples[1], f(kPi));
}

TEST(TotalVariation, TriangleConstantAndSums) {
  EXPECT_DOUBLE_EQ(total_variation(triangle(CircleInterval(1.0, 2.0))), 2.0);
  EXPECT_EQ(total_variation(PiecewiseLinear::constant(3.0)), 0.0);
  const auto f = 0.3 * triangle(CircleInterval(0.5, 1.0)) + 0.7 * triangle(CircleInterval(2.0, 3.0));
  EXPECT_NEAR(total_variation(f), 2.0 * (0.3 + 0.7), 1e-15);
}

TEST(TotalVariation, UnchangedByRedundantKnot) {
  const auto f = PiecewiseLinear::from_real({0.5, 2.0, 4.0}, {1.0, -2.0, 3.0});
  const auto g = PiecewiseLinear::from_real({0.5, 1.0, 2.0, 4.0}, {1.0, f.real_at(1.0), -2.0, 3.0});
  EXPECT_NEAR(total_variation(f), total_variation(g), 1e-12);
}

// |tent(t1) - tent(t2)| <= (2/|I|)|t1 - t2| on random triples.
TEST(TriangleProperty, LipschitzBound) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20000; ++i) {
    double a = kTwoPi * unit_uniform(rng);
    double b = kTwoPi * unit_uniform(rng);
    if (a > b) std::swap(a, b);
    if (!(a > 0.0 && a < b)) continue;
    const auto tent = triangle(CircleInterval(a, b));
    const double t1 = kTwoPi * unit_uniform(rng);
    const double t2 = kTwoPi * unit_uniform(rng);
    ASSERT_LE(std::fabs(tent.real_at(t1) - tent.real_at(t2)),
              2.0 / (b - a) * std::fabs(t1 - t2) + 1e-12);
  }
}

TEST(ReduceAngle, IntoRange) {
  EXPECT_EQ(reduce_angle(0.0), 0.0);
  EXPECT_NEAR(reduce_angle(-1.0), kTwoPi - 1.0, 1e-15);
  EXPECT_NEAR(reduce_angle(kTwoPi + 0.25), 0.25, 1e-15);
  EXPECT_LT(reduce_angle(std::nextafter(kTwoPi, 0.0)), kTwoPi);
}

TEST(MergeKnots, SortedUnion) {
  const std::vector<double> a{0.0, 1.0, 3.0};
  const std::vector<double> b{1.0, 2.0};
  EXPECT_EQ(merge_knots(a, b), (std::vector<double>{0.0, 1.0, 2.0, 3.0}));
}
