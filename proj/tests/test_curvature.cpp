#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "grw/curvature.hpp"
#include "grw/errors.hpp"

namespace {

using grw::Family;
using grw::make_warping;

constexpr double kPi = std::numbers::pi;

TEST(Scalar, TypeOneVanishes) {
    const auto w = make_warping(Family::I, 1.5, 4);
    for (double t : {-3.0, 0.0, 2.0}) EXPECT_EQ(grw::scalar_curvature(w, t, 0.0), 0.0);
}

TEST(Scalar, TypeTwoAtQuarterPeriod) {
    const auto w = make_warping(Family::II, 1.0, 2);
    EXPECT_NEAR(grw::scalar_curvature(w, kPi / 4, 0.0), 12.0, 1e-12);
    // Ordered pairs double the b'^2/b^2 coefficient: 8 + 8.
    EXPECT_NEAR(grw::scalar_curvature(w, kPi / 4, 0.0, grw::ScalarMode::OrderedPairs), 16.0, 1e-12);
}

TEST(Scalar, BigBangGrowth) {
    const auto w = make_warping(Family::II, 1.0, 2);
    double previous = grw::scalar_curvature(w, 0.5, 0.0);
    for (double t = 0.25; t > 1e-6; t /= 2) {
        const double value = grw::scalar_curvature(w, t, 0.0);
        EXPECT_GT(value, previous) << t;
        previous = value;
    }
    EXPECT_GT(previous, 1e10);
}

TEST(Scalar, BigBangThreshold) {
    for (double c : {0.5, 1.0, 2.0}) {
        for (int n : {2, 3, 5}) {
            const auto w = make_warping(Family::II, c, n);
            const double t6 = grw::big_bang_threshold(w);
            EXPECT_GT(t6, 0.0);
            EXPECT_NEAR(grw::scalar_curvature(w, t6, 0.0), 1e6, 1e-3);
            double previous = std::numeric_limits<double>::infinity();
            for (int i = 1; i <= 50; ++i) {
                const double t = t6 * i / 50.0;
                const double value = grw::scalar_curvature(w, t, 0.0);
                EXPECT_GE(value, 1e6 * (1 - 1e-9));
                EXPECT_LT(value, previous);
                previous = value;
            }
        }
    }
    EXPECT_THROW(grw::big_bang_threshold(make_warping(Family::III, 1.0, 2)), std::invalid_argument);
    EXPECT_THROW(grw::big_bang_threshold(make_warping(Family::II, 1.0, 1)), std::invalid_argument);
}

TEST(Sectional, PairValues) {
    EXPECT_EQ(grw::sectional_pair(make_warping(Family::I, 1.0, 2), 0.3, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(grw::sectional_pair(make_warping(Family::I, 2.0, 2), 0.3, 1.0), 0.25);
    // (b'/b)^2 at t = -1 for Type III, c = 1, n = 2: 4 / sinh^2(2).
    EXPECT_NEAR(grw::sectional_pair(make_warping(Family::III, 1.0, 2), -1.0, 0.0),
                0.304087319352284, 1e-13);
}

TEST(Sectional, MixedValues) {
    EXPECT_EQ(grw::sectional_mixed(make_warping(Family::I, 1.0, 3), 0.1), 0.0);
    EXPECT_NEAR(grw::sectional_mixed(make_warping(Family::II, 1.0, 1), kPi / 4), 4.0, 1e-13);
    EXPECT_NEAR(grw::sectional_mixed(make_warping(Family::III, 1.0, 1), -1.0), -0.839948683228052,
                1e-13);
}

TEST(NullRicci, Values) {
    EXPECT_EQ(grw::null_ricci(make_warping(Family::II, 1.0, 1), 0.3, 0.7), 0.7);
    EXPECT_EQ(grw::null_ricci(make_warping(Family::III, 2.0, 1), -0.3, -1.5), -1.5);
    // 4 cosh(2) / sinh^2(2).
    EXPECT_NEAR(grw::null_ricci(make_warping(Family::III, 1.0, 2), -1.0, 0.0), 1.14403600258034,
                1e-12);
    EXPECT_NEAR(grw::null_ricci(make_warping(Family::II, 1.0, 2), kPi / 8, 0.0),
                4.0 * std::numbers::sqrt2, 1e-12);
}

TEST(NullRicci, FormsAgree) {
    for (Family f : {Family::II, Family::III}) {
        for (double c : {0.5, 1.0, 2.0}) {
            for (int n : {1, 2, 3, 6}) {
                const auto w = make_warping(f, c, n);
                for (int i = 0; i < 200; ++i) {
                    const double t = grw::curvature_sample_point(w, i, 200);
                    const double raw = grw::null_ricci(w, t, 0.3);
                    const double closed = grw::null_ricci_closed(w, t, 0.3);
                    ASSERT_LE(std::abs(raw - closed), 1e-12 * std::max(1.0, std::abs(closed)))
                        << grw::to_string(f) << " c=" << c << " n=" << n << " t=" << t;
                }
            }
        }
    }
}

TEST(NullRicci, OffsetRootAtQuarterPeriod) {
    for (double c : {0.5, 1.0, 2.0, 3.7}) {
        const auto w = make_warping(Family::II, c, 2);
        EXPECT_NEAR(grw::null_ricci_offset_root(w), kPi / (4 * c), 1e-9);
    }
}

TEST(Ncc, TypeThreeHolds) {
    const auto v = grw::ncc_verdict(make_warping(Family::III, 1.0, 2), 0.0, 100);
    EXPECT_TRUE(v.holds);
    EXPECT_GT(v.min_value, 0.0);
    EXPECT_FALSE(v.first_violation.has_value());
    EXPECT_EQ(v.sample_count, 100);
}

TEST(Ncc, TypeTwoViolatedPastQuarterPeriod) {
    const auto v = grw::ncc_verdict(make_warping(Family::II, 1.0, 2), 0.0, 100);
    EXPECT_FALSE(v.holds);
    ASSERT_TRUE(v.first_violation.has_value());
    EXPECT_GT(*v.first_violation, kPi / 4);
    EXPECT_LT(*v.first_violation, kPi / 2);
    EXPECT_LT(v.min_value, 0.0);
}

TEST(Ncc, SingleFibreDimensionHolds) {
    for (Family f : {Family::I, Family::II, Family::III}) {
        EXPECT_TRUE(grw::ncc_verdict(make_warping(f, 1.0, 1), 0.0, 100).holds);
    }
}

TEST(Ncc, TypeThreePositiveAtEverySample) {
    const auto w = make_warping(Family::III, 1.0, 2);
    for (int i = 0; i < 100; ++i) {
        EXPECT_GT(grw::null_ricci(w, grw::curvature_sample_point(w, i, 100), 0.0), 0.0);
    }
}

TEST(CurvatureSample, Columns) {
    const auto w = make_warping(Family::II, 1.0, 2);
    const auto s = grw::curvature_sample(w, kPi / 4, 0.0);
    EXPECT_DOUBLE_EQ(s.t, kPi / 4);
    EXPECT_NEAR(s.scalar, 12.0, 1e-12);
    EXPECT_NEAR(s.mixed_sectional, 4.0, 1e-12);
    EXPECT_NEAR(s.fiber_pair_sectional_offset, 4.0, 1e-12);
    EXPECT_NEAR(s.null_ricci_offset, 0.0, 1e-12);
}

TEST(CurvatureSample, DomainChecked) {
    EXPECT_THROW(grw::scalar_curvature(make_warping(Family::II, 1.0, 2), 2.0, 0.0), grw::DomainError);
    EXPECT_THROW(grw::null_ricci_closed(make_warping(Family::III, 1.0, 2), 0.1, 0.0),
                 grw::DomainError);
}

}  // namespace
