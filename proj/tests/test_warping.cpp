#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "grw/errors.hpp"
#include "grw/warping.hpp"

namespace {

using grw::Family;
using grw::make_warping;

constexpr double kPi = std::numbers::pi;

TEST(Warping, TypeTwoIntervalAndValue) {
    const auto w = make_warping(Family::II, 1.0, 2);
    EXPECT_EQ(w.interval().lower, 0.0);
    EXPECT_DOUBLE_EQ(w.interval().upper, kPi / 2);
    EXPECT_NEAR(w.b(kPi / 4), 2.0, 1e-15);
}

TEST(Warping, TypeThreePositiveOnNegativeAxis) {
    const auto w = make_warping(Family::III, 1.0, 2);
    EXPECT_TRUE(std::isinf(w.interval().lower));
    EXPECT_EQ(w.interval().upper, 0.0);
    for (double t : {-20.0, -3.0, -1.0, -1e-3, -1e-12}) EXPECT_GT(w.b(t), 0.0) << t;
}

TEST(Warping, TypeOneConstant) {
    const auto w = make_warping(Family::I, 3.0, 5);
    for (double t : {-100.0, 0.0, 7.5}) {
        EXPECT_EQ(w.b(t), 3.0);
        EXPECT_EQ(w.db(t), 0.0);
    }
}

TEST(Warping, EvalOrders) {
    EXPECT_NEAR(grw::eval_b(make_warping(Family::II, 1.0, 1), kPi / 4, 1), 2.0, 1e-14);
    EXPECT_EQ(grw::eval_b(make_warping(Family::I, 2.0, 3), 0.37, 2), 0.0);
    // 2 tanh(1) to 15 digits.
    EXPECT_NEAR(grw::eval_b(make_warping(Family::III, 1.0, 2), -1.0, 0), 1.52318831191153, 1e-13);
}

TEST(Warping, SolitonConstants) {
    EXPECT_DOUBLE_EQ(grw::soliton_constant(make_warping(Family::II, 2.0, 3)), -36.0);
    EXPECT_DOUBLE_EQ(grw::soliton_constant(make_warping(Family::III, 1.0, 1)), 1.0);
    EXPECT_DOUBLE_EQ(grw::soliton_constant(make_warping(Family::I, 1.0, 7)), 1.0);
}

TEST(Warping, IdentityChecks) {
    EXPECT_EQ(grw::check_warping_identity(make_warping(Family::I, 5.0, 2), 100), 0.0);
    EXPECT_LT(grw::check_warping_identity(make_warping(Family::II, 1.0, 2), 1000), 1e-10);
    EXPECT_LT(grw::check_warping_identity(make_warping(Family::III, 0.5, 3), 1000), 1e-10);
}

TEST(Warping, RejectsBadParameters) {
    EXPECT_THROW(make_warping(Family::II, 0.0, 1), std::invalid_argument);
    EXPECT_THROW(make_warping(Family::II, -1.0, 1), std::invalid_argument);
    EXPECT_THROW(make_warping(Family::III, 1.0, 0), std::invalid_argument);
    EXPECT_THROW(make_warping(Family::II, std::nan(""), 1), std::invalid_argument);
}

TEST(Warping, DomainErrors) {
    const auto w2 = make_warping(Family::II, 1.0, 1);
    EXPECT_THROW(w2.b(0.0), grw::DomainError);
    EXPECT_THROW(w2.b(kPi / 2), grw::DomainError);
    EXPECT_THROW(w2.b(-0.1), grw::DomainError);
    const auto w3 = make_warping(Family::III, 1.0, 1);
    EXPECT_THROW(w3.b(0.0), grw::DomainError);
    EXPECT_THROW(w3.b(0.5), grw::DomainError);
}

TEST(Warping, FamilyNames) {
    EXPECT_EQ(grw::parse_family("II"), Family::II);
    EXPECT_EQ(grw::to_string(Family::III), "III");
    EXPECT_THROW(grw::parse_family("IV"), std::invalid_argument);
}

struct Params {
    Family family;
    double c;
    int n;
};

class WarpingGrid : public ::testing::TestWithParam<Params> {};

TEST_P(WarpingGrid, ConstantAndPositivity) {
    const auto [family, c, n] = GetParam();
    const auto w = make_warping(family, c, n);
    const double d = w.soliton_constant();
    for (int i = 0; i < 1000; ++i) {
        const double t = grw::sample_point(w, i, 1000);
        ASSERT_GT(w.b(t), 0.0);
        ASSERT_LT(std::abs(w.b(t) * w.b(t) - n * w.db(t) - d), 1e-10 * std::max(1.0, std::abs(d)))
            << "t = " << t;
    }
}

TEST_P(WarpingGrid, DerivativesMatchFiniteDifferences) {
    const auto [family, c, n] = GetParam();
    const auto w = make_warping(family, c, n);
    const double h = 1e-5 / c;
    for (int i = 0; i < 50; ++i) {
        const double t = grw::sample_point(w, i, 50);
        for (int order : {1, 2}) {
            const double fd = (w.eval(t + h, order - 1) - w.eval(t - h, order - 1)) / (2 * h);
            const double exact = w.eval(t, order);
            ASSERT_LE(std::abs(fd - exact), 1e-6 * std::max(1.0, std::abs(exact)))
                << "t = " << t << " order " << order;
        }
    }
}

TEST_P(WarpingGrid, QuotientsMatchDirectForms) {
    const auto [family, c, n] = GetParam();
    const auto w = make_warping(family, c, n);
    if (!w.is_dynamic()) {
        // Only defined for Types II and III.
        EXPECT_THROW(w.b_over_t(1.0), std::logic_error);
        EXPECT_THROW(w.t_db_over_b(1.0), std::logic_error);
        EXPECT_EQ(w.log_derivative(1.0), 0.0);
        return;
    }
    for (int i = 0; i < 100; ++i) {
        const double t = grw::sample_point(w, i, 100);
        EXPECT_NEAR(w.b_over_t(t), w.b(t) / t, 1e-12 * std::abs(w.b(t) / t));
        EXPECT_NEAR(w.t_db_over_b(t), t * w.db(t) / w.b(t), 1e-12 * std::abs(t * w.db(t) / w.b(t)));
        EXPECT_NEAR(w.log_derivative(t), w.db(t) / w.b(t), 1e-12 * std::abs(w.db(t) / w.b(t)));
    }
}

std::vector<Params> all_params() {
    std::vector<Params> out;
    for (Family f : {Family::I, Family::II, Family::III}) {
        for (double c : {0.5, 1.0, 2.0}) {
            for (int n : {1, 2, 3}) out.push_back({f, c, n});
        }
    }
    return out;
}

INSTANTIATE_TEST_SUITE_P(AllFamilies, WarpingGrid, ::testing::ValuesIn(all_params()),
                         [](const ::testing::TestParamInfo<Params>& info) {
                             const Params& p = info.param;
                             return std::string(grw::to_string(p.family)) + "_c" +
                                    std::to_string(static_cast<int>(p.c * 10)) + "_n" +
                                    std::to_string(p.n);
                         });

}  // namespace
