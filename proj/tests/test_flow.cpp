#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "grw/classifier.hpp"
#include "grw/errors.hpp"
#include "grw/flow.hpp"
#include "grw/reaper.hpp"

namespace {

using grw::Family;
using grw::make_warping;

constexpr double kPi = std::numbers::pi;

// Exact flow of b d/dt: sin(cA) = sin(cs) e^{n c^2 t} (Type II),
// sinh(cA) = sinh(cs) e^{-n c^2 t} (Type III).
double exact_flow(const grw::WarpingFunction& w, double s, double t) {
    const double c = w.c();
    const double rate = w.n() * c * c * t;
    if (w.family() == Family::II) return std::asin(std::sin(c * s) * std::exp(rate)) / c;
    return std::asinh(std::sinh(c * s) * std::exp(-rate)) / c;
}

TEST(Flow, TypeOneIsLinear) {
    EXPECT_DOUBLE_EQ(grw::flow_A(make_warping(Family::I, 2.0, 1), 0.0, 3.0), 6.0);
    EXPECT_DOUBLE_EQ(grw::flow_ds(make_warping(Family::I, 2.0, 1), 0.4, -1.3), 1.0);
}

TEST(Flow, ZeroTimeIsIdentity) {
    for (Family f : {Family::II, Family::III}) {
        const auto w = make_warping(f, 1.0, 2);
        const double s = f == Family::II ? 0.6 : -0.8;
        EXPECT_EQ(grw::flow_A(w, s, 0.0), s);
        EXPECT_EQ(grw::flow_ds(w, s, 0.0), 1.0);
    }
}

TEST(Flow, TypeTwoMatchesTanIntegral) {
    const auto w = make_warping(Family::II, 1.0, 1);
    const double a = grw::flow_A(w, kPi / 4, 0.1);
    // integral_{pi/4}^{a} dy / tan y = log(sin a / sin(pi/4)) must equal 0.1.
    EXPECT_NEAR(std::log(std::sin(a) / std::sin(kPi / 4)), 0.1, 1e-10);
}

TEST(Flow, DerivativeMatchesFiniteDifference) {
    const auto w = make_warping(Family::III, 1.0, 2);
    const double h = 1e-6;
    const double fd = (grw::flow_A(w, -1.0 + h, 0.2) - grw::flow_A(w, -1.0 - h, 0.2)) / (2 * h);
    const double exact = w.b(grw::flow_A(w, -1.0, 0.2)) / w.b(-1.0);
    EXPECT_NEAR(grw::flow_ds(w, -1.0, 0.2), exact, 1e-12 * exact);
    EXPECT_NEAR(fd, exact, 1e-6 * exact);
}

TEST(Flow, EscapeIsReported) {
    const auto w = make_warping(Family::II, 1.0, 1);
    // sin A = sin(pi/4) e^t leaves (0, pi/2) at t = log(sqrt 2).
    EXPECT_THROW(grw::flow_A(w, kPi / 4, 0.5), grw::FlowEscapeError);
    EXPECT_NO_THROW(grw::flow_A(w, kPi / 4, 0.3));
    EXPECT_THROW(grw::flow_A(w, 2.0, 0.1), grw::DomainError);
}

class FlowGrid : public ::testing::TestWithParam<std::tuple<Family, double, int>> {};

TEST_P(FlowGrid, AgreesWithExactFlow) {
    const auto [family, c, n] = GetParam();
    const auto w = make_warping(family, c, n);
    for (int i = 1; i < 10; ++i) {
        const double s = family == Family::II ? (kPi / (2 * c)) * i / 10.0 : -3.0 * i / (10.0 * c);
        for (double t : {-0.05, 0.02, 0.05}) {
            const double tt = t / (c * c);
            double exact = 0.0;
            try {
                exact = exact_flow(w, s, tt);
            } catch (...) {
                continue;
            }
            if (!std::isfinite(exact) || !w.inside(exact)) continue;
            if (family == Family::II && exact > (1 - 1e-6) * w.interval().upper) continue;
            EXPECT_NEAR(grw::flow_A(w, s, tt), exact, 1e-9 * std::max(1.0, std::abs(exact)))
                << "s = " << s << " t = " << tt;
        }
    }
}

TEST_P(FlowGrid, Semigroup) {
    const auto [family, c, n] = GetParam();
    const auto w = make_warping(family, c, n);
    const double t1 = 0.03 / (c * c * n), t2 = -0.045 / (c * c * n);
    for (int i = 2; i < 8; ++i) {
        const double s = family == Family::II ? (kPi / (2 * c)) * i / 10.0 : -3.0 * i / (10.0 * c);
        const double direct = grw::flow_A(w, s, t1 + t2);
        const double composed = grw::flow_A(w, grw::flow_A(w, s, t1), t2);
        EXPECT_LT(std::abs(direct - composed), 1e-8) << s;
    }
}

TEST_P(FlowGrid, DerivativeIdentity) {
    const auto [family, c, n] = GetParam();
    const auto w = make_warping(family, c, n);
    const double t = 0.04 / (c * c * n);
    for (int i = 2; i < 8; ++i) {
        const double s = family == Family::II ? (kPi / (2 * c)) * i / 10.0 : -3.0 * i / (10.0 * c);
        const double h = 1e-5 * std::abs(s);
        const double fd = (grw::flow_A(w, s + h, t) - grw::flow_A(w, s - h, t)) / (2 * h);
        const double exact = grw::flow_ds(w, s, t);
        EXPECT_LT(std::abs(fd - exact), 1e-6 * std::abs(exact)) << s;
    }
}

// d/dt log(dA/ds) = b'(A): the conformal Killing relation along the flow.
TEST_P(FlowGrid, ConformalKillingConsistency) {
    const auto [family, c, n] = GetParam();
    const auto w = make_warping(family, c, n);
    const double t = 0.02 / (c * c * n);
    const double h = 1e-5 / (c * c * n);
    for (int i = 2; i < 8; ++i) {
        const double s = family == Family::II ? (kPi / (2 * c)) * i / 10.0 : -3.0 * i / (10.0 * c);
        const double lhs = (std::log(grw::flow_ds(w, s, t + h)) - std::log(grw::flow_ds(w, s, t - h))) /
                           (2 * h);
        const double rhs = w.db(grw::flow_A(w, s, t));
        EXPECT_LT(std::abs(lhs - rhs), 1e-6 * std::max(1.0, std::abs(rhs))) << s;
    }
}

INSTANTIATE_TEST_SUITE_P(Dynamic, FlowGrid,
                         ::testing::Combine(::testing::Values(Family::II, Family::III),
                                            ::testing::Values(0.5, 1.0, 2.0),
                                            ::testing::Values(1, 2, 3)));

TEST(Transport, ZeroTimeKeepsCurve) {
    const auto w = make_warping(Family::II, 1.0, 2);
    const auto curve = grw::integrate(w, 0.0, kPi / 4, 0.0);
    const auto moved = grw::transport_solution(w, curve, 0.0);
    ASSERT_EQ(moved.samples().size(), curve.samples().size());
    for (std::size_t i = 0; i < curve.samples().size(); ++i) {
        EXPECT_EQ(moved.samples()[i].s, curve.samples()[i].s);
        EXPECT_EQ(moved.samples()[i].y, curve.samples()[i].y);
        EXPECT_EQ(moved.samples()[i].v, curve.samples()[i].v);
    }
}

TEST(Transport, TypeOneShiftsValues) {
    const auto w = make_warping(Family::I, 2.0, 1);
    std::vector<grw::Sample> samples;
    for (int i = 0; i < 20; ++i) samples.push_back({0.1 * i, 0.5 + 0.3 * i, 0.3 - 0.01 * i});
    const grw::SolutionCurve curve(w, samples, {}, {}, 0.0, grw::CurveOrigin::Integrated);
    const auto moved = grw::transport_solution(w, curve, 0.25);
    EXPECT_EQ(moved.origin(), grw::CurveOrigin::Transported);
    for (std::size_t i = 0; i < curve.samples().size(); ++i) {
        EXPECT_NEAR(moved.samples()[i].y, curve.samples()[i].y + 0.5, 1e-14);
        EXPECT_EQ(moved.samples()[i].v, curve.samples()[i].v);
    }
}

class TransportInvariance : public ::testing::TestWithParam<std::tuple<Family, double>> {};

TEST_P(TransportInvariance, ResidualAndClassSurvive) {
    const auto [family, t] = GetParam();
    const auto w = make_warping(family, 1.0, 2);
    const double y0 = family == Family::II ? kPi / 4 : -1.0;
    const auto curve = grw::integrate(w, 0.0, y0, 0.0, {.max_span = 10.0});
    const auto moved = grw::transport_solution(w, curve, t);
    EXPECT_LT(grw::ode_residual(w, moved), 1e-6);
    const auto before = grw::classify(w, 0.0, y0, 0.0);
    const double y_t = grw::flow_A(w, y0, t);
    const auto after = grw::classify(w, 0.0, y_t, 0.0);
    EXPECT_EQ(before.cls, after.cls);
    ASSERT_EQ(moved.critical_points().size(), 1u);
    EXPECT_NEAR(moved.critical_points()[0].y, y_t, 1e-9);
}

INSTANTIATE_TEST_SUITE_P(SmallTimes, TransportInvariance,
                         ::testing::Combine(::testing::Values(Family::II, Family::III),
                                            ::testing::Values(-0.05, 0.05)));

// Moving initial data along the flow keeps the class: (A(y0,t), b(A)/b(y0) v0).
TEST(Transport, ClassOfTransportedInitialData) {
    for (Family f : {Family::II, Family::III}) {
        const auto w = make_warping(f, 1.0, 2);
        const double y0 = f == Family::II ? 0.7 : -1.2;
        for (double ratio : {0.0, 0.3, 0.8, 1.3, 2.0}) {
            const double v0 = ratio * w.b(y0);
            const auto before = grw::classify(w, 0.0, y0, v0);
            for (double t : {-0.04, 0.04}) {
                const double a = grw::flow_A(w, y0, t);
                const auto after = grw::classify(w, 0.0, a, w.b(a) / w.b(y0) * v0);
                EXPECT_EQ(before.cls, after.cls) << ratio << " " << t;
            }
        }
    }
}

}  // namespace
