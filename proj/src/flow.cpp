#include "grw/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "grw/dopri.hpp"
#include "grw/errors.hpp"

namespace grw {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTolerance = 1e-12;
constexpr double kUnderflowLog = -700.0;

double sign_of_interval(const WarpingFunction& w) { return w.family() == Family::II ? 1.0 : -1.0; }

// Integrates z = log|A| (dz/dt = b(A)/A) from t = 0 to t; returns z at t.
double flow_log(const WarpingFunction& w, double s, double t) {
    using State = ode::State<1>;
    const double sigma = sign_of_interval(w);
    const double c = w.c();
    const Interval iv = w.interval();
    // Only the forward Type II flow leaves the interval in finite time; the
    // others approach 0 or -inf asymptotically.
    const double upper = iv.upper * (1.0 - kFlowEscapeMargin);

    auto rhs = [&w, sigma](double, const State& z) -> State {
        const double a = sigma * std::exp(z[0]);
        if (!w.inside(a)) return {kNaN};
        return {w.b_over_t(a)};
    };
    auto scale = [](std::size_t, const State&, const State&) { return kTolerance; };

    const double dir = t > 0.0 ? 1.0 : -1.0;
    State z{std::log(std::abs(s))};
    State k1 = rhs(0.0, z);
    double tau = 0.0;
    double h = dir * std::min(std::abs(t), 1e-3 / (w.n() * c * c));
    ode::StepController control;

    while (tau != t) {
        const double remaining = t - tau;
        const double step = dir * std::min(std::abs(h), std::abs(remaining));
        const bool lands = std::abs(step) == std::abs(remaining);
        if (std::abs(step) < 1e3 * std::numeric_limits<double>::epsilon() *
                                  std::max(1.0, std::abs(tau))) {
            const double endpoint = dir > 0.0 ? iv.upper : iv.lower;
            throw FlowEscapeError(
                fmt::format("flow from s = {} stalled at t = {} near the interval end {}", s, tau,
                            endpoint),
                tau, endpoint);
        }
        const auto attempt = ode::dopri_step<1>(rhs, tau, z, k1, step, scale);
        const bool accepted = attempt.error_norm <= 1.0;
        h = step * control.factor(attempt.error_norm, accepted);
        if (!accepted) continue;
        tau = lands ? t : tau + step;
        z = attempt.y;
        k1 = attempt.derivative;
        const double a = sigma * std::exp(z[0]);
        if (dir > 0.0 && w.family() == Family::II && a >= upper) {
            throw FlowEscapeError(
                fmt::format("flow from s = {} reached the margin of {} at t = {} before t = {}", s,
                            iv.upper, tau, t),
                tau, iv.upper);
        }
        if (dir < 0.0 && w.family() == Family::II && z[0] < kUnderflowLog) {
            throw FlowEscapeError(
                fmt::format("flow from s = {} underflowed towards 0 at t = {} before t = {}", s,
                            tau, t),
                tau, iv.lower);
        }
    }
    return z[0];
}

}  // namespace

double flow_A(const WarpingFunction& w, double s, double t) {
    w.require_inside(s);
    if (!std::isfinite(t)) throw std::invalid_argument("flow parameter must be finite");
    if (t == 0.0) return s;
    if (w.family() == Family::I) return s + w.c() * t;
    return sign_of_interval(w) * std::exp(flow_log(w, s, t));
}

double flow_ds(const WarpingFunction& w, double s, double t) {
    w.require_inside(s);
    if (t == 0.0 || w.family() == Family::I) return 1.0;
    // b(A)/b(s) = (b(A)/A) / (b(s)/s) * A/s, formed in logs so that tiny
    // values of s stay accurate.
    const double z = flow_log(w, s, t);
    const double a = sign_of_interval(w) * std::exp(z);
    return w.b_over_t(a) / w.b_over_t(s) * std::exp(z - std::log(std::abs(s)));
}

SolutionCurve transport_solution(const WarpingFunction& w, const SolutionCurve& curve, double t) {
    std::vector<Sample> moved;
    moved.reserve(curve.samples().size());
    for (const Sample& p : curve.samples()) {
        if (t == 0.0) {
            moved.push_back(p);
            continue;
        }
        if (w.family() == Family::I) {
            moved.push_back({p.s, p.y + w.c() * t, p.v});
            continue;
        }
        w.require_inside(p.y);
        const double z = flow_log(w, p.y, t);
        const double a = sign_of_interval(w) * std::exp(z);
        const double ratio = w.b_over_t(a) / w.b_over_t(p.y) * std::exp(z - std::log(std::abs(p.y)));
        moved.push_back({p.s, a, ratio * p.v});
    }

    std::vector<CriticalPoint> critical;
    for (const CriticalPoint& cp : curve.critical_points()) {
        critical.push_back({cp.s, flow_A(w, cp.y, t), cp.kind});
    }

    // sin(cA) = sin(cs) e^{n c^2 t} (II) and sinh(cA) = sinh(cs) e^{-n c^2 t}
    // (III) while v/b is unchanged, so c1 scales by e^{-+2 n^2 c^2 t}.
    double c1 = curve.c1();
    if (w.is_dynamic()) {
        const double n = w.n();
        const double c = w.c();
        const double sign = w.family() == Family::II ? -1.0 : 1.0;
        c1 *= std::exp(sign * 2.0 * n * n * c * c * t);
    }
    return SolutionCurve(w, std::move(moved), curve.left_termination(),
                         curve.right_termination(), c1, CurveOrigin::Transported,
                         std::move(critical));
}

}  // namespace grw
