#pragma once

// Dormand-Prince 5(4) embedded pair with a PI step-size controller.
// The stepper is independent of the problem: callers supply the right-hand
// side and a per-component error scale, and decide what to do with
// accepted steps.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace grw::ode {

template <std::size_t N>
using State = std::array<double, N>;

template <std::size_t N>
struct StepAttempt {
    State<N> y;           // 5th-order solution
    State<N> derivative;  // f(t + h, y), reused as the next first stage
    double error_norm;    // scaled max-norm of the embedded error estimate
};

namespace detail {

inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                        a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                        a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
inline constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                        b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// b - b_hat
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

}  // namespace detail

// One Dormand-Prince step from (t, y) with first stage k1 = f(t, y).
// `scale(i, y_old, y_new)` returns the tolerance for component i.
// A non-finite stage yields error_norm = +inf so the caller rejects the step.
template <std::size_t N, class Rhs, class Scale>
StepAttempt<N> dopri_step(const Rhs& rhs, double t, const State<N>& y, const State<N>& k1,
                          double h, const Scale& scale) {
    using namespace detail;
    State<N> tmp{};
    auto combine = [&](auto&&... terms) {
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (terms[i] + ...);
        return tmp;
    };
    auto scaled = [](double a, const State<N>& k) {
        State<N> out{};
        for (std::size_t i = 0; i < N; ++i) out[i] = a * k[i];
        return out;
    };

    const State<N> k2 = rhs(t + c2 * h, combine(scaled(a21, k1)));
    const State<N> k3 = rhs(t + c3 * h, combine(scaled(a31, k1), scaled(a32, k2)));
    const State<N> k4 =
        rhs(t + c4 * h, combine(scaled(a41, k1), scaled(a42, k2), scaled(a43, k3)));
    const State<N> k5 = rhs(t + c5 * h, combine(scaled(a51, k1), scaled(a52, k2),
                                                 scaled(a53, k3), scaled(a54, k4)));
    const State<N> k6 = rhs(t + h, combine(scaled(a61, k1), scaled(a62, k2), scaled(a63, k3),
                                           scaled(a64, k4), scaled(a65, k5)));
    State<N> y_new{};
    for (std::size_t i = 0; i < N; ++i) {
        y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    }
    const State<N> k7 = rhs(t + h, y_new);

    double norm = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double err =
            h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double ratio = std::abs(err) / scale(i, y, y_new);
        if (!std::isfinite(ratio) || !std::isfinite(y_new[i]) || !std::isfinite(k7[i])) {
            norm = std::numeric_limits<double>::infinity();
            break;
        }
        norm = std::max(norm, ratio);
    }
    return {y_new, k7, norm};
}

// PI controller (Hairer, Norsett & Wanner, II.4).
class StepController {
public:
    // Factor by which to multiply h after an attempt with the given error.
    double factor(double error_norm, bool accepted) {
        constexpr double safety = 0.9;
        constexpr double beta = 0.04;
        constexpr double alpha = 0.2 - 0.75 * beta;
        constexpr double min_factor = 0.2;
        constexpr double max_factor = 5.0;
        if (!std::isfinite(error_norm)) return 0.25;
        if (error_norm == 0.0) return max_factor;
        double fac = safety * std::pow(error_norm, -alpha) * std::pow(previous_error_, beta);
        fac = std::clamp(fac, min_factor, max_factor);
        if (accepted) {
            previous_error_ = std::max(error_norm, 1e-4);
        } else {
            fac = std::min(fac, 1.0);
        }
        return fac;
    }

    void reset() { previous_error_ = 1e-4; }

private:
    double previous_error_ = 1e-4;
};

}  // namespace grw::ode
