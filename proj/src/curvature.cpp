#include "grw/curvature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace grw {

namespace {

struct Derivatives {
    double b;
    double db;
    double d2b;
};

Derivatives derivatives(const WarpingFunction& w, double t) {
    return {w.b(t), w.db(t), w.d2b(t)};
}

}  // namespace

double scalar_curvature(const WarpingFunction& w, double t, double sc_fibre, ScalarMode mode) {
    const Derivatives d = derivatives(w, t);
    const double n = w.n();
    const double pairs = mode == ScalarMode::Binomial ? n * (n - 1.0) / 2.0 : n * (n - 1.0);
    const double ratio = d.db / d.b;
    return sc_fibre / (d.b * d.b) + pairs * ratio * ratio + n * d.d2b / d.b;
}

double sectional_pair(const WarpingFunction& w, double t, double k_fibre) {
    const Derivatives d = derivatives(w, t);
    const double ratio = d.db / d.b;
    return k_fibre / (d.b * d.b) + ratio * ratio;
}

double sectional_mixed(const WarpingFunction& w, double t) {
    const Derivatives d = derivatives(w, t);
    return d.d2b / d.b;
}

double null_ricci(const WarpingFunction& w, double t, double ric_fibre) {
    const Derivatives d = derivatives(w, t);
    const double ratio = d.db / d.b;
    return ric_fibre + (w.n() - 1.0) * (ratio * ratio - d.d2b / d.b);
}

double null_ricci_closed(const WarpingFunction& w, double t, double ric_fibre) {
    w.require_inside(t);
    const double c = w.c();
    const double factor = 4.0 * c * c * (w.n() - 1.0);
    switch (w.family()) {
        case Family::I: return ric_fibre;
        case Family::II: {
            const double s = std::sin(2.0 * c * t);
            return ric_fibre + factor * std::cos(2.0 * c * t) / (s * s);
        }
        case Family::III: {
            const double s = std::sinh(2.0 * c * t);
            return ric_fibre + factor * std::cosh(2.0 * c * t) / (s * s);
        }
    }
    return ric_fibre;
}

CurvatureSample curvature_sample(const WarpingFunction& w, double t, double sc_fibre,
                                 ScalarMode mode) {
    const Derivatives d = derivatives(w, t);
    const double ratio = d.db / d.b;
    return {t, scalar_curvature(w, t, sc_fibre, mode), d.d2b / d.b, ratio * ratio,
            null_ricci(w, t, 0.0)};
}

double curvature_sample_point(const WarpingFunction& w, int index, int sample_count) {
    if (sample_count < 1 || index < 0 || index >= sample_count) {
        throw std::invalid_argument(
            fmt::format("sample index {} outside 0..{}", index, sample_count - 1));
    }
    const double u = (index + 0.5) / sample_count;
    switch (w.family()) {
        case Family::I: return std::atanh(2.0 * u - 1.0) / w.c();
        case Family::II: return u * std::numbers::pi / (2.0 * w.c());
        case Family::III: return -std::atanh(u) / w.c();
    }
    return 0.0;
}

NccVerdict ncc_verdict(const WarpingFunction& w, double ric_lower_bound, int sample_count) {
    if (sample_count < 2) throw std::invalid_argument("ncc_verdict needs at least 2 samples");
    NccVerdict verdict{true, std::nullopt, std::numeric_limits<double>::infinity(), 0.0,
                       sample_count};
    for (int i = 0; i < sample_count; ++i) {
        const double t = curvature_sample_point(w, i, sample_count);
        const double value = null_ricci(w, t, ric_lower_bound);
        if (value < verdict.min_value) {
            verdict.min_value = value;
            verdict.min_t = t;
        }
        if (value < 0.0) {
            verdict.holds = false;
            if (!verdict.first_violation || t < *verdict.first_violation) {
                verdict.first_violation = t;
            }
        }
    }
    return verdict;
}

double null_ricci_offset_root(const WarpingFunction& w, double tolerance) {
    if (w.family() != Family::II || w.n() < 2) {
        throw std::invalid_argument("the null-Ricci offset changes sign only for Type II, n >= 2");
    }
    const double end = w.interval().upper;
    double lo = 0.01 * end;
    double hi = 0.99 * end;
    // Positive below the root, negative above.
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (null_ricci(w, mid, 0.0) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double big_bang_threshold(const WarpingFunction& w, double level) {
    if (w.family() != Family::II || w.n() < 2) {
        throw std::invalid_argument("the big-bang divergence holds for Type II with n >= 2");
    }
    const double end = w.interval().upper;
    double hi = 0.5 * end;  // pi/(4c)
    if (scalar_curvature(w, hi, 0.0) >= level) {
        throw std::invalid_argument(fmt::format("level {} is reached already at pi/(4c)", level));
    }
    double lo = hi;
    while (scalar_curvature(w, lo, 0.0) < level) {
        hi = lo;
        lo *= 0.5;
        if (lo < 1e-300) throw std::runtime_error("scalar curvature did not reach the level");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (scalar_curvature(w, mid, 0.0) >= level) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

}  // namespace grw
