#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "grw/closed_forms.hpp"
#include "grw/warping.hpp"

namespace grw::testing {

struct InitialData {
    double s0;
    double y0;
    double v0;
};

// Initial data with y0 well inside the interval and |v0|/b(y0) in
// [ratio_min, ratio_max], kept at least `gap` away from the null ratio 1.
class InitialDataSampler {
public:
    explicit InitialDataSampler(std::uint64_t seed) : rng_(seed) {}

    InitialData draw(const WarpingFunction& w, double ratio_min, double ratio_max,
                     double gap = 0.05) {
        const double c = w.c();
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double y0 = w.family() == Family::II
                              ? (0.08 + 0.84 * unit(rng_)) * w.interval().upper
                              : -(0.15 + 2.5 * unit(rng_)) / c;
        double ratio = 0.0;
        do {
            ratio = ratio_min + (ratio_max - ratio_min) * unit(rng_);
        } while (std::abs(ratio - 1.0) < gap);
        const double sign = unit(rng_) < 0.5 ? -1.0 : 1.0;
        const double s0 = (unit(rng_) - 0.5) / (c * c);
        return {s0, y0, sign * ratio * w.b(y0)};
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

// Bounds of the region between the two null curves through (s0, y0). A null
// curve only leaves its domain through pi/(2c), where it is pinned.
struct NullBand {
    double lower;
    double upper;
};

inline NullBand null_band(const WarpingFunction& w, double s0, double y0, double s) {
    const Interval iv = w.interval();
    auto at = [&](int branch) {
        const LightlikeCurve l = lightlike(w, s0, y0, branch);
        return l.domain.contains(s) ? l.value(s) : iv.upper;
    };
    const double a = at(1);
    const double b = at(-1);
    return {std::min(a, b), std::max(a, b)};
}

}  // namespace grw::testing
