#pragma once

#include <optional>

#include "grw/warping.hpp"

namespace grw {

// Coefficient of b'^2/b^2 in the scalar curvature: the binomial n(n-1)/2 or
// the count of ordered fibre pairs n(n-1).
enum class ScalarMode { Binomial, OrderedPairs };

// b^-2 sc_fibre + coeff * b'^2/b^2 + n b''/b
double scalar_curvature(const WarpingFunction& w, double t, double sc_fibre,
                        ScalarMode mode = ScalarMode::Binomial);

// Sectional curvature of a plane spanned by two fibre directions:
// b^-2 K_fibre + b'^2/b^2.
double sectional_pair(const WarpingFunction& w, double t, double k_fibre);

// Sectional curvature of a fibre direction with d/dt: b''/b.
double sectional_mixed(const WarpingFunction& w, double t);

// ric_fibre + (n-1) b^-2 (b'^2 - b b''), from the derivatives of b.
double null_ricci(const WarpingFunction& w, double t, double ric_fibre);
// The same through 4c^2(n-1)cos(2ct)/sin^2(2ct) (II) or
// 4c^2(n-1)cosh(2ct)/sinh^2(2ct) (III); 0 offset for Type I.
double null_ricci_closed(const WarpingFunction& w, double t, double ric_fibre);

struct CurvatureSample {
    double t;
    double scalar;
    double mixed_sectional;               // b''/b
    double fiber_pair_sectional_offset;   // b'^2/b^2
    double null_ricci_offset;             // (n-1) b^-2 (b'^2 - b b'')
};

CurvatureSample curvature_sample(const WarpingFunction& w, double t, double sc_fibre,
                                 ScalarMode mode = ScalarMode::Binomial);

// Sample points covering the interval: midpoints of a uniform grid for
// Type II, t = -atanh(u)/c for Type III and t = atanh(2u - 1)/c for Type I.
double curvature_sample_point(const WarpingFunction& w, int index, int sample_count);

struct NccVerdict {
    bool holds;
    std::optional<double> first_violation;  // smallest sampled t with a negative value
    double min_value;
    double min_t;
    int sample_count;
};

// Null convergence check of ric_lower_bound + offset over the sample points.
NccVerdict ncc_verdict(const WarpingFunction& w, double ric_lower_bound, int sample_count);

// Zero of the null-Ricci offset of Type II (n >= 2), found by bisection.
double null_ricci_offset_root(const WarpingFunction& w, double tolerance = 1e-12);

// Type II, n >= 2, sc_fibre = 0: the t below which the scalar curvature
// exceeds `level`, found by bisection on (0, pi/(4c)].
double big_bang_threshold(const WarpingFunction& w, double level = 1e6);

}  // namespace grw
