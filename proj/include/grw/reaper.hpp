#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "grw/warping.hpp"

namespace grw {

struct IntegratorOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 0.1;
    double endpoint_margin = 1e-8;  // relative
    double max_span = 100.0;
    double velocity_cap = 1e8;

    // Throws std::invalid_argument unless every field is finite and positive.
    void validate() const;
};

enum class TerminationKind {
    ReachedSpanLimit,
    BlowUpToEndpoint,
    StepCollapse,
    NotIntegrated,  // the side was not requested
};

std::string_view to_string(TerminationKind kind);

struct TerminationCause {
    TerminationKind kind = TerminationKind::NotIntegrated;
    double detail = 0.0;    // last s reached
    double endpoint = 0.0;  // approached endpoint of the interval (BlowUpToEndpoint)
    double k = 0.0;         // estimated s where the endpoint is reached
    double k_error = 0.0;
};

struct Sample {
    double s;
    double y;
    double v;
};

enum class ExtremumKind { Maximum, Minimum };

std::string_view to_string(ExtremumKind kind);

struct CriticalPoint {
    double s;
    double y;
    ExtremumKind kind;
};

enum class CurveOrigin { Integrated, Transported, ClosedForm };

std::string_view to_string(CurveOrigin origin);

// A solution of the Grim Reaper equation sampled on a strictly increasing
// grid in s. Immutable once built.
class SolutionCurve {
public:
    SolutionCurve(WarpingFunction warping, std::vector<Sample> samples, TerminationCause left,
                  TerminationCause right, double c1, CurveOrigin origin,
                  std::vector<CriticalPoint> critical_points = {});

    const WarpingFunction& warping() const { return warping_; }
    const std::vector<Sample>& samples() const { return samples_; }
    const TerminationCause& left_termination() const { return left_; }
    const TerminationCause& right_termination() const { return right_; }
    double c1() const { return c1_; }
    CurveOrigin origin() const { return origin_; }
    const std::vector<CriticalPoint>& critical_points() const { return critical_points_; }

    double s_min() const { return samples_.front().s; }
    double s_max() const { return samples_.back().s; }

    // Quintic Hermite interpolation between samples using y, v and the
    // Grim Reaper acceleration at both ends, carried out on log|y| for
    // Types II and III. Throws RangeError outside the sampled range.
    Sample interpolate(double s) const;

private:
    WarpingFunction warping_;
    std::vector<Sample> samples_;
    TerminationCause left_;
    TerminationCause right_;
    double c1_;
    CurveOrigin origin_;
    std::vector<CriticalPoint> critical_points_;
};

// f'' = (1 - v^2/b^2) b d + (b'/b) v^2
double rhs_grim_reaper(const WarpingFunction& w, double y, double v);

// General reduced soliton equation
//   f'' = (eps alpha - v^2/b^2)(h v + b d_eval) + (v/2)(alpha'/alpha + 2 (b'/b) v).
double rhs_general(const WarpingFunction& w, double alpha, double dalpha, double h,
                   int eps_tilde, double d_eval, double y, double v);
// Same with d_eval = b(y)^2 - n b'(y).
double rhs_general(const WarpingFunction& w, double alpha, double dalpha, double h,
                   int eps_tilde, double y, double v);

// 1 - v^2/b(y)^2: positive space-like, zero light-like, negative time-like.
double causal_indicator(const WarpingFunction& w, double y, double v);

// |causal_indicator| below this is treated as null data.
inline constexpr double kNullIndicatorTolerance = 1e-12;

enum class Direction { Forward, Backward, Both };

// Integrates the Grim Reaper equation from (s0, y0, v0). Every accepted step
// is recorded as a sample. Throws NullDataError for null initial data.
SolutionCurve integrate(const WarpingFunction& w, double s0, double y0, double v0,
                        const IntegratorOptions& opts = {},
                        Direction direction = Direction::Both);

struct ResidualReport {
    double max_residual = 0.0;
    double worst_s = 0.0;
    std::size_t evaluated = 0;
    std::size_t skipped = 0;  // stencils dominated by rounding
};

// Five-point finite-difference second derivative against the Grim Reaper
// right-hand side, normalised by max(1, |rhs|). Throws std::invalid_argument
// with fewer than five samples or when no stencil can be evaluated.
ResidualReport ode_residual_report(const WarpingFunction& w, const SolutionCurve& curve);
double ode_residual(const WarpingFunction& w, const SolutionCurve& curve);

// Weights of the finite-difference approximation to the derivative of the
// given order at x0 from the nodes x (Fornberg's algorithm).
std::vector<double> fd_weights(double x0, const std::vector<double>& x, int order);

// Quintic Hermite interpolant on [s_a, s_b] given value, slope and second
// derivative at both ends; returns value and slope at s.
struct HermiteValue {
    double value;
    double slope;
};
HermiteValue hermite_quintic(double s_a, double y_a, double v_a, double a_a, double s_b,
                             double y_b, double v_b, double a_b, double s);

}  // namespace grw
