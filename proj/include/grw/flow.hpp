#pragma once

#include "grw/reaper.hpp"
#include "grw/warping.hpp"

namespace grw {

// Relative margin kept from the interval ends while flowing.
inline constexpr double kFlowEscapeMargin = 1e-8;

// A(s, t): flow of the conformal Killing field X = b(t) d/dt, i.e.
// dA/dt = b(A), A(s, 0) = s. Type I uses A = s + c t; Types II and III are
// integrated numerically. Throws FlowEscapeError when a forward Type II flow
// comes within the escape margin of pi/(2c) before reaching t (the other
// ends are only approached asymptotically).
double flow_A(const WarpingFunction& w, double s, double t);

// dA/ds = b(A(s, t)) / b(s).
double flow_ds(const WarpingFunction& w, double s, double t);

// f_t(s) = A(f(s), t) with f_t' = b(f_t)/b(f) f'. The s grid is kept; the
// result is tagged as transported.
SolutionCurve transport_solution(const WarpingFunction& w, const SolutionCurve& curve, double t);

}  // namespace grw
