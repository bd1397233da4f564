#pragma once

#include <optional>

#include "grw/warping.hpp"

namespace grw {

// Light-like (null) solution through (s0, y0): |l'| = b(l).
// branch +1 is the increasing curve, -1 the decreasing one. For Type I this
// is the straight line y0 + branch c (s - s0).
struct LightlikeCurve {
    WarpingFunction warping;
    double s0;
    double y0;
    int branch;
    Interval domain;  // maximal open s-interval

    double value(double s) const;
    // l'(s) = branch * b(l(s)).
    double slope(double s) const;
};

LightlikeCurve lightlike(const WarpingFunction& w, double s0, double y0, int branch);

// Conserved constant of the inverse-function equation:
//   c1 = -(1 - v0^2/b(y0)^2) c^2 n^2 / S(y0)^{2n},  S = sin(c y) or sinh(c y).
// c1 > 0 time-like, c1 < 0 space-like, c1 = 0 light-like.
double c1_constant(const WarpingFunction& w, double y0, double v0);

// Domain of a beta branch: the maximal open y-interval with positive radicand
// c^2 n^2 + c1 S(y)^{2n}. When the radicand has a root inside the warping
// interval, |beta| blows up there and the corresponding curve has a critical
// point at that height.
struct BetaDomain {
    Interval interval;
    bool blows_up = false;  // radicand root inside the warping interval
    double root = 0.0;      // valid when blows_up
    bool root_is_upper = false;
};

// beta = d(xi)/dy for the inverse xi of a monotone solution.
// branch is the sign of beta (equivalently of f').
class ClosedFormBeta {
public:
    static ClosedFormBeta make(const WarpingFunction& w, double c1, int branch);
    // Branch through the initial data (y0, v0), v0 != 0 unless the caller
    // wants the critical-point anchor (then branch must be given).
    static ClosedFormBeta through(const WarpingFunction& w, double y0, double v0,
                                  std::optional<int> branch = std::nullopt);

    const WarpingFunction& warping() const { return warping_; }
    double c1() const { return c1_; }
    int branch() const { return branch_; }
    const BetaDomain& domain() const { return domain_; }

    ClosedFormBeta with_branch(int branch) const;

    // Evaluates beta at a point described relative to a domain end:
    // anchor -1 means y = lower + delta, +1 means y = upper - delta, 0 means
    // y is used as given. Offsets keep the radicand accurate near its roots.
    double evaluate(double y, int anchor, double delta) const;
    double radicand(double y, int anchor, double delta) const;

private:
    ClosedFormBeta(const WarpingFunction& w, double c1, int branch, BetaDomain domain)
        : warping_(w), c1_(c1), branch_(branch), domain_(domain) {}

    WarpingFunction warping_;
    double c1_;
    int branch_;
    BetaDomain domain_;
};

BetaDomain beta_domain(const ClosedFormBeta& cf);

double beta_closed(const ClosedFormBeta& cf, double y);
// Analytic d(beta)/dy of the closed form.
double beta_closed_derivative(const ClosedFormBeta& cf, double y);

// Right-hand side of beta' = beta [ (1/b^2 - beta^2) d b - b'/b ].
double rhs_beta(const WarpingFunction& w, double y, double beta);

// The same equation written for xi: xi'' = xi' [ (1/b^2 - xi'^2) d b - b'/b ].
double rhs_inverse(const WarpingFunction& w, double y, double dxi);

struct XiValue {
    double value;      // +-inf when divergent
    double error;      // quadrature error estimate
    bool divergent;
};

// xi(y) = s0 + integral_{y0}^{y} beta. y0 and y may lie on the closure of
// the domain (including +-inf); divergent integrals come back as +-inf.
XiValue xi_quadrature(const ClosedFormBeta& cf, double s0, double y0, double y);

struct XiImage {
    double lower;
    double upper;
};

// Image of xi over the beta domain (a bound is infinite where the integral
// diverges).
XiImage xi_image(const ClosedFormBeta& cf, double s0, double y0);

// The y with xi(y) = s on the monotone stretch anchored at (s0, y0).
// Throws RangeError when s lies outside the image.
double invert_xi(const ClosedFormBeta& cf, double s0, double y0, double s);

}  // namespace grw
