#include "grw/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "grw/errors.hpp"
#include "grw/quadrature.hpp"

namespace grw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dynamic(const WarpingFunction& w, const char* what) {
    if (!w.is_dynamic()) {
        throw std::invalid_argument(fmt::format("{} is defined for Types II and III only", what));
    }
}

int require_sign(int branch) {
    if (branch != 1 && branch != -1) {
        throw std::invalid_argument(fmt::format("branch must be +1 or -1, got {}", branch));
    }
    return branch;
}

double cn_squared(const WarpingFunction& w) {
    const double cn = w.c() * w.n();
    return cn * cn;
}

// log|sinh(x)|, finite for all x != 0.
double log_abs_sinh(double x) {
    const double ax = std::abs(x);
    if (ax > 20.0) return ax + std::log1p(-std::exp(-2.0 * ax)) - std::numbers::ln2;
    return std::log(std::sinh(ax));
}

// |coth(x)|
double abs_coth(double x) { return 1.0 / std::abs(std::tanh(x)); }

}  // namespace

// ---------------------------------------------------------------------------
// Light-like curves

LightlikeCurve lightlike(const WarpingFunction& w, double s0, double y0, int branch) {
    require_sign(branch);
    w.require_inside(y0);
    const double rate = w.n() * w.c() * w.c();
    Interval domain{-kInf, kInf};
    if (w.family() == Family::II) {
        const double reach = -std::log(std::sin(w.c() * y0)) / rate;
        if (branch > 0) {
            domain.upper = s0 + reach;
        } else {
            domain.lower = s0 - reach;
        }
    }
    return {w, s0, y0, branch, domain};
}

double LightlikeCurve::value(double s) const {
    if (!domain.contains(s) && s != s0) {
        throw DomainError(fmt::format("s = {} outside the light-like domain ({}, {})", s,
                                      domain.lower, domain.upper),
                          s, s < domain.lower ? domain.lower : domain.upper);
    }
    if (s == s0) return y0;
    const double c = warping.c();
    if (warping.family() == Family::I) return y0 + branch * c * (s - s0);
    const double rate = warping.n() * c * c;
    if (warping.family() == Family::II) {
        const double arg = std::sin(c * y0) * std::exp(branch * rate * (s - s0));
        return std::asin(std::min(arg, 1.0)) / c;
    }
    // sinh(c y0) < 0; the magnitude of the arcsinh argument shrinks for the
    // increasing branch.
    const double log_mag = log_abs_sinh(c * y0) - branch * rate * (s - s0);
    if (log_mag > 700.0) return -(log_mag + std::numbers::ln2) / c;
    return -std::asinh(std::exp(log_mag)) / c;
}

double LightlikeCurve::slope(double s) const { return branch * warping.b(value(s)); }

// ---------------------------------------------------------------------------
// c1 and beta

double c1_constant(const WarpingFunction& w, double y0, double v0) {
    require_dynamic(w, "c1_constant");
    const double b = w.b(y0);
    const double ratio = v0 / b;
    const double indicator = 1.0 - ratio * ratio;
    const double log_base = std::log(std::abs(w.radicand_base(y0)));
    const double log_s2n =
        w.family() == Family::III ? 2.0 * w.n() * log_abs_sinh(w.c() * y0) : 2.0 * w.n() * log_base;
    if (indicator == 0.0) return 0.0;
    return -indicator * cn_squared(w) * std::exp(-log_s2n);
}

namespace {

BetaDomain domain_from_root_magnitude(const WarpingFunction& w, std::optional<double> magnitude) {
    BetaDomain dom;
    dom.interval = w.interval();
    if (!magnitude) return dom;
    const double c = w.c();
    if (w.family() == Family::II) {
        if (!(*magnitude < 1.0)) return dom;
        dom.blows_up = true;
        dom.root = std::asin(*magnitude) / c;
        dom.root_is_upper = true;
        dom.interval.upper = dom.root;
    } else {
        dom.blows_up = true;
        dom.root = -std::asinh(*magnitude) / c;
        dom.root_is_upper = false;
        dom.interval.lower = dom.root;
    }
    return dom;
}

}  // namespace

ClosedFormBeta ClosedFormBeta::make(const WarpingFunction& w, double c1, int branch) {
    require_dynamic(w, "ClosedFormBeta");
    require_sign(branch);
    if (!std::isfinite(c1)) throw std::invalid_argument("c1 must be finite");
    std::optional<double> magnitude;
    const double cn2 = cn_squared(w);
    if (c1 < 0.0) {
        // S(y_l)^{2n} = c^2 n^2 / |c1|
        magnitude = std::exp(std::log(cn2 / -c1) / (2.0 * w.n()));
    }
    return ClosedFormBeta(w, c1, branch, domain_from_root_magnitude(w, magnitude));
}

ClosedFormBeta ClosedFormBeta::through(const WarpingFunction& w, double y0, double v0,
                                       std::optional<int> branch) {
    require_dynamic(w, "ClosedFormBeta");
    w.require_inside(y0);
    int sign = 0;
    if (branch) {
        sign = require_sign(*branch);
    } else if (v0 > 0.0) {
        sign = 1;
    } else if (v0 < 0.0) {
        sign = -1;
    } else {
        throw std::invalid_argument("zero initial slope: the beta branch must be given");
    }
    const double c1 = c1_constant(w, y0, v0);
    const double ratio = v0 / w.b(y0);
    const double indicator = 1.0 - ratio * ratio;
    std::optional<double> magnitude;
    if (indicator > 0.0) {
        // S(y_l) = S(y0) * indicator^{-1/(2n)}, avoiding c1 over/underflow.
        magnitude = std::abs(w.radicand_base(y0)) * std::pow(indicator, -1.0 / (2.0 * w.n()));
    }
    BetaDomain dom = domain_from_root_magnitude(w, magnitude);
    if (dom.blows_up && v0 == 0.0) {
        dom.root = y0;
        (dom.root_is_upper ? dom.interval.upper : dom.interval.lower) = y0;
    }
    return ClosedFormBeta(w, c1, sign, dom);
}

ClosedFormBeta ClosedFormBeta::with_branch(int branch) const {
    ClosedFormBeta copy = *this;
    copy.branch_ = require_sign(branch);
    return copy;
}

BetaDomain beta_domain(const ClosedFormBeta& cf) { return cf.domain(); }

double ClosedFormBeta::radicand(double y, int anchor, double delta) const {
    const WarpingFunction& w = warping_;
    const double c = w.c();
    const double n = w.n();
    const double cn2 = cn_squared(w);
    const Interval iv = domain_.interval;

    if (domain_.blows_up) {
        // R(y) = -c^2 n^2 expm1(2n log1p((S(y) - S_l)/S_l)), exact zero at the root.
        const double yl = domain_.root;
        const bool at_root = (anchor == 1 && domain_.root_is_upper) ||
                             (anchor == -1 && !domain_.root_is_upper);
        double diff = 0.0;
        double base_root = 0.0;
        double s_here = 0.0;  // S at the evaluation point, off the root side only
        if (w.family() == Family::II) {
            base_root = std::sin(c * yl);
            if (at_root) {
                diff = -2.0 * std::cos(c * (2.0 * yl - delta) / 2.0) * std::sin(c * delta / 2.0);
            } else {
                const double z = anchor == -1 ? iv.lower + delta : y;
                diff = 2.0 * std::cos(c * (z + yl) / 2.0) * std::sin(c * (z - yl) / 2.0);
                s_here = anchor == -1 && iv.lower == 0.0 ? std::sin(c * delta) : std::sin(c * z);
            }
        } else {
            base_root = std::sinh(c * yl);
            if (at_root) {
                diff = 2.0 * std::cosh(c * (2.0 * yl + delta) / 2.0) * std::sinh(c * delta / 2.0);
            } else {
                const double z = anchor == 1 ? iv.upper - delta : y;
                diff = 2.0 * std::cosh(c * (z + yl) / 2.0) * std::sinh(c * (z - yl) / 2.0);
                s_here = anchor == 1 && iv.upper == 0.0 ? -std::sinh(c * delta) : std::sinh(c * z);
            }
        }
        const double offset = diff / base_root;
        // Far below the root S/S_l itself is accurate while 1 + offset is not.
        const double log_ratio = !at_root && offset < -0.5
                                     ? std::log(std::abs(s_here)) - std::log(std::abs(base_root))
                                     : std::log1p(offset);
        return -cn2 * std::expm1(2.0 * n * log_ratio);
    }

    if (w.family() == Family::II) {
        // R = c^2 n^2 (1 - S^{2n}) + (c1 + c^2 n^2) S^{2n}
        double log_s = 0.0;
        if (anchor == 1) {
            const double cosine = std::sin(c * delta);
            log_s = 0.5 * std::log1p(-cosine * cosine);
        } else {
            const double z = anchor == -1 ? iv.lower + delta : y;
            const double sine = anchor == -1 ? std::sin(c * delta) : std::sin(c * z);
            if (sine > 0.7) {
                const double cosine = std::cos(c * z);
                log_s = 0.5 * std::log1p(-cosine * cosine);
            } else {
                log_s = std::log(sine);
            }
        }
        const double s2n = std::exp(2.0 * n * log_s);
        return -cn2 * std::expm1(2.0 * n * log_s) + (c1_ + cn2) * s2n;
    }

    const double z = anchor == 1 ? iv.upper - delta : y;
    const double log_s = anchor == 1 ? log_abs_sinh(c * delta) : log_abs_sinh(c * z);
    if (c1_ == 0.0) return cn2;
    return cn2 + c1_ * std::exp(2.0 * n * log_s);
}

double ClosedFormBeta::evaluate(double y, int anchor, double delta) const {
    const WarpingFunction& w = warping_;
    const double c = w.c();
    const double n = w.n();
    const Interval iv = domain_.interval;

    if (anchor == 0) {
        if (!iv.contains(y)) {
            const double bound = y <= iv.lower ? iv.lower : iv.upper;
            throw DomainError(
                fmt::format("y = {} outside the beta domain ({}, {})", y, iv.lower, iv.upper), y,
                bound);
        }
    } else if (!(delta > 0.0)) {
        throw DomainError("beta offset must be positive", delta, 0.0);
    }

    // cot(cy) (II) or |coth(cy)| (III), evaluated at the offset point.
    double cot = 0.0;
    if (w.family() == Family::II) {
        if (anchor == -1) {
            cot = 1.0 / std::tan(c * delta);
        } else if (anchor == 1 && !domain_.blows_up) {
            cot = std::tan(c * delta);
        } else {
            const double z = anchor == 1 ? iv.upper - delta : y;
            cot = 1.0 / std::tan(c * z);
        }
    } else {
        const double z = anchor == 1 ? -delta : (anchor == -1 ? iv.lower + delta : y);
        cot = abs_coth(c * z);
    }

    // Type III with c1 > 0 far from 0: factor S^{2n} out of the radicand.
    if (w.family() == Family::III && !domain_.blows_up && c1_ > 0.0) {
        const double z = anchor == 1 ? -delta : y;
        const double log_s = log_abs_sinh(c * z);
        if (2.0 * n * log_s > 600.0) {
            const double cn2 = cn_squared(w);
            const double scaled = cn2 * std::exp(-2.0 * n * log_s) + c1_;
            return branch_ * cot * std::exp(-n * log_s) / std::sqrt(scaled);
        }
    }

    const double r = radicand(y, anchor, delta);
    if (!(r > 0.0)) return branch_ * kInf;
    return branch_ * cot / std::sqrt(r);
}

double beta_closed(const ClosedFormBeta& cf, double y) { return cf.evaluate(y, 0, 0.0); }

double beta_closed_derivative(const ClosedFormBeta& cf, double y) {
    const WarpingFunction& w = cf.warping();
    const double c = w.c();
    const double n = w.n();
    const double beta = beta_closed(cf, y);
    const double s = w.radicand_base(y);
    const double co = w.family() == Family::II ? std::cos(c * y) : std::cosh(c * y);
    const double r = cf.radicand(y, 0, 0.0);
    const double s2n = std::pow(std::abs(s), 2.0 * n);
    // beta'/beta = -b'/b - (1/2) R'/R, with b'/b = c/(S C) for both types.
    const double log_rate = -c / (s * co) - cf.c1() * n * c * (co / s) * (s2n / r);
    return beta * log_rate;
}

double rhs_beta(const WarpingFunction& w, double y, double beta) {
    require_dynamic(w, "rhs_beta");
    const double b = w.b(y);
    const double d = w.soliton_constant();
    return beta * ((1.0 / (b * b) - beta * beta) * d * b - w.log_derivative(y));
}

double rhs_inverse(const WarpingFunction& w, double y, double dxi) { return rhs_beta(w, y, dxi); }

// ---------------------------------------------------------------------------
// xi quadrature

namespace {

struct Piece {
    double value = 0.0;
    double error = 0.0;
    bool divergent = false;

    void add(const quad::Result& r) {
        value += r.value;
        error += r.error;
        divergent = divergent || r.divergent;
    }
};

// integral of beta over [a, b], a < b, both in the closure of the domain.
Piece integrate_beta(const ClosedFormBeta& cf, double a, double b) {
    const Interval iv = cf.domain().interval;
    const double c = cf.warping().c();
    Piece piece;
    if (a == b) return piece;

    if (std::isinf(a)) {
        // (-inf, m] through z = m - t/(1-t)
        const double m = b - 1.0 / c;
        auto tail = [&cf, m](double t) {
            const double one_minus = 1.0 - t;
            return cf.evaluate(m - t / one_minus, 0, 0.0) / (one_minus * one_minus);
        };
        piece.add(quad::gauss_kronrod(tail, 0.0, 1.0));
        const Piece rest = integrate_beta(cf, m, b);
        piece.value += rest.value;
        piece.error += rest.error;
        piece.divergent = piece.divergent || rest.divergent;
        return piece;
    }

    // Each substitution is only used on the half of the domain next to its
    // own end; elsewhere end - u^2 loses the digits of z.
    const double split = std::isfinite(iv.lower) ? 0.5 * (iv.lower + iv.upper) : iv.upper - 1.0 / c;
    if (a < split) {
        const double top = std::min(b, split);
        if (std::isfinite(iv.lower)) {
            // z = lower + u^2
            auto f = [&cf](double u) { return 2.0 * u * cf.evaluate(0.0, -1, u * u); };
            piece.add(quad::gauss_kronrod(f, std::sqrt(a - iv.lower), std::sqrt(top - iv.lower)));
        } else {
            auto f = [&cf](double z) { return cf.evaluate(z, 0, 0.0); };
            piece.add(quad::gauss_kronrod(f, a, top));
        }
    }
    if (b > split) {
        // z = upper - u^2 (the upper bound is always finite)
        const double bottom = std::max(a, split);
        auto g = [&cf](double u) { return 2.0 * u * cf.evaluate(0.0, 1, u * u); };
        piece.add(quad::gauss_kronrod(g, std::sqrt(iv.upper - b), std::sqrt(iv.upper - bottom)));
    }
    return piece;
}

void require_in_closure(const ClosedFormBeta& cf, double y, const char* name) {
    const Interval iv = cf.domain().interval;
    if (std::isnan(y) || y < iv.lower || y > iv.upper) {
        throw DomainError(fmt::format("{} = {} outside the closed beta domain [{}, {}]", name, y,
                                      iv.lower, iv.upper),
                          y, y < iv.lower ? iv.lower : iv.upper);
    }
}

}  // namespace

XiValue xi_quadrature(const ClosedFormBeta& cf, double s0, double y0, double y) {
    require_in_closure(cf, y0, "y0");
    require_in_closure(cf, y, "y");
    if (std::isinf(y0)) throw DomainError("anchor y0 must be finite", y0, y0);
    if (y == y0) return {s0, 0.0, false};
    const double a = std::min(y0, y);
    const double b = std::max(y0, y);
    const Piece piece = integrate_beta(cf, a, b);
    const double orientation = y > y0 ? 1.0 : -1.0;
    if (piece.divergent) {
        return {orientation * cf.branch() * kInf, kInf, true};
    }
    return {s0 + orientation * piece.value, piece.error, false};
}

XiImage xi_image(const ClosedFormBeta& cf, double s0, double y0) {
    const Interval iv = cf.domain().interval;
    const XiValue at_lower = xi_quadrature(cf, s0, y0, iv.lower);
    const XiValue at_upper = xi_quadrature(cf, s0, y0, iv.upper);
    return {std::min(at_lower.value, at_upper.value), std::max(at_lower.value, at_upper.value)};
}

double invert_xi(const ClosedFormBeta& cf, double s0, double y0, double s) {
    require_in_closure(cf, y0, "y0");
    if (s == s0) return y0;
    const Interval iv = cf.domain().interval;
    const int toward = (s - s0) * cf.branch() > 0.0 ? 1 : -1;
    const double end = toward > 0 ? iv.upper : iv.lower;

    const XiValue at_end = xi_quadrature(cf, s0, y0, end);
    if (!at_end.divergent && (s - at_end.value) * (s - s0) >= 0.0) {
        const XiImage image = xi_image(cf, s0, y0);
        throw RangeError(fmt::format("s = {} outside the image ({}, {}) of xi", s, image.lower,
                                     image.upper),
                         image.lower, image.upper);
    }

    // March toward the end until xi passes s.
    const double c = cf.warping().c();
    double y_prev = y0;
    double xi_prev = s0;
    double y_next = y0;
    double xi_next = s0;
    bool bracketed = false;
    for (int k = 1; k <= 2000; ++k) {
        y_next = std::isinf(end) ? y0 - (std::ldexp(1.0, k) - 1.0) / c
                                 : end - (end - y0) * std::ldexp(1.0, -k);
        if (y_next == y_prev || y_next == end || !std::isfinite(y_next)) break;
        const XiValue step = xi_quadrature(cf, xi_prev, y_prev, y_next);
        if (step.divergent) break;
        xi_next = step.value;
        if ((xi_next - s) * (xi_prev - s) <= 0.0) {
            bracketed = true;
            break;
        }
        y_prev = y_next;
        xi_prev = xi_next;
    }
    if (!bracketed) {
        const XiImage image = xi_image(cf, s0, y0);
        throw RangeError(fmt::format("could not bracket s = {} inside the image of xi", s),
                         image.lower, image.upper);
    }

    const double anchor_y = y_prev;
    const double anchor_xi = xi_prev;
    auto residual = [&](double y) {
        const double value = xi_quadrature(cf, anchor_xi, anchor_y, y).value - s;
        const double slope = cf.evaluate(y, 0, 0.0);
        return std::make_pair(value, slope);
    };
    const double lo = std::min(y_prev, y_next);
    const double hi = std::max(y_prev, y_next);
    // Linear guess from the bracket.
    double guess = y_prev + (y_next - y_prev) * (s - xi_prev) / (xi_next - xi_prev);
    if (!(guess > lo && guess < hi)) guess = 0.5 * (lo + hi);
    std::uintmax_t iterations = 200;
    return boost::math::tools::newton_raphson_iterate(residual, guess, lo, hi, 50, iterations);
}

}  // namespace grw
