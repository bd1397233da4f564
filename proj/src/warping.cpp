#include "grw/warping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "grw/errors.hpp"

namespace grw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sub-interval used for sampling, as fractions of the natural length scale.
constexpr double kSampleMargin = 0.01;
constexpr double kTypeIIIExtent = 5.0;

double sec2(double x) {
    const double cs = std::cos(x);
    return 1.0 / (cs * cs);
}

double sech2(double x) {
    const double ch = std::cosh(x);
    return 1.0 / (ch * ch);
}

// tan(x)/x and tanh(x)/x with the removable singularity at 0 filled in.
double tan_ratio(double x) {
    if (std::abs(x) < 1e-8) return 1.0 + x * x / 3.0;
    return std::tan(x) / x;
}

double tanh_ratio(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 3.0;
    return std::tanh(x) / x;
}

// x/sin(x) and x/sinh(x).
double x_over_sin(double x) {
    if (std::abs(x) < 1e-8) return 1.0 + x * x / 6.0;
    return x / std::sin(x);
}

double x_over_sinh(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    if (std::abs(x) > 700.0) return 0.0;
    return x / std::sinh(x);
}

}  // namespace

std::string_view to_string(Family family) {
    switch (family) {
        case Family::I: return "I";
        case Family::II: return "II";
        case Family::III: return "III";
    }
    return "?";
}

Family parse_family(std::string_view text) {
    if (text == "I") return Family::I;
    if (text == "II") return Family::II;
    if (text == "III") return Family::III;
    throw std::invalid_argument(fmt::format("unknown warping family '{}'", text));
}

WarpingFunction WarpingFunction::make(Family family, double c, int n) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument(fmt::format("warping scale c must be positive, got {}", c));
    }
    if (n < 1) {
        throw std::invalid_argument(fmt::format("fibre dimension n must be >= 1, got {}", n));
    }
    switch (family) {
        case Family::I:
        case Family::II:
        case Family::III:
            return WarpingFunction(family, c, n);
    }
    throw std::invalid_argument("unknown warping family");
}

WarpingFunction make_warping(Family family, double c, int n) {
    return WarpingFunction::make(family, c, n);
}

Interval WarpingFunction::interval() const {
    switch (family_) {
        case Family::I: return {-kInf, kInf};
        case Family::II: return {0.0, std::numbers::pi / (2.0 * c_)};
        case Family::III: return {-kInf, 0.0};
    }
    return {-kInf, kInf};
}

double WarpingFunction::upper_guard() const {
    const Interval iv = interval();
    if (family_ == Family::II) return iv.upper * (1.0 - kEndpointMargin);
    return iv.upper;
}

bool WarpingFunction::inside(double t) const {
    if (!std::isfinite(t)) return false;
    const Interval iv = interval();
    return t > iv.lower && t < upper_guard();
}

void WarpingFunction::require_inside(double t) const {
    if (inside(t)) return;
    const Interval iv = interval();
    const bool below = !(t > iv.lower);
    const double bound = below ? iv.lower : iv.upper;
    throw DomainError(fmt::format("t = {} outside the Type {} interval ({}, {})", t,
                                  to_string(family_), iv.lower, iv.upper),
                      t, bound);
}

double WarpingFunction::b(double t) const {
    require_inside(t);
    const double nc = n_ * c_;
    switch (family_) {
        case Family::I: return c_;
        case Family::II: return nc * std::tan(c_ * t);
        case Family::III: return -nc * std::tanh(c_ * t);
    }
    return 0.0;
}

double WarpingFunction::db(double t) const {
    require_inside(t);
    const double nc2 = n_ * c_ * c_;
    switch (family_) {
        case Family::I: return 0.0;
        case Family::II: return nc2 * sec2(c_ * t);
        case Family::III: return -nc2 * sech2(c_ * t);
    }
    return 0.0;
}

double WarpingFunction::d2b(double t) const {
    require_inside(t);
    const double nc3 = n_ * c_ * c_ * c_;
    switch (family_) {
        case Family::I: return 0.0;
        case Family::II: return 2.0 * nc3 * sec2(c_ * t) * std::tan(c_ * t);
        case Family::III: return 2.0 * nc3 * sech2(c_ * t) * std::tanh(c_ * t);
    }
    return 0.0;
}

double WarpingFunction::eval(double t, int order) const {
    switch (order) {
        case 0: return b(t);
        case 1: return db(t);
        case 2: return d2b(t);
        default:
            throw std::invalid_argument(fmt::format("derivative order must be 0..2, got {}", order));
    }
}

double WarpingFunction::soliton_constant() const {
    const double c2 = c_ * c_;
    const double n2 = static_cast<double>(n_) * n_;
    switch (family_) {
        case Family::I: return c2;
        case Family::II: return -c2 * n2;
        case Family::III: return c2 * n2;
    }
    return 0.0;
}

double WarpingFunction::b_over_t(double t) const {
    const double nc2 = n_ * c_ * c_;
    switch (family_) {
        case Family::II: return nc2 * tan_ratio(c_ * t);
        case Family::III: return -nc2 * tanh_ratio(c_ * t);
        case Family::I: break;
    }
    throw std::logic_error("b_over_t is defined for Types II and III only");
}

double WarpingFunction::t_db_over_b(double t) const {
    // b'/b = 2c/sin(2ct) (II) and 2c/sinh(2ct) (III).
    switch (family_) {
        case Family::II: return x_over_sin(2.0 * c_ * t);
        case Family::III: return x_over_sinh(2.0 * c_ * t);
        case Family::I: break;
    }
    throw std::logic_error("t_db_over_b is defined for Types II and III only");
}

double WarpingFunction::log_derivative(double t) const {
    require_inside(t);
    switch (family_) {
        case Family::I: return 0.0;
        case Family::II: return 2.0 * c_ / std::sin(2.0 * c_ * t);
        case Family::III: return 2.0 * c_ / std::sinh(2.0 * c_ * t);
    }
    return 0.0;
}

double WarpingFunction::radicand_base(double t) const {
    switch (family_) {
        case Family::II: return std::sin(c_ * t);
        case Family::III: return std::sinh(c_ * t);
        case Family::I: break;
    }
    throw std::logic_error("radicand_base is defined for Types II and III only");
}

double eval_b(const WarpingFunction& w, double t, int order) { return w.eval(t, order); }

double soliton_constant(const WarpingFunction& w) { return w.soliton_constant(); }

double sample_point(const WarpingFunction& w, int index, int sample_count) {
    const double frac = sample_count > 1 ? static_cast<double>(index) / (sample_count - 1) : 0.5;
    const double u = kSampleMargin + (1.0 - 2.0 * kSampleMargin) * frac;
    switch (w.family()) {
        case Family::I: return (2.0 * u - 1.0) / w.c();
        case Family::II: return u * std::numbers::pi / (2.0 * w.c());
        case Family::III: return -kTypeIIIExtent * (1.0 - u) / w.c();
    }
    return 0.0;
}

double check_warping_identity(const WarpingFunction& w, int sample_count) {
    if (sample_count < 2) {
        throw std::invalid_argument("check_warping_identity needs at least 2 samples");
    }
    double worst = 0.0;
    const double n = w.n();
    for (int i = 0; i < sample_count; ++i) {
        const double t = sample_point(w, i, sample_count);
        const double residual = std::abs(2.0 * w.b(t) * w.db(t) - n * w.d2b(t));
        worst = std::max(worst, residual);
    }
    return worst;
}

}  // namespace grw
