#include "grw/reaper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "grw/closed_forms.hpp"
#include "grw/dopri.hpp"
#include "grw/errors.hpp"

namespace grw {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Hodograph switch: |v| thresholds in units of n c.
constexpr double kHodographEnter = 100.0;
constexpr double kHodographLeave = 25.0;
// Hodograph steps stay below this fraction of |beta / beta'|.
constexpr double kHodographStepFraction = 0.005;
// Steps in s stay below this fraction of the local time scale so that the
// recorded samples resolve f'' by finite differences.
constexpr double kResolution = 0.004;
// log|y| below which the asymptote is considered reached.
constexpr double kUnderflowLog = -700.0;
constexpr double kCriticalTolerance = 1e-10;

void require_dynamic(const WarpingFunction& w, const char* what) {
    if (!w.is_dynamic()) {
        throw std::invalid_argument(fmt::format("{} is defined for Types II and III only", what));
    }
}

}  // namespace

void IntegratorOptions::validate() const {
    const std::pair<const char*, double> fields[] = {
        {"rel_tol", rel_tol},
        {"abs_tol", abs_tol},
        {"max_step", max_step},
        {"endpoint_margin", endpoint_margin},
        {"max_span", max_span},
        {"velocity_cap", velocity_cap},
    };
    for (const auto& [name, value] : fields) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw std::invalid_argument(
                fmt::format("integrator option {} must be finite and positive, got {}", name, value));
        }
    }
    if (!(endpoint_margin < 1.0)) {
        throw std::invalid_argument("integrator option endpoint_margin must be below 1");
    }
}

std::string_view to_string(TerminationKind kind) {
    switch (kind) {
        case TerminationKind::ReachedSpanLimit: return "ReachedSpanLimit";
        case TerminationKind::BlowUpToEndpoint: return "BlowUpToEndpoint";
        case TerminationKind::StepCollapse: return "StepCollapse";
        case TerminationKind::NotIntegrated: return "NotIntegrated";
    }
    return "?";
}

std::string_view to_string(ExtremumKind kind) {
    return kind == ExtremumKind::Maximum ? "max" : "min";
}

std::string_view to_string(CurveOrigin origin) {
    switch (origin) {
        case CurveOrigin::Integrated: return "integrated";
        case CurveOrigin::Transported: return "transported";
        case CurveOrigin::ClosedForm: return "closed-form";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Right-hand sides

double rhs_grim_reaper(const WarpingFunction& w, double y, double v) {
    require_dynamic(w, "rhs_grim_reaper");
    const double b = w.b(y);
    const double ratio = v / b;
    return (1.0 - ratio * ratio) * b * w.soliton_constant() + w.log_derivative(y) * v * v;
}

double rhs_general(const WarpingFunction& w, double alpha, double dalpha, double h,
                   int eps_tilde, double d_eval, double y, double v) {
    if (!(alpha > 0.0)) {
        throw std::invalid_argument(fmt::format("alpha must be positive, got {}", alpha));
    }
    if (eps_tilde != 1 && eps_tilde != -1) {
        throw std::invalid_argument(fmt::format("eps_tilde must be +1 or -1, got {}", eps_tilde));
    }
    const double b = w.b(y);
    const double log_db = w.log_derivative(y);
    const double first = (eps_tilde * alpha - v * v / (b * b)) * (h * v + b * d_eval);
    return first + 0.5 * v * (dalpha / alpha + 2.0 * log_db * v);
}

double rhs_general(const WarpingFunction& w, double alpha, double dalpha, double h,
                   int eps_tilde, double y, double v) {
    const double b = w.b(y);
    return rhs_general(w, alpha, dalpha, h, eps_tilde, b * b - w.n() * w.db(y), y, v);
}

double causal_indicator(const WarpingFunction& w, double y, double v) {
    const double ratio = v / w.b(y);
    return 1.0 - ratio * ratio;
}

// ---------------------------------------------------------------------------
// Interpolation helpers

HermiteValue hermite_quintic(double s_a, double y_a, double v_a, double a_a, double s_b,
                             double y_b, double v_b, double a_b, double s) {
    const double h = s_b - s_a;
    const double t = (s - s_a) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double t4 = t3 * t;
    const double t5 = t4 * t;
    // Basis on [0, 1] and its derivative.
    const double h0 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
    const double h1 = t - 6 * t3 + 8 * t4 - 3 * t5;
    const double h2 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
    const double h3 = 0.5 * t3 - t4 + 0.5 * t5;
    const double h4 = -4 * t3 + 7 * t4 - 3 * t5;
    const double h5 = 10 * t3 - 15 * t4 + 6 * t5;
    const double d0 = -30 * t2 + 60 * t3 - 30 * t4;
    const double d1 = 1 - 18 * t2 + 32 * t3 - 15 * t4;
    const double d2 = t - 4.5 * t2 + 6 * t3 - 2.5 * t4;
    const double d3 = 1.5 * t2 - 4 * t3 + 2.5 * t4;
    const double d4 = -12 * t2 + 28 * t3 - 15 * t4;
    const double d5 = 30 * t2 - 60 * t3 + 30 * t4;
    const double value = h0 * y_a + h1 * h * v_a + h2 * h * h * a_a + h3 * h * h * a_b +
                         h4 * h * v_b + h5 * y_b;
    const double slope = (d0 * y_a + d5 * y_b) / h + d1 * v_a + d4 * v_b + d2 * h * a_a +
                         d3 * h * a_b;
    return {value, slope};
}

std::vector<double> fd_weights(double x0, const std::vector<double>& x, int order) {
    const int n = static_cast<int>(x.size());
    if (order < 0 || n <= order) {
        throw std::invalid_argument("fd_weights needs more nodes than the derivative order");
    }
    // c[j][k]: weight of node j for derivative k.
    std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) {
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> weights(n);
    for (int j = 0; j < n; ++j) weights[j] = c[j][order];
    return weights;
}

// ---------------------------------------------------------------------------
// SolutionCurve

SolutionCurve::SolutionCurve(WarpingFunction warping, std::vector<Sample> samples,
                             TerminationCause left, TerminationCause right, double c1,
                             CurveOrigin origin, std::vector<CriticalPoint> critical_points)
    : warping_(warping),
      samples_(std::move(samples)),
      left_(left),
      right_(right),
      c1_(c1),
      origin_(origin),
      critical_points_(std::move(critical_points)) {
    if (samples_.empty()) throw std::invalid_argument("a solution curve needs samples");
    for (std::size_t i = 1; i < samples_.size(); ++i) {
        if (!(samples_[i].s > samples_[i - 1].s)) {
            throw std::invalid_argument(fmt::format(
                "solution samples must be strictly increasing in s (index {})", i));
        }
    }
}

Sample SolutionCurve::interpolate(double s) const {
    if (!(s >= s_min() && s <= s_max())) {
        throw RangeError(fmt::format("s = {} outside the sampled range [{}, {}]", s, s_min(),
                                     s_max()),
                         s_min(), s_max());
    }
    auto it = std::lower_bound(samples_.begin(), samples_.end(), s,
                               [](const Sample& a, double value) { return a.s < value; });
    if (it != samples_.end() && it->s == s) return *it;
    const Sample& b = *it;
    const Sample& a = *(it - 1);
    const double acc_a = rhs_grim_reaper(warping_, a.y, a.v);
    const double acc_b = rhs_grim_reaper(warping_, b.y, b.v);
    if (warping_.is_dynamic()) {
        // y keeps its sign on Types II and III; interpolating log|y| keeps
        // exponential tails accurate to full relative precision.
        const double ra = a.v / a.y;
        const double rb = b.v / b.y;
        const HermiteValue h =
            hermite_quintic(a.s, std::log(std::abs(a.y)), ra, acc_a / a.y - ra * ra, b.s,
                            std::log(std::abs(b.y)), rb, acc_b / b.y - rb * rb, s);
        const double y = std::copysign(std::exp(h.value), a.y);
        return {s, y, y * h.slope};
    }
    const HermiteValue h = hermite_quintic(a.s, a.y, a.v, acc_a, b.s, b.y, b.v, acc_b, s);
    return {s, h.value, h.slope};
}

// ---------------------------------------------------------------------------
// Integration

namespace {

struct SideResult {
    std::vector<Sample> samples;  // in order of travel, excluding the start
    TerminationCause cause;
    std::optional<CriticalPoint> critical;
};

class SideIntegrator {
public:
    SideIntegrator(const WarpingFunction& w, double s0, const IntegratorOptions& opts, int dir)
        : w_(w),
          opts_(opts),
          dir_(dir),
          s0_(s0),
          d_(w.soliton_constant()),
          sigma_(w.family() == Family::II ? 1.0 : -1.0),
          endpoint_(w.family() == Family::II ? w.interval().upper : -kInf),
          rate_(w.n() * w.c() * w.c()),
          v_enter_(kHodographEnter * w.n() * w.c()),
          v_leave_(kHodographLeave * w.n() * w.c()) {}

    SideResult run(double y0, double v0) {
        Sample current{s0_, y0, v0};
        h_ = dir_ * std::min(opts_.max_step, kResolution / rate_);
        while (!result_.cause.kind_set) {
            if (heading_to_blowup(current.v) && std::abs(current.v) >= v_enter_) {
                current = hodograph_phase(current);
            } else {
                current = log_phase(current);
            }
        }
        SideResult out;
        out.samples = std::move(result_.samples);
        out.cause = result_.cause.cause;
        out.critical = result_.critical;
        return out;
    }

private:
    struct PendingCause {
        TerminationCause cause;
        bool kind_set = false;
    };
    struct Accumulated {
        std::vector<Sample> samples;
        PendingCause cause;
        std::optional<CriticalPoint> critical;
    };

    bool heading_to_blowup(double v) const {
        const double travel = dir_ * v;  // dy per unit of travel
        return w_.family() == Family::II ? travel > 0.0 : travel < 0.0;
    }

    double span_end() const { return s0_ + dir_ * opts_.max_span; }

    void terminate(TerminationKind kind, double s, double endpoint = 0.0, double k = 0.0,
                   double k_error = 0.0) {
        result_.cause.cause = {kind, s, endpoint, k, k_error};
        result_.cause.kind_set = true;
    }

    double acceleration(const Sample& p) const { return rhs_grim_reaper(w_, p.y, p.v); }

    // Records a sample and checks for a sign change of v against the
    // previous one.
    void record(const Sample& prev, const Sample& next) {
        result_.samples.push_back(next);
        if (result_.critical) return;
        if (next.v == 0.0) {
            add_critical(next.s, next.y);
            return;
        }
        if (prev.v == 0.0 || (prev.v > 0.0) == (next.v > 0.0)) return;
        const Sample& a = prev.s < next.s ? prev : next;
        const Sample& b = prev.s < next.s ? next : prev;
        const double acc_a = acceleration(a);
        const double acc_b = acceleration(b);
        auto slope = [&](double s) {
            return hermite_quintic(a.s, a.y, a.v, acc_a, b.s, b.y, b.v, acc_b, s);
        };
        double lo = a.s;
        double hi = b.s;
        const bool rising_at_lo = a.v > 0.0;
        for (int it = 0; it < 200 && hi - lo > kCriticalTolerance; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double vm = slope(mid).slope;
            if ((vm > 0.0) == rising_at_lo) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        const double s_star = 0.5 * (lo + hi);
        add_critical(s_star, slope(s_star).value);
    }

    void add_critical(double s, double y) {
        const double acc = rhs_grim_reaper(w_, y, 0.0);
        result_.critical = CriticalPoint{s, y, acc < 0.0 ? ExtremumKind::Maximum
                                                         : ExtremumKind::Minimum};
    }

    bool step_collapsed(double h, double s) const {
        return std::abs(h) < 1e3 * kEps * std::max(1.0, std::abs(s));
    }

    // Integration in (log|y|, v/y) with s as the independent variable.
    Sample log_phase(Sample start) {
        using State = ode::State<2>;
        const WarpingFunction& w = w_;
        const double d = d_;
        const double sigma = sigma_;
        auto rhs = [&w, d, sigma](double, const State& x) -> State {
            const double y = sigma * std::exp(x[0]);
            if (!w.inside(y)) return {kNaN, kNaN};
            const double r = w.b_over_t(y);
            const double g = w.t_db_over_b(y);
            const double p = x[1];
            const double ratio = p / r;
            return {p, (1.0 - ratio * ratio) * r * d + (g - 1.0) * p * p};
        };
        const double rel = opts_.rel_tol;
        const double abs = opts_.abs_tol;
        auto scale = [rel, abs](std::size_t i, const State& a, const State& b) {
            if (i == 0) return rel;
            return abs + rel * std::max(std::abs(a[1]), std::abs(b[1]));
        };

        ode::StepController control;
        State x{std::log(std::abs(start.y)), start.v / start.y};
        double s = start.s;
        State k1 = rhs(s, x);
        Sample prev = start;
        Sample before_prev = start;
        // Local rate from p = v/y and p'; the bound is relaxed where |f''| is
        // small, since the finite-difference error scales with it.
        // p'' comes from the change of p' over the previous step, seeded by
        // a short probe along the flow.
        double dp2 = 0.0;
        {
            const double probe = dir_ * 1e-6 / rate_;
            const State ahead = rhs(s, {x[0] + probe * k1[0], x[1] + probe * k1[1]});
            if (std::isfinite(ahead[1])) dp2 = (ahead[1] - k1[1]) / probe;
        }
        auto step_cap = [this, &dp2](const State& state, const State& deriv, double y) {
            const double p = std::abs(state[1]);
            const double dp = std::abs(deriv[1]);
            const double rate = std::max({rate_, p, dp / (p + rate_),
                                          std::abs(dp2) / (dp + rate_ * (p + rate_))});
            const double amplitude = rate * rate * std::abs(y);
            const double relax = amplitude < 1.0 ? std::pow(amplitude, -0.25) : 1.0;
            return std::min(opts_.max_step, kResolution * relax / rate);
        };

        while (true) {
            if (heading_to_blowup(prev.v) && std::abs(prev.v) >= v_enter_) return prev;

            const double remaining = span_end() - s;
            if (std::abs(remaining) <= 4.0 * kEps * std::max(1.0, std::abs(s))) {
                terminate(TerminationKind::ReachedSpanLimit, s);
                return prev;
            }
            const double h_cap = step_cap(x, k1, prev.y);
            double h = dir_ * std::min({std::abs(h_), h_cap, std::abs(remaining)});
            const bool lands = std::abs(h) == std::abs(remaining);
            if (step_collapsed(h, s)) {
                terminate(TerminationKind::StepCollapse, s);
                return prev;
            }
            const auto attempt = ode::dopri_step<2>(rhs, s, x, k1, h, scale);
            const bool accepted = attempt.error_norm <= 1.0;
            const double fac = control.factor(attempt.error_norm, accepted);
            h_ = h * fac;
            if (!accepted) continue;

            const double s_old = s;
            s = lands ? span_end() : s + h;
            dp2 = (attempt.derivative[1] - k1[1]) / (s - s_old);
            x = attempt.y;
            k1 = attempt.derivative;
            const double y = sigma * std::exp(x[0]);
            const Sample next{s, y, x[1] * y};
            if (x[0] < kUnderflowLog || y == 0.0) {
                terminate(TerminationKind::ReachedSpanLimit, s);
                return prev;
            }
            record(prev, next);
            before_prev = prev;
            prev = next;

            // Blow-up events that fire before the hodograph switch.
            if (w_.family() == Family::II && y >= endpoint_ * (1.0 - opts_.endpoint_margin)) {
                const double k = s + (endpoint_ - y) / next.v;
                terminate(TerminationKind::BlowUpToEndpoint, s, endpoint_, k,
                          std::max(std::abs(h), std::abs(k - s)));
                return prev;
            }
            if (w_.family() == Family::III && y <= -1.0 / opts_.endpoint_margin) {
                terminate(TerminationKind::BlowUpToEndpoint, s, endpoint_, s, std::abs(h));
                return prev;
            }
            if (std::abs(next.v) > opts_.velocity_cap) {
                // |v| ~ (k - s)^(-1/2) near the endpoint.
                const double v2e = next.v * next.v;
                const double v2p = before_prev.v * before_prev.v;
                const double gap = v2e > v2p ? (s - before_prev.s) * v2p / (v2e - v2p) : 0.0;
                const double k = s + gap;
                terminate(TerminationKind::BlowUpToEndpoint, s,
                          heading_to_blowup(next.v) ? endpoint_ : 0.0, k,
                          std::max(std::abs(h), std::abs(gap)));
                return prev;
            }
            if (lands) {
                terminate(TerminationKind::ReachedSpanLimit, s);
                return prev;
            }
        }
    }

    // Integration of (xi, beta) with y as the independent variable, used
    // while |v| is large on the approach to a blow-up endpoint.
    Sample hodograph_phase(Sample start) {
        using State = ode::State<2>;
        const WarpingFunction& w = w_;
        auto rhs = [&w](double y, const State& u) -> State {
            if (!w.inside(y)) return {kNaN, kNaN};
            return {u[1], rhs_beta(w, y, u[1])};
        };
        const double rel = opts_.rel_tol;
        const double abs = opts_.abs_tol;
        auto scale = [rel, abs](std::size_t i, const State& a, const State& b) {
            if (i == 0) return abs + rel * std::max(std::abs(a[0]), std::abs(b[0]));
            return rel * std::max(std::abs(a[1]), std::abs(b[1])) +
                   std::numeric_limits<double>::min();
        };

        const bool finite_end = std::isfinite(endpoint_);
        const double ydir = finite_end ? 1.0 : -1.0;
        const double y_stop = finite_end ? endpoint_ * (1.0 - opts_.endpoint_margin)
                                         : -1.0 / opts_.endpoint_margin;

        ode::StepController control;
        double y = start.y;
        State u{start.s, 1.0 / start.v};
        State k1 = rhs(y, u);
        double dy = ydir * kHodographStepFraction * std::abs(u[1] / k1[1]);
        Sample prev = start;
        // Last step that advanced s: (y, beta) at its start and its length.
        double y_a = y;
        double beta_a = u[1];
        double last_ds = 0.0;

        while (true) {
            const double beta = u[1];
            if (std::abs(1.0 / beta) <= v_leave_) return prev;

            const double distance = y_stop - y;
            double cap = kHodographStepFraction * std::abs(beta / k1[1]);
            cap = std::min(cap, opts_.max_step / std::abs(beta));
            double step = std::min({std::abs(dy), cap, std::abs(distance)});
            const bool lands = step == std::abs(distance);
            step *= ydir;
            if (std::abs(step) < 1e3 * kEps * std::max(1.0, std::abs(y))) {
                terminate(TerminationKind::StepCollapse, u[0]);
                return prev;
            }
            const auto attempt = ode::dopri_step<2>(rhs, y, u, k1, step, scale);
            const bool accepted = attempt.error_norm <= 1.0;
            const double fac = control.factor(attempt.error_norm, accepted);
            dy = step * fac;
            if (!accepted) continue;

            const double y_prev = y;
            const double beta_prev = u[1];
            const double xi_prev = u[0];
            y = lands ? y_stop : y + step;
            u = attempt.y;
            k1 = attempt.derivative;
            const Sample next{u[0], y, 1.0 / u[1]};
            if (!((next.s - prev.s) * dir_ > 0.0)) {
                // The remaining progress in s is below rounding.
                finish_blowup(xi_prev, y_prev, beta_prev, y_a, beta_a, last_ds);
                return prev;
            }
            record(prev, next);
            prev = next;
            y_a = y_prev;
            beta_a = beta_prev;
            last_ds = u[0] - xi_prev;

            if (std::abs(next.s - s0_) >= opts_.max_span) {
                terminate(TerminationKind::ReachedSpanLimit, next.s);
                return prev;
            }
            if (lands || std::abs(next.v) > opts_.velocity_cap) {
                finish_blowup(u[0], y, u[1], y_a, beta_a, last_ds);
                return prev;
            }
        }
    }

    // Adds the remaining integral of beta from the last point to the
    // endpoint and records the blow-up.
    void finish_blowup(double xi_e, double y_e, double beta_e, double y_a, double beta_a,
                       double last_ds) {
        double tail = 0.0;
        if (y_e != y_a) {
            if (std::isfinite(endpoint_)) {
                const double slope = (beta_e - beta_a) / (y_e - y_a);
                const double beta_end = beta_e + slope * (endpoint_ - y_e);
                tail = 0.5 * (endpoint_ - y_e) * (beta_e + beta_end);
            } else {
                const double r = std::log(beta_e / beta_a) / (y_e - y_a);
                if (r > 0.0 && std::isfinite(r)) tail = -beta_e / r;
            }
        }
        const double k = xi_e + tail;
        terminate(TerminationKind::BlowUpToEndpoint, xi_e, endpoint_, k,
                  std::max(std::abs(last_ds), std::abs(tail)));
    }

    const WarpingFunction& w_;
    const IntegratorOptions& opts_;
    int dir_;
    double s0_;
    double d_;
    double sigma_;
    double endpoint_;
    double rate_;
    double v_enter_;
    double v_leave_;
    double h_ = 0.0;
    Accumulated result_;
};

}  // namespace

SolutionCurve integrate(const WarpingFunction& w, double s0, double y0, double v0,
                        const IntegratorOptions& opts, Direction direction) {
    require_dynamic(w, "integrate");
    opts.validate();
    w.require_inside(y0);
    if (!std::isfinite(s0) || !std::isfinite(v0)) {
        throw std::invalid_argument("initial data must be finite");
    }
    const double q0 = causal_indicator(w, y0, v0);
    if (std::abs(q0) < kNullIndicatorTolerance) {
        throw NullDataError(fmt::format(
            "initial slope {} is light-like at y0 = {}; use the closed-form null curves", v0, y0));
    }

    const Sample start{s0, y0, v0};
    SideResult right;
    SideResult left;
    if (direction != Direction::Backward) right = SideIntegrator(w, s0, opts, +1).run(y0, v0);
    if (direction != Direction::Forward) left = SideIntegrator(w, s0, opts, -1).run(y0, v0);

    std::vector<Sample> samples;
    samples.reserve(left.samples.size() + right.samples.size() + 1);
    for (auto it = left.samples.rbegin(); it != left.samples.rend(); ++it) {
        if (samples.empty() || it->s > samples.back().s) samples.push_back(*it);
    }
    if (samples.empty() || start.s > samples.back().s) samples.push_back(start);
    for (const Sample& p : right.samples) {
        if (p.s > samples.back().s) samples.push_back(p);
    }

    std::vector<CriticalPoint> critical;
    if (v0 == 0.0) {
        critical.push_back({s0, y0, rhs_grim_reaper(w, y0, 0.0) < 0.0 ? ExtremumKind::Maximum
                                                                        : ExtremumKind::Minimum});
    } else {
        if (left.critical) critical.push_back(*left.critical);
        if (right.critical) critical.push_back(*right.critical);
    }

    return SolutionCurve(w, std::move(samples), left.cause, right.cause,
                         c1_constant(w, y0, v0), CurveOrigin::Integrated, std::move(critical));
}

// ---------------------------------------------------------------------------
// Residual

ResidualReport ode_residual_report(const WarpingFunction& w, const SolutionCurve& curve) {
    const auto& samples = curve.samples();
    if (samples.size() < 5) {
        throw std::invalid_argument(fmt::format(
            "ode_residual needs at least 5 samples, got {}", samples.size()));
    }
    ResidualReport report;
    std::vector<double> nodes(5);
    for (std::size_t i = 2; i + 2 < samples.size(); ++i) {
        double h_min = kInf;
        for (int j = 0; j < 5; ++j) nodes[j] = samples[i - 2 + j].s;
        for (int j = 0; j < 4; ++j) h_min = std::min(h_min, nodes[j + 1] - nodes[j]);
        const std::vector<double> weights = fd_weights(samples[i].s, nodes, 2);
        double fd = 0.0;
        double magnitude = 0.0;
        for (int j = 0; j < 5; ++j) {
            fd += weights[j] * samples[i - 2 + j].y;
            magnitude += std::abs(weights[j] * samples[i - 2 + j].y);
        }
        const double rhs = rhs_grim_reaper(w, samples[i].y, samples[i].v);
        const double norm = std::max(1.0, std::abs(rhs));
        // Rounding in y and in the node positions.
        const double rounding = kEps * (1.0 + std::abs(samples[i].s) / h_min) * magnitude;
        if (rounding > 1e-8 * norm) {
            ++report.skipped;
            continue;
        }
        ++report.evaluated;
        const double residual = std::abs(fd - rhs) / norm;
        if (residual > report.max_residual) {
            report.max_residual = residual;
            report.worst_s = samples[i].s;
        }
    }
    if (report.evaluated == 0) {
        throw std::invalid_argument("ode_residual: no stencil could be evaluated above rounding");
    }
    return report;
}

double ode_residual(const WarpingFunction& w, const SolutionCurve& curve) {
    return ode_residual_report(w, curve).max_residual;
}

}  // namespace grw
