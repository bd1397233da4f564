#include "grw/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "grw/closed_forms.hpp"

namespace grw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr double kLocationTolerance = 1e-6;
constexpr double kAsymptoteTolerance = 1e-3;
constexpr double kMinKTolerance = 1e-4;

bool is_blowup_class(SolitonClass cls) {
    return cls == SolitonClass::IIA || cls == SolitonClass::IIC || cls == SolitonClass::IIIA;
}

bool is_critical_class(SolitonClass cls) {
    return cls == SolitonClass::IIB || cls == SolitonClass::IIIB;
}

double blowup_endpoint(const WarpingFunction& w) {
    return w.family() == Family::II ? w.interval().upper : -kInf;
}

std::string fmt_value(double x) { return fmt::format("{:.10g}", x); }

}  // namespace

std::string_view to_string(SolitonClass cls) {
    switch (cls) {
        case SolitonClass::IIA: return "II.A";
        case SolitonClass::IIB: return "II.B";
        case SolitonClass::IIC: return "II.C";
        case SolitonClass::IIIA: return "III.A";
        case SolitonClass::IIIB: return "III.B";
        case SolitonClass::LightLike: return "LightLike";
        case SolitonClass::Vertical: return "Vertical";
    }
    return "?";
}

std::string_view to_string(Causal causal) {
    switch (causal) {
        case Causal::TimeLike: return "time-like";
        case Causal::SpaceLike: return "space-like";
        case Causal::LightLike: return "light-like";
    }
    return "?";
}

std::string_view to_string(Side side) { return side == Side::Left ? "left" : "right"; }

ClassificationReport classify(const WarpingFunction& w, double s0, double y0, double v0) {
    if (!w.is_dynamic()) {
        throw std::invalid_argument("classification is defined for Types II and III only");
    }
    w.require_inside(y0);
    if (!std::isfinite(s0) || !std::isfinite(v0)) {
        throw std::invalid_argument("initial data must be finite");
    }

    ClassificationReport report{w, s0, y0, v0, SolitonClass::LightLike, 0.0, Causal::LightLike,
                                std::nullopt, std::nullopt, {0.0, 0.0}};
    const double cn2 = w.c() * w.c() * w.n() * w.n();
    const double indicator = causal_indicator(w, y0, v0);
    report.c1 = c1_constant(w, y0, v0);
    const double endpoint = blowup_endpoint(w);

    if (std::abs(report.c1) <= kLightlikeTolerance * cn2 &&
        std::abs(indicator) <= kLightlikeTolerance) {
        report.cls = SolitonClass::LightLike;
        report.causal = Causal::LightLike;
        // Type II: the increasing null curve reaches pi/(2c); Type III: the
        // decreasing side runs off to -inf as s -> -+inf.
        const bool rising = v0 > 0.0;
        if (w.family() == Family::II) {
            report.asymptote = rising ? Asymptotes{0.0, endpoint} : Asymptotes{endpoint, 0.0};
        } else {
            report.asymptote = rising ? Asymptotes{-kInf, 0.0} : Asymptotes{0.0, -kInf};
        }
        return report;
    }

    report.causal = indicator < 0.0 ? Causal::TimeLike : Causal::SpaceLike;
    if (w.family() == Family::II) {
        if (indicator < 0.0) {
            report.cls = SolitonClass::IIA;
        } else {
            // c1 < -c^2 n^2  <=>  indicator > sin(c y0)^{2n}
            const double s2n = std::pow(std::sin(w.c() * y0), 2.0 * w.n());
            report.cls = indicator > s2n ? SolitonClass::IIB : SolitonClass::IIC;
        }
    } else {
        report.cls = indicator < 0.0 ? SolitonClass::IIIA : SolitonClass::IIIB;
    }

    if (is_critical_class(report.cls)) {
        const auto kind = w.family() == Family::II ? ExtremumKind::Maximum : ExtremumKind::Minimum;
        if (v0 == 0.0) {
            report.critical_point = CriticalPoint{s0, y0, kind};
        } else {
            const ClosedFormBeta cf = ClosedFormBeta::through(w, y0, v0);
            const double y_star = cf.domain().root;
            const XiValue xi = xi_quadrature(cf, s0, y0, y_star);
            report.critical_point = CriticalPoint{xi.value, y_star, kind};
        }
        report.asymptote = {0.0, 0.0};
        return report;
    }

    // Monotone solutions: one end blows up, the other tends to 0.
    const ClosedFormBeta cf = ClosedFormBeta::through(w, y0, v0);
    const XiValue xi = xi_quadrature(cf, s0, y0, endpoint);
    const bool right = w.family() == Family::II ? v0 > 0.0 : v0 < 0.0;
    report.blowup = BlowupPrediction{right ? Side::Right : Side::Left, endpoint, xi.value, xi.error};
    report.asymptote = right ? Asymptotes{0.0, endpoint} : Asymptotes{endpoint, 0.0};
    return report;
}

ClassificationReport vertical_report(const WarpingFunction& w, double s0) {
    if (!w.is_dynamic()) {
        throw std::invalid_argument("vertical solitons are reported for Types II and III only");
    }
    const Interval iv = w.interval();
    // xi is constant, so f' is infinite: c1 -> +inf and the slice {s0} x I is
    // time-like.
    return {w,   s0, std::numeric_limits<double>::quiet_NaN(), kInf, SolitonClass::Vertical, kInf,
            Causal::TimeLike, std::nullopt, std::nullopt, {iv.lower, iv.upper}};
}

Verdict confirm_numerically(const ClassificationReport& report, const IntegratorOptions& opts) {
    Verdict verdict;
    if (report.cls == SolitonClass::LightLike) {
        verdict.skipped = true;
        verdict.agreed = true;
        verdict.note = "skipped: null separatrix";
        return verdict;
    }
    if (report.cls == SolitonClass::Vertical) {
        verdict.skipped = true;
        verdict.agreed = true;
        verdict.note = "skipped: vertical soliton is not a graph over s";
        return verdict;
    }

    const WarpingFunction& w = report.warping;
    auto& issues = verdict.discrepancies;
    const SolutionCurve curve = integrate(w, report.s0, report.y0, report.v0, opts);

    // Causal character along the curve.
    const Causal expected_causal =
        (report.cls == SolitonClass::IIA || report.cls == SolitonClass::IIIA) ? Causal::TimeLike
                                                                              : Causal::SpaceLike;
    if (report.causal != expected_causal) {
        issues.push_back(fmt::format("class {} is {}, report says {}", to_string(report.cls),
                                     to_string(expected_causal), to_string(report.causal)));
    }
    const double q0 = causal_indicator(w, report.y0, report.v0);
    const Causal numeric_causal = q0 < 0.0 ? Causal::TimeLike : Causal::SpaceLike;
    if (numeric_causal != expected_causal) {
        issues.push_back(fmt::format("integrated curve is {}, class {} expects {}",
                                     to_string(numeric_causal), to_string(report.cls),
                                     to_string(expected_causal)));
    }
    const bool family_ok = (w.family() == Family::II) ==
                           (report.cls == SolitonClass::IIA || report.cls == SolitonClass::IIB ||
                            report.cls == SolitonClass::IIC);
    if (!family_ok) {
        issues.push_back(fmt::format("class {} does not belong to Type {}", to_string(report.cls),
                                     to_string(w.family())));
    }

    // Critical point.
    const auto& found = curve.critical_points();
    const bool expect_critical = is_critical_class(report.cls);
    if (expect_critical != report.critical_point.has_value()) {
        issues.push_back(fmt::format("class {} {} a critical point but the report {}",
                                     to_string(report.cls), expect_critical ? "has" : "has no",
                                     report.critical_point ? "lists one" : "lists none"));
    }
    if (expect_critical != !found.empty() || found.size() > 1) {
        issues.push_back(fmt::format("class {} expects {} critical point, integration found {}",
                                     to_string(report.cls), expect_critical ? "one" : "no",
                                     found.size()));
    }
    if (report.critical_point && found.size() == 1) {
        const CriticalPoint& p = *report.critical_point;
        const CriticalPoint& q = found.front();
        if (p.kind != q.kind) {
            issues.push_back(fmt::format("critical point kind: predicted {}, integrated {}",
                                         to_string(p.kind), to_string(q.kind)));
        }
        if (std::abs(p.s - q.s) > kLocationTolerance || std::abs(p.y - q.y) > kLocationTolerance) {
            issues.push_back(fmt::format("critical point at ({}, {}), integrated ({}, {})",
                                         fmt_value(p.s), fmt_value(p.y), fmt_value(q.s),
                                         fmt_value(q.y)));
        }
    }

    // Blow-up.
    const TerminationCause& left = curve.left_termination();
    const TerminationCause& right = curve.right_termination();
    const bool left_blows = left.kind == TerminationKind::BlowUpToEndpoint;
    const bool right_blows = right.kind == TerminationKind::BlowUpToEndpoint;
    const bool expect_blowup = is_blowup_class(report.cls);
    if (expect_blowup != report.blowup.has_value()) {
        issues.push_back(fmt::format("class {} {} a blow-up but the report {}",
                                     to_string(report.cls), expect_blowup ? "has" : "has no",
                                     report.blowup ? "lists one" : "lists none"));
    }
    if (expect_blowup != (left_blows || right_blows) || (left_blows && right_blows)) {
        issues.push_back(fmt::format("class {} expects {} blow-up side, integration: left {}, right {}",
                                     to_string(report.cls), expect_blowup ? "one" : "no",
                                     to_string(left.kind), to_string(right.kind)));
    }
    if (report.blowup && (left_blows != right_blows)) {
        const BlowupPrediction& b = *report.blowup;
        const Side side = right_blows ? Side::Right : Side::Left;
        const TerminationCause& cause = right_blows ? right : left;
        if (side != b.side) {
            issues.push_back(fmt::format("blow-up side: predicted {}, integrated {}",
                                         to_string(b.side), to_string(side)));
        }
        const double expected_endpoint = blowup_endpoint(w);
        if (b.endpoint != expected_endpoint || cause.endpoint != expected_endpoint) {
            issues.push_back(fmt::format("blow-up endpoint: predicted {}, integrated {}, expected {}",
                                         fmt_value(b.endpoint), fmt_value(cause.endpoint),
                                         fmt_value(expected_endpoint)));
        }
        const double tolerance = std::max({kMinKTolerance, b.k_error, cause.k_error});
        if (!(std::abs(b.k - cause.k) < tolerance)) {
            issues.push_back(fmt::format("blow-up location k: predicted {}, integrated {}",
                                         fmt_value(b.k), fmt_value(cause.k)));
        }
    }

    // Asymptotes on sides that run to the span limit.
    auto check_side = [&](const TerminationCause& cause, double predicted, double final_y,
                          Side side) {
        if (cause.kind == TerminationKind::StepCollapse) {
            issues.push_back(fmt::format("{} side: step collapse at s = {}", to_string(side),
                                         fmt_value(cause.detail)));
            return;
        }
        if (cause.kind != TerminationKind::ReachedSpanLimit) return;
        if (!std::isfinite(predicted) || std::abs(final_y - predicted) > kAsymptoteTolerance) {
            issues.push_back(fmt::format("{} side: predicted asymptote {}, final y {}",
                                         to_string(side), fmt_value(predicted),
                                         fmt_value(final_y)));
        }
    };
    check_side(left, report.asymptote.left, curve.samples().front().y, Side::Left);
    check_side(right, report.asymptote.right, curve.samples().back().y, Side::Right);

    verdict.agreed = issues.empty();
    verdict.note = verdict.agreed ? "agreement" : fmt::format("{} discrepancies", issues.size());
    return verdict;
}

double beta_terminal_limit(const WarpingFunction& w, int branch) {
    const double cn = w.c() * w.n();
    return beta_terminal_limit(w, branch, -cn * cn);
}

double beta_terminal_limit(const WarpingFunction& w, int branch, double c1) {
    if (w.family() != Family::II) {
        throw std::invalid_argument("the terminal beta limit exists for Type II only");
    }
    if (branch != 1 && branch != -1) {
        throw std::invalid_argument(fmt::format("branch must be +1 or -1, got {}", branch));
    }
    const double cn2 = w.c() * w.c() * w.n() * w.n();
    if (std::abs(c1 + cn2) > 1e-12 * cn2) {
        throw std::invalid_argument(fmt::format(
            "the terminal beta limit needs c1 = -c^2 n^2 = {}, got {}", -cn2, c1));
    }
    return branch / (w.c() * w.n() * std::sqrt(static_cast<double>(w.n())));
}

}  // namespace grw
