#include "grw/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "grw/errors.hpp"

namespace grw::io {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_double(std::string_view text, std::size_t line) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw std::invalid_argument(
            fmt::format("line {}: cannot parse '{}' as a number", line, text));
    }
    return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0.0 ? "inf" : "-inf";
    return fmt::format("{:.17g}", x);
}

nlohmann::json json_number(double x) {
    if (std::isfinite(x)) return x;
    return format_double(x);
}

// ---------------------------------------------------------------------------
// CSV

void write_samples_csv(std::ostream& out, const WarpingFunction& w,
                       const std::vector<Sample>& samples) {
    std::string text = "s,y,v,causal_indicator\n";
    for (const Sample& p : samples) {
        text += fmt::format("{},{},{},{}\n", format_double(p.s), format_double(p.y),
                            format_double(p.v), format_double(causal_indicator(w, p.y, p.v)));
    }
    out << text;
}

std::vector<Sample> parse_samples_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "s,y,v,causal_indicator") {
        throw std::invalid_argument("expected the header s,y,v,causal_indicator");
    }
    std::vector<Sample> samples;
    std::size_t number = 1;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 4) {
            throw std::invalid_argument(
                fmt::format("line {}: expected 4 fields, got {}", number, fields.size()));
        }
        samples.push_back({parse_double(fields[0], number), parse_double(fields[1], number),
                           parse_double(fields[2], number)});
    }
    return samples;
}

void write_curvature_csv(std::ostream& out, const std::vector<CurvatureSample>& rows) {
    std::string text = "t,scalar,mixed,null_ricci_offset\n";
    for (const CurvatureSample& r : rows) {
        text += fmt::format("{},{},{},{}\n", format_double(r.t), format_double(r.scalar),
                            format_double(r.mixed_sectional), format_double(r.null_ricci_offset));
    }
    out << text;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json warping_json(const WarpingFunction& w) {
    const Interval iv = w.interval();
    return {{"family", std::string(to_string(w.family()))},
            {"c", w.c()},
            {"n", w.n()},
            {"interval", {json_number(iv.lower), json_number(iv.upper)}},
            {"soliton_constant", w.soliton_constant()}};
}

nlohmann::json termination_json(const TerminationCause& cause) {
    nlohmann::json j = {{"kind", std::string(to_string(cause.kind))},
                        {"detail", json_number(cause.detail)}};
    if (cause.kind == TerminationKind::BlowUpToEndpoint) {
        j["endpoint"] = json_number(cause.endpoint);
        j["k"] = json_number(cause.k);
        j["k_error"] = json_number(cause.k_error);
    }
    return j;
}

nlohmann::json options_json(const IntegratorOptions& opts) {
    return {{"rel_tol", opts.rel_tol},
            {"abs_tol", opts.abs_tol},
            {"max_step", opts.max_step},
            {"endpoint_margin", opts.endpoint_margin},
            {"max_span", opts.max_span},
            {"velocity_cap", opts.velocity_cap}};
}

nlohmann::json curve_json(const SolutionCurve& curve, const std::vector<Sample>& samples,
                          const nlohmann::json& meta) {
    const WarpingFunction& w = curve.warping();
    nlohmann::json rows = nlohmann::json::array();
    for (const Sample& p : samples) {
        rows.push_back({{"s", p.s},
                        {"y", p.y},
                        {"v", p.v},
                        {"causal_indicator", causal_indicator(w, p.y, p.v)}});
    }
    nlohmann::json critical = nlohmann::json::array();
    for (const CriticalPoint& cp : curve.critical_points()) {
        critical.push_back({{"s", cp.s}, {"y", cp.y}, {"kind", std::string(to_string(cp.kind))}});
    }
    nlohmann::json full_meta = meta;
    full_meta["warping"] = warping_json(w);
    full_meta["origin"] = std::string(to_string(curve.origin()));
    full_meta["c1"] = json_number(curve.c1());
    return {{"schema", std::string(kSchema)},
            {"meta", full_meta},
            {"samples", rows},
            {"terminations",
             {{"left", termination_json(curve.left_termination())},
              {"right", termination_json(curve.right_termination())}}},
            {"critical_points", critical}};
}

nlohmann::json report_json(const ClassificationReport& report) {
    nlohmann::json critical = nullptr;
    if (report.critical_point) {
        critical = {{"s", report.critical_point->s},
                    {"y", report.critical_point->y},
                    {"kind", std::string(to_string(report.critical_point->kind))}};
    }
    nlohmann::json blowup = nullptr;
    if (report.blowup) {
        blowup = {{"side", std::string(to_string(report.blowup->side))},
                  {"endpoint", json_number(report.blowup->endpoint)},
                  {"k", json_number(report.blowup->k)},
                  {"k_error", json_number(report.blowup->k_error)}};
    }
    return {{"schema", std::string(kSchema)},
            {"class", std::string(to_string(report.cls))},
            {"c1", json_number(report.c1)},
            {"causal", std::string(to_string(report.causal))},
            {"critical_point", critical},
            {"blowup", blowup},
            {"asymptote",
             {{"left", json_number(report.asymptote.left)},
              {"right", json_number(report.asymptote.right)}}},
            {"initial",
             {{"s0", json_number(report.s0)},
              {"y0", json_number(report.y0)},
              {"v0", json_number(report.v0)}}},
            {"warping", warping_json(report.warping)}};
}

nlohmann::json ncc_json(const WarpingFunction& w, double ric_fibre, const NccVerdict& verdict) {
    nlohmann::json j = {{"schema", std::string(kSchema)},
                        {"verdict", verdict.holds ? "holds" : "violated"},
                        {"min_value", json_number(verdict.min_value)},
                        {"min_t", json_number(verdict.min_t)},
                        {"samples", verdict.sample_count},
                        {"ric_fibre", ric_fibre},
                        {"warping", warping_json(w)}};
    j["first_t"] = verdict.first_violation ? nlohmann::json(*verdict.first_violation)
                                           : nlohmann::json(nullptr);
    return j;
}

nlohmann::json beta_json(const ClosedFormBeta& cf,
                         const std::vector<std::pair<double, double>>& rows) {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& [y, beta] : rows) values.push_back({{"y", y}, {"beta", beta}});
    const BetaDomain& d = cf.domain();
    nlohmann::json domain = {{"lower", json_number(d.interval.lower)},
                             {"upper", json_number(d.interval.upper)},
                             {"blows_up", d.blows_up}};
    if (d.blows_up) domain["root"] = d.root;
    return {{"schema", std::string(kSchema)},
            {"c1", cf.c1()},
            {"branch", cf.branch()},
            {"domain", domain},
            {"warping", warping_json(cf.warping())},
            {"values", values}};
}

std::string dump(const nlohmann::json& value) { return value.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Portraits

void PortraitSpec::validate() const {
    const WarpingFunction w = make_warping(family, c, n);
    const Interval iv = w.interval();
    if (!(s_min < s_max) || !std::isfinite(s_min) || !std::isfinite(s_max)) {
        throw std::invalid_argument("portrait s-range must be finite and increasing");
    }
    if (!(y_min < y_max) || !std::isfinite(y_min) || !std::isfinite(y_max)) {
        throw std::invalid_argument("portrait y-range must be finite and increasing");
    }
    if (y_min < iv.lower || y_max > iv.upper) {
        throw std::invalid_argument(fmt::format(
            "portrait y-range [{}, {}] leaves the interval [{}, {}]", y_min, y_max, iv.lower,
            iv.upper));
    }
    if (resolution < 16) throw std::invalid_argument("portrait resolution must be at least 16");
    if (width < 1 || height < 1) throw std::invalid_argument("portrait size must be positive");
}

PortraitSpec default_portrait(Family family, double c, int n) {
    PortraitSpec spec;
    spec.family = family;
    spec.c = c;
    spec.n = n;
    const WarpingFunction w = make_warping(family, c, n);
    const double rate = n * c * c;
    spec.s_min = -4.0 / rate;
    spec.s_max = 4.0 / rate;
    if (family == Family::II) {
        const double y0 = std::numbers::pi / (4.0 * c);
        const double b = w.b(y0);
        // II.C needs 0 < 1 - v^2/b^2 < sin(c y0)^{2n}; take half of the bound.
        const double s2n = std::pow(std::sin(c * y0), 2.0 * n);
        const double v_c = b * std::sqrt(1.0 - 0.5 * s2n);
        spec.initial = {{0.0, y0, 1.5 * b}, {0.0, y0, 0.0}, {0.0, y0, v_c}, {0.0, y0, b},
                        {0.0, y0, -b}};
        spec.y_min = 0.0;
        spec.y_max = w.interval().upper;
    } else if (family == Family::III) {
        const double y0 = -1.0 / c;
        const double b = w.b(y0);
        spec.initial = {{0.0, y0, 1.6 * b}, {0.0, y0, b / 3.0}, {0.0, y0, b}, {0.0, y0, -b}};
        spec.y_min = -3.0 / c;
        spec.y_max = 0.0;
    } else {
        throw std::invalid_argument("portraits exist for Types II and III only");
    }
    return spec;
}

std::string_view causal_color(Causal causal) {
    switch (causal) {
        case Causal::LightLike: return "black";
        case Causal::TimeLike: return "blue";
        case Causal::SpaceLike: return "green";
    }
    return "gray";
}

std::vector<PortraitCurve> portrait_curves(const PortraitSpec& spec) {
    spec.validate();
    const WarpingFunction w = make_warping(spec.family, spec.c, spec.n);
    std::vector<PortraitCurve> curves;
    const int count = spec.resolution;
    auto grid = [&](int i) {
        return spec.s_min + (spec.s_max - spec.s_min) * static_cast<double>(i) / (count - 1);
    };

    for (const PortraitInitial& ic : spec.initial) {
        const ClassificationReport report = classify(w, ic.s0, ic.y0, ic.v0);
        PortraitCurve curve{ic, report.cls, report.causal,
                            std::string(causal_color(report.causal)), {}};
        if (report.cls == SolitonClass::LightLike) {
            const LightlikeCurve l = lightlike(w, ic.s0, ic.y0, ic.v0 > 0.0 ? 1 : -1);
            for (int i = 0; i < count; ++i) {
                const double s = grid(i);
                if (!l.domain.contains(s)) continue;
                const double y = l.value(s);
                if (w.inside(y)) curve.points.emplace_back(s, y);
            }
            // Close the curve on the interval end it reaches.
            if (std::isfinite(l.domain.upper) && l.domain.upper < spec.s_max) {
                curve.points.emplace_back(l.domain.upper, w.interval().upper);
            }
            if (std::isfinite(l.domain.lower) && l.domain.lower > spec.s_min) {
                curve.points.insert(curve.points.begin(), {l.domain.lower, w.interval().upper});
            }
        } else {
            IntegratorOptions opts = spec.options;
            opts.max_span = std::max(std::abs(spec.s_min - ic.s0), std::abs(spec.s_max - ic.s0)) +
                            1.0;
            const SolutionCurve sol = integrate(w, ic.s0, ic.y0, ic.v0, opts);
            for (int i = 0; i < count; ++i) {
                const double s = grid(i);
                if (s < sol.s_min() || s > sol.s_max()) continue;
                curve.points.emplace_back(s, sol.interpolate(s).y);
            }
            // Extend to the last samples so blow-up ends are drawn.
            const Sample& first = sol.samples().front();
            const Sample& last = sol.samples().back();
            if (first.s > spec.s_min && (curve.points.empty() || first.s < curve.points.front().first)) {
                curve.points.insert(curve.points.begin(), {first.s, first.y});
            }
            if (last.s < spec.s_max && (curve.points.empty() || last.s > curve.points.back().first)) {
                curve.points.emplace_back(last.s, last.y);
            }
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

namespace {

// Narrows [lo, hi] to the parameters where x0 + u dx lies in [x0 + min, x0 + max]
// (Liang-Barsky). Returns false when nothing is left.
bool clip_segment(double dx, double min, double max, double& lo, double& hi) {
    if (dx == 0.0) return min <= 0.0 && 0.0 <= max;
    double a = min / dx;
    double b = max / dx;
    if (a > b) std::swap(a, b);
    lo = std::max(lo, a);
    hi = std::min(hi, b);
    return lo <= hi;
}

}  // namespace

std::string render_svg(const PortraitSpec& spec, const std::vector<PortraitCurve>& curves) {
    spec.validate();
    const double width = spec.width;
    const double height = spec.height;
    auto px = [&](double s) { return (s - spec.s_min) / (spec.s_max - spec.s_min) * width; };
    auto py = [&](double y) {
        return height - (y - spec.y_min) / (spec.y_max - spec.y_min) * height;
    };

    std::string svg;
    svg += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
        "viewBox=\"0 0 {0} {1}\">\n",
        spec.width, spec.height);
    svg += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Axes through the origin when visible, otherwise along the frame.
    const double axis_y = (spec.y_min <= 0.0 && 0.0 <= spec.y_max) ? py(0.0) : height;
    const double axis_x = (spec.s_min <= 0.0 && 0.0 <= spec.s_max) ? px(0.0) : 0.0;
    svg += "<g id=\"axes\" stroke=\"gray\" stroke-width=\"1\">\n";
    svg += fmt::format("<line x1=\"0\" y1=\"{0:.3f}\" x2=\"{1}\" y2=\"{0:.3f}\"/>\n", axis_y,
                       spec.width);
    svg += fmt::format("<line x1=\"{0:.3f}\" y1=\"0\" x2=\"{0:.3f}\" y2=\"{1}\"/>\n", axis_x,
                       spec.height);
    svg += "</g>\n";
    const double label_y = std::clamp(axis_y - 6.0, 14.0, height - 4.0);
    const double label_x = std::clamp(axis_x + 6.0, 4.0, width - 14.0);
    svg += fmt::format(
        "<text x=\"{:.3f}\" y=\"{:.3f}\" fill=\"gray\" font-family=\"serif\" "
        "font-size=\"14\">s</text>\n",
        width - 14.0, label_y);
    svg += fmt::format(
        "<text x=\"{:.3f}\" y=\"14\" fill=\"gray\" font-family=\"serif\" "
        "font-size=\"14\">t</text>\n",
        label_x);

    for (const PortraitCurve& curve : curves) {
        std::string d;
        bool pen_down = false;
        auto move_or_line = [&](double s, double y, bool line) {
            d += fmt::format("{}{:.3f} {:.3f}", d.empty() ? "M" : (line ? " L" : " M"), px(s),
                             py(y));
        };
        // Segments are clipped to the view so curves leaving it still reach the frame.
        for (std::size_t i = 1; i < curve.points.size(); ++i) {
            const auto [s0, y0] = curve.points[i - 1];
            const auto [s1, y1] = curve.points[i];
            double lo = 0.0;
            double hi = 1.0;
            if (!clip_segment(s1 - s0, spec.s_min - s0, spec.s_max - s0, lo, hi) ||
                !clip_segment(y1 - y0, spec.y_min - y0, spec.y_max - y0, lo, hi)) {
                pen_down = false;
                continue;
            }
            if (!pen_down || lo > 0.0) move_or_line(s0 + lo * (s1 - s0), y0 + lo * (y1 - y0), false);
            move_or_line(s0 + hi * (s1 - s0), y0 + hi * (y1 - y0), true);
            pen_down = hi == 1.0;
        }
        const std::string causal(to_string(curve.causal));
        svg += fmt::format(
            "<path class=\"curve {}\" data-class=\"{}\" data-initial=\"{} {} {}\" "
            "stroke=\"{}\" stroke-width=\"1.5\" fill=\"none\" d=\"{}\"/>\n",
            causal, to_string(curve.cls), format_double(curve.initial.s0),
            format_double(curve.initial.y0), format_double(curve.initial.v0), curve.color, d);
    }
    svg += "</svg>\n";
    return svg;
}

std::string render_svg(const PortraitSpec& spec) {
    return render_svg(spec, portrait_curves(spec));
}

// ---------------------------------------------------------------------------
// Run records

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const char ch : bytes) {
        hash ^= static_cast<unsigned char>(ch);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string digest_hex(std::string_view bytes) {
    return fmt::format("fnv1a64:{:016x}", fnv1a64(bytes));
}

nlohmann::json run_record_json(const RunRecord& record) {
    return {{"schema", std::string(kSchema)},
            {"tool", std::string(kToolName)},
            {"version", std::string(kToolVersion)},
            {"command", record.command},
            {"inputs", record.inputs},
            {"tolerances", options_json(record.tolerances)},
            {"wall_clock_seconds", record.wall_clock_seconds},
            {"output_digest", record.output_digest}};
}

}  // namespace grw::io
