// grw-reaper: integrate, classify and draw Grim Reaper solitons of GRW
// spacetimes from the command line.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "grw/classifier.hpp"
#include "grw/closed_forms.hpp"
#include "grw/curvature.hpp"
#include "grw/errors.hpp"
#include "grw/io.hpp"
#include "grw/reaper.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

struct WarpArgs {
    std::string family = "II";
    double c = 1.0;
    int n = 1;

    grw::WarpingFunction make() const {
        return grw::make_warping(grw::parse_family(family), c, n);
    }
    json to_json() const { return {{"family", family}, {"c", c}, {"n", n}}; }
};

struct OutputArgs {
    std::string format;
    std::string output = "-";
    std::string record;
};

struct IntegratorArgs {
    grw::IntegratorOptions opts;

    json to_json() const { return grw::io::options_json(opts); }
};

void add_warp(CLI::App* cmd, WarpArgs& w) {
    cmd->add_option("--family", w.family, "Warping family")
        ->check(CLI::IsMember({"I", "II", "III"}))
        ->capture_default_str();
    cmd->add_option("--c", w.c, "Warping scale c > 0")->capture_default_str();
    cmd->add_option("--n", w.n, "Fibre dimension n >= 1")->capture_default_str();
}

void add_output(CLI::App* cmd, OutputArgs& o, std::vector<std::string> formats,
                std::string fallback) {
    o.format = std::move(fallback);
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
    cmd->add_option("--output", o.output, "Output path, - for standard output")
        ->capture_default_str();
    cmd->add_option("--record", o.record, "Write a run record (JSON) to this path");
}

void add_integrator(CLI::App* cmd, IntegratorArgs& a) {
    cmd->add_option("--rel-tol", a.opts.rel_tol, "Relative tolerance")->capture_default_str();
    cmd->add_option("--abs-tol", a.opts.abs_tol, "Absolute tolerance")->capture_default_str();
    cmd->add_option("--max-step", a.opts.max_step, "Largest step in s")->capture_default_str();
    cmd->add_option("--max-span", a.opts.max_span, "Largest |s - s0| per side")
        ->capture_default_str();
    cmd->add_option("--endpoint-margin", a.opts.endpoint_margin,
                    "Relative distance from pi/(2c) treated as reaching it")
        ->capture_default_str();
    cmd->add_option("--velocity-cap", a.opts.velocity_cap, "|f'| treated as blow-up")
        ->capture_default_str();
}

void emit(const OutputArgs& out, const std::string& command, const json& inputs,
          const grw::IntegratorOptions& tolerances, const std::string& payload,
          std::chrono::steady_clock::time_point started) {
    if (out.output == "-") {
        std::cout << payload;
        std::cout.flush();
    } else {
        std::ofstream file(out.output, std::ios::binary);
        if (!file) throw std::runtime_error(fmt::format("cannot open {} for writing", out.output));
        file << payload;
    }
    if (!out.record.empty()) {
        grw::io::RunRecord record;
        record.command = command;
        record.inputs = inputs;
        record.tolerances = tolerances;
        record.wall_clock_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        record.output_digest = grw::io::digest_hex(payload);
        std::ofstream file(out.record, std::ios::binary);
        if (!file) throw std::runtime_error(fmt::format("cannot open {} for writing", out.record));
        file << grw::io::dump(grw::io::run_record_json(record));
    }
}

std::vector<grw::Sample> resample(const grw::SolutionCurve& curve, int count) {
    if (count <= 0) return curve.samples();
    if (count == 1) return {curve.samples().front()};
    std::vector<grw::Sample> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double s = i == count - 1
                             ? curve.s_max()
                             : curve.s_min() + (curve.s_max() - curve.s_min()) * i / (count - 1);
        out.push_back(curve.interpolate(s));
    }
    return out;
}

// Null initial data: sample the closed-form light-like curve instead.
grw::SolutionCurve lightlike_curve(const grw::WarpingFunction& w, double s0, double y0, double v0,
                                   const grw::IntegratorOptions& opts, int count) {
    const int branch = v0 > 0.0 ? 1 : -1;
    const grw::LightlikeCurve l = grw::lightlike(w, s0, y0, branch);
    const int points = count > 1 ? count : 401;
    double lo = std::max(s0 - opts.max_span, l.domain.lower);
    double hi = std::min(s0 + opts.max_span, l.domain.upper);
    // Stay one cell inside a finite end of the null curve.
    const double cell = (hi - lo) / points;
    if (hi == l.domain.upper) hi -= cell;
    if (lo == l.domain.lower) lo += cell;
    std::vector<grw::Sample> samples;
    for (int i = 0; i < points; ++i) {
        const double s = i == points - 1 ? hi : lo + (hi - lo) * i / (points - 1);
        const double y = l.value(s);
        if (!w.inside(y)) continue;
        if (!samples.empty() && !(s > samples.back().s)) continue;
        samples.push_back({s, y, l.slope(s)});
    }
    auto side = [&](double end, double reached) {
        grw::TerminationCause cause;
        if (std::isfinite(end)) {
            cause = {grw::TerminationKind::BlowUpToEndpoint, reached, w.interval().upper, end, 0.0};
        } else {
            cause = {grw::TerminationKind::ReachedSpanLimit, reached, 0.0, 0.0, 0.0};
        }
        return cause;
    };
    const grw::TerminationCause left = side(l.domain.lower, samples.front().s);
    const grw::TerminationCause right = side(l.domain.upper, samples.back().s);
    return grw::SolutionCurve(w, std::move(samples), left, right, 0.0,
                              grw::CurveOrigin::ClosedForm);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grim Reaper solitons in GRW spacetimes"};
    app.require_subcommand(1);
    const auto started = std::chrono::steady_clock::now();
    std::function<void()> run;

    // integrate -------------------------------------------------------------
    WarpArgs int_w;
    OutputArgs int_out;
    IntegratorArgs int_opts;
    double int_s0 = 0.0, int_y0 = 0.0, int_v0 = 0.0;
    int int_samples = 0;
    std::string int_direction = "both";
    auto* integrate_cmd = app.add_subcommand("integrate", "Integrate the Grim Reaper equation");
    add_warp(integrate_cmd, int_w);
    add_output(integrate_cmd, int_out, {"csv", "json"}, "csv");
    add_integrator(integrate_cmd, int_opts);
    integrate_cmd->add_option("--s0", int_s0, "Initial s")->capture_default_str();
    integrate_cmd->add_option("--y0", int_y0, "Initial height f(s0)")->required();
    integrate_cmd->add_option("--v0", int_v0, "Initial slope f'(s0)")->required();
    integrate_cmd->add_option("--samples", int_samples,
                              "Uniform samples of the dense output (0: every step)")
        ->capture_default_str();
    integrate_cmd->add_option("--direction", int_direction, "Sides to integrate")
        ->check(CLI::IsMember({"forward", "backward", "both"}))
        ->capture_default_str();
    integrate_cmd->callback([&] {
        run = [&] {
            const grw::WarpingFunction w = int_w.make();
            const grw::Direction dir = int_direction == "forward"    ? grw::Direction::Forward
                                       : int_direction == "backward" ? grw::Direction::Backward
                                                                     : grw::Direction::Both;
            int_opts.opts.validate();
            w.require_inside(int_y0);
            const bool null_data =
                w.is_dynamic() &&
                std::abs(grw::causal_indicator(w, int_y0, int_v0)) < grw::kNullIndicatorTolerance;
            const grw::SolutionCurve curve =
                null_data ? lightlike_curve(w, int_s0, int_y0, int_v0, int_opts.opts, int_samples)
                          : grw::integrate(w, int_s0, int_y0, int_v0, int_opts.opts, dir);
            const std::vector<grw::Sample> samples =
                curve.origin() == grw::CurveOrigin::ClosedForm ? curve.samples()
                                                               : resample(curve, int_samples);
            json inputs = int_w.to_json();
            inputs.update({{"s0", int_s0}, {"y0", int_y0}, {"v0", int_v0},
                           {"samples", int_samples}, {"direction", int_direction}});
            std::string payload;
            if (int_out.format == "csv") {
                std::ostringstream text;
                grw::io::write_samples_csv(text, w, samples);
                payload = text.str();
            } else {
                json meta = inputs;
                meta["options"] = int_opts.to_json();
                payload = grw::io::dump(grw::io::curve_json(curve, samples, meta));
            }
            emit(int_out, "integrate", inputs, int_opts.opts, payload, started);
        };
    });

    // classify --------------------------------------------------------------
    WarpArgs cls_w;
    OutputArgs cls_out;
    IntegratorArgs cls_opts;
    double cls_s0 = 0.0, cls_y0 = 0.0, cls_v0 = 0.0;
    bool cls_confirm = false;
    auto* classify_cmd = app.add_subcommand("classify", "Classify initial data");
    add_warp(classify_cmd, cls_w);
    add_output(classify_cmd, cls_out, {"json"}, "json");
    add_integrator(classify_cmd, cls_opts);
    classify_cmd->add_option("--s0", cls_s0, "Initial s")->capture_default_str();
    classify_cmd->add_option("--y0", cls_y0, "Initial height f(s0)")->required();
    classify_cmd->add_option("--v0", cls_v0, "Initial slope f'(s0)")->required();
    classify_cmd->add_flag("--confirm", cls_confirm, "Check the prediction by integration");
    classify_cmd->callback([&] {
        run = [&] {
            const grw::WarpingFunction w = cls_w.make();
            const grw::ClassificationReport report = grw::classify(w, cls_s0, cls_y0, cls_v0);
            json j = grw::io::report_json(report);
            if (cls_confirm) {
                const grw::Verdict v = grw::confirm_numerically(report, cls_opts.opts);
                j["confirmation"] = {{"agreed", v.agreed},
                                     {"skipped", v.skipped},
                                     {"note", v.note},
                                     {"discrepancies", v.discrepancies}};
            }
            json inputs = cls_w.to_json();
            inputs.update({{"s0", cls_s0}, {"y0", cls_y0}, {"v0", cls_v0}, {"confirm", cls_confirm}});
            emit(cls_out, "classify", inputs, cls_opts.opts, grw::io::dump(j), started);
        };
    });

    // portrait --------------------------------------------------------------
    WarpArgs por_w;
    por_w.n = 2;
    OutputArgs por_out;
    IntegratorArgs por_opts;
    std::vector<std::string> por_ics;
    bool por_axes_only = false;
    double por_s_min = NAN, por_s_max = NAN, por_y_min = NAN, por_y_max = NAN;
    int por_resolution = 400;
    int por_width = 600, por_height = 400;
    auto* portrait_cmd = app.add_subcommand("portrait", "Draw a phase portrait as SVG");
    add_warp(portrait_cmd, por_w);
    add_output(portrait_cmd, por_out, {"svg"}, "svg");
    add_integrator(portrait_cmd, por_opts);
    portrait_cmd->add_option("--ic", por_ics, "Initial data s0,y0,v0 (repeatable)");
    portrait_cmd->add_flag("--axes-only", por_axes_only, "Draw no curves");
    portrait_cmd->add_option("--s-min", por_s_min, "Left edge of the view");
    portrait_cmd->add_option("--s-max", por_s_max, "Right edge of the view");
    portrait_cmd->add_option("--y-min", por_y_min, "Bottom edge of the view");
    portrait_cmd->add_option("--y-max", por_y_max, "Top edge of the view");
    portrait_cmd->add_option("--samples,--resolution", por_resolution, "Points per curve")
        ->capture_default_str();
    portrait_cmd->add_option("--width", por_width, "SVG width")->capture_default_str();
    portrait_cmd->add_option("--height", por_height, "SVG height")->capture_default_str();
    portrait_cmd->callback([&] {
        run = [&] {
            const grw::Family family = grw::parse_family(por_w.family);
            grw::io::PortraitSpec spec = grw::io::default_portrait(family, por_w.c, por_w.n);
            if (por_axes_only) spec.initial.clear();
            if (!por_ics.empty()) {
                spec.initial.clear();
                for (const std::string& text : por_ics) {
                    std::vector<double> values;
                    std::stringstream in(text);
                    std::string part;
                    while (std::getline(in, part, ',')) values.push_back(std::stod(part));
                    if (values.size() != 3) {
                        throw CLI::ValidationError("--ic", "expected s0,y0,v0 but got " + text);
                    }
                    spec.initial.push_back({values[0], values[1], values[2]});
                }
            }
            if (!std::isnan(por_s_min)) spec.s_min = por_s_min;
            if (!std::isnan(por_s_max)) spec.s_max = por_s_max;
            if (!std::isnan(por_y_min)) spec.y_min = por_y_min;
            if (!std::isnan(por_y_max)) spec.y_max = por_y_max;
            spec.resolution = por_resolution;
            spec.width = por_width;
            spec.height = por_height;
            spec.options = por_opts.opts;
            json inputs = por_w.to_json();
            json ics = json::array();
            for (const auto& ic : spec.initial) ics.push_back({ic.s0, ic.y0, ic.v0});
            inputs.update({{"initial", ics},
                           {"view", {spec.s_min, spec.s_max, spec.y_min, spec.y_max}},
                           {"resolution", spec.resolution}});
            emit(por_out, "portrait", inputs, por_opts.opts, grw::io::render_svg(spec), started);
        };
    });

    // curvature -------------------------------------------------------------
    WarpArgs cur_w;
    OutputArgs cur_out;
    double cur_sc = 0.0, cur_ric = 0.0;
    int cur_samples = 100;
    std::string cur_mode = "binomial";
    auto* curvature_cmd = app.add_subcommand("curvature", "Tabulate curvature of the spacetime");
    add_warp(curvature_cmd, cur_w);
    add_output(curvature_cmd, cur_out, {"csv", "json"}, "csv");
    curvature_cmd->add_option("--sc-fibre", cur_sc, "Scalar curvature of the fibre")
        ->capture_default_str();
    curvature_cmd->add_option("--ric-fibre", cur_ric, "Fibre Ricci term added to the null-Ricci column")
        ->capture_default_str();
    curvature_cmd->add_option("--samples", cur_samples, "Number of sample times")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    curvature_cmd->add_option("--mode", cur_mode, "Pair coefficient of the scalar curvature")
        ->check(CLI::IsMember({"binomial", "ordered"}))
        ->capture_default_str();
    curvature_cmd->callback([&] {
        run = [&] {
            const grw::WarpingFunction w = cur_w.make();
            const grw::ScalarMode mode =
                cur_mode == "ordered" ? grw::ScalarMode::OrderedPairs : grw::ScalarMode::Binomial;
            std::vector<grw::CurvatureSample> rows;
            for (int i = 0; i < cur_samples; ++i) {
                const double t = grw::curvature_sample_point(w, i, cur_samples);
                grw::CurvatureSample row = grw::curvature_sample(w, t, cur_sc, mode);
                row.null_ricci_offset += cur_ric;
                rows.push_back(row);
            }
            json inputs = cur_w.to_json();
            inputs.update({{"sc_fibre", cur_sc}, {"ric_fibre", cur_ric},
                           {"samples", cur_samples}, {"mode", cur_mode}});
            std::string payload;
            if (cur_out.format == "csv") {
                std::ostringstream text;
                grw::io::write_curvature_csv(text, rows);
                payload = text.str();
            } else {
                json table = json::array();
                for (const auto& r : rows) {
                    table.push_back({{"t", r.t},
                                     {"scalar", r.scalar},
                                     {"mixed", r.mixed_sectional},
                                     {"pair_offset", r.fiber_pair_sectional_offset},
                                     {"null_ricci_offset", r.null_ricci_offset}});
                }
                payload = grw::io::dump({{"schema", std::string(grw::io::kSchema)},
                                         {"warping", grw::io::warping_json(w)},
                                         {"inputs", inputs},
                                         {"rows", table}});
            }
            emit(cur_out, "curvature", inputs, {}, payload, started);
        };
    });

    // ncc -------------------------------------------------------------------
    WarpArgs ncc_w;
    OutputArgs ncc_out;
    double ncc_ric = 0.0;
    int ncc_samples = 100;
    auto* ncc_cmd = app.add_subcommand("ncc", "Null convergence condition on samples");
    add_warp(ncc_cmd, ncc_w);
    add_output(ncc_cmd, ncc_out, {"json"}, "json");
    ncc_cmd->add_option("--ric-fibre", ncc_ric, "Lower bound of the fibre Ricci term")
        ->capture_default_str();
    ncc_cmd->add_option("--samples", ncc_samples, "Number of sample times")
        ->check(CLI::Range(2, 100000000))
        ->capture_default_str();
    ncc_cmd->callback([&] {
        run = [&] {
            const grw::WarpingFunction w = ncc_w.make();
            const grw::NccVerdict verdict = grw::ncc_verdict(w, ncc_ric, ncc_samples);
            json inputs = ncc_w.to_json();
            inputs.update({{"ric_fibre", ncc_ric}, {"samples", ncc_samples}});
            emit(ncc_out, "ncc", inputs, {}, grw::io::dump(grw::io::ncc_json(w, ncc_ric, verdict)),
                 started);
        };
    });

    // lightlike -------------------------------------------------------------
    WarpArgs ll_w;
    OutputArgs ll_out;
    IntegratorArgs ll_opts;
    double ll_s0 = 0.0, ll_y0 = 0.0;
    int ll_branch = 1;
    int ll_samples = 401;
    auto* lightlike_cmd = app.add_subcommand("lightlike", "Sample a closed-form null curve");
    add_warp(lightlike_cmd, ll_w);
    add_output(lightlike_cmd, ll_out, {"csv", "json"}, "csv");
    add_integrator(lightlike_cmd, ll_opts);
    lightlike_cmd->add_option("--s0", ll_s0, "Anchor s")->capture_default_str();
    lightlike_cmd->add_option("--y0", ll_y0, "Anchor height")->required();
    lightlike_cmd->add_option("--branch", ll_branch, "+1 increasing, -1 decreasing")
        ->check(CLI::IsMember({1, -1}))
        ->capture_default_str();
    lightlike_cmd->add_option("--samples", ll_samples, "Number of samples")
        ->check(CLI::Range(5, 100000000))
        ->capture_default_str();
    lightlike_cmd->callback([&] {
        run = [&] {
            const grw::WarpingFunction w = ll_w.make();
            const double slope = ll_branch * w.b(ll_y0);
            const grw::SolutionCurve curve =
                lightlike_curve(w, ll_s0, ll_y0, slope, ll_opts.opts, ll_samples);
            json inputs = ll_w.to_json();
            inputs.update({{"s0", ll_s0}, {"y0", ll_y0}, {"branch", ll_branch},
                           {"samples", ll_samples}});
            std::string payload;
            if (ll_out.format == "csv") {
                std::ostringstream text;
                grw::io::write_samples_csv(text, w, curve.samples());
                payload = text.str();
            } else {
                payload = grw::io::dump(grw::io::curve_json(curve, curve.samples(), inputs));
            }
            emit(ll_out, "lightlike", inputs, ll_opts.opts, payload, started);
        };
    });

    // beta ------------------------------------------------------------------
    WarpArgs beta_w;
    OutputArgs beta_out;
    double beta_c1 = 0.0, beta_y0 = 0.0, beta_v0 = 0.0;
    int beta_branch = 1;
    int beta_samples = 201;
    auto* beta_cmd = app.add_subcommand("beta", "Tabulate a closed-form beta branch");
    add_warp(beta_cmd, beta_w);
    add_output(beta_cmd, beta_out, {"csv", "json"}, "csv");
    auto* c1_opt = beta_cmd->add_option("--c1", beta_c1, "Conserved constant c1");
    auto* y0_opt = beta_cmd->add_option("--y0", beta_y0, "Height of initial data (with --v0)");
    auto* v0_opt = beta_cmd->add_option("--v0", beta_v0, "Slope of initial data (with --y0)");
    y0_opt->needs(v0_opt);
    v0_opt->needs(y0_opt);
    c1_opt->excludes(y0_opt);
    beta_cmd->add_option("--branch", beta_branch, "Sign of beta")
        ->check(CLI::IsMember({1, -1}))
        ->capture_default_str();
    beta_cmd->add_option("--samples", beta_samples, "Number of heights")
        ->check(CLI::Range(2, 100000000))
        ->capture_default_str();
    beta_cmd->callback([&] {
        if (c1_opt->count() == 0 && y0_opt->count() == 0) {
            throw CLI::RequiredError("--c1 or --y0/--v0");
        }
        run = [&] {
            const grw::WarpingFunction w = beta_w.make();
            const grw::ClosedFormBeta cf =
                c1_opt->count() > 0
                    ? grw::ClosedFormBeta::make(w, beta_c1, beta_branch)
                    : grw::ClosedFormBeta::through(w, beta_y0, beta_v0, beta_branch);
            const grw::Interval iv = cf.domain().interval;
            const double lo = std::isfinite(iv.lower) ? iv.lower : iv.upper - 5.0 / w.c();
            std::vector<std::pair<double, double>> rows;
            for (int i = 0; i < beta_samples; ++i) {
                const double y = lo + (iv.upper - lo) * (i + 0.5) / beta_samples;
                rows.emplace_back(y, grw::beta_closed(cf, y));
            }
            json inputs = beta_w.to_json();
            inputs["branch"] = beta_branch;
            inputs["samples"] = beta_samples;
            if (c1_opt->count() > 0) {
                inputs["c1"] = beta_c1;
            } else {
                inputs.update({{"y0", beta_y0}, {"v0", beta_v0}});
            }
            std::string payload;
            if (beta_out.format == "csv") {
                payload = "y,beta\n";
                for (const auto& [y, b] : rows) {
                    payload += fmt::format("{},{}\n", grw::io::format_double(y),
                                           grw::io::format_double(b));
                }
            } else {
                payload = grw::io::dump(grw::io::beta_json(cf, rows));
            }
            emit(beta_out, "beta", inputs, {}, payload, started);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        run();
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const grw::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const grw::RangeError& e) {
        std::cerr << "range error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const grw::FlowEscapeError& e) {
        std::cerr << "flow escape: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameter: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
