#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "grw/classifier.hpp"
#include "grw/closed_forms.hpp"
#include "grw/curvature.hpp"
#include "grw/reaper.hpp"

namespace grw::io {

inline constexpr std::string_view kSchema = "grw-reaper/1";
inline constexpr std::string_view kToolName = "grw-reaper";
inline constexpr std::string_view kToolVersion = "1.0.0";

// 17 significant digits, round-trip exact. Non-finite values print as
// inf, -inf or nan.
std::string format_double(double x);

// JSON value for a double: a number when finite, otherwise the string
// "inf", "-inf" or "nan".
nlohmann::json json_number(double x);

// ---------------------------------------------------------------------------
// CSV

// Header s,y,v,causal_indicator then one line per sample.
void write_samples_csv(std::ostream& out, const WarpingFunction& w,
                       const std::vector<Sample>& samples);
// Reads s, y and v back (the indicator column is ignored). Throws
// std::invalid_argument on a malformed header or line.
std::vector<Sample> parse_samples_csv(std::istream& in);

// Header t,scalar,mixed,null_ricci_offset.
void write_curvature_csv(std::ostream& out, const std::vector<CurvatureSample>& rows);

// ---------------------------------------------------------------------------
// JSON

nlohmann::json warping_json(const WarpingFunction& w);
nlohmann::json termination_json(const TerminationCause& cause);
nlohmann::json options_json(const IntegratorOptions& opts);
// {schema, meta, samples, terminations, critical_points}
nlohmann::json curve_json(const SolutionCurve& curve, const std::vector<Sample>& samples,
                          const nlohmann::json& meta);
nlohmann::json report_json(const ClassificationReport& report);
nlohmann::json ncc_json(const WarpingFunction& w, double ric_fibre, const NccVerdict& verdict);
nlohmann::json beta_json(const ClosedFormBeta& cf, const std::vector<std::pair<double, double>>& rows);

// Two-space indented dump with a trailing newline.
std::string dump(const nlohmann::json& value);

// ---------------------------------------------------------------------------
// Portraits

struct PortraitInitial {
    double s0;
    double y0;
    double v0;
};

struct PortraitSpec {
    Family family = Family::II;
    double c = 1.0;
    int n = 2;
    std::vector<PortraitInitial> initial;
    double s_min = -2.0;
    double s_max = 2.0;
    double y_min = 0.0;
    double y_max = 1.5707963267948966;
    int resolution = 400;  // samples per curve across the s-range
    int width = 600;
    int height = 400;
    IntegratorOptions options;

    // Throws std::invalid_argument unless the ranges are ordered, the
    // y-range lies in the closure of the interval and resolution >= 16.
    void validate() const;
};

// One curve per class plus the two null curves, all through one anchor:
// (0, pi/(4c)) for Type II and (0, -1/c) for Type III. Slopes are fixed
// multiples of b at the anchor chosen to land in each class.
PortraitSpec default_portrait(Family family, double c = 1.0, int n = 2);

struct PortraitCurve {
    PortraitInitial initial;
    SolitonClass cls;
    Causal causal;
    std::string color;
    std::vector<std::pair<double, double>> points;  // (s, y)
};

std::string_view causal_color(Causal causal);

// Classifies and samples every curve. Throws DomainError when an initial
// height lies outside the interval.
std::vector<PortraitCurve> portrait_curves(const PortraitSpec& spec);

std::string render_svg(const PortraitSpec& spec, const std::vector<PortraitCurve>& curves);
std::string render_svg(const PortraitSpec& spec);

// ---------------------------------------------------------------------------
// Run records

std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_hex(std::string_view bytes);

struct RunRecord {
    std::string command;
    nlohmann::json inputs;
    IntegratorOptions tolerances;
    double wall_clock_seconds = 0.0;
    std::string output_digest;
};

nlohmann::json run_record_json(const RunRecord& record);

}  // namespace grw::io
