#include <cmath>
#include <cstdlib>
#include <numbers>
#include <regex>
#include <sstream>

#include <gtest/gtest.h>

#include "grw/errors.hpp"
#include "grw/io.hpp"

namespace {

using grw::Family;
using grw::make_warping;
using nlohmann::json;

constexpr double kPi = std::numbers::pi;

int count(const std::string& text, const std::string& needle) {
    int hits = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size())) {
        ++hits;
    }
    return hits;
}

TEST(Format, RoundTripsSeventeenDigits) {
    for (double x : {0.1, 1.0 / 3.0, kPi, -2.5e-300, 6.02214076e23, 5e-324,
                     std::nextafter(1.0, 2.0)}) {
        const std::string text = grw::io::format_double(x);
        EXPECT_EQ(std::strtod(text.c_str(), nullptr), x) << text;
    }
    EXPECT_EQ(grw::io::format_double(std::numeric_limits<double>::infinity()), "inf");
    EXPECT_EQ(grw::io::format_double(-std::numeric_limits<double>::infinity()), "-inf");
    EXPECT_EQ(grw::io::format_double(std::nan("")), "nan");
    EXPECT_EQ(grw::io::json_number(-std::numeric_limits<double>::infinity()), json("-inf"));
    EXPECT_EQ(grw::io::json_number(0.25), json(0.25));
}

TEST(Csv, SamplesRoundTripExactly) {
    const auto w = make_warping(Family::III, 1.0, 2);
    const auto curve = grw::integrate(w, 0.1, -1.0, 3.0);
    std::ostringstream out;
    grw::io::write_samples_csv(out, w, curve.samples());
    const std::string text = out.str();
    EXPECT_EQ(text.rfind("s,y,v,causal_indicator\n", 0), 0u);
    EXPECT_EQ(text.find('\r'), std::string::npos);
    std::istringstream in(text);
    const auto back = grw::io::parse_samples_csv(in);
    ASSERT_EQ(back.size(), curve.samples().size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        ASSERT_EQ(back[i].s, curve.samples()[i].s);
        ASSERT_EQ(back[i].y, curve.samples()[i].y);
        ASSERT_EQ(back[i].v, curve.samples()[i].v);
    }
}

TEST(Csv, RejectsMalformedInput) {
    std::istringstream bad_header("t,y,v,causal_indicator\n0,0,0,0\n");
    EXPECT_THROW(grw::io::parse_samples_csv(bad_header), std::invalid_argument);
    std::istringstream bad_line("s,y,v,causal_indicator\n0,abc,0,1\n");
    EXPECT_THROW(grw::io::parse_samples_csv(bad_line), std::invalid_argument);
    std::istringstream short_line("s,y,v,causal_indicator\n0,1\n");
    EXPECT_THROW(grw::io::parse_samples_csv(short_line), std::invalid_argument);
}

TEST(Csv, CurvatureHeader) {
    const auto w = make_warping(Family::II, 1.0, 2);
    std::ostringstream out;
    grw::io::write_curvature_csv(out, {grw::curvature_sample(w, kPi / 4, 0.0)});
    EXPECT_EQ(out.str().rfind("t,scalar,mixed,null_ricci_offset\n", 0), 0u);
    EXPECT_EQ(count(out.str(), "\n"), 2);
}

TEST(Json, CurveLayout) {
    const auto w = make_warping(Family::III, 1.0, 2);
    const auto curve = grw::integrate(w, 0.0, -1.0, 3.0);
    const json j = grw::io::curve_json(curve, curve.samples(), {{"note", "x"}});
    EXPECT_EQ(j["schema"], "grw-reaper/1");
    EXPECT_EQ(j["meta"]["note"], "x");
    EXPECT_EQ(j["meta"]["origin"], "integrated");
    EXPECT_EQ(j["samples"].size(), curve.samples().size());
    EXPECT_EQ(j["terminations"]["left"]["kind"], "BlowUpToEndpoint");
    EXPECT_EQ(j["terminations"]["left"]["endpoint"], "-inf");
    EXPECT_EQ(j["terminations"]["right"]["kind"], "ReachedSpanLimit");
    // Doubles survive a dump/parse cycle bit for bit.
    const json back = json::parse(grw::io::dump(j));
    for (std::size_t i = 0; i < curve.samples().size(); ++i) {
        ASSERT_EQ(back["samples"][i]["y"].get<double>(), curve.samples()[i].y);
    }
}

TEST(Json, ReportKeys) {
    const auto report = grw::classify(make_warping(Family::II, 1.0, 1), 0.0, kPi / 4, 2.0);
    const json j = grw::io::report_json(report);
    for (const char* key : {"class", "c1", "causal", "critical_point", "blowup", "asymptote"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["class"], "II.A");
    EXPECT_NEAR(j["c1"].get<double>(), 6.0, 1e-13);
    EXPECT_EQ(j["causal"], "time-like");
    EXPECT_TRUE(j["critical_point"].is_null());
    EXPECT_EQ(j["blowup"]["side"], "right");
}

TEST(Json, NccVerdict) {
    const auto w = make_warping(Family::II, 1.0, 2);
    const json j = grw::io::ncc_json(w, 0.0, grw::ncc_verdict(w, 0.0, 100));
    EXPECT_EQ(j["verdict"], "violated");
    EXPECT_GT(j["first_t"].get<double>(), 0.7853);
    const auto w3 = make_warping(Family::III, 1.0, 2);
    const json k = grw::io::ncc_json(w3, 0.0, grw::ncc_verdict(w3, 0.0, 100));
    EXPECT_EQ(k["verdict"], "holds");
    EXPECT_TRUE(k["first_t"].is_null());
}

TEST(Json, DumpEndsWithNewline) {
    const std::string text = grw::io::dump({{"a", 1}});
    EXPECT_EQ(text.back(), '\n');
    EXPECT_EQ(text, "{\n  \"a\": 1\n}\n");
}

TEST(Portrait, ValidatesSpec) {
    auto spec = grw::io::default_portrait(Family::II);
    EXPECT_NO_THROW(spec.validate());
    spec.resolution = 15;
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    spec = grw::io::default_portrait(Family::II);
    spec.y_max = 2.0;
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    spec = grw::io::default_portrait(Family::III);
    spec.y_max = 0.1;
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    spec = grw::io::default_portrait(Family::III);
    spec.s_min = spec.s_max;
    EXPECT_THROW(spec.validate(), std::invalid_argument);
}

TEST(Portrait, DefaultTypeTwo) {
    const auto spec = grw::io::default_portrait(Family::II, 1.0, 2);
    const std::string svg = grw::io::render_svg(spec);
    EXPECT_EQ(count(svg, "<path"), 5);
    EXPECT_EQ(count(svg, "stroke=\"black\""), 2);
    EXPECT_EQ(count(svg, "stroke=\"blue\""), 1);
    EXPECT_EQ(count(svg, "stroke=\"green\""), 2);
    for (const char* cls : {"II.A", "II.B", "II.C"}) {
        EXPECT_EQ(count(svg, std::string("data-class=\"") + cls + "\""), 1) << cls;
    }
}

TEST(Portrait, DefaultTypeThree) {
    const std::string svg = grw::io::render_svg(grw::io::default_portrait(Family::III, 1.0, 2));
    EXPECT_TRUE(std::regex_search(svg, std::regex("data-class=\"III.A\"[^>]*stroke=\"blue\"")));
    EXPECT_TRUE(std::regex_search(svg, std::regex("data-class=\"III.B\"[^>]*stroke=\"green\"")));
    EXPECT_EQ(count(svg, "stroke=\"black\""), 2);
}

TEST(Portrait, DefaultsHoldForOtherParameters) {
    for (Family f : {Family::II, Family::III}) {
        for (double c : {0.5, 2.0}) {
            for (int n : {1, 3}) {
                const auto curves = grw::io::portrait_curves(grw::io::default_portrait(f, c, n));
                std::vector<std::string> classes;
                for (const auto& curve : curves) classes.emplace_back(grw::to_string(curve.cls));
                if (f == Family::II) {
                    EXPECT_EQ(std::count(classes.begin(), classes.end(), "II.A"), 1);
                    EXPECT_EQ(std::count(classes.begin(), classes.end(), "II.B"), 1);
                    EXPECT_EQ(std::count(classes.begin(), classes.end(), "II.C"), 1);
                } else {
                    EXPECT_EQ(std::count(classes.begin(), classes.end(), "III.A"), 1);
                    EXPECT_EQ(std::count(classes.begin(), classes.end(), "III.B"), 1);
                }
                EXPECT_EQ(std::count(classes.begin(), classes.end(), "LightLike"), 2);
            }
        }
    }
}

TEST(Portrait, StyleMatchesClassification) {
    auto spec = grw::io::default_portrait(Family::II, 1.0, 2);
    const auto w = make_warping(Family::II, 1.0, 2);
    for (double ratio : {0.0, 0.3, 0.99, 1.0, 1.7, -0.5, -1.0, -2.2}) {
        spec.initial.push_back({0.2, 0.5, ratio * w.b(0.5)});
    }
    for (const auto& curve : grw::io::portrait_curves(spec)) {
        const auto report = grw::classify(w, curve.initial.s0, curve.initial.y0, curve.initial.v0);
        EXPECT_EQ(curve.cls, report.cls);
        EXPECT_EQ(curve.causal, report.causal);
        EXPECT_EQ(curve.color, grw::io::causal_color(report.causal));
        EXPECT_FALSE(curve.points.empty());
    }
    EXPECT_EQ(grw::io::causal_color(grw::Causal::LightLike), "black");
    EXPECT_EQ(grw::io::causal_color(grw::Causal::TimeLike), "blue");
    EXPECT_EQ(grw::io::causal_color(grw::Causal::SpaceLike), "green");
}

TEST(Portrait, AxesOnly) {
    auto spec = grw::io::default_portrait(Family::III);
    spec.initial.clear();
    const std::string svg = grw::io::render_svg(spec);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_EQ(svg.substr(svg.size() - 7), "</svg>\n");
    EXPECT_EQ(count(svg, "<path"), 0);
    EXPECT_EQ(count(svg, "<line"), 2);
    EXPECT_NE(svg.find(">s</text>"), std::string::npos);
    EXPECT_NE(svg.find(">t</text>"), std::string::npos);
}

TEST(Portrait, Deterministic) {
    const auto spec = grw::io::default_portrait(Family::II);
    EXPECT_EQ(grw::io::render_svg(spec), grw::io::render_svg(spec));
}

TEST(Portrait, InitialDataOutsideInterval) {
    auto spec = grw::io::default_portrait(Family::II);
    spec.initial.push_back({0.0, 2.0, 0.0});
    EXPECT_THROW(grw::io::render_svg(spec), grw::DomainError);
}

TEST(RunRecord, Digest) {
    EXPECT_EQ(grw::io::fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(grw::io::fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
    EXPECT_EQ(grw::io::digest_hex("a"), "fnv1a64:af63dc4c8601ec8c");

    grw::io::RunRecord record{"classify", {{"y0", 0.5}}, {}, 0.25, grw::io::digest_hex("payload")};
    const json j = grw::io::run_record_json(record);
    EXPECT_EQ(j["tool"], "grw-reaper");
    EXPECT_EQ(j["version"], "1.0.0");
    EXPECT_EQ(j["command"], "classify");
    EXPECT_EQ(j["tolerances"]["rel_tol"], 1e-10);
    EXPECT_EQ(j["wall_clock_seconds"], 0.25);
    EXPECT_EQ(j["output_digest"], grw::io::digest_hex("payload"));
}

}  // namespace
