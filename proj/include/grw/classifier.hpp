#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grw/reaper.hpp"
#include "grw/warping.hpp"

namespace grw {

enum class SolitonClass { IIA, IIB, IIC, IIIA, IIIB, LightLike, Vertical };

std::string_view to_string(SolitonClass cls);

enum class Causal { TimeLike, SpaceLike, LightLike };

std::string_view to_string(Causal causal);

enum class Side { Left, Right };

std::string_view to_string(Side side);

struct BlowupPrediction {
    Side side;
    double endpoint;  // pi/(2c) or -inf
    double k;         // s-location where the endpoint is reached
    double k_error;
};

// Predicted limit of f at each end of its maximal interval: 0, pi/(2c) or
// -inf.
struct Asymptotes {
    double left;
    double right;
};

struct ClassificationReport {
    WarpingFunction warping;
    double s0;
    double y0;
    double v0;
    SolitonClass cls;
    double c1;
    Causal causal;
    std::optional<CriticalPoint> critical_point;
    std::optional<BlowupPrediction> blowup;
    Asymptotes asymptote;
};

// Relative tolerance on c1 (in units of c^2 n^2) and on the causal indicator
// for light-like data.
inline constexpr double kLightlikeTolerance = 1e-9;

// Class from the initial data, predicted portrait from the closed forms.
ClassificationReport classify(const WarpingFunction& w, double s0, double y0, double v0);

// The vertical soliton through height s0 (not a graph over s). Only built on
// request, never inferred from initial data.
ClassificationReport vertical_report(const WarpingFunction& w, double s0);

struct Verdict {
    bool agreed = false;
    bool skipped = false;
    std::string note;
    std::vector<std::string> discrepancies;
};

// Integrates both directions and compares the numerical portrait with the
// report: critical point, blow-up side/endpoint/k, asymptotes and causal
// character.
Verdict confirm_numerically(const ClassificationReport& report,
                            const IntegratorOptions& opts = {});

// +-1/(c n sqrt(n)): the limit of beta at pi/(2c) on the boundary c1 = -c^2 n^2.
// Throws std::invalid_argument for Type III (or I) and for other values of c1.
double beta_terminal_limit(const WarpingFunction& w, int branch);
double beta_terminal_limit(const WarpingFunction& w, int branch, double c1);

}  // namespace grw
