#pragma once

#include <functional>

namespace grw::quad {

struct Options {
    double abs_tol = 1e-14;
    double rel_tol = 1e-12;
    int max_depth = 60;             // bisection depth treated as divergence
    double divergence_cap = 1e12;   // |partial sum| treated as divergence
    int max_segments = 4000;
};

struct Result {
    double value = 0.0;
    double error = 0.0;
    bool converged = false;
    bool divergent = false;
    int segments = 0;
};

// Globally adaptive Gauss-Kronrod (G7/K15) on the finite interval [a, b].
// Nodes never touch the endpoints, so integrable endpoint singularities are
// allowed. An integral whose refinement exceeds max_depth, whose partial sum
// exceeds divergence_cap, or which exhausts max_segments is reported as
// divergent.
Result gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                     const Options& options = {});

}  // namespace grw::quad
