#include "grw/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace grw::quad {

namespace {

// Kronrod 15-point abscissae (non-negative half) and weights; the Gauss
// 7-point rule uses every second Kronrod node.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    int depth;

    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment evaluate(const std::function<double(double)>& f, double a, double b, int depth) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kNodes[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[j] * sum;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss), depth};
}

}  // namespace

Result gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                     const Options& options) {
    Result result;
    if (a == b) {
        result.converged = true;
        return result;
    }
    std::priority_queue<Segment> heap;
    Segment first = evaluate(f, a, b, 0);
    double total = first.value;
    double total_error = first.error;
    heap.push(first);
    result.segments = 1;

    auto non_finite = [](const Segment& s) {
        return !std::isfinite(s.value) || !std::isfinite(s.error);
    };
    if (non_finite(first)) {
        result.divergent = true;
        result.value = first.value;
        return result;
    }

    while (total_error > std::max(options.abs_tol, options.rel_tol * std::abs(total))) {
        if (std::abs(total) > options.divergence_cap || result.segments >= options.max_segments) {
            result.divergent = true;
            break;
        }
        const Segment worst = heap.top();
        if (worst.depth >= options.max_depth) {
            result.divergent = true;
            break;
        }
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = evaluate(f, worst.a, mid, worst.depth + 1);
        const Segment right = evaluate(f, mid, worst.b, worst.depth + 1);
        if (non_finite(left) || non_finite(right)) {
            result.divergent = true;
            break;
        }
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++result.segments;
    }

    // Re-sum from the segments to shed accumulated cancellation error.
    double value = 0.0;
    double error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    result.value = value;
    result.error = error;
    result.converged = !result.divergent;
    return result;
}

}  // namespace grw::quad
