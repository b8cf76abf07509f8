#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include "slrep/errors.hpp"
#include "slrep/matrix.hpp"
#include "slrep/rng.hpp"

namespace slrep {

// Function on the cell: coordinates in the pattern's canonical order (real
// cells carry real values inside cplx).
using CellFunction = std::function<cplx(const std::vector<cplx>&)>;

struct QuadratureConfig {
    enum class Scheme { TensorGaussLegendre, MonteCarlo };
    enum class ErrorMode { StepRefinement, VarianceEstimate };

    Scheme scheme = Scheme::TensorGaussLegendre;
    int points_per_axis = 16;
    double box_radius = 4.5; // box half-width for bump integrands, tan scale for rational ones
    long samples = 100000;
    std::uint64_t seed = 1;
    ErrorMode error_mode = ErrorMode::StepRefinement;
    double requested_tolerance = 0.0; // relative; 0 disables the NonConvergent gate
    double proposal_width = 2.2;      // MC Gaussian proposal std per real axis
};

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on the Legendre
// recurrence.
inline void gauss_legendre(int p, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<std::size_t>(p), 0.0);
    weights.assign(static_cast<std::size_t>(p), 0.0);
    const int m = (p + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (p + 0.5));
        double x_prev, dp = 0.0;
        do {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < p; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * x * p2 - j * p3) / (j + 1);
            }
            dp = p * (x * p1 - p2) / (x * x - 1.0);
            x_prev = x;
            x = x_prev - p1 / dp;
        } while (std::abs(x - x_prev) > 1e-15);
        double p1 = 1.0, p2 = 0.0;
        for (int j = 0; j < p; ++j) {
            const double p3 = p2;
            p2 = p1;
            p1 = ((2.0 * j + 1.0) * x * p2 - j * p3) / (j + 1);
        }
        dp = p * (x * p1 - p2) / (x * x - 1.0);
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(p - 1 - i)] = x;
        weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[static_cast<std::size_t>(p - 1 - i)] = weights[static_cast<std::size_t>(i)];
    }
}

// One real integration axis: nodes and weights, measure included.
struct Axis {
    std::vector<double> nodes;
    std::vector<double> weights;

    // [-radius, radius], for integrands with Gaussian decay
    static Axis box(int p, double radius) {
        Axis a;
        std::vector<double> n, w;
        gauss_legendre(p, n, w);
        a.nodes.resize(n.size());
        a.weights.resize(n.size());
        for (std::size_t i = 0; i < n.size(); ++i) {
            a.nodes[i] = radius * n[i];
            a.weights[i] = radius * w[i];
        }
        return a;
    }

    // x = scale*tan(theta) over the whole line, for rational decay
    static Axis tan_line(int p, double scale) {
        Axis a;
        std::vector<double> n, w;
        gauss_legendre(p, n, w);
        a.nodes.resize(n.size());
        a.weights.resize(n.size());
        for (std::size_t i = 0; i < n.size(); ++i) {
            const double th = 0.5 * std::numbers::pi * n[i];
            const double c = std::cos(th);
            a.nodes[i] = scale * std::tan(th);
            a.weights[i] = w[i] * 0.5 * std::numbers::pi * scale / (c * c);
        }
        return a;
    }

    // y = scale*tan(theta), theta in (0, pi/2): the half line (0, inf)
    static Axis tan_half_line(int p, double scale, int sign) {
        Axis a;
        std::vector<double> n, w;
        gauss_legendre(p, n, w);
        a.nodes.resize(n.size());
        a.weights.resize(n.size());
        for (std::size_t i = 0; i < n.size(); ++i) {
            const double th = 0.25 * std::numbers::pi * (n[i] + 1.0);
            const double c = std::cos(th);
            a.nodes[i] = sign * scale * std::tan(th);
            a.weights[i] = w[i] * 0.25 * std::numbers::pi * scale / (c * c);
        }
        return a;
    }
};

// Monte-Carlo mean/standard-error accumulator with deterministic order.
struct McAccumulator {
    double sum = 0.0;
    double sumsq = 0.0;
    long n = 0;

    void add(double v) {
        sum += v;
        sumsq += v * v;
        ++n;
    }
    double mean() const { return n ? sum / n : 0.0; }
    double std_error() const {
        if (n < 2) return std::numeric_limits<double>::infinity();
        const double m = mean();
        const double var = std::max(0.0, sumsq / n - m * m);
        return std::sqrt(var / n);
    }
};

} // namespace slrep
