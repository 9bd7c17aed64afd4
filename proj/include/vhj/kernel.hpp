#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "vhj/grid.hpp"

namespace vhj {

inline constexpr double kDefaultTruncation = 8.0;

/// Heat kernel of Brownian motion at time t, truncated to a window of
/// truncation_multiple * sqrt(t) per axis.
struct GaussKernel {
    double t = 0.0;
    double truncation_multiple = kDefaultTruncation;
    int dim = 1;

    void validate() const;
};

/**
 * Discrete weights for E[g(x_i + W_t + phase * h)] on a lattice of spacing h:
 * the expectation is sum_j weights[j] * g(x_{i + first + j}). Weights are the
 * Gaussian density sampled at (first + j - phase) * h, renormalized to sum to 1.
 */
struct LatticeWeights {
    std::ptrdiff_t first = 0;
    std::vector<double> weights;

    std::ptrdiff_t last() const { return first + static_cast<std::ptrdiff_t>(weights.size()) - 1; }
};

LatticeWeights lattice_weights(double t, double spacing, double phase, double truncation_multiple = kDefaultTruncation);

// Zero-extended 1D correlation out[e] = sum_j w_j * in(e + first + j) for e
// in [-pad, n + pad), where in(k) = 0 outside [0, n). `out` has n + 2 pad entries.
void correlate_line(const double* in, std::size_t n, std::size_t in_stride, const LatticeWeights& w,
                    std::ptrdiff_t pad, double* out, std::size_t out_stride);

/// E[f(x + W_t)] at every node, f zero outside the grid; t = 0 returns f.
GridFunction heat_step(const GridFunction& f, double t, double truncation_multiple = kDefaultTruncation);

/// Renormalized Gaussian quadrature of E[g(x + W_t)].
double gauss_expectation(const std::function<double(const Point&)>& g, const Point& x, double t, int dim,
                         double truncation_multiple = kDefaultTruncation);

/// E[f(position + W_t)] for a grid function at an arbitrary position.
double shifted_expectation(const GridFunction& f, const Point& position, double t,
                           double truncation_multiple = kDefaultTruncation);

/// P(|W_t| >= r) for d-dimensional Brownian motion, d in {1, 2}; values
/// below 1e-300 are reported as 0.
double brownian_tail(double r, double t, int dim);
/// Natural log of P(|W_t| >= r), finite far below the double range.
double log_brownian_tail(double r, double t, int dim);

struct HolderShift {
    double lhs;  // E|f(x + W_t + lambda t)|
    double rhs;  // exp((q - 1)|lambda|^2 t / 2) * E[|f|^p(x + W_t)]^(1/p)
};

HolderShift holder_shift_check(const GridFunction& f, const Point& x, const Point& lambda, double t, double p,
                               double truncation_multiple = kDefaultTruncation);

}  // namespace vhj
