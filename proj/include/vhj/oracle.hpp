#pragma once

#include "vhj/grid.hpp"
#include "vhj/kernel.hpp"

namespace vhj {

/**
 * Cole-Hopf solution of  u_t = 1/2 Laplacian u + (c/2) |grad u|^2:
 *
 *   u(t, x) = (1/c) log E[exp(c f(x + W_t))].
 *
 * Gaussian weights are sampled on the grid inside a window of
 * truncation_multiple * sqrt(t) and renormalized; exp(c f) = 1 off the grid.
 * Each node is a log-sum-exp, so sup |c f| up to ~700 is safe.
 */
GridFunction exact_solution(const GridFunction& f, double t, double coupling = 1.0,
                            double truncation_multiple = kDefaultTruncation);

/// sup |u(t, u(s, f)) - u(s + t, f)| for the Cole-Hopf flow.
double oracle_semigroup_defect(const GridFunction& f, double s, double t, double coupling = 1.0,
                               double truncation_multiple = kDefaultTruncation);

}  // namespace vhj
