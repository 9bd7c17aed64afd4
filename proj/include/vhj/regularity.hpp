#pragma once

#include <iosfwd>
#include <vector>

#include "vhj/chernoff.hpp"

namespace vhj {

/// Level-n states u(t) = I(2^-n)^(2^n t) f at increasing dyadic times.
struct Trajectory {
    unsigned level = 0;
    std::vector<Dyadic> times;
    std::vector<GridFunction> states;
};

// Times must be distinct, sorted and representable at `level`.
Trajectory solve_trajectory(const GridFunction& f, const Hamiltonian& h, const std::vector<Dyadic>& times,
                            unsigned level, const ChernoffOptions& options = {});

struct LipschitzEstimate {
    double gamma;              // max over sampled pairs of |u(s) - u(t)|_inf / |s - t|
    double gradient_sup_f;     // inputs the constant depends on
    double laplacian_sup_f;
};

/// Uses config.hamiltonian, config.chernoff and level config.schedule.max_level.
LipschitzEstimate time_lipschitz_estimate(const GridFunction& f, const SolverConfig& config,
                                          const std::vector<Dyadic>& times);

/// max over sampled pairs of |u(s) - u(t)|_inf - gamma |s - t|.
double lipschitz_consistency(const Trajectory& trajectory, double gamma);

struct DiagnosticsReport {
    unsigned level = 0;
    double spacing = 0.0;
    double horizon = 0.0;
    std::size_t samples = 0;
    double gamma_estimate = 0.0;
    double sup_dt_u = 0.0;         // forward difference at the level step
    double sup_laplacian_u = 0.0;
    double sup_gradient_u = 0.0;
    double witness_C = 0.0;        // max over t of the three suprema summed
    double gradient_sup_f = 0.0;
    double laplacian_sup_f = 0.0;
    bool gradient_nonincrease = true;  // sup_gradient_u <= gradient_sup_f + 10 spacing
};

DiagnosticsReport apriori_bound_report(const GridFunction& f, const SolverConfig& config,
                                       const std::vector<Dyadic>& times);

// One `name=value` per line, 17 significant digits.
void write_report(std::ostream& out, const DiagnosticsReport& report);

/// sup over interior nodes of (u(t + d) - u(t)) / d - 1/2 Laplacian u(t) - H(grad u(t))
/// at each sampled t, with d = 2^-level.
std::vector<double> pde_residual_along_trajectory(const GridFunction& f, const SolverConfig& config,
                                                  const std::vector<Dyadic>& times);

}  // namespace vhj
