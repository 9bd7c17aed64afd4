#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "vhj/dyadic.hpp"
#include "vhj/grid.hpp"
#include "vhj/hamiltonian.hpp"
#include "vhj/kernel.hpp"

namespace vhj {

struct ChernoffOptions {
    double truncation_multiple = kDefaultTruncation;
    // Target resolution of the drift lattice. Each axis step h is split into
    // P = ceil(h / (dt * lambda_step)) kernel phases, capped at max_phases;
    // max_phases = 1 restricts drifts to whole-node shifts lambda * dt in h Z.
    double lambda_step = 0.02;
    int max_phases = 256;
    // Drift window |lambda - lambda_0|; 0 derives it from the coercivity of L.
    double lambda_window = 0.0;
};

/**
 * The one-step operator
 *
 *   (I(dt) f)(x) = max_lambda  E[f(x + W_dt + lambda dt)] - dt L(lambda)
 *
 * over the drift lattice lambda = lambda_0 + (m + p/P) h / dt. Each
 * expectation is a renormalized Gaussian quadrature on the grid, so every
 * candidate is a positive, mass-one linear map of f minus a constant: the
 * operator is monotone, convex, a sup-norm contraction and maps 0 to 0.
 * Candidates with dt L(lambda) > 2 sup|f| + 1 are skipped; they cannot
 * attain the maximum.
 */
class ChernoffStep {
public:
    // `sup_bound` bounds sup|f| of every input passed to apply().
    ChernoffStep(const GridSpec& grid, const Hamiltonian& h, double dt, double sup_bound,
                 const ChernoffOptions& options = {});

    GridFunction apply(const GridFunction& f) const;

    double dt() const { return dt_; }
    int phases() const { return phases_; }
    double lambda_window() const { return window_; }
    const ConjugateTable& table() const { return table_; }
    std::size_t candidate_count(double sup_f) const;

private:
    struct Candidate {
        int phase_x, phase_y;
        std::ptrdiff_t shift_x, shift_y;
        double penalty;  // dt * L(lambda)
    };

    GridFunction apply_1d(const GridFunction& f, double cutoff) const;
    GridFunction apply_2d(const GridFunction& f, double cutoff) const;

    GridSpec grid_;
    double dt_;
    double sup_bound_;
    int phases_;
    double window_;
    ChernoffOptions options_;
    ConjugateTable table_;
    std::vector<Candidate> candidates_;  // sorted by (phase_x, phase_y)
    std::vector<LatticeWeights> phase_weights_;
    std::ptrdiff_t pad_ = 0;
};

GridFunction one_step(const GridFunction& f, double dt, const Hamiltonian& h, const ChernoffOptions& options = {});

/// I(2^-level)^(2^level t) f.
GridFunction iterate(const GridFunction& f, const Dyadic& t, unsigned level, const Hamiltonian& h,
                     const ChernoffOptions& options = {});

struct DyadicSchedule {
    Dyadic t;
    unsigned min_level = 4;
    unsigned max_level = 8;

    void validate() const;
    double step(unsigned level) const;
};

struct SolverConfig {
    GridSpec grid{1, 10.0, 2048};
    Hamiltonian hamiltonian = Hamiltonian::quadratic(1.0);
    DyadicSchedule schedule{Dyadic(1, 1), 4, 8};
    ChernoffOptions chernoff;
    double cauchy_tol = 1e-4;
};

struct TraceRow {
    unsigned level = 0;
    std::uint64_t steps = 0;
    double dt = 0.0;
    std::optional<double> delta_sup;         // sup distance to the previous level
    std::optional<double> oracle_sup_error;  // sup distance to a reference solution
    double runtime_ms = 0.0;
};

struct ConvergenceTrace {
    std::vector<TraceRow> rows;
    bool converged = false;        // some delta fell below cauchy_tol
    bool monotone_deltas = true;   // deltas never increased
};

struct SolveResult {
    GridFunction solution;
    ConvergenceTrace trace;
};

using ReferenceSolution = std::function<GridFunction(const GridFunction& f, double t)>;

/**
 * Iterates levels min_level, min_level + 1, ... until the sup distance between
 * consecutive levels drops below cauchy_tol or max_level is reached. Returns
 * the last iterate and the per-level trace; convergence is reported, never
 * assumed.
 */
SolveResult solve(const GridFunction& f, const SolverConfig& config, const ReferenceSolution& reference = {});

// CSV `level,steps,dt,delta_sup,oracle_sup_error,runtime_ms`.
void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace);

/// (I(dt) f - f) / dt at every node.
GridFunction generator_quotient(const GridFunction& f, double dt, const Hamiltonian& h, const ChernoffOptions& options = {});

/// 1/2 Laplacian + H(gradient) from central differences; zero on the boundary.
GridFunction discrete_generator(const GridFunction& f, const Hamiltonian& h);

/// Sup over interior nodes of |generator_quotient - discrete_generator|.
double generator_residual(const GridFunction& f, double dt, const Hamiltonian& h, const ChernoffOptions& options = {});

}  // namespace vhj
