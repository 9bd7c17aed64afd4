#include "vhj/chernoff.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>

#include "vhj/error.hpp"
#include "vhj/io.hpp"
#include "vhj/parallel.hpp"

namespace vhj {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Splits an offset measured in grid spacings into an integer node shift and a
// kernel phase in [0, 1).
void split_offset(double u, std::ptrdiff_t& shift, double& phase) {
    const double fl = std::floor(u);
    shift = static_cast<std::ptrdiff_t>(fl);
    phase = u - fl;
    if (phase >= 1.0) {
        ++shift;
        phase = 0.0;
    }
}

}  // namespace

ChernoffStep::ChernoffStep(const GridSpec& grid, const Hamiltonian& h, double dt, double sup_bound,
                           const ChernoffOptions& options)
    : grid_(grid), dt_(dt), sup_bound_(sup_bound), options_(options) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("one_step needs t > 0");
    if (!(sup_bound >= 0.0) || !std::isfinite(sup_bound)) throw ValidationError("sup bound must be finite and nonnegative");
    if (h.dim() != grid.dim()) throw ValidationError("Hamiltonian and grid dimensions differ");
    if (!(options.lambda_step > 0.0)) throw ValidationError("lambda_step must be positive");
    if (options.max_phases < 1) throw ValidationError("max_phases must be at least 1");
    if (!(options.lambda_window >= 0.0)) throw ValidationError("lambda_window must be nonnegative");
    GaussKernel{dt, options.truncation_multiple, grid.dim()}.validate();

    const double spacing = grid.spacing();
    const double unit = spacing / dt;  // drift of a one-node shift
    const double ratio = std::ceil(unit / options.lambda_step);
    phases_ = static_cast<int>(std::clamp(ratio, 1.0, static_cast<double>(options.max_phases)));

    const double cutoff = 2.0 * sup_bound + 1.0;
    const double k = h.growth_constant();
    const Point lambda0 = h.conjugate_minimizer();
    if (options.lambda_window > 0.0) {
        window_ = options.lambda_window;
    } else if (k > 0.0) {
        // L(lambda) >= |lambda|^2 / (16 K) once |lambda| >= 2 K.
        window_ = std::max(2.0 * k, std::sqrt(16.0 * k * cutoff / dt)) + norm(lambda0);
    } else {
        window_ = 0.0;
    }

    const int dim = grid.dim();
    const int pp = phases_;
    std::vector<double> phase_of(static_cast<std::size_t>(pp * dim));
    std::vector<std::ptrdiff_t> base_of(static_cast<std::size_t>(pp * dim));
    for (int axis = 0; axis < dim; ++axis) {
        const double origin = lambda0[static_cast<std::size_t>(axis)] / unit;
        for (int p = 0; p < pp; ++p) {
            std::ptrdiff_t s = 0;
            double theta = 0.0;
            split_offset(origin + static_cast<double>(p) / pp, s, theta);
            base_of[static_cast<std::size_t>(axis * pp + p)] = s;
            phase_of[static_cast<std::size_t>(axis * pp + p)] = theta;
        }
    }
    phase_weights_.reserve(static_cast<std::size_t>(pp * dim));
    for (int axis = 0; axis < dim; ++axis) {
        for (int p = 0; p < pp; ++p) {
            phase_weights_.push_back(
                lattice_weights(dt, spacing, phase_of[static_cast<std::size_t>(axis * pp + p)], options.truncation_multiple));
        }
    }

    // Enumerate lambda = lambda0 + (m + p / P) * unit per axis inside the window.
    const auto reach = static_cast<std::ptrdiff_t>(std::ceil(window_ / unit)) + 1;
    std::vector<Point> nodes;
    struct Raw {
        int px, py;
        std::ptrdiff_t mx, my;
    };
    std::vector<Raw> raw;
    auto offset = [&](std::ptrdiff_t m, int p) { return (static_cast<double>(m) + static_cast<double>(p) / pp) * unit; };
    const int py_count = dim == 2 ? pp : 1;
    const std::ptrdiff_t my_reach = dim == 2 ? reach : 0;
    for (int px = 0; px < pp; ++px) {
        for (int py = 0; py < py_count; ++py) {
            for (std::ptrdiff_t mx = -reach; mx <= reach; ++mx) {
                for (std::ptrdiff_t my = -my_reach; my <= my_reach; ++my) {
                    const Point d{offset(mx, px), dim == 2 ? offset(my, py) : 0.0};
                    if (norm(d) > window_ && !(mx == 0 && my == 0 && px == 0 && py == 0)) continue;
                    nodes.push_back({lambda0[0] + d[0], lambda0[1] + d[1]});
                    raw.push_back({px, py, mx, my});
                }
            }
        }
    }
    table_ = tabulate_conjugate(h, nodes);
    check_conjugate_invariants(h, table_);

    for (std::size_t c = 0; c < raw.size(); ++c) {
        const double l = table_.values[c];
        if (!std::isfinite(l)) continue;
        const double penalty = dt * l;
        if (penalty > cutoff) continue;
        const Raw& r = raw[c];
        const std::ptrdiff_t sx = base_of[static_cast<std::size_t>(r.px)] + r.mx;
        const std::ptrdiff_t sy = dim == 2 ? base_of[static_cast<std::size_t>(pp + r.py)] + r.my : 0;
        candidates_.push_back({r.px, r.py, sx, sy, penalty});
    }
    if (candidates_.empty()) throw ContractViolation("no admissible drift: the conjugate is not finite on the drift lattice");
    std::stable_sort(candidates_.begin(), candidates_.end(), [](const Candidate& a, const Candidate& b) {
        return a.phase_x != b.phase_x ? a.phase_x < b.phase_x : a.phase_y < b.phase_y;
    });
    for (const Candidate& c : candidates_) {
        pad_ = std::max({pad_, std::abs(c.shift_x), std::abs(c.shift_y)});
    }
}

std::size_t ChernoffStep::candidate_count(double sup_f) const {
    const double cutoff = 2.0 * sup_f + 1.0;
    return static_cast<std::size_t>(
        std::count_if(candidates_.begin(), candidates_.end(), [&](const Candidate& c) { return c.penalty <= cutoff; }));
}

GridFunction ChernoffStep::apply(const GridFunction& f) const {
    if (!(f.spec() == grid_)) throw ValidationError("grid function does not live on the step's grid");
    const double s = sup_norm(f);
    if (s > sup_bound_ * (1.0 + 1e-12) + 1e-300) {
        throw ValidationError("input exceeds the sup bound the step was built for");
    }
    const double cutoff = 2.0 * s + 1.0;
    return grid_.dim() == 1 ? apply_1d(f, cutoff) : apply_2d(f, cutoff);
}

GridFunction ChernoffStep::apply_1d(const GridFunction& f, double cutoff) const {
    const std::size_t n = grid_.points_per_axis();
    const std::size_t padded = n + 2 * static_cast<std::size_t>(pad_);
    const auto in = f.values();

    // Index ranges of candidates per phase.
    std::vector<std::size_t> first(static_cast<std::size_t>(phases_) + 1, candidates_.size());
    for (std::size_t c = candidates_.size(); c-- > 0;) first[static_cast<std::size_t>(candidates_[c].phase_x)] = c;
    for (std::size_t p = static_cast<std::size_t>(phases_); p-- > 0;) first[p] = std::min(first[p], first[p + 1]);

    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(worker_count(), static_cast<std::size_t>(phases_)));
    std::vector<std::vector<double>> best(workers, std::vector<double>(n, kNegInf));
    parallel_for(static_cast<std::size_t>(phases_), [&](std::size_t b, std::size_t e, std::size_t w) {
        std::vector<double>& acc = best[w];
        std::vector<double> conv(padded);
        for (std::size_t p = b; p < e; ++p) {
            if (first[p] == first[p + 1]) continue;
            correlate_line(in.data(), n, 1, phase_weights_[p], pad_, conv.data(), 1);
            for (std::size_t c = first[p]; c < first[p + 1]; ++c) {
                const Candidate& cand = candidates_[c];
                if (cand.penalty > cutoff) continue;
                const double* src = conv.data() + (cand.shift_x + pad_);
                for (std::size_t i = 0; i < n; ++i) acc[i] = std::max(acc[i], src[i] - cand.penalty);
            }
        }
    });
    std::vector<double> out = std::move(best[0]);
    for (std::size_t w = 1; w < workers; ++w) {
        for (std::size_t i = 0; i < n; ++i) out[i] = std::max(out[i], best[w][i]);
    }
    return GridFunction(grid_, std::move(out));
}

GridFunction ChernoffStep::apply_2d(const GridFunction& f, double cutoff) const {
    const std::size_t n = grid_.points_per_axis();
    const std::size_t m = n + 2 * static_cast<std::size_t>(pad_);
    const auto in = f.values();
    const std::size_t pp = static_cast<std::size_t>(phases_);
    const std::size_t pairs = pp * pp;

    std::vector<std::size_t> first(pairs + 1, candidates_.size());
    for (std::size_t c = candidates_.size(); c-- > 0;) {
        first[static_cast<std::size_t>(candidates_[c].phase_x) * pp + static_cast<std::size_t>(candidates_[c].phase_y)] = c;
    }
    for (std::size_t q = pairs; q-- > 0;) first[q] = std::min(first[q], first[q + 1]);

    const std::size_t workers = std::max<std::size_t>(1, std::min(worker_count(), pairs));
    std::vector<std::vector<double>> best(workers, std::vector<double>(n * n, kNegInf));
    parallel_for(pairs, [&](std::size_t b, std::size_t e, std::size_t w) {
        std::vector<double>& acc = best[w];
        std::vector<double> rows(n * m);
        std::vector<double> conv(m * m);
        for (std::size_t q = b; q < e; ++q) {
            if (first[q] == first[q + 1]) continue;
            const LatticeWeights& wx = phase_weights_[q / pp];
            const LatticeWeights& wy = phase_weights_[pp + q % pp];
            for (std::size_t i = 0; i < n; ++i) correlate_line(in.data() + i * n, n, 1, wy, pad_, rows.data() + i * m, 1);
            for (std::size_t j = 0; j < m; ++j) correlate_line(rows.data() + j, n, m, wx, pad_, conv.data() + j, m);
            for (std::size_t c = first[q]; c < first[q + 1]; ++c) {
                const Candidate& cand = candidates_[c];
                if (cand.penalty > cutoff) continue;
                for (std::size_t i = 0; i < n; ++i) {
                    const double* src = conv.data() + static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + cand.shift_x + pad_) * m +
                                        static_cast<std::size_t>(cand.shift_y + pad_);
                    double* dst = acc.data() + i * n;
                    for (std::size_t j = 0; j < n; ++j) dst[j] = std::max(dst[j], src[j] - cand.penalty);
                }
            }
        }
    });
    std::vector<double> out = std::move(best[0]);
    for (std::size_t w = 1; w < workers; ++w) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], best[w][i]);
    }
    return GridFunction(grid_, std::move(out));
}

GridFunction one_step(const GridFunction& f, double dt, const Hamiltonian& h, const ChernoffOptions& options) {
    return ChernoffStep(f.spec(), h, dt, sup_norm(f), options).apply(f);
}

GridFunction iterate(const GridFunction& f, const Dyadic& t, unsigned level, const Hamiltonian& h,
                     const ChernoffOptions& options) {
    const std::uint64_t steps = t.steps_at_level(level);
    if (steps == 0) return f;
    const double dt = std::ldexp(1.0, -static_cast<int>(level));
    // Every iterate stays inside the initial sup ball: I(dt) 0 = 0 and I(dt) contracts.
    const ChernoffStep step(f.spec(), h, dt, sup_norm(f), options);
    GridFunction u = f;
    for (std::uint64_t k = 0; k < steps; ++k) u = step.apply(u);
    return u;
}

void DyadicSchedule::validate() const {
    if (max_level < min_level) throw ValidationError("max_level must be at least min_level");
    if (max_level > 30) throw ValidationError("levels above 30 are not supported");
    if (min_level < t.min_level()) {
        throw ValidationError("min_level " + std::to_string(min_level) + " too coarse for t=" + t.to_string());
    }
}

double DyadicSchedule::step(unsigned level) const { return std::ldexp(1.0, -static_cast<int>(level)); }

SolveResult solve(const GridFunction& f, const SolverConfig& config, const ReferenceSolution& reference) {
    config.schedule.validate();
    if (!(config.cauchy_tol > 0.0)) throw ValidationError("cauchy_tol must be positive");
    if (!(f.spec() == config.grid)) throw ValidationError("initial data does not live on the configured grid");
    if (sup_norm(f) == 0.0) return {f, ConvergenceTrace{{}, true, true}};

    const std::optional<GridFunction> ref =
        reference ? std::optional<GridFunction>(reference(f, config.schedule.t.value())) : std::nullopt;
    ConvergenceTrace trace;
    std::optional<GridFunction> previous;
    for (unsigned level = config.schedule.min_level; level <= config.schedule.max_level; ++level) {
        const auto start = std::chrono::steady_clock::now();
        GridFunction u = iterate(f, config.schedule.t, level, config.hamiltonian, config.chernoff);
        const auto stop = std::chrono::steady_clock::now();
        TraceRow row;
        row.level = level;
        row.steps = config.schedule.t.steps_at_level(level);
        row.dt = config.schedule.step(level);
        row.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        if (previous) {
            row.delta_sup = sup_norm(u - *previous);
            if (!trace.rows.empty() && trace.rows.back().delta_sup && *row.delta_sup > *trace.rows.back().delta_sup) {
                trace.monotone_deltas = false;
            }
        }
        if (ref) row.oracle_sup_error = sup_norm(u - *ref);
        trace.rows.push_back(row);
        previous = std::move(u);
        if (row.delta_sup && *row.delta_sup < config.cauchy_tol) {
            trace.converged = true;
            break;
        }
    }
    return {std::move(*previous), std::move(trace)};
}

void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace) {
    out << "level,steps,dt,delta_sup,oracle_sup_error,runtime_ms\n";
    for (const TraceRow& r : trace.rows) {
        out << r.level << ',' << r.steps << ',' << format_double(r.dt) << ','
            << (r.delta_sup ? format_double(*r.delta_sup) : "") << ','
            << (r.oracle_sup_error ? format_double(*r.oracle_sup_error) : "") << ',' << format_double(r.runtime_ms)
            << '\n';
    }
}

GridFunction generator_quotient(const GridFunction& f, double dt, const Hamiltonian& h, const ChernoffOptions& options) {
    GridFunction q = one_step(f, dt, h, options) - f;
    q *= 1.0 / dt;
    return q;
}

GridFunction discrete_generator(const GridFunction& f, const Hamiltonian& h) {
    const std::vector<Point> grad = discrete_gradient(f);
    const std::vector<double> lap = discrete_laplacian(f);
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (f.spec().is_interior(k)) out[k] = 0.5 * lap[k] + h(grad[k]);
    }
    return GridFunction(f.spec(), std::move(out));
}

double generator_residual(const GridFunction& f, double dt, const Hamiltonian& h, const ChernoffOptions& options) {
    const GridFunction q = generator_quotient(f, dt, h, options);
    const GridFunction a = discrete_generator(f, h);
    double r = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (f.spec().is_interior(k)) r = std::max(r, std::abs(q[k] - a[k]));
    }
    return r;
}

}  // namespace vhj
