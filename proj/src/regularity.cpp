#include "vhj/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "vhj/error.hpp"
#include "vhj/io.hpp"

namespace vhj {

Trajectory solve_trajectory(const GridFunction& f, const Hamiltonian& h, const std::vector<Dyadic>& times,
                            unsigned level, const ChernoffOptions& options) {
    Trajectory traj;
    traj.level = level;
    const double dt = std::ldexp(1.0, -static_cast<int>(level));
    const ChernoffStep step(f.spec(), h, dt, sup_norm(f), options);
    GridFunction u = f;
    std::uint64_t done = 0;
    for (const Dyadic& t : times) {
        const std::uint64_t target = t.steps_at_level(level);
        if (!traj.times.empty() && target <= done) throw ValidationError("trajectory times must be strictly increasing");
        for (; done < target; ++done) u = step.apply(u);
        traj.times.push_back(t);
        traj.states.push_back(u);
    }
    return traj;
}

double lipschitz_consistency(const Trajectory& trajectory, double gamma) {
    double worst = -INFINITY;
    for (std::size_t i = 0; i < trajectory.states.size(); ++i) {
        for (std::size_t j = i + 1; j < trajectory.states.size(); ++j) {
            const double gap = trajectory.times[j].value() - trajectory.times[i].value();
            worst = std::max(worst, sup_norm(trajectory.states[j] - trajectory.states[i]) - gamma * gap);
        }
    }
    return worst;
}

namespace {

double pair_gamma(const Trajectory& traj) {
    double gamma = 0.0;
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        for (std::size_t j = i + 1; j < traj.states.size(); ++j) {
            const double gap = traj.times[j].value() - traj.times[i].value();
            gamma = std::max(gamma, sup_norm(traj.states[j] - traj.states[i]) / gap);
        }
    }
    return gamma;
}

}  // namespace

LipschitzEstimate time_lipschitz_estimate(const GridFunction& f, const SolverConfig& config,
                                          const std::vector<Dyadic>& times) {
    if (times.size() < 2) throw ValidationError("time_lipschitz_estimate needs at least two sample times");
    const Trajectory traj = solve_trajectory(f, config.hamiltonian, times, config.schedule.max_level, config.chernoff);
    return {pair_gamma(traj), discrete_gradient_sup(f), discrete_laplacian_sup(f)};
}

DiagnosticsReport apriori_bound_report(const GridFunction& f, const SolverConfig& config,
                                       const std::vector<Dyadic>& times) {
    if (times.empty()) throw ValidationError("apriori_bound_report needs sample times");
    const unsigned level = config.schedule.max_level;
    const Dyadic delta(1, level);
    // Each sample t is paired with t + delta for the forward difference.
    std::vector<Dyadic> all;
    for (const Dyadic& t : times) {
        all.push_back(t);
        all.push_back(t + delta);
    }
    std::sort(all.begin(), all.end(), [](const Dyadic& a, const Dyadic& b) { return a.value() < b.value(); });
    all.erase(std::unique(all.begin(), all.end()), all.end());
    const Trajectory traj = solve_trajectory(f, config.hamiltonian, all, level, config.chernoff);
    auto state_at = [&](const Dyadic& t) -> const GridFunction& {
        const auto it = std::find(traj.times.begin(), traj.times.end(), t);
        return traj.states[static_cast<std::size_t>(it - traj.times.begin())];
    };

    DiagnosticsReport r;
    r.level = level;
    r.spacing = f.spec().spacing();
    r.samples = times.size();
    r.gradient_sup_f = discrete_gradient_sup(f);
    r.laplacian_sup_f = discrete_laplacian_sup(f);
    for (const Dyadic& t : times) {
        const GridFunction& u = state_at(t);
        const double dtu = sup_norm(state_at(t + delta) - u) / delta.value();
        const double lap = discrete_laplacian_sup(u);
        const double grad = discrete_gradient_sup(u);
        r.horizon = std::max(r.horizon, t.value());
        r.sup_dt_u = std::max(r.sup_dt_u, dtu);
        r.sup_laplacian_u = std::max(r.sup_laplacian_u, lap);
        r.sup_gradient_u = std::max(r.sup_gradient_u, grad);
        r.witness_C = std::max(r.witness_C, dtu + lap + grad);
    }
    Trajectory sampled;
    sampled.level = level;
    for (const Dyadic& t : times) {
        sampled.times.push_back(t);
        sampled.states.push_back(state_at(t));
    }
    r.gamma_estimate = sampled.states.size() >= 2 ? pair_gamma(sampled) : 0.0;
    r.gradient_nonincrease = r.sup_gradient_u <= r.gradient_sup_f + 10.0 * r.spacing;
    return r;
}

void write_report(std::ostream& out, const DiagnosticsReport& r) {
    out << "level=" << r.level << '\n'
        << "spacing=" << format_double(r.spacing) << '\n'
        << "horizon=" << format_double(r.horizon) << '\n'
        << "samples=" << r.samples << '\n'
        << "gamma_estimate=" << format_double(r.gamma_estimate) << '\n'
        << "sup_dt_u=" << format_double(r.sup_dt_u) << '\n'
        << "sup_laplacian_u=" << format_double(r.sup_laplacian_u) << '\n'
        << "sup_gradient_u=" << format_double(r.sup_gradient_u) << '\n'
        << "witness_C=" << format_double(r.witness_C) << '\n'
        << "gradient_sup_f=" << format_double(r.gradient_sup_f) << '\n'
        << "laplacian_sup_f=" << format_double(r.laplacian_sup_f) << '\n'
        << "gradient_nonincrease=" << (r.gradient_nonincrease ? "true" : "false") << '\n';
}

std::vector<double> pde_residual_along_trajectory(const GridFunction& f, const SolverConfig& config,
                                                  const std::vector<Dyadic>& times) {
    const unsigned level = config.schedule.max_level;
    const Dyadic delta(1, level);
    std::vector<double> out;
    for (const Dyadic& t : times) {
        const Trajectory traj = solve_trajectory(f, config.hamiltonian, {t, t + delta}, level, config.chernoff);
        const GridFunction& u = traj.states[0];
        GridFunction q = traj.states[1] - u;
        q *= 1.0 / delta.value();
        const GridFunction a = discrete_generator(u, config.hamiltonian);
        double r = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) {
            if (u.spec().is_interior(k)) r = std::max(r, std::abs(q[k] - a[k]));
        }
        out.push_back(r);
    }
    return out;
}

}  // namespace vhj
