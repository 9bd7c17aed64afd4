#include "vhj/certify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "vhj/dominating.hpp"
#include "vhj/error.hpp"
#include "vhj/io.hpp"
#include "vhj/kernel.hpp"
#include "vhj/oracle.hpp"
#include "vhj/orlicz.hpp"
#include "vhj/samples.hpp"

namespace vhj {

namespace {

// max_k (a_k - b_k)
double excess(const GridFunction& a, const GridFunction& b) {
    double m = -INFINITY;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, a[k] - b[k]);
    return m;
}

class Tracker {
public:
    explicit Tracker(std::vector<PropertyResult>& out) : out_(out) {}
    void record(const std::string& name, double defect, double tolerance) {
        for (PropertyResult& r : out_) {
            if (r.name == name) {
                r.defect = std::max(r.defect, defect);
                return;
            }
        }
        out_.push_back({name, defect, tolerance});
    }

private:
    std::vector<PropertyResult>& out_;
};

}  // namespace

std::vector<PropertyResult> run_property_suite(const GridSpec& grid, const Hamiltonian& h, const SuiteOptions& options) {
    if (h.dim() != grid.dim()) throw ValidationError("Hamiltonian and grid dimensions differ");
    std::vector<PropertyResult> results;
    Tracker track(results);
    BumpSampler sampler(options.seed);
    const double dt = std::ldexp(1.0, -static_cast<int>(options.level));
    const double t = options.t.value();
    const DominatingParams params = DominatingParams::from_growth(h.growth_constant());
    const YoungFunction young = params.young;

    {
        const double box = 4.0 * (h.growth_constant() + 1.0);
        double defect = 0.0;
        try {
            check_conjugate_invariants(h, build_conjugate_table(h, box, 257));
        } catch (const ContractViolation&) {
            defect = INFINITY;
        }
        track.record("conjugate_table_invariants", defect, 0.0);
    }
    track.record("one_step_zero", sup_norm(one_step(GridFunction::zeros(grid), dt, h, options.chernoff)), 0.0);

    for (int i = 0; i < options.instances; ++i) {
        const GridFunction f = sampler.gaussian(grid, true);
        const GridFunction g = sampler.gaussian(grid, true);
        const GridFunction up = f + sampler.gaussian(grid, false);
        const double alpha = sampler.uniform(0.0, 1.0);
        const GridFunction mix = alpha * f + (1.0 - alpha) * g;

        const double bound = std::max({sup_norm(f), sup_norm(g), sup_norm(up), sup_norm(mix)});
        const ChernoffStep step(grid, h, dt, bound, options.chernoff);
        const GridFunction If = step.apply(f);
        const GridFunction Ig = step.apply(g);
        track.record("one_step_contraction", sup_norm(If - Ig) - sup_norm(f - g), 1e-12);
        track.record("one_step_monotone", excess(If, step.apply(up)), 0.0);
        track.record("one_step_convexity", excess(step.apply(mix), alpha * If + (1.0 - alpha) * Ig), 1e-12);
        track.record("one_step_gradient_nonincrease",
                     discrete_gradient_sup(If) - discrete_gradient_sup(f) - 10.0 * grid.spacing(), 0.0);

        const GridFunction Sf = iterate(f, options.t, options.level, h, options.chernoff);
        const GridFunction Sg = iterate(g, options.t, options.level, h, options.chernoff);
        track.record("iterate_contraction", sup_norm(Sf - Sg) - sup_norm(f - g), 1e-12);

        const GridFunction Hf = heat_step(f, t);
        track.record("heat_contraction", sup_norm(Hf - heat_step(g, t)) - sup_norm(f - g), 1e-12);
        track.record("heat_monotone", excess(Hf, heat_step(up, t)), 0.0);

        const GridFunction Tf = t_op(f.abs(), t, params);
        double dom = -INFINITY;
        for (std::size_t k = 0; k < f.size(); ++k) dom = std::max(dom, std::abs(Sf[k]) - Tf[k]);
        track.record("domination", dom, 1e-6);
        track.record("t_op_identity_at_zero", sup_norm(t_op(f.abs(), 0.0, params) - f.abs()), 0.0);
        track.record("t_op_semigroup", semigroup_sub_check(f.abs(), 0.5 * t, 0.5 * t, params), 1e-5);

        const GridFunction c = sampler.compact(grid, true);
        for (double R : {2.0, 10.0}) {
            const NormEquivalence ne = norm_equivalence_check(c, R, young);
            track.record("norm_equivalence", (ne.lhs_ok && ne.rhs_ok) ? 0.0 : INFINITY, 0.0);
        }
        const MollifyCheck mc = mollify_contract_check(c, 4.0 * grid.spacing() + 0.05 * grid.half_width(), 1.0, young);
        track.record("mollifier_contraction", mc.lhs - mc.rhs, 1e-8);

        Point lambda{sampler.uniform(-2.0, 2.0), grid.dim() == 2 ? sampler.uniform(-2.0, 2.0) : 0.0};
        const HolderShift hs = holder_shift_check(f, {0.0, 0.0}, lambda, t, sampler.uniform(1.2, 4.0));
        track.record("holder_shift", hs.lhs - hs.rhs, 1e-8);

        const double cc = sampler.uniform(1.0, 3.0);
        const DiscreteDistribution x =
            DiscreteDistribution::uniform({sampler.uniform(0.0, 2.0), sampler.uniform(0.0, 2.0), sampler.uniform(0.0, 2.0)});
        const NormPair sc = scaling_corollary_check(x, cc, young);
        track.record("scaling_corollary", sc.lhs - sc.rhs, 1e-8);

        if (h.kind() == Hamiltonian::Kind::quadratic) {
            const double coupling = h.coefficient();
            const GridFunction Of = exact_solution(f, t, coupling);
            track.record("oracle_monotone", excess(Of, exact_solution(up, t, coupling)), 0.0);
            track.record("oracle_dominates_heat", excess(Hf, Of), 1e-10);
        }
    }

    double tail = -INFINITY;
    for (int d : {1, 2}) {
        for (double r : {8.0, 10.0, 12.0, 16.0}) {
            for (double s : {0.01, 0.05, 0.1}) tail = std::max(tail, brownian_tail(r, s, d) - s * std::exp(-r / s));
        }
    }
    track.record("brownian_tail_lemma", tail, 0.0);
    return results;
}

void write_property_report(std::ostream& out, const std::vector<PropertyResult>& results) {
    for (const PropertyResult& r : results) {
        out << r.name << ' ' << format_double(r.defect) << ' ' << format_double(r.tolerance) << ' '
            << (r.passed() ? "PASS" : "FAIL") << '\n';
    }
}

}  // namespace vhj
