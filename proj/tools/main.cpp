// vhj: command-line driver for the viscous Hamilton-Jacobi solver.
//
// Exit status: 0 success, 1 invalid input, 2 a checked property failed.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include "vhj/certify.hpp"
#include "vhj/chernoff.hpp"
#include "vhj/config.hpp"
#include "vhj/error.hpp"
#include "vhj/io.hpp"
#include "vhj/oracle.hpp"
#include "vhj/orlicz.hpp"
#include "vhj/regularity.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kViolation = 2;

const std::map<std::string, std::string>& option_help() {
    static const std::map<std::string, std::string> help = {
        {"dim", "grid dimension, 1 or 2 (default 1)"},
        {"half-width", "domain is [-X, X]^dim (default 10)"},
        {"intervals", "cells per axis, power of two >= 16 (default 2048)"},
        {"H", "zero | quadratic:c | power:a:q | sampled:path (default quadratic:1)"},
        {"f", "gaussian-bump:s | log-bump | hat:w | indicator:a:b | file:path (default log-bump)"},
        {"t", "dyadic time k/2^n (default 1/2)"},
        {"n", "single iteration level for solve"},
        {"min-level", "first level of the schedule (default 4)"},
        {"max-level", "last level of the schedule (default 8)"},
        {"truncation", "kernel window in multiples of sqrt(t), >= 6 (default 8)"},
        {"cauchy-tol", "stop when consecutive levels differ by less (default 1e-4)"},
        {"lambda-step", "target drift resolution (default 0.02)"},
        {"max-phases", "cap on kernel phases per grid step (default 256)"},
        {"R", "Orlicz parameter R >= 1 for norms (default 1)"},
        {"times", "comma-separated dyadic sample times for report"},
        {"out", "output file (default stdout)"},
        {"trace", "convergence trace CSV written by solve"},
    };
    return help;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty()) return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw vhj::ValidationError("cannot open output file '" + path + "'");
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

int run_solve(const vhj::RunConfig& c) {
    const vhj::GridFunction f = vhj::make_initial(c.initial, c.grid());
    const vhj::Hamiltonian h = vhj::make_hamiltonian(c.hamiltonian, c.dim);
    Output out(c.out);
    if (c.level) {
        vhj::write_csv(out.stream(), vhj::iterate(f, c.t, *c.level, h, c.chernoff()));
        return kOk;
    }
    const vhj::SolveResult r = vhj::solve(f, c.solver());
    vhj::write_csv(out.stream(), r.solution);
    if (!c.trace.empty()) {
        Output trace(c.trace);
        vhj::write_trace_csv(trace.stream(), r.trace);
    }
    if (!r.trace.converged) std::cerr << "vhj: level budget exhausted before the Cauchy tolerance was met\n";
    return kOk;
}

int run_convergence(const vhj::RunConfig& c, bool with_oracle) {
    const vhj::SolverConfig cfg = c.solver();
    const vhj::GridFunction f = vhj::make_initial(c.initial, c.grid());
    vhj::ReferenceSolution reference;
    if (with_oracle) {
        if (cfg.hamiltonian.kind() != vhj::Hamiltonian::Kind::quadratic) {
            throw vhj::ValidationError("oracle-compare needs a quadratic Hamiltonian");
        }
        const double coupling = cfg.hamiltonian.coefficient();
        const double trunc = c.truncation;
        reference = [coupling, trunc](const vhj::GridFunction& g, double t) {
            return vhj::exact_solution(g, t, coupling, trunc);
        };
    }
    const vhj::SolveResult r = vhj::solve(f, cfg, reference);
    Output out(c.out);
    vhj::write_trace_csv(out.stream(), r.trace);
    if (!r.trace.monotone_deltas) std::cerr << "vhj: successive level differences are not monotone\n";
    return kOk;
}

int run_properties(const vhj::RunConfig& c) {
    vhj::SuiteOptions opts;
    opts.t = c.t;
    opts.level = c.level.value_or(std::max(5u, c.t.min_level()));
    opts.chernoff = c.chernoff();
    const auto results = vhj::run_property_suite(c.grid(), vhj::make_hamiltonian(c.hamiltonian, c.dim), opts);
    Output out(c.out);
    vhj::write_property_report(out.stream(), results);
    for (const auto& r : results) {
        if (!r.passed()) return kViolation;
    }
    return kOk;
}

int run_norms(const vhj::RunConfig& c) {
    const vhj::GridFunction f = vhj::make_initial(c.initial, c.grid());
    const vhj::Hamiltonian h = vhj::make_hamiltonian(c.hamiltonian, c.dim);
    const vhj::YoungFunction young = vhj::YoungFunction::for_growth(h.growth_constant());
    const vhj::NormEquivalence ne = vhj::norm_equivalence_check(f, c.R, young);
    Output out(c.out);
    auto& os = out.stream();
    os << "b=" << vhj::format_double(young.b()) << '\n'
       << "R=" << vhj::format_double(c.R) << '\n'
       << "sup_norm=" << vhj::format_double(vhj::sup_norm(f)) << '\n'
       << "integral=" << vhj::format_double(vhj::integral(f)) << '\n'
       << "gradient_sup=" << vhj::format_double(vhj::discrete_gradient_sup(f)) << '\n'
       << "laplacian_sup=" << vhj::format_double(vhj::discrete_laplacian_sup(f)) << '\n'
       << "luxemburg_norm=" << vhj::format_double(ne.norm_1) << '\n'
       << "luxemburg_norm_R=" << vhj::format_double(ne.norm_R) << '\n'
       << "norm_equivalence=" << (ne.lhs_ok && ne.rhs_ok ? "true" : "false") << '\n';
    return ne.lhs_ok && ne.rhs_ok ? kOk : kViolation;
}

int run_report(vhj::RunConfig c) {
    if (c.level) c.max_level = *c.level;
    std::vector<vhj::Dyadic> times = c.times;
    if (times.empty()) {
        const std::uint64_t eighths = c.t.steps_at_level(std::max(3u, c.t.min_level()));
        const unsigned e = std::max(3u, c.t.min_level());
        for (std::uint64_t k = 0; k <= eighths; ++k) times.emplace_back(k, e);
    }
    const vhj::GridFunction f = vhj::make_initial(c.initial, c.grid());
    const vhj::DiagnosticsReport r = vhj::apriori_bound_report(f, c.solver(), times);
    Output out(c.out);
    vhj::write_report(out.stream(), r);
    return r.gradient_nonincrease ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chernoff-iteration solver for u_t = 1/2 Laplacian u + H(grad u)"};
    app.require_subcommand(1);
    std::map<std::string, std::string> values;
    std::string config_path;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"solve", "iterate to time t and write the field CSV"},
        {"convergence", "write the level-by-level convergence trace"},
        {"oracle-compare", "convergence trace against the Cole-Hopf solution (quadratic H)"},
        {"properties", "run the invariant suite; exit 2 on any violation"},
        {"norms", "sup, integral and Orlicz norms of the initial data"},
        {"report", "a-priori bound diagnostics along the trajectory"},
    };
    std::vector<CLI::App*> subs;
    for (const auto& [name, description] : commands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("--config", config_path, "flat key=value file; flags take precedence");
        for (const std::string& key : vhj::setting_keys()) sub->add_option("--" + key, values[key], option_help().at(key));
        subs.push_back(sub);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInvalid;
    }

    try {
        CLI::App* chosen = app.get_subcommands().front();
        vhj::Settings flags;
        for (const std::string& key : vhj::setting_keys()) {
            if (chosen->count("--" + key) > 0) flags[key] = values[key];
        }
        vhj::Settings file;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw vhj::ValidationError("cannot open config file '" + config_path + "'");
            file = vhj::read_settings(in);
        }
        const vhj::RunConfig c = vhj::parse_config(vhj::parse_command(chosen->get_name()), file, flags);
        switch (c.command) {
            case vhj::Command::solve: return run_solve(c);
            case vhj::Command::convergence: return run_convergence(c, false);
            case vhj::Command::oracle_compare: return run_convergence(c, true);
            case vhj::Command::properties: return run_properties(c);
            case vhj::Command::norms: return run_norms(c);
            case vhj::Command::report: return run_report(c);
        }
    } catch (const vhj::ValidationError& e) {
        std::cerr << "vhj: " << e.what() << '\n';
        return kInvalid;
    } catch (const vhj::ContractViolation& e) {
        std::cerr << "vhj: property violated: " << e.what() << '\n';
        return kViolation;
    } catch (const std::exception& e) {
        std::cerr << "vhj: " << e.what() << '\n';
        return kInvalid;
    }
    return kOk;
}
