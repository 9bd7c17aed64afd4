#include "vhj/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>

#include "vhj/error.hpp"
#include "vhj/io.hpp"
#include "vhj/samples.hpp"

namespace vhj {

namespace {

std::string trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return std::string(s);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(std::string_view(s).substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

template <class T>
T parse_integer(const std::string& key, const std::string& v) {
    T out{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) throw ValidationError(key + ": not an integer: '" + v + "'");
    return out;
}

double parse_real(const std::string& key, const std::string& v) {
    try {
        return parse_double(v);
    } catch (const ValidationError&) {
        throw ValidationError(key + ": not a number: '" + v + "'");
    }
}

}  // namespace

Command parse_command(const std::string& name) {
    if (name == "solve") return Command::solve;
    if (name == "convergence") return Command::convergence;
    if (name == "oracle-compare") return Command::oracle_compare;
    if (name == "properties") return Command::properties;
    if (name == "norms") return Command::norms;
    if (name == "report") return Command::report;
    throw ValidationError("unknown command '" + name + "'");
}

std::string command_name(Command c) {
    switch (c) {
        case Command::solve: return "solve";
        case Command::convergence: return "convergence";
        case Command::oracle_compare: return "oracle-compare";
        case Command::properties: return "properties";
        case Command::norms: return "norms";
        case Command::report: return "report";
    }
    return "";
}

ChernoffOptions RunConfig::chernoff() const {
    ChernoffOptions o;
    o.truncation_multiple = truncation;
    o.lambda_step = lambda_step;
    o.max_phases = max_phases;
    return o;
}

SolverConfig RunConfig::solver() const {
    SolverConfig s{grid(), make_hamiltonian(hamiltonian, dim), DyadicSchedule{t, min_level, max_level}, chernoff(), cauchy_tol};
    return s;
}

Settings read_settings(std::istream& in) {
    Settings out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string s = trim(line);
        if (s.empty() || s.front() == '#') continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("config line " + std::to_string(number) + " is not key=value: '" + s + "'");
        }
        out[trim(std::string_view(s).substr(0, eq))] = trim(std::string_view(s).substr(eq + 1));
    }
    return out;
}

const std::vector<std::string>& setting_keys() {
    static const std::vector<std::string> keys = {
        "dim",        "half-width", "intervals",  "H",           "f",  "t",   "n",     "min-level", "max-level",
        "truncation", "cauchy-tol", "lambda-step", "max-phases", "R",  "times", "out", "trace"};
    return keys;
}

RunConfig parse_config(Command command, const Settings& file, const Settings& flags) {
    Settings merged = file;
    for (const auto& [k, v] : flags) merged[k] = v;
    const auto& keys = setting_keys();
    RunConfig c;
    c.command = command;
    for (const auto& [k, v] : merged) {
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw ValidationError("unknown config key '" + k + "'");
        if (k == "dim") c.dim = parse_integer<int>(k, v);
        else if (k == "half-width") c.half_width = parse_real(k, v);
        else if (k == "intervals") c.intervals = parse_integer<std::size_t>(k, v);
        else if (k == "H") c.hamiltonian = v;
        else if (k == "f") c.initial = v;
        else if (k == "t") c.t = Dyadic::parse(v);
        else if (k == "n") c.level = parse_integer<unsigned>(k, v);
        else if (k == "min-level") c.min_level = parse_integer<unsigned>(k, v);
        else if (k == "max-level") c.max_level = parse_integer<unsigned>(k, v);
        else if (k == "truncation") c.truncation = parse_real(k, v);
        else if (k == "cauchy-tol") c.cauchy_tol = parse_real(k, v);
        else if (k == "lambda-step") c.lambda_step = parse_real(k, v);
        else if (k == "max-phases") c.max_phases = parse_integer<int>(k, v);
        else if (k == "R") c.R = parse_real(k, v);
        else if (k == "out") c.out = v;
        else if (k == "trace") c.trace = v;
        else if (k == "times") {
            c.times.clear();
            for (const std::string& item : split(v, ',')) c.times.push_back(Dyadic::parse(item));
        }
    }

    // Validate everything a run would touch, so bad input fails before work starts.
    const GridSpec grid = c.grid();
    GaussKernel{0.0, c.truncation, c.dim}.validate();
    if (!(c.cauchy_tol > 0.0)) throw ValidationError("cauchy-tol must be positive");
    if (!(c.lambda_step > 0.0)) throw ValidationError("lambda-step must be positive");
    if (c.max_phases < 1) throw ValidationError("max-phases must be at least 1");
    if (!(c.R >= 1.0)) throw ValidationError("R must be >= 1");
    if (c.level && command == Command::solve) {
        c.t.steps_at_level(*c.level);
    } else {
        DyadicSchedule{c.t, c.min_level, c.max_level}.validate();
    }
    for (const Dyadic& s : c.times) s.steps_at_level(c.max_level);
    make_hamiltonian(c.hamiltonian, c.dim);
    make_initial(c.initial, grid);
    return c;
}

Hamiltonian make_hamiltonian(const std::string& spec, int dim) {
    const std::vector<std::string> parts = split(spec, ':');
    const std::string& kind = parts[0];
    auto arity = [&](std::size_t n) {
        if (parts.size() != n + 1) throw ValidationError("Hamiltonian '" + spec + "' expects " + std::to_string(n) + " parameter(s)");
    };
    if (kind == "zero") {
        arity(0);
        return Hamiltonian::zero(dim);
    }
    if (kind == "quadratic") {
        arity(1);
        return Hamiltonian::quadratic(parse_real("H", parts[1]), dim);
    }
    if (kind == "power") {
        arity(2);
        return Hamiltonian::power(parse_real("H", parts[1]), parse_real("H", parts[2]), dim);
    }
    if (kind == "sampled") {
        if (parts.size() < 2) throw ValidationError("sampled Hamiltonian needs a file path");
        if (dim != 1) throw ValidationError("sampled Hamiltonians are one-dimensional");
        const std::string path = spec.substr(spec.find(':') + 1);
        std::ifstream in(path);
        if (!in) throw ValidationError("cannot open Hamiltonian file '" + path + "'");
        return Hamiltonian::read_sampled_csv(in);
    }
    throw ValidationError("unknown Hamiltonian '" + spec + "'");
}

GridFunction make_initial(const std::string& preset, const GridSpec& grid) {
    const std::vector<std::string> parts = split(preset, ':');
    const std::string& kind = parts[0];
    auto arity = [&](std::size_t n) {
        if (parts.size() != n + 1) throw ValidationError("preset '" + preset + "' expects " + std::to_string(n) + " parameter(s)");
    };
    if (kind == "gaussian-bump") {
        arity(1);
        return gaussian_bump(grid, parse_real("f", parts[1]));
    }
    if (kind == "log-bump") {
        arity(0);
        return log_bump(grid);
    }
    if (kind == "hat") {
        arity(1);
        return hat(grid, parse_real("f", parts[1]));
    }
    if (kind == "indicator") {
        arity(2);
        return indicator(grid, parse_real("f", parts[1]), parse_real("f", parts[2]));
    }
    if (kind == "file") {
        if (parts.size() < 2) throw ValidationError("file preset needs a path");
        const std::string path = preset.substr(preset.find(':') + 1);
        std::ifstream in(path);
        if (!in) throw ValidationError("cannot open initial data file '" + path + "'");
        GridFunction f = read_csv(in);
        if (!(f.spec() == grid)) throw ValidationError("initial data file does not match the configured grid");
        return f;
    }
    throw ValidationError("unknown initial-data preset '" + preset + "'");
}

}  // namespace vhj
