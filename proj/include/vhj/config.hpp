#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vhj/chernoff.hpp"
#include "vhj/dyadic.hpp"
#include "vhj/grid.hpp"
#include "vhj/hamiltonian.hpp"

namespace vhj {

enum class Command { solve, convergence, oracle_compare, properties, norms, report };

Command parse_command(const std::string& name);
std::string command_name(Command c);

/**
 * Settings for one CLI run. Every field has a key of the same name in the
 * flat `key=value` config file; `H`, `f`, `t` and `n` keep their short names.
 *
 *   H         zero | quadratic:c | power:a:q | sampled:path      (quadratic:1)
 *   f         gaussian-bump:s | log-bump | hat:w | indicator:a:b | file:path
 *   t         dyadic k/2^n                                       (1/2)
 *   n         single level for `solve`; unset runs the schedule
 */
struct RunConfig {
    Command command = Command::solve;
    int dim = 1;
    double half_width = 10.0;
    std::size_t intervals = 2048;
    std::string hamiltonian = "quadratic:1";
    std::string initial = "log-bump";
    Dyadic t{1, 1};
    std::optional<unsigned> level;
    unsigned min_level = 4;
    unsigned max_level = 8;
    double truncation = kDefaultTruncation;
    double cauchy_tol = 1e-4;
    double lambda_step = 0.02;
    int max_phases = 256;
    double R = 1.0;
    std::vector<Dyadic> times;  // report sample times; empty = k/8 up to t
    std::string out;            // empty = stdout
    std::string trace;          // optional trace CSV for `solve`

    GridSpec grid() const { return GridSpec(dim, half_width, intervals); }
    ChernoffOptions chernoff() const;
    SolverConfig solver() const;
};

using Settings = std::map<std::string, std::string>;

/// Reads `key=value` lines; blank lines and `#` comments are skipped.
Settings read_settings(std::istream& in);

/// Keys accepted in a config file and as `--key` flags.
const std::vector<std::string>& setting_keys();

/**
 * Builds a validated RunConfig: defaults, then `file` settings, then `flags`
 * (flags win). Unknown keys, malformed values and non-dyadic t are rejected.
 */
RunConfig parse_config(Command command, const Settings& file, const Settings& flags);

Hamiltonian make_hamiltonian(const std::string& spec, int dim);
GridFunction make_initial(const std::string& preset, const GridSpec& grid);

}  // namespace vhj
