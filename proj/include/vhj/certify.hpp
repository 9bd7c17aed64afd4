#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vhj/chernoff.hpp"

namespace vhj {

struct PropertyResult {
    std::string name;
    double defect;     // worst observed violation; <= tolerance passes
    double tolerance;
    bool passed() const { return defect <= tolerance; }
};

struct SuiteOptions {
    std::uint64_t seed = 20240601;
    int instances = 4;
    Dyadic t{1, 2};
    unsigned level = 5;
    ChernoffOptions chernoff;
};

/**
 * Structural invariants of every operator on random smooth data over `grid`:
 * conjugate table, I(t) 0 = 0, contraction, monotonicity, convexity,
 * domination by T(t), the T(t) semigroup inequality, Orlicz norm
 * equivalence, mollifier contraction, the tail and shift lemmas and, for a
 * quadratic H, the Cole-Hopf reference.
 */
std::vector<PropertyResult> run_property_suite(const GridSpec& grid, const Hamiltonian& h, const SuiteOptions& options = {});

// One `name defect tolerance PASS|FAIL` line per property.
void write_property_report(std::ostream& out, const std::vector<PropertyResult>& results);

}  // namespace vhj
