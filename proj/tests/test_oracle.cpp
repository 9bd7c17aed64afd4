#include <doctest.h>

#include <cmath>

#include "support/reference.hpp"
#include "vhj/error.hpp"
#include "vhj/kernel.hpp"
#include "vhj/oracle.hpp"
#include "vhj/samples.hpp"

using namespace vhj;

namespace {
const GridSpec kGrid(1, 10.0, 2048);
}

TEST_CASE("exact_solution examples") {
    CHECK(sup_norm(exact_solution(GridFunction::zeros(kGrid), 0.5)) == 0.0);
    const GridFunction bump = gaussian_bump(kGrid, 1.0);
    CHECK(sup_norm(exact_solution(bump, std::ldexp(1.0, -12)) - bump) <= 1e-2);
    const GridFunction lb = log_bump(kGrid);
    const double u0 = exact_solution(lb, 1.0)[kGrid.origin_index()];
    CHECK(ref::frozen::cole_hopf_log_bump == doctest::Approx(std::log(1 + 1 / std::sqrt(2.0))).epsilon(1e-15));
    CHECK(std::fabs(u0 - ref::frozen::cole_hopf_log_bump) <= 1e-5);
    CHECK_THROWS_AS(exact_solution(lb, -1.0), ValidationError);
}

TEST_CASE("coupling c solves the scaled equation") {
    // (1/c) log E e^(c f) with f = log(1 + e^(-x^2/2)) / c equals the c = 1 value / c.
    const GridFunction lb = log_bump(kGrid);
    const GridFunction u1 = exact_solution(lb, 0.5, 1.0);
    const GridFunction u2 = exact_solution(0.5 * lb, 0.5, 2.0);
    CHECK(sup_norm(0.5 * u1 - u2) <= 1e-14);
}

TEST_CASE("oracle dominates the heat flow") {
    BumpSampler s(9);
    for (int i = 0; i < 5; ++i) {
        const GridFunction f = s.gaussian(kGrid, true, 3.0);
        const GridFunction u = exact_solution(f, 0.25);
        const GridFunction h = heat_step(f, 0.25);
        for (std::size_t k = 0; k < f.size(); k += 7) CHECK(u[k] >= h[k] - 1e-14);
    }
}

TEST_CASE("oracle_semigroup_defect examples") {
    CHECK(oracle_semigroup_defect(GridFunction::zeros(kGrid), 0.25, 0.25) <= 1e-12);
    CHECK(oracle_semigroup_defect(gaussian_bump(kGrid, 1.0), 0.25, 0.25) <= 1e-5);
    CHECK(oracle_semigroup_defect(log_bump(kGrid), 0.125, 0.375) <= 1e-5);
}

TEST_CASE("oracle is monotone and convex in f") {
    BumpSampler s(21);
    for (int i = 0; i < 5; ++i) {
        const GridFunction f = s.gaussian(kGrid, true, 2.0);
        const GridFunction g = s.gaussian(kGrid, true, 2.0);
        const GridFunction up = f + s.gaussian(kGrid, false);
        const double a = s.uniform(0.0, 1.0);
        const GridFunction uf = exact_solution(f, 0.5), ug = exact_solution(g, 0.5);
        const GridFunction uu = exact_solution(up, 0.5);
        const GridFunction mix = exact_solution(a * f + (1 - a) * g, 0.5);
        for (std::size_t k = 0; k < f.size(); ++k) {
            CHECK(uf[k] <= uu[k]);
            CHECK(mix[k] <= a * uf[k] + (1 - a) * ug[k] + 1e-10);
        }
    }
}

TEST_CASE("large data stays finite") {
    const GridFunction big = gaussian_bump(kGrid, 1.0, {0.0, 0.0}, 600.0);
    const GridFunction u = exact_solution(big, 0.5);
    for (std::size_t k = 0; k < u.size(); k += 97) CHECK(std::isfinite(u[k]));
    CHECK(u[kGrid.origin_index()] <= 600.0);
}
