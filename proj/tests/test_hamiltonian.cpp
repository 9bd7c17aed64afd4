#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "support/reference.hpp"
#include "vhj/error.hpp"
#include "vhj/hamiltonian.hpp"

using namespace vhj;

namespace {

// p^2/2 + |p| sampled on [-20, 20]; piecewise linear between nodes.
Hamiltonian kinked() {
    std::vector<double> p, v;
    for (int i = -400; i <= 400; ++i) {
        const double x = i * 0.05;
        p.push_back(x);
        v.push_back(0.5 * x * x + std::fabs(x));
    }
    return Hamiltonian::sampled(p, v);
}

}  // namespace

TEST_CASE("evaluation examples") {
    CHECK(Hamiltonian::quadratic(1.0)({0.0, 0.0}) == 0.0);
    CHECK(Hamiltonian::quadratic(1.0)({2.0, 0.0}) == 2.0);
    CHECK(Hamiltonian::power(1.0, 1.0, 2)({3.0, 4.0}) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(Hamiltonian::zero(2)({3.0, 4.0}) == 0.0);
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(Hamiltonian::quadratic(0.0), ValidationError);
    CHECK_THROWS_AS(Hamiltonian::power(1.0, 2.5), ValidationError);
    CHECK_THROWS_AS(Hamiltonian::power(1.0, 0.5), ValidationError);
    CHECK_THROWS_AS(Hamiltonian::sampled({-1.0, 0.0, 1.0}, {-1.0, 0.0, -1.0}), ValidationError);  // concave
    CHECK_THROWS_AS(Hamiltonian::sampled({-1.0, 0.0, 1.0}, {1.0, 0.5, 1.0}), ValidationError);   // H(0) != 0
    CHECK_THROWS_AS(Hamiltonian::sampled({1.0, 2.0}, {0.0, 1.0}), ValidationError);              // misses 0
    CHECK_THROWS_AS(Hamiltonian::quadratic(1.0, 3), ValidationError);
}

TEST_CASE("growth bound and convexity hold on sampled points") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    for (const Hamiltonian& h : {Hamiltonian::quadratic(2.0), Hamiltonian::power(1.5, 1.3), kinked()}) {
        const double k = h.growth_constant();
        for (int i = 0; i < 500; ++i) {
            const double x = u(rng), y = u(rng);
            const double hx = h({x, 0.0});
            CHECK(std::fabs(hx) <= k * (std::fabs(x) + x * x) + 1e-9);
            CHECK(h({0.5 * (x + y), 0.0}) <= 0.5 * (hx + h({y, 0.0})) + 1e-10);
        }
    }
}

TEST_CASE("sampled csv") {
    std::stringstream ok("p,value\n-1,1\n0,0\n2,4\n");
    const Hamiltonian h = Hamiltonian::read_sampled_csv(ok);
    CHECK(h({1.0, 0.0}) == doctest::Approx(2.0));
    CHECK(h({-2.0, 0.0}) == doctest::Approx(2.0));  // linear extension
    std::stringstream bad("q,value\n0,0\n1,1\n");
    CHECK_THROWS_AS(Hamiltonian::read_sampled_csv(bad), ValidationError);
}

TEST_CASE("conjugate examples") {
    const auto q = legendre_conjugate(Hamiltonian::quadratic(1.0), {3.0, 0.0});
    CHECK(q.attained);
    CHECK(q.value == doctest::Approx(4.5).epsilon(1e-12));

    const Hamiltonian abs1 = Hamiltonian::power(1.0, 1.0);
    const auto inside = legendre_conjugate(abs1, {0.5, 0.0});
    CHECK(inside.attained);
    CHECK(inside.value == 0.0);
    CHECK(std::isinf(legendre_conjugate(abs1, {2.0, 0.0}).value));
    // Brute force agrees: bounded sup inside the unit ball, growing with the box outside.
    auto habs = [](double x) { return std::fabs(x); };
    CHECK(ref::brute_conjugate_1d(habs, 0.5, 50.0, 20001) == doctest::Approx(0.0));
    CHECK(ref::brute_conjugate_1d(habs, 2.0, 50.0, 20001) == doctest::Approx(50.0));

    const auto k = legendre_conjugate(kinked(), {3.0, 0.0});
    CHECK(k.attained);
    CHECK(k.value == doctest::Approx(2.0).epsilon(1e-9));
    auto hk = [](double x) { return 0.5 * x * x + std::fabs(x); };
    CHECK(ref::brute_conjugate_1d(hk, 3.0, 20.0, 400001) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(legendre_conjugate(kinked(), {0.7, 0.0}).value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("conjugate of the power kind matches brute force") {
    const Hamiltonian h = Hamiltonian::power(0.8, 1.5);
    auto hp = [](double x) { return 0.8 * std::pow(std::fabs(x), 1.5); };
    for (double lambda : {-3.0, -0.4, 0.0, 1.1, 2.5}) {
        const double brute = ref::brute_conjugate_1d(hp, lambda, 40.0, 400001);
        CHECK(legendre_conjugate(h, {lambda, 0.0}).value == doctest::Approx(brute).epsilon(1e-6));
    }
}

TEST_CASE("conjugate table examples") {
    const ConjugateTable t = build_conjugate_table(Hamiltonian::quadratic(1.0), 8.0, 257);
    CHECK(t.min_value() == 0.0);
    CHECK(t.minimizer()[0] == 0.0);

    const ConjugateTable a = build_conjugate_table(Hamiltonian::power(1.0, 1.0), 4.0, 257);
    for (std::size_t i = 0; i < a.lambda_nodes.size(); ++i) {
        const double l = std::fabs(a.lambda_nodes[i][0]);
        if (l <= 1.0) CHECK(a.values[i] == 0.0);
        if (l > 1.0 + 1e-12) CHECK(std::isinf(a.values[i]));
    }

    const ConjugateTable q2 = build_conjugate_table(Hamiltonian::quadratic(2.0), 8.0, 257);
    for (std::size_t i = 0; i < q2.lambda_nodes.size(); ++i) {
        const double l = q2.lambda_nodes[i][0];
        CHECK(std::fabs(q2.values[i] - l * l / 4.0) <= 1e-10);
    }
    CHECK_THROWS_AS(build_conjugate_table(Hamiltonian::quadratic(1.0), 8.0, 32), ValidationError);
}

TEST_CASE("table invariants: nonnegative, zero minimum, quadratic growth") {
    for (const Hamiltonian& h : {Hamiltonian::quadratic(0.5), Hamiltonian::power(2.0, 1.7), kinked()}) {
        const ConjugateTable t = build_conjugate_table(h, 12.0, 241);
        const double k = h.growth_constant();
        double mn = INFINITY;
        for (std::size_t i = 0; i < t.values.size(); ++i) {
            const double v = t.values[i];
            if (!std::isfinite(v)) continue;
            mn = std::min(mn, v);
            CHECK(v >= -1e-8);
            const double l = norm(t.lambda_nodes[i]);
            if (l >= 2 * k) CHECK(v >= l * l / (16 * k) - 1e-8);
        }
        CHECK(std::fabs(mn) <= 1e-8);
    }
}

TEST_CASE("Fenchel-Moreau round trip on the table") {
    for (const Hamiltonian& h : {Hamiltonian::quadratic(1.0), Hamiltonian::power(1.0, 1.5)}) {
        const ConjugateTable t = build_conjugate_table(h, 16.0, 1025);
        const double dl = 32.0 / 1024;
        for (double x = -3.0; x <= 3.0; x += 0.25) {
            double best = -INFINITY;
            for (std::size_t i = 0; i < t.values.size(); ++i) {
                if (std::isfinite(t.values[i])) best = std::max(best, x * t.lambda_nodes[i][0] - t.values[i]);
            }
            CHECK(std::fabs(best - h({x, 0.0})) <= 5 * dl * (1 + std::fabs(x)));
        }
    }
}

TEST_CASE("two-dimensional conjugate") {
    const ConjugateTable t = build_conjugate_table(Hamiltonian::quadratic(1.0, 2), 4.0, 65);
    for (std::size_t i = 0; i < t.values.size(); i += 97) {
        const Point l = t.lambda_nodes[i];
        CHECK(t.values[i] == doctest::Approx(0.5 * dot(l, l)).epsilon(1e-12));
    }
}

TEST_CASE("broken tables are reported") {
    const Hamiltonian h = Hamiltonian::quadratic(1.0);
    ConjugateTable t = tabulate_conjugate(h, {{0.0, 0.0}, {1.0, 0.0}});
    t.values[1] = -1.0;
    CHECK_THROWS_AS(check_conjugate_invariants(h, t), ContractViolation);
    ConjugateTable shifted = tabulate_conjugate(h, {{1.0, 0.0}, {2.0, 0.0}});
    CHECK_THROWS_AS(check_conjugate_invariants(h, shifted), ContractViolation);
}
