#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "vhj/error.hpp"
#include "vhj/grid.hpp"
#include "vhj/samples.hpp"

using namespace vhj;

TEST_CASE("grid layout") {
    const GridSpec g(1, 10.0, 2048);
    CHECK(g.points_per_axis() == 2049);
    CHECK(g.spacing() == doctest::Approx(20.0 / 2048));
    CHECK(g.coordinate(static_cast<std::ptrdiff_t>(g.origin_index())) == 0.0);
    const GridSpec g2(2, 4.0, 16);
    CHECK(g2.size() == 17u * 17u);
    CHECK(g2.node(g2.flat(16, 0))[0] == 4.0);
    CHECK(g2.node(g2.flat(16, 0))[1] == -4.0);
    CHECK_FALSE(g2.is_interior(g2.flat(0, 5)));
    CHECK(g2.is_interior(g2.flat(1, 5)));
}

TEST_CASE("invalid grids are rejected") {
    CHECK_THROWS_AS(GridSpec(3, 1.0, 16), ValidationError);
    CHECK_THROWS_AS(GridSpec(1, 0.0, 16), ValidationError);
    CHECK_THROWS_AS(GridSpec(1, 1.0, 8), ValidationError);
    CHECK_THROWS_AS(GridSpec(1, 1.0, 100), ValidationError);
}

TEST_CASE("sup_norm examples") {
    const GridSpec g(1, 10.0, 1024);
    CHECK(sup_norm(GridFunction::zeros(g)) == 0.0);
    std::vector<double> v(g.size(), 0.0);
    v[3] = -3.0;
    v[7] = 1.0;
    v[9] = 2.0;
    CHECK(sup_norm(GridFunction(g, v)) == 3.0);
    const auto gauss = GridFunction::sample(g, [](const Point& p) { return std::exp(-p[0] * p[0]); });
    CHECK(std::abs(sup_norm(gauss) - 1.0) <= 1e-12);
}

TEST_CASE("gradient examples") {
    const GridSpec g(1, 10.0, 1024);
    CHECK(discrete_gradient_sup(GridFunction::zeros(g)) == 0.0);
    const auto lin = GridFunction::sample(g, [](const Point& p) { return p[0]; });
    CHECK(std::abs(discrete_gradient_sup(lin) - 1.0) <= 1e-12);
    const GridSpec gp(1, std::numbers::pi, 512);
    const auto s = GridFunction::sample(gp, [](const Point& p) { return std::sin(p[0]); });
    CHECK(std::abs(discrete_gradient_sup(s) - 1.0) <= 1e-4);
    const GridSpec g2(2, 4.0, 64);
    const auto plane = GridFunction::sample(g2, [](const Point& p) { return 3.0 * p[0] + 4.0 * p[1]; });
    CHECK(std::abs(discrete_gradient_sup(plane) - 5.0) <= 1e-12);
}

TEST_CASE("laplacian examples") {
    const GridSpec g(1, 10.0, 1024);
    CHECK(discrete_laplacian_sup(GridFunction::zeros(g)) == 0.0);
    const auto sq = GridFunction::sample(g, [](const Point& p) { return p[0] * p[0]; });
    CHECK(std::abs(discrete_laplacian_sup(sq) - 2.0) <= 1e-8);
    const auto gauss = GridFunction::sample(g, [](const Point& p) { return std::exp(-p[0] * p[0]); });
    CHECK(std::abs(discrete_laplacian_sup(gauss) - 2.0) <= 1e-3);
    const GridSpec g2(2, 4.0, 64);
    const auto bowl = GridFunction::sample(g2, [](const Point& p) { return p[0] * p[0] + p[1] * p[1]; });
    CHECK(std::abs(discrete_laplacian_sup(bowl) - 4.0) <= 1e-8);
}

TEST_CASE("integral examples") {
    const GridSpec g(1, 10.0, 1024);
    CHECK(integral(GridFunction::zeros(g)) == 0.0);
    const auto gauss = GridFunction::sample(g, [](const Point& p) { return std::exp(-p[0] * p[0] / 2); });
    CHECK(std::abs(integral(gauss) - std::sqrt(2 * std::numbers::pi)) <= 1e-6);
    // Raw step: 1 on [0, 1] including both endpoint nodes.
    const auto step = GridFunction::sample(g, [](const Point& p) { return p[0] >= 0 && p[0] <= 1 ? 1.0 : 0.0; });
    CHECK(std::abs(integral(step) - 1.0) <= 2 * g.spacing());
    CHECK(std::abs(integral(indicator(g, 0.0, 1.0)) - 1.0) <= 2 * g.spacing());
    const GridSpec g2(2, 8.0, 256);
    const auto gauss2 = GridFunction::sample(g2, [](const Point& p) { return std::exp(-(p[0] * p[0] + p[1] * p[1]) / 2); });
    CHECK(std::abs(integral(gauss2) - 2 * std::numbers::pi) <= 1e-6);
}

TEST_CASE("sup_norm is a norm and gradient_sup is homogeneous") {
    const GridSpec g(1, 10.0, 512);
    BumpSampler s(11);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> c(-5.0, 5.0);
    for (int i = 0; i < 20; ++i) {
        const GridFunction f = s.gaussian(g, true);
        const GridFunction h = s.gaussian(g, true);
        const double a = c(rng);
        CHECK(std::abs(sup_norm(a * f) - std::abs(a) * sup_norm(f)) <= 1e-12);
        CHECK(sup_norm(f + h) <= sup_norm(f) + sup_norm(h) + 1e-12);
        CHECK(std::abs(discrete_gradient_sup(a * f) - std::abs(a) * discrete_gradient_sup(f)) <= 1e-12);
    }
}

TEST_CASE("csv round trip is exact") {
    for (int dim : {1, 2}) {
        const GridSpec g(dim, 3.0, 16);
        BumpSampler s(5);
        const GridFunction f = s.gaussian(g, true);
        std::stringstream ss;
        write_csv(ss, f);
        const GridFunction back = read_csv(ss);
        CHECK(back.spec() == g);
        for (std::size_t k = 0; k < f.size(); ++k) CHECK(back[k] == f[k]);
    }
}

TEST_CASE("malformed csv is rejected") {
    std::stringstream bad("x,value\n0,1\n1,2\n3,4\n");
    CHECK_THROWS_AS(read_csv(bad), ValidationError);
    std::stringstream header("a,b\n");
    CHECK_THROWS_AS(read_csv(header), ValidationError);
}

TEST_CASE("indicator puts one half on jump nodes") {
    const GridSpec g(1, 2.0, 16);
    const GridFunction f = indicator(g, 0.0, 1.0);
    CHECK(f[8] == 0.5);
    CHECK(f[10] == 1.0);
    CHECK(f[12] == 0.5);
    CHECK(f[13] == 0.0);
}
