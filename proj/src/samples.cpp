#include "vhj/samples.hpp"

#include <algorithm>
#include <cmath>

#include "vhj/error.hpp"

namespace vhj {

namespace {

double dist(const Point& p, const Point& c) { return std::hypot(p[0] - c[0], p[1] - c[1]); }

Point in_dim(const GridSpec& g, Point c) {
    if (g.dim() == 1) c[1] = 0.0;
    return c;
}

}  // namespace

GridFunction gaussian_bump(const GridSpec& g, double sigma, Point center, double amplitude) {
    if (!(sigma > 0.0)) throw ValidationError("gaussian-bump width must be positive");
    center = in_dim(g, center);
    return GridFunction::sample(g, [&](const Point& p) {
        const double r = dist(p, center);
        return amplitude * std::exp(-r * r / (2.0 * sigma * sigma));
    });
}

GridFunction log_bump(const GridSpec& g) {
    return GridFunction::sample(g, [](const Point& p) { return std::log1p(std::exp(-(p[0] * p[0] + p[1] * p[1]) / 2.0)); });
}

GridFunction hat(const GridSpec& g, double w) {
    if (!(w > 0.0)) throw ValidationError("hat width must be positive");
    return GridFunction::sample(g, [w](const Point& p) { return std::max(0.0, 1.0 - norm(p) / w); });
}

GridFunction indicator(const GridSpec& g, double a, double b) {
    if (!(a < b)) throw ValidationError("indicator needs a < b");
    const double tol = 1e-9 * g.spacing();
    auto axis = [&](double x) {
        if (x < a - tol || x > b + tol) return 0.0;
        if (std::abs(x - a) <= tol || std::abs(x - b) <= tol) return 0.5;
        return 1.0;
    };
    return GridFunction::sample(g, [&](const Point& p) { return g.dim() == 1 ? axis(p[0]) : axis(p[0]) * axis(p[1]); });
}

GridFunction compact_bump(const GridSpec& g, double radius, Point center, double amplitude) {
    if (!(radius > 0.0)) throw ValidationError("bump radius must be positive");
    center = in_dim(g, center);
    return GridFunction::sample(g, [&](const Point& p) {
        const double u = dist(p, center) / radius;
        return u < 1.0 ? amplitude * std::exp(1.0 - 1.0 / (1.0 - u * u)) : 0.0;
    });
}

double BumpSampler::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

Point BumpSampler::center(const GridSpec& g) {
    const double reach = 0.25 * g.half_width();
    return {uniform(-reach, reach), g.dim() == 2 ? uniform(-reach, reach) : 0.0};
}

GridFunction BumpSampler::gaussian(const GridSpec& g, bool signed_values, double max_amplitude) {
    const int count = std::uniform_int_distribution<int>(1, 3)(rng_);
    GridFunction f = GridFunction::zeros(g);
    for (int i = 0; i < count; ++i) {
        const double amp = signed_values ? uniform(-max_amplitude, max_amplitude) : uniform(0.0, max_amplitude);
        const double sigma = uniform(0.05, 0.15) * g.half_width();
        const Point c = center(g);
        f += gaussian_bump(g, sigma, c, amp);
    }
    return f;
}

GridFunction BumpSampler::compact(const GridSpec& g, bool signed_values, double max_amplitude) {
    const int count = std::uniform_int_distribution<int>(1, 3)(rng_);
    GridFunction f = GridFunction::zeros(g);
    for (int i = 0; i < count; ++i) {
        const double amp = signed_values ? uniform(-max_amplitude, max_amplitude) : uniform(0.0, max_amplitude);
        const double radius = uniform(0.1, 0.25) * g.half_width();
        const Point c = center(g);
        f += compact_bump(g, radius, c, amp);
    }
    return f;
}

}  // namespace vhj
