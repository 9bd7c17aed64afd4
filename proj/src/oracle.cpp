#include "vhj/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vhj/error.hpp"
#include "vhj/parallel.hpp"

namespace vhj {

namespace {

// Log of the renormalized Gaussian weights on offsets -half..half.
std::vector<double> log_weights(double t, double h, double truncation_multiple, std::ptrdiff_t& half) {
    half = static_cast<std::ptrdiff_t>(std::floor(truncation_multiple * std::sqrt(t) / h));
    std::vector<double> lw(static_cast<std::size_t>(2 * half + 1));
    for (std::ptrdiff_t j = -half; j <= half; ++j) {
        const double y = static_cast<double>(j) * h;
        lw[static_cast<std::size_t>(j + half)] = -y * y / (2.0 * t);
    }
    // The centre exponent is 0, so the mass is at least 1.
    double mass = 0.0;
    for (double v : lw) mass += std::exp(v);
    const double log_mass = std::log(mass);
    for (double& v : lw) v -= log_mass;
    return lw;
}

// out[i] = log sum_j exp(lw[j] + g(i + j - half)) where g = 0 off [0, n).
void log_correlate(const double* g, std::size_t n, std::size_t stride, const std::vector<double>& lw,
                   std::ptrdiff_t half, double* out) {
    std::vector<double> terms(lw.size());
    for (std::size_t i = 0; i < n; ++i) {
        double top = -INFINITY;
        for (std::ptrdiff_t j = -half; j <= half; ++j) {
            const auto k = static_cast<std::ptrdiff_t>(i) + j;
            const double v = (k >= 0 && k < static_cast<std::ptrdiff_t>(n)) ? g[static_cast<std::size_t>(k) * stride] : 0.0;
            const double e = lw[static_cast<std::size_t>(j + half)] + v;
            terms[static_cast<std::size_t>(j + half)] = e;
            top = std::max(top, e);
        }
        double s = 0.0;
        for (double e : terms) s += std::exp(e - top);
        out[i * stride] = top + std::log(s);
    }
}

}  // namespace

GridFunction exact_solution(const GridFunction& f, double t, double coupling, double truncation_multiple) {
    if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("exact_solution needs t > 0");
    if (!(coupling > 0.0) || !std::isfinite(coupling)) throw ValidationError("coupling must be positive");
    if (!(truncation_multiple > 0.0)) throw ValidationError("truncation multiple must be positive");
    const GridSpec& g = f.spec();
    std::ptrdiff_t half = 0;
    const std::vector<double> lw = log_weights(t, g.spacing(), truncation_multiple, half);
    const std::size_t n = g.points_per_axis();

    std::vector<double> lifted(f.values().begin(), f.values().end());
    for (double& v : lifted) v *= coupling;
    std::vector<double> out(lifted.size());
    if (g.dim() == 1) {
        log_correlate(lifted.data(), n, 1, lw, half, out.data());
    } else {
        std::vector<double> rows(lifted.size());
        parallel_for(n, [&](std::size_t b, std::size_t e, std::size_t) {
            for (std::size_t i = b; i < e; ++i) log_correlate(lifted.data() + i * n, n, 1, lw, half, rows.data() + i * n);
        });
        parallel_for(n, [&](std::size_t b, std::size_t e, std::size_t) {
            for (std::size_t j = b; j < e; ++j) log_correlate(rows.data() + j, n, n, lw, half, out.data() + j);
        });
    }
    for (double& v : out) v /= coupling;
    return GridFunction(g, std::move(out));
}

double oracle_semigroup_defect(const GridFunction& f, double s, double t, double coupling, double truncation_multiple) {
    if (!(s > 0.0) || !(t > 0.0)) throw ValidationError("semigroup defect needs s, t > 0");
    const GridFunction two_step = exact_solution(exact_solution(f, s, coupling, truncation_multiple), t, coupling, truncation_multiple);
    const GridFunction direct = exact_solution(f, s + t, coupling, truncation_multiple);
    return sup_norm(two_step - direct);
}

}  // namespace vhj
