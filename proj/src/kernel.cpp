#include "vhj/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vhj/error.hpp"
#include "vhj/parallel.hpp"

namespace vhj {

void GaussKernel::validate() const {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("heat kernel time must be nonnegative");
    if (!(truncation_multiple >= 6.0)) throw ValidationError("heat kernel truncation multiple must be >= 6");
    if (dim != 1 && dim != 2) throw ValidationError("heat kernel dimension must be 1 or 2");
}

LatticeWeights lattice_weights(double t, double spacing, double phase, double truncation_multiple) {
    GaussKernel{t, truncation_multiple, 1}.validate();
    if (!(phase >= 0.0 && phase < 1.0)) throw ValidationError("lattice phase must lie in [0, 1)");
    if (t == 0.0) {
        if (phase != 0.0) throw ValidationError("a shifted kernel needs t > 0");
        return {0, {1.0}};
    }
    const double reach = truncation_multiple * std::sqrt(t) / spacing;
    const auto nearest = static_cast<std::ptrdiff_t>(std::lround(phase));
    const std::ptrdiff_t lo = std::min(static_cast<std::ptrdiff_t>(std::ceil(phase - reach)), nearest);
    const std::ptrdiff_t hi = std::max(static_cast<std::ptrdiff_t>(std::floor(phase + reach)), nearest);

    // Exponents are taken relative to the node closest to the kernel centre so
    // very narrow kernels do not underflow to an all-zero window.
    const double y0 = (static_cast<double>(nearest) - phase) * spacing;
    LatticeWeights w;
    w.first = lo;
    w.weights.resize(static_cast<std::size_t>(hi - lo + 1));
    double sum = 0.0;
    for (std::ptrdiff_t j = lo; j <= hi; ++j) {
        const double y = (static_cast<double>(j) - phase) * spacing;
        const double v = std::exp(-(y * y - y0 * y0) / (2.0 * t));
        w.weights[static_cast<std::size_t>(j - lo)] = v;
        sum += v;
    }
    for (double& v : w.weights) v /= sum;
    return w;
}

void correlate_line(const double* in, std::size_t n, std::size_t in_stride, const LatticeWeights& w,
                    std::ptrdiff_t pad, double* out, std::size_t out_stride) {
    const auto nn = static_cast<std::ptrdiff_t>(n);
    const auto count = static_cast<std::ptrdiff_t>(w.weights.size());
    for (std::ptrdiff_t e = -pad; e < nn + pad; ++e) {
        const std::ptrdiff_t base = e + w.first;
        const std::ptrdiff_t j0 = std::max<std::ptrdiff_t>(0, -base);
        const std::ptrdiff_t j1 = std::min<std::ptrdiff_t>(count, nn - base);
        double s = 0.0;
        for (std::ptrdiff_t j = j0; j < j1; ++j) {
            s += w.weights[static_cast<std::size_t>(j)] * in[static_cast<std::size_t>(base + j) * in_stride];
        }
        out[static_cast<std::size_t>(e + pad) * out_stride] = s;
    }
}

GridFunction heat_step(const GridFunction& f, double t, double truncation_multiple) {
    const GridSpec& g = f.spec();
    GaussKernel{t, truncation_multiple, g.dim()}.validate();
    if (t == 0.0) return f;
    const LatticeWeights w = lattice_weights(t, g.spacing(), 0.0, truncation_multiple);
    const std::size_t n = g.points_per_axis();
    const auto in = f.values();
    std::vector<double> out(f.size(), 0.0);
    if (g.dim() == 1) {
        parallel_for(n, [&](std::size_t b, std::size_t e, std::size_t) {
            const auto count = static_cast<std::ptrdiff_t>(w.weights.size());
            for (std::size_t i = b; i < e; ++i) {
                const std::ptrdiff_t base = static_cast<std::ptrdiff_t>(i) + w.first;
                const std::ptrdiff_t j0 = std::max<std::ptrdiff_t>(0, -base);
                const std::ptrdiff_t j1 = std::min<std::ptrdiff_t>(count, static_cast<std::ptrdiff_t>(n) - base);
                double s = 0.0;
                for (std::ptrdiff_t j = j0; j < j1; ++j) s += w.weights[static_cast<std::size_t>(j)] * in[static_cast<std::size_t>(base + j)];
                out[i] = s;
            }
        });
        return GridFunction(g, std::move(out));
    }
    // Separable: along y inside each row, then along x across rows.
    std::vector<double> tmp(f.size(), 0.0);
    parallel_for(n, [&](std::size_t b, std::size_t e, std::size_t) {
        for (std::size_t i = b; i < e; ++i) correlate_line(in.data() + i * n, n, 1, w, 0, tmp.data() + i * n, 1);
    });
    parallel_for(n, [&](std::size_t b, std::size_t e, std::size_t) {
        for (std::size_t j = b; j < e; ++j) correlate_line(tmp.data() + j, n, n, w, 0, out.data() + j, n);
    });
    return GridFunction(g, std::move(out));
}

double gauss_expectation(const std::function<double(const Point&)>& g, const Point& x, double t, int dim,
                         double truncation_multiple) {
    GaussKernel{t, truncation_multiple, dim}.validate();
    if (!(t > 0.0)) throw ValidationError("gauss_expectation needs t > 0");
    constexpr int kPerSigma = 16;
    const double sigma = std::sqrt(t);
    const double step = sigma / kPerSigma;
    const int half = static_cast<int>(std::ceil(truncation_multiple * kPerSigma));
    std::vector<double> w(static_cast<std::size_t>(2 * half + 1));
    double mass = 0.0;
    for (int k = -half; k <= half; ++k) {
        const double y = k * step;
        w[static_cast<std::size_t>(k + half)] = std::exp(-y * y / (2.0 * t));
        mass += w[static_cast<std::size_t>(k + half)];
    }
    for (double& v : w) v /= mass;

    auto eval = [&](const Point& p) {
        const double v = g(p);
        if (!std::isfinite(v)) throw ValidationError("integrand is not finite inside the quadrature window");
        return v;
    };
    double sum = 0.0;
    if (dim == 1) {
        for (int k = -half; k <= half; ++k) sum += w[static_cast<std::size_t>(k + half)] * eval({x[0] + k * step, 0.0});
        return sum;
    }
    for (int a = -half; a <= half; ++a) {
        double row = 0.0;
        for (int b = -half; b <= half; ++b) row += w[static_cast<std::size_t>(b + half)] * eval({x[0] + a * step, x[1] + b * step});
        sum += w[static_cast<std::size_t>(a + half)] * row;
    }
    return sum;
}

double shifted_expectation(const GridFunction& f, const Point& position, double t, double truncation_multiple) {
    const GridSpec& g = f.spec();
    const double h = g.spacing();
    auto locate = [&](double coord, std::ptrdiff_t& base, double& phase) {
        const double u = (coord + g.half_width()) / h;
        const double fl = std::floor(u);
        base = static_cast<std::ptrdiff_t>(fl);
        phase = u - fl;
        if (phase >= 1.0) {
            ++base;
            phase = 0.0;
        }
    };
    std::ptrdiff_t bx = 0, by = 0;
    double px = 0.0, py = 0.0;
    locate(position[0], bx, px);
    const LatticeWeights wx = lattice_weights(t, h, px, truncation_multiple);
    if (g.dim() == 1) {
        double s = 0.0;
        for (std::size_t j = 0; j < wx.weights.size(); ++j) s += wx.weights[j] * f.at(bx + wx.first + static_cast<std::ptrdiff_t>(j));
        return s;
    }
    locate(position[1], by, py);
    const LatticeWeights wy = lattice_weights(t, h, py, truncation_multiple);
    double s = 0.0;
    for (std::size_t a = 0; a < wx.weights.size(); ++a) {
        double row = 0.0;
        for (std::size_t b = 0; b < wy.weights.size(); ++b) {
            row += wy.weights[b] * f.at(bx + wx.first + static_cast<std::ptrdiff_t>(a), by + wy.first + static_cast<std::ptrdiff_t>(b));
        }
        s += wx.weights[a] * row;
    }
    return s;
}

double log_brownian_tail(double r, double t, int dim) {
    if (dim != 1 && dim != 2) throw ValidationError("brownian_tail supports d = 1 or 2");
    if (!(t > 0.0)) throw ValidationError("brownian_tail needs t > 0");
    if (r <= 0.0) return 0.0;
    if (dim == 2) return -r * r / (2.0 * t);
    const double z = r / std::sqrt(2.0 * t);
    if (z < 26.0) return std::log(std::erfc(z));
    // Asymptotic expansion of erfc for large arguments.
    const double z2 = z * z;
    const double series = 1.0 - 1.0 / (2.0 * z2) + 3.0 / (4.0 * z2 * z2) - 15.0 / (8.0 * z2 * z2 * z2);
    return -z2 - std::log(z * std::sqrt(std::numbers::pi)) + std::log(series);
}

double brownian_tail(double r, double t, int dim) {
    const double v = std::exp(log_brownian_tail(r, t, dim));
    return v < 1e-300 ? 0.0 : v;
}

HolderShift holder_shift_check(const GridFunction& f, const Point& x, const Point& lambda, double t, double p,
                               double truncation_multiple) {
    if (!(p > 1.0) || !std::isfinite(p)) throw ValidationError("Holder exponent p must exceed 1");
    if (!(t > 0.0)) throw ValidationError("holder_shift_check needs t > 0");
    const double q = p / (p - 1.0);
    const GridFunction af = f.abs();
    std::vector<double> pw(af.values().begin(), af.values().end());
    for (double& v : pw) v = std::pow(v, p);
    const GridFunction fp(f.spec(), std::move(pw));
    const Point shifted{x[0] + lambda[0] * t, x[1] + lambda[1] * t};
    const double lhs = shifted_expectation(af, shifted, t, truncation_multiple);
    const double moment = shifted_expectation(fp, x, t, truncation_multiple);
    const double lam2 = dot(lambda, lambda);
    const double rhs = std::exp((q - 1.0) * lam2 * t / 2.0) * std::pow(moment, 1.0 / p);
    return {lhs, rhs};
}

}  // namespace vhj
