#include "vhj/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vhj/error.hpp"

namespace vhj {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Above this argument of exp the large-argument forms are exact to double precision.
constexpr double kLarge = 30.0;

// (y - 1) e^y + 1 = sum_{k >= 2} (k - 1) y^k / k!, cancellation-free for small y.
double exp_young_series(double y) {
    double term = y;  // y^k / k! at k = 1
    double sum = 0.0;
    for (int k = 2; k <= 30; ++k) {
        term *= y / k;
        const double add = (k - 1) * term;
        sum += add;
        if (add < 1e-18 * sum) break;
    }
    return sum;
}

}  // namespace

YoungFunction YoungFunction::exponential(double b) {
    if (!(b > 0.0) || !std::isfinite(b)) throw ValidationError("Young parameter b must be positive");
    return {Kind::exponential, b};
}

YoungFunction YoungFunction::power(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw ValidationError("Young exponent p must be at least 1");
    return {Kind::power, p};
}

YoungFunction YoungFunction::entropic() { return {Kind::entropic, 1.0}; }

YoungFunction YoungFunction::for_growth(double k) {
    if (!(k >= 0.0)) throw ValidationError("growth constant must be nonnegative");
    return exponential(8.0 * k + 1.0);
}

double YoungFunction::phi(double x) const {
    if (!(x >= 0.0)) throw ValidationError("phi is evaluated on [0, inf)");
    switch (kind_) {
        case Kind::exponential: {
            const double y = param_ * x;
            if (y < 0.5) return exp_young_series(y);
            if (y > 709.0) return kInf;
            return (y - 1.0) * std::exp(y) + 1.0;
        }
        case Kind::power:
            return std::pow(x, param_);
        case Kind::entropic:
            return std::expm1(x);
    }
    return kInf;
}

double YoungFunction::log_phi(double x) const {
    if (!(x >= 0.0)) throw ValidationError("phi is evaluated on [0, inf)");
    if (x == 0.0) return -kInf;
    switch (kind_) {
        case Kind::exponential: {
            const double y = param_ * x;
            if (y < kLarge) return std::log(phi(x));
            return y + std::log(y - 1.0) + std::log1p(std::exp(-y) / (y - 1.0));
        }
        case Kind::power:
            return param_ * std::log(x);
        case Kind::entropic:
            return x < kLarge ? std::log(std::expm1(x)) : x + std::log1p(-std::exp(-x));
    }
    return kInf;
}

double YoungFunction::Phi(double x) const { return phi(std::abs(x)); }

double YoungFunction::dphi(double x) const {
    if (!(x >= 0.0)) throw ValidationError("phi is evaluated on [0, inf)");
    switch (kind_) {
        case Kind::exponential:
            return param_ * param_ * x * std::exp(param_ * x);
        case Kind::power:
            return param_ * std::pow(x, param_ - 1.0);
        case Kind::entropic:
            return std::exp(x);
    }
    return kInf;
}

double YoungFunction::d2phi(double x) const {
    if (!(x >= 0.0)) throw ValidationError("phi is evaluated on [0, inf)");
    switch (kind_) {
        case Kind::exponential:
            return param_ * param_ * std::exp(param_ * x) * (1.0 + param_ * x);
        case Kind::power:
            return param_ == 1.0 ? 0.0 : param_ * (param_ - 1.0) * std::pow(x, param_ - 2.0);
        case Kind::entropic:
            return std::exp(x);
    }
    return kInf;
}

double YoungFunction::phi_inverse(double y) const {
    if (!(y >= 0.0)) throw ValidationError("phi_inverse needs y >= 0");
    if (y == 0.0) return 0.0;
    if (std::isinf(y)) return kInf;
    return phi_inverse_log(std::log(y));
}

double YoungFunction::phi_inverse_log(double log_y) const {
    if (std::isnan(log_y)) throw ValidationError("phi_inverse of NaN");
    if (log_y == -kInf) return 0.0;
    if (log_y == kInf) return kInf;
    switch (kind_) {
        case Kind::power:
            return std::exp(log_y / param_);
        case Kind::entropic:
            return log_y < kLarge ? std::log1p(std::exp(log_y)) : log_y + std::log1p(std::exp(-log_y));
        case Kind::exponential:
            break;
    }
    const double b = param_;
    // d/dx log phi(x), written to avoid overflow.
    auto dlog = [&](double x) {
        const double y = b * x;
        if (y < kLarge) return b * b * x * std::exp(y) / phi(x);
        return b * y / (y - 1.0 + std::exp(-y));
    };
    // phi ~ (b x)^2 / 2 near 0 and log phi ~ b x for large x.
    double x = log_y < 0.0 ? std::exp(0.5 * (log_y + std::log(2.0))) / b : std::max(log_y, 1.0) / b;
    double lo = 0.0;
    double hi = x;
    while (log_phi(hi) < log_y) {
        lo = hi;
        hi *= 2.0;
    }
    x = std::clamp(x, lo, hi);
    for (int it = 0; it < 200; ++it) {
        const double g = log_phi(x) - log_y;
        if (g == 0.0) return x;
        if (g > 0.0) hi = x; else lo = x;
        double next = x - g / dlog(x);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 1e-16 * x || hi - lo <= 1e-16 * hi) return next;
        x = next;
    }
    return x;
}

std::string YoungFunction::describe() const {
    switch (kind_) {
        case Kind::exponential:
            return "exponential(b=" + std::to_string(param_) + ")";
        case Kind::power:
            return "power(p=" + std::to_string(param_) + ")";
        case Kind::entropic:
            return "entropic";
    }
    return "";
}

double phi_inverse(double y, double b) { return YoungFunction::exponential(b).phi_inverse(y); }

double modular(const GridFunction& f, double m, const YoungFunction& young) {
    if (!(m > 0.0)) throw ValidationError("modular needs m > 0");
    const GridSpec& g = f.spec();
    double sum = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (f[k] == 0.0) continue;
        sum += trapezoid_weight(g, k) * young.Phi(f[k] / m);
        if (std::isinf(sum)) return kInf;
    }
    return sum;
}

double luxemburg_norm(const GridFunction& f, double R, const YoungFunction& young) {
    if (!(R >= 1.0) || !std::isfinite(R)) throw ValidationError("Orlicz parameter R must be >= 1");
    const double s = sup_norm(f);
    if (s == 0.0) return 0.0;
    const GridSpec& g = f.spec();
    const double volume = std::pow(2.0 * g.half_width(), g.dim());
    // integral Phi(f / m) <= volume * Phi(s / m), so this m is feasible up to rounding.
    double hi = s / young.phi_inverse(R / volume);
    while (modular(f, hi, young) > R) hi *= 2.0;
    double lo = 0.5 * hi;
    while (modular(f, lo, young) <= R) {
        hi = lo;
        lo *= 0.5;
    }
    while (hi - lo > 1e-13 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (modular(f, mid, young) > R) lo = mid; else hi = mid;
    }
    return hi;
}

NormEquivalence norm_equivalence_check(const GridFunction& f, double R, const YoungFunction& young) {
    NormEquivalence out{};
    out.norm_1 = luxemburg_norm(f, 1.0, young);
    out.norm_R = luxemburg_norm(f, R, young);
    out.lhs_ok = out.norm_R <= out.norm_1 + 1e-8;
    out.rhs_ok = out.norm_1 <= R * out.norm_R + 1e-8;
    return out;
}

BallMembership ball_membership(const GridFunction& f, const OrliczBall& ball, const YoungFunction& young) {
    if (!(ball.radius >= 0.0)) throw ValidationError("ball radius must be nonnegative");
    if (!(f.spec() == ball.center.spec())) throw ValidationError("ball centre lives on a different grid");
    const double d = luxemburg_norm(f - ball.center, ball.R, young);
    return {d <= ball.radius, d};
}

double ball_witness(const GridFunction& f, const GridFunction& center, double r, const YoungFunction& young) {
    if (!(r > 0.0)) throw ValidationError("ball witness needs r > 0");
    return 1.0 + modular(f - center, r, young);
}

GridFunction mollify(const GridFunction& f, double width) {
    if (!(width > 0.0) || !std::isfinite(width)) throw ValidationError("mollifier width must be positive");
    const GridSpec& g = f.spec();
    const double h = g.spacing();
    const auto half = static_cast<std::ptrdiff_t>(std::ceil(width / h));
    auto bump = [width](double r) {
        const double u = r / width;
        return u < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0;
    };
    const auto n = static_cast<std::ptrdiff_t>(g.points_per_axis());
    std::vector<double> out(f.size(), 0.0);
    if (g.dim() == 1) {
        std::vector<double> w(static_cast<std::size_t>(2 * half + 1));
        double mass = 0.0;
        for (std::ptrdiff_t j = -half; j <= half; ++j) mass += (w[static_cast<std::size_t>(j + half)] = bump(std::abs(j * h)));
        for (double& v : w) v /= mass;
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::ptrdiff_t j = -half; j <= half; ++j) s += w[static_cast<std::size_t>(j + half)] * f.at(i - j);
            out[static_cast<std::size_t>(i)] = s;
        }
        return GridFunction(g, std::move(out));
    }
    const auto side = static_cast<std::size_t>(2 * half + 1);
    std::vector<double> w(side * side);
    double mass = 0.0;
    for (std::ptrdiff_t a = -half; a <= half; ++a) {
        for (std::ptrdiff_t b = -half; b <= half; ++b) {
            const double v = bump(std::hypot(a * h, b * h));
            w[static_cast<std::size_t>(a + half) * side + static_cast<std::size_t>(b + half)] = v;
            mass += v;
        }
    }
    for (double& v : w) v /= mass;
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        for (std::ptrdiff_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::ptrdiff_t a = -half; a <= half; ++a) {
                for (std::ptrdiff_t b = -half; b <= half; ++b) {
                    s += w[static_cast<std::size_t>(a + half) * side + static_cast<std::size_t>(b + half)] * f.at(i - a, j - b);
                }
            }
            out[static_cast<std::size_t>(i * n + j)] = s;
        }
    }
    return GridFunction(g, std::move(out));
}

MollifyCheck mollify_contract_check(const GridFunction& f, double width, double R, const YoungFunction& young) {
    return {luxemburg_norm(mollify(f, width), R, young), luxemburg_norm(f, R, young)};
}

GridFunction density_approximant(const GridFunction& f, double radius, double width) {
    if (!(radius > 0.0)) throw ValidationError("truncation radius must be positive");
    std::vector<double> v(f.values().begin(), f.values().end());
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (norm(f.spec().node(k)) > radius) v[k] = 0.0;
    }
    return mollify(GridFunction(f.spec(), std::move(v)), width);
}

GridFunction rescale_to_norm(const GridFunction& f, double target, double R, const YoungFunction& young) {
    if (!(target >= 0.0)) throw ValidationError("target norm must be nonnegative");
    const double n = luxemburg_norm(f, R, young);
    if (n == 0.0) throw ValidationError("cannot rescale the zero function");
    return (target / n) * f;
}

}  // namespace vhj
