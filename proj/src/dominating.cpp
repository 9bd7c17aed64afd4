#include "vhj/dominating.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <string>

#include "vhj/error.hpp"
#include "vhj/io.hpp"
#include "vhj/parallel.hpp"

namespace vhj {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Absolute accuracy target for the kernel window of t_op.
constexpr double kWindowTolerance = 1e-12;

double log_sum_exp(const std::vector<double>& terms) {
    double top = kNegInf;
    for (double v : terms) top = std::max(top, v);
    if (top == kNegInf) return kNegInf;
    double s = 0.0;
    for (double v : terms) s += std::exp(v - top);
    return top + std::log(s);
}

// out(e) = log sum_j w_j exp(in(e + first + j)), in = -inf off [0, n).
void log_correlate(const double* in, std::size_t n, std::size_t stride, const LatticeWeights& w,
                   const std::vector<double>& log_w, double* out) {
    std::vector<double> terms(log_w.size());
    const auto nn = static_cast<std::ptrdiff_t>(n);
    for (std::ptrdiff_t e = 0; e < nn; ++e) {
        for (std::size_t j = 0; j < log_w.size(); ++j) {
            const std::ptrdiff_t k = e + w.first + static_cast<std::ptrdiff_t>(j);
            terms[j] = (k >= 0 && k < nn) ? log_w[j] + in[static_cast<std::size_t>(k) * stride] : kNegInf;
        }
        out[static_cast<std::size_t>(e) * stride] = log_sum_exp(terms);
    }
}

void require_nonnegative(const GridFunction& f, const char* what) {
    for (double v : f.values()) {
        if (v < 0.0) throw ValidationError(std::string(what) + " needs a nonnegative input");
    }
}

void require_in_ball(const GridFunction& f, double R, double radius, const YoungFunction& young, const char* ball) {
    const double n = luxemburg_norm(f, R, young);
    // Relative slack absorbs the bisection tolerance of rescale_to_norm.
    if (n > radius * (1.0 + 1e-9)) {
        throw ValidationError("input with ||f||_{Phi,R} = " + format_double(n) + " lies outside the ball " + ball +
                              " of radius " + format_double(radius));
    }
}

}  // namespace

DominatingParams DominatingParams::from_growth(double k) {
    if (!(k >= 0.0)) throw ValidationError("growth constant must be nonnegative");
    return {k * k, YoungFunction::for_growth(k), kDefaultTruncation};
}

void DominatingParams::validate() const {
    if (!(a >= 0.0) || !std::isfinite(a)) throw ValidationError("dominating parameter a must be nonnegative");
    GaussKernel{0.0, truncation_multiple, 1}.validate();
}

GridFunction t_op(const GridFunction& f, double t, const DominatingParams& params) {
    params.validate();
    if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("t_op needs t >= 0");
    require_nonnegative(f, "t_op");
    if (t == 0.0) return f;

    const GridSpec& g = f.spec();
    const double lift = std::exp(params.a * t);
    std::vector<double> lp(f.size());
    for (std::size_t k = 0; k < lp.size(); ++k) lp[k] = params.young.log_phi(lift * f[k]);

    // Dropped tail mass beyond m sqrt(t) is at most e^(-m^2/2); weighted by the
    // largest phi value it must stay below phi(kWindowTolerance).
    const double lp_max = *std::max_element(lp.begin(), lp.end());
    double multiple = params.truncation_multiple;
    if (std::isfinite(lp_max)) {
        const double span = lp_max - params.young.log_phi(kWindowTolerance);
        multiple = std::max(multiple, std::sqrt(2.0 * std::max(span, 0.0)));
    }
    const LatticeWeights w = lattice_weights(t, g.spacing(), 0.0, multiple);
    std::vector<double> log_w(w.weights.size());
    for (std::size_t j = 0; j < log_w.size(); ++j) log_w[j] = std::log(w.weights[j]);

    const std::size_t n = g.points_per_axis();
    std::vector<double> acc(f.size());
    if (g.dim() == 1) {
        log_correlate(lp.data(), n, 1, w, log_w, acc.data());
    } else {
        std::vector<double> rows(f.size());
        parallel_for(n, [&](std::size_t b, std::size_t e, std::size_t) {
            for (std::size_t i = b; i < e; ++i) log_correlate(lp.data() + i * n, n, 1, w, log_w, rows.data() + i * n);
        });
        parallel_for(n, [&](std::size_t b, std::size_t e, std::size_t) {
            for (std::size_t j = b; j < e; ++j) log_correlate(rows.data() + j, n, n, w, log_w, acc.data() + j);
        });
    }
    std::vector<double> out(f.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = params.young.phi_inverse_log(acc[k]);
    return GridFunction(g, std::move(out));
}

DominationResult domination_check(const GridFunction& f, const Dyadic& t, unsigned level, const Hamiltonian& h,
                                  const DominatingParams& params, const ChernoffOptions& options) {
    const GridFunction bound = t_op(f.abs(), t.value(), params);
    auto violation = [&](const GridFunction& u) {
        double v = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < u.size(); ++k) v = std::max(v, std::abs(u[k]) - bound[k]);
        return v;
    };
    DominationResult r{};
    r.one_step_violation = t.is_zero() ? violation(f) : violation(one_step(f, t.value(), h, options));
    r.iterate_violation = violation(iterate(f, t, level, h, options));
    return r;
}

double semigroup_sub_check(const GridFunction& f, double s, double t, const DominatingParams& params) {
    require_nonnegative(f, "semigroup_sub_check");
    const GridFunction two = t_op(t_op(f, t, params), s, params);
    const GridFunction one = t_op(f, s + t, params);
    double v = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < f.size(); ++k) v = std::max(v, two[k] - one[k]);
    return v;
}

NormPair norm_bound_check(const GridFunction& f, double t, double R, const DominatingParams& params) {
    require_nonnegative(f, "norm_bound_check");
    if (!(t >= 0.0)) throw ValidationError("norm_bound_check needs t >= 0");
    require_in_ball(f, R, std::exp(-params.a * t), params.young, "B_R(e^{-at})");
    const double rhs = std::exp(params.a * t) * luxemburg_norm(f, R, params.young);
    const double lhs = luxemburg_norm(t_op(f, t, params), R, params.young);
    return {lhs, rhs};
}

NormPair s_lipschitz_orlicz_check(const GridFunction& f, const GridFunction& g, const Dyadic& t, unsigned level,
                                  double R, const Hamiltonian& h, const DominatingParams& params,
                                  const ChernoffOptions& options) {
    const double radius = std::exp(-params.a * t.value()) / 3.0;
    require_in_ball(f, R, radius, params.young, "B_R(e^{-at}/3)");
    require_in_ball(g, R, radius, params.young, "B_R(e^{-at}/3)");
    const GridFunction sf = iterate(f, t, level, h, options);
    const GridFunction sg = iterate(g, t, level, h, options);
    return {luxemburg_norm(sf - sg, R, params.young),
            4.0 * std::exp(params.a * t.value()) * luxemburg_norm(f - g, R, params.young)};
}

void DiscreteDistribution::validate() const {
    if (atoms.empty()) throw ValidationError("distribution has no atoms");
    if (atoms.size() != probabilities.size()) throw ValidationError("atoms and probabilities differ in length");
    double total = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!std::isfinite(atoms[i])) throw ValidationError("atoms must be finite");
        if (!(probabilities[i] >= 0.0)) throw ValidationError("probabilities must be nonnegative");
        total += probabilities[i];
    }
    if (std::abs(total - 1.0) > 1e-12) throw ValidationError("probabilities must sum to 1, got " + format_double(total));
}

DiscreteDistribution DiscreteDistribution::uniform(std::vector<double> atoms) {
    const std::size_t n = atoms.size();
    DiscreteDistribution d{std::move(atoms), std::vector<double>(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n))};
    d.validate();
    return d;
}

DiscreteDistribution read_distribution_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty distribution file");
    const auto header = split_csv(line);
    if (header.size() != 2 || header[0] != "atom" || header[1] != "probability") {
        throw ValidationError("distribution header must be 'atom,probability'");
    }
    DiscreteDistribution d;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto cells = split_csv(line);
        if (cells.size() != 2) throw ValidationError("distribution rows need two columns");
        d.atoms.push_back(parse_double(cells[0]));
        d.probabilities.push_back(parse_double(cells[1]));
    }
    d.validate();
    return d;
}

Utility Utility::linear() { return {Kind::linear, 0.0}; }
Utility Utility::square() { return {Kind::square, 0.0}; }
Utility Utility::log() { return {Kind::log, 0.0}; }

Utility Utility::power(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw ValidationError("power utility needs p > 0");
    return {Kind::power, p};
}

Utility Utility::exponential(double k) {
    if (!(k > 0.0) || !std::isfinite(k)) throw ValidationError("exponential utility needs k > 0");
    return {Kind::exponential, k};
}

Utility Utility::young(double b) {
    YoungFunction::exponential(b);
    return {Kind::young, b};
}

double Utility::value(double x) const {
    switch (kind_) {
        case Kind::linear: return x;
        case Kind::square: return x * x;
        case Kind::power: return std::pow(x, param_);
        case Kind::log: return std::log(x);
        case Kind::exponential: return std::exp(param_ * x);
        case Kind::young: return YoungFunction::exponential(param_).phi(x);
    }
    return 0.0;
}

double Utility::d1(double x) const {
    switch (kind_) {
        case Kind::linear: return 1.0;
        case Kind::square: return 2.0 * x;
        case Kind::power: return param_ * std::pow(x, param_ - 1.0);
        case Kind::log: return 1.0 / x;
        case Kind::exponential: return param_ * std::exp(param_ * x);
        case Kind::young: return YoungFunction::exponential(param_).dphi(x);
    }
    return 0.0;
}

double Utility::d2(double x) const {
    switch (kind_) {
        case Kind::linear: return 0.0;
        case Kind::square: return 2.0;
        case Kind::power: return param_ * (param_ - 1.0) * std::pow(x, param_ - 2.0);
        case Kind::log: return -1.0 / (x * x);
        case Kind::exponential: return param_ * param_ * std::exp(param_ * x);
        case Kind::young: return YoungFunction::exponential(param_).d2phi(x);
    }
    return 0.0;
}

double Utility::risk_aversion(double x) const {
    switch (kind_) {
        case Kind::linear: return 0.0;
        case Kind::square: return 1.0 / x;
        case Kind::power: return (param_ - 1.0) / x;
        case Kind::log: return -1.0 / x;
        case Kind::exponential: return param_;
        case Kind::young: return (1.0 + param_ * x) / x;
    }
    return 0.0;
}

double Utility::certainty_equivalent(const DiscreteDistribution& x) const {
    x.validate();
    switch (kind_) {
        case Kind::exponential:
        case Kind::young: {
            // Log domain: both utilities overflow quickly.
            std::vector<double> terms;
            const YoungFunction yf = YoungFunction::exponential(kind_ == Kind::young ? param_ : 1.0);
            for (std::size_t i = 0; i < x.atoms.size(); ++i) {
                if (x.probabilities[i] == 0.0) continue;
                const double lu = kind_ == Kind::young ? yf.log_phi(x.atoms[i]) : param_ * x.atoms[i];
                terms.push_back(std::log(x.probabilities[i]) + lu);
            }
            const double l = log_sum_exp(terms);
            return kind_ == Kind::young ? yf.phi_inverse_log(l) : l / param_;
        }
        default:
            break;
    }
    double e = 0.0;
    for (std::size_t i = 0; i < x.atoms.size(); ++i) e += x.probabilities[i] * value(x.atoms[i]);
    switch (kind_) {
        case Kind::linear: return e;
        case Kind::square: return std::sqrt(e);
        case Kind::power: return std::pow(e, 1.0 / param_);
        case Kind::log: return std::exp(e);
        default: return e;
    }
}

void check_risk_ordering(const Utility& u, const Utility& v, const DiscreteDistribution& x) {
    x.validate();
    const auto [lo_it, hi_it] = std::minmax_element(x.atoms.begin(), x.atoms.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    constexpr int kSamples = 1001;
    for (int i = 0; i < kSamples; ++i) {
        const double z = lo == hi ? lo : lo + (hi - lo) * i / (kSamples - 1);
        if (!(u.d1(z) > 0.0) || !(v.d1(z) > 0.0)) {
            throw ValidationError("utilities must be strictly increasing on the support hull (fails at " +
                                  format_double(z) + ")");
        }
        if (u.risk_aversion(z) > v.risk_aversion(z) + 1e-8) {
            throw ValidationError("risk-aversion ordering u''/u' <= v''/v' fails at " + format_double(z));
        }
    }
}

NormPair arrow_pratt_check(const Utility& u, const Utility& v, const DiscreteDistribution& x) {
    check_risk_ordering(u, v, x);
    return {u.certainty_equivalent(x), v.certainty_equivalent(x)};
}

NormPair scaling_corollary_check(const DiscreteDistribution& x, double c, const YoungFunction& young) {
    x.validate();
    if (!(c >= 1.0) || !std::isfinite(c)) throw ValidationError("scaling constant c must be >= 1");
    std::vector<double> plain;
    std::vector<double> scaled;
    for (std::size_t i = 0; i < x.atoms.size(); ++i) {
        if (x.atoms[i] < 0.0) throw ValidationError("scaling corollary needs nonnegative atoms");
        if (x.probabilities[i] == 0.0) continue;
        const double lp = std::log(x.probabilities[i]);
        plain.push_back(lp + young.log_phi(x.atoms[i]));
        scaled.push_back(lp + young.log_phi(c * x.atoms[i]));
    }
    return {c * young.phi_inverse_log(log_sum_exp(plain)), young.phi_inverse_log(log_sum_exp(scaled))};
}

namespace {

struct Support {
    double r0;
    double sup;
};

Support compact_support(const GridFunction& f) {
    require_nonnegative(f, "tightness diagnostic");
    const GridSpec& g = f.spec();
    Support s{0.0, 0.0};
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (!(f[k] > 1e-300)) continue;
        if (!g.is_interior(k)) throw ValidationError("tightness diagnostic needs f compactly supported inside the grid");
        s.r0 = std::max(s.r0, norm(g.node(k)));
        s.sup = std::max(s.sup, f[k]);
    }
    return s;
}

double ball_volume(double r, int dim) { return dim == 1 ? 2.0 * r : std::numbers::pi * r * r; }

}  // namespace

TightnessRecipe tightness_radius(const GridFunction& f, double m, const DominatingParams& params) {
    if (!(m > 0.0 && m <= 1.0)) throw ValidationError("tightness needs m in (0, 1]");
    if (params.young.kind() != YoungFunction::Kind::exponential) {
        throw ValidationError("the radius recipe is stated for the exponential Young function");
    }
    const Support s = compact_support(f);
    const double c = std::max(ball_volume(s.r0, f.spec().dim()), std::exp(params.a) * s.sup / m);
    const double b = params.young.b();
    return {s.r0, c, 2.0 * std::max({c, s.r0, 2.0 * b * c})};
}

std::vector<TightnessPoint> tightness_diagnostic(const GridFunction& f, double m, double r,
                                                 const std::vector<double>& t_list, const DominatingParams& params) {
    if (!(m > 0.0 && m <= 1.0)) throw ValidationError("tightness needs m in (0, 1]");
    const Support s = compact_support(f);
    const GridSpec& g = f.spec();
    const double c = std::max(ball_volume(s.r0, g.dim()), std::exp(params.a) * s.sup / m);
    if (!(r >= std::max(c, s.r0))) {
        throw ValidationError("radius " + format_double(r) + " is below max(c, r0) = " + format_double(std::max(c, s.r0)));
    }
    std::vector<TightnessPoint> out;
    for (double t : t_list) {
        if (!(t > 0.0 && t <= 1.0)) throw ValidationError("tightness times must lie in (0, 1]");
        const GridFunction tf = t_op(f, t, params);
        double sum = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k) {
            if (norm(g.node(k)) <= r || tf[k] == 0.0) continue;
            sum += trapezoid_weight(g, k) * params.young.Phi(tf[k] / (m * t));
        }
        const double log_bound = s.sup == 0.0 ? kNegInf
                                              : std::log(c) + log_brownian_tail(0.5 * r, t, g.dim()) + params.young.log_phi(c / t);
        out.push_back({t, sum, log_bound});
    }
    return out;
}

}  // namespace vhj
