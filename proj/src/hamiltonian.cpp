#include "vhj/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>

#include "vhj/error.hpp"
#include "vhj/io.hpp"

namespace vhj {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dim(int dim) {
    if (dim != 1 && dim != 2) throw ValidationError("Hamiltonian dimension must be 1 or 2");
}

// Largest ratio |H(p)| / (|p| + |p|^2) over a dense sample of the table, its
// linear extensions, and the limits p -> 0 from either side.
double sampled_growth(const Hamiltonian& h) {
    const auto& ps = h.sample_points();
    double k = std::max(std::fabs(h.right_slope(0.0)), std::fabs(h.left_slope(0.0)));
    auto visit = [&](double p) {
        if (p == 0.0) return;
        const double a = std::fabs(p);
        k = std::max(k, std::fabs(h({p, 0.0})) / (a + a * a));
    };
    for (std::size_t s = 0; s + 1 < ps.size(); ++s) {
        for (int q = 0; q <= 64; ++q) visit(ps[s] + (ps[s + 1] - ps[s]) * q / 64.0);
    }
    const double span = std::max(1.0, ps.back() - ps.front());
    for (double step = span / 64.0; step < 1e6 * span; step *= 1.25) {
        visit(ps.back() + step);
        visit(ps.front() - step);
    }
    return k * (1.0 + 1e-12);
}

}  // namespace

Hamiltonian Hamiltonian::zero(int dim) {
    check_dim(dim);
    Hamiltonian h;
    h.kind_ = Kind::zero;
    h.dim_ = dim;
    return h;
}

Hamiltonian Hamiltonian::quadratic(double c, int dim) {
    check_dim(dim);
    if (!(c > 0.0) || !std::isfinite(c)) throw ValidationError("quadratic Hamiltonian needs c > 0");
    Hamiltonian h;
    h.kind_ = Kind::quadratic;
    h.dim_ = dim;
    h.coef_ = c;
    h.exponent_ = 2.0;
    h.growth_ = c / 2.0;
    return h;
}

Hamiltonian Hamiltonian::power(double a, double q, int dim) {
    check_dim(dim);
    if (!(a > 0.0) || !std::isfinite(a)) throw ValidationError("power Hamiltonian needs a > 0");
    if (!(q >= 1.0 && q <= 2.0)) throw ValidationError("power Hamiltonian needs 1 <= q <= 2");
    Hamiltonian h;
    h.kind_ = Kind::power;
    h.dim_ = dim;
    h.coef_ = a;
    h.exponent_ = q;
    h.growth_ = a;
    return h;
}

Hamiltonian Hamiltonian::sampled(std::vector<double> p, std::vector<double> values) {
    if (p.size() != values.size() || p.size() < 2) throw ValidationError("sampled Hamiltonian needs >= 2 matching samples");
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (!std::isfinite(p[k]) || !std::isfinite(values[k])) throw ValidationError("sampled Hamiltonian values must be finite");
        if (k > 0 && !(p[k] > p[k - 1])) throw ValidationError("sampled Hamiltonian abscissae must be strictly increasing");
    }
    if (!(p.front() <= 0.0 && p.back() >= 0.0)) throw ValidationError("sampled Hamiltonian must cover p = 0");
    // Convexity of the interpolant: non-decreasing slopes.
    double prev = -kInf;
    for (std::size_t k = 0; k + 1 < p.size(); ++k) {
        const double slope = (values[k + 1] - values[k]) / (p[k + 1] - p[k]);
        if (slope < prev - 1e-10 * (1.0 + std::fabs(prev))) throw ValidationError("non-convex sampled Hamiltonian");
        prev = std::max(prev, slope);
    }
    Hamiltonian h;
    h.kind_ = Kind::sampled;
    h.dim_ = 1;
    h.ps_ = std::move(p);
    h.hs_ = std::move(values);
    if (std::fabs(h({0.0, 0.0})) > 1e-12) throw ValidationError("sampled Hamiltonian must satisfy H(0) = 0");
    h.growth_ = sampled_growth(h);
    return h;
}

Hamiltonian Hamiltonian::read_sampled_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty Hamiltonian CSV");
    const auto header = split_csv(line);
    if (header.size() != 2 || header[0] != "p" || header[1] != "value") {
        throw ValidationError("Hamiltonian CSV header must be 'p,value'");
    }
    std::vector<double> p, v;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto cols = split_csv(line);
        if (cols.size() != 2) throw ValidationError("Hamiltonian CSV row must have 2 columns");
        p.push_back(parse_double(cols[0]));
        v.push_back(parse_double(cols[1]));
    }
    return sampled(std::move(p), std::move(v));
}

double Hamiltonian::right_slope(double x) const {
    if (kind_ != Kind::sampled) throw ValidationError("one-sided slopes are only tabulated for sampled Hamiltonians");
    auto it = std::upper_bound(ps_.begin(), ps_.end(), x);
    std::size_t seg = it == ps_.begin() ? 0 : static_cast<std::size_t>(it - ps_.begin()) - 1;
    seg = std::min(seg, ps_.size() - 2);
    return (hs_[seg + 1] - hs_[seg]) / (ps_[seg + 1] - ps_[seg]);
}

double Hamiltonian::left_slope(double x) const {
    if (kind_ != Kind::sampled) throw ValidationError("one-sided slopes are only tabulated for sampled Hamiltonians");
    auto it = std::lower_bound(ps_.begin(), ps_.end(), x);
    std::size_t seg = it == ps_.begin() ? 0 : static_cast<std::size_t>(it - ps_.begin()) - 1;
    seg = std::min(seg, ps_.size() - 2);
    return (hs_[seg + 1] - hs_[seg]) / (ps_[seg + 1] - ps_[seg]);
}

double Hamiltonian::operator()(const Point& p) const {
    switch (kind_) {
        case Kind::zero:
            return 0.0;
        case Kind::quadratic:
            return 0.5 * coef_ * dot(p, p);
        case Kind::power: {
            const double r = norm(p);
            return exponent_ == 1.0 ? coef_ * r : coef_ * std::pow(r, exponent_);
        }
        case Kind::sampled: {
            const double x = p[0];
            auto it = std::upper_bound(ps_.begin(), ps_.end(), x);
            std::size_t seg = it == ps_.begin() ? 0 : static_cast<std::size_t>(it - ps_.begin()) - 1;
            seg = std::min(seg, ps_.size() - 2);
            const double slope = (hs_[seg + 1] - hs_[seg]) / (ps_[seg + 1] - ps_[seg]);
            return hs_[seg] + slope * (x - ps_[seg]);
        }
    }
    return 0.0;
}

Point Hamiltonian::conjugate_minimizer() const {
    if (kind_ != Kind::sampled) return {0.0, 0.0};
    return {std::clamp(0.0, left_slope(0.0), right_slope(0.0)), 0.0};
}

std::string Hamiltonian::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::zero: os << "zero"; break;
        case Kind::quadratic: os << "quadratic:" << format_double(coef_); break;
        case Kind::power: os << "power:" << format_double(coef_) << ':' << format_double(exponent_); break;
        case Kind::sampled: os << "sampled(" << ps_.size() << " points)"; break;
    }
    return os.str();
}

ConjugateValue legendre_conjugate(const Hamiltonian& h, const Point& lambda, const ConjugateSearch& search) {
    if (search.samples < 64) throw ValidationError("conjugate search needs at least 64 samples");
    const double radius = search.radius > 0.0 ? search.radius : 4.0 * (norm(lambda) + h.growth_constant()) + 1.0;
    if (search.radius < 0.0) throw ValidationError("conjugate search radius must be positive");
    if (std::fabs(search.center[0]) > radius || std::fabs(search.center[1]) > radius) {
        throw ValidationError("conjugate search box must contain the origin");
    }

    const double r = norm(lambda);
    switch (h.kind()) {
        case Hamiltonian::Kind::zero:
            return r == 0.0 ? ConjugateValue{0.0, true} : ConjugateValue{kInf, false};
        case Hamiltonian::Kind::quadratic:
            return {r * r / (2.0 * h.coefficient()), true};
        case Hamiltonian::Kind::power: {
            const double a = h.coefficient();
            const double q = h.exponent();
            if (q == 1.0) return r <= a * (1.0 + 1e-15) ? ConjugateValue{0.0, true} : ConjugateValue{kInf, false};
            return {r * (1.0 - 1.0 / q) * std::pow(r / (a * q), 1.0 / (q - 1.0)), true};
        }
        case Hamiltonian::Kind::sampled:
            break;
    }

    // Piecewise-linear H: <lambda, x> - H(x) is piecewise linear in x, so its
    // maximum over the box sits on a vertex or a box end.
    const double lam = lambda[0];
    const double lo = search.center[0] - radius;
    const double hi = search.center[0] + radius;
    double best = lam * lo - h({lo, 0.0});
    double arg = lo;
    for (double x : h.sample_points()) {
        if (x <= lo || x >= hi) continue;
        const double v = lam * x - h({x, 0.0});
        if (v > best) {
            best = v;
            arg = x;
        }
    }
    const double v_hi = lam * hi - h({hi, 0.0});
    if (v_hi > best) {
        best = v_hi;
        arg = hi;
    }
    const double slack = 1e-12 * (1.0 + std::fabs(lam));
    if (arg == hi) {
        if (lam - h.right_slope(hi) > slack) return {kInf, false};
        return {best, false};
    }
    if (arg == lo) {
        if (h.left_slope(lo) - lam > slack) return {kInf, false};
        return {best, false};
    }
    return {best, true};
}

ConjugateTable tabulate_conjugate(const Hamiltonian& h, std::vector<Point> nodes) {
    ConjugateTable table;
    table.values.reserve(nodes.size());
    table.attained_flags.reserve(nodes.size());
    double best = kInf;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const ConjugateValue c = legendre_conjugate(h, nodes[k]);
        table.values.push_back(c.value);
        table.attained_flags.push_back(c.attained);
        if (c.value < best) {
            best = c.value;
            table.argmin = k;
        }
    }
    table.lambda_nodes = std::move(nodes);
    return table;
}

ConjugateTable build_conjugate_table(const Hamiltonian& h, double lambda_box, int lambda_samples) {
    if (!(lambda_box > 0.0)) throw ValidationError("conjugate table box must be positive");
    if (lambda_samples < 64) throw ValidationError("conjugate table needs at least 64 samples per axis");
    if (lambda_samples % 2 == 0) throw ValidationError("conjugate table needs an odd sample count so that lambda = 0 is a node");
    const double step = 2.0 * lambda_box / (lambda_samples - 1);
    std::vector<Point> nodes;
    if (h.dim() == 1) {
        for (int i = 0; i < lambda_samples; ++i) nodes.push_back({-lambda_box + i * step, 0.0});
    } else {
        for (int i = 0; i < lambda_samples; ++i) {
            for (int j = 0; j < lambda_samples; ++j) nodes.push_back({-lambda_box + i * step, -lambda_box + j * step});
        }
    }
    const Point lam0 = h.conjugate_minimizer();
    const bool present = std::any_of(nodes.begin(), nodes.end(), [&](const Point& p) {
        return std::fabs(p[0] - lam0[0]) < 1e-14 && std::fabs(p[1] - lam0[1]) < 1e-14;
    });
    if (!present) nodes.push_back(lam0);
    ConjugateTable table = tabulate_conjugate(h, std::move(nodes));
    check_conjugate_invariants(h, table);
    return table;
}

void check_conjugate_invariants(const Hamiltonian& h, const ConjugateTable& table) {
    const double k = h.growth_constant();
    for (std::size_t i = 0; i < table.values.size(); ++i) {
        const double v = table.values[i];
        if (!std::isfinite(v)) continue;
        if (v < -1e-8) throw ContractViolation("conjugate is negative at a table node");
        const double r = norm(table.lambda_nodes[i]);
        if (k > 0.0 && r >= 2.0 * k && v < r * r / (16.0 * k) - 1e-8) {
            throw ContractViolation("conjugate violates the lower growth bound |lambda|^2/(16K)");
        }
    }
    if (table.values.empty() || std::fabs(table.min_value()) > 1e-8) {
        throw ContractViolation("conjugate table minimum is not zero");
    }
}

}  // namespace vhj
