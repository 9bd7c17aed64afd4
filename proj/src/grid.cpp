#include "vhj/grid.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "vhj/error.hpp"
#include "vhj/io.hpp"

namespace vhj {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ValidationError("not a number: '" + std::string(text) + "'");
    return v;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
        return s;
    };
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

GridSpec::GridSpec(int dim, double half_width, std::size_t intervals)
    : dim_(dim), half_width_(half_width), intervals_(intervals), spacing_(0.0) {
    if (dim != 1 && dim != 2) throw ValidationError("grid dimension must be 1 or 2");
    if (!(half_width > 0.0) || !std::isfinite(half_width)) throw ValidationError("grid half-width must be positive");
    if (intervals < 16 || !std::has_single_bit(intervals)) {
        throw ValidationError("grid intervals must be a power of two >= 16");
    }
    spacing_ = 2.0 * half_width / static_cast<double>(intervals);
}

std::size_t GridSpec::size() const {
    const std::size_t n = points_per_axis();
    return dim_ == 1 ? n : n * n;
}

double GridSpec::cell_volume() const { return dim_ == 1 ? spacing_ : spacing_ * spacing_; }

Point GridSpec::node(std::size_t k) const {
    if (dim_ == 1) return {coordinate(static_cast<std::ptrdiff_t>(k)), 0.0};
    const std::size_t n = points_per_axis();
    return {coordinate(static_cast<std::ptrdiff_t>(k / n)), coordinate(static_cast<std::ptrdiff_t>(k % n))};
}

bool GridSpec::is_interior(std::size_t k) const {
    const std::size_t n = points_per_axis();
    auto inner = [n](std::size_t i) { return i > 0 && i + 1 < n; };
    if (dim_ == 1) return inner(k);
    return inner(k / n) && inner(k % n);
}

GridFunction::GridFunction(GridSpec spec, std::vector<double> values)
    : spec_(std::move(spec)), values_(std::move(values)) {
    if (values_.size() != spec_.size()) throw ValidationError("grid function size does not match its grid");
    for (double v : values_) {
        if (!std::isfinite(v)) throw ValidationError("grid function values must be finite");
    }
}

GridFunction GridFunction::zeros(const GridSpec& spec) { return GridFunction(spec, std::vector<double>(spec.size(), 0.0)); }

GridFunction GridFunction::abs() const {
    std::vector<double> v(values_);
    for (double& x : v) x = std::fabs(x);
    return GridFunction(spec_, std::move(v));
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
    if (!(other.spec_ == spec_)) throw ValidationError("grid mismatch");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
    if (!(other.spec_ == spec_)) throw ValidationError("grid mismatch");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
    return *this;
}

GridFunction& GridFunction::operator*=(double c) {
    for (double& x : values_) x *= c;
    return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double c, GridFunction a) { return a *= c; }
GridFunction operator-(GridFunction a) { return a *= -1.0; }

double sup_norm(const GridFunction& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::fabs(v));
    return m;
}

std::vector<Point> discrete_gradient(const GridFunction& f) {
    const GridSpec& g = f.spec();
    const double inv2h = 1.0 / (2.0 * g.spacing());
    const std::size_t n = g.points_per_axis();
    std::vector<Point> grad(f.size(), Point{0.0, 0.0});
    const auto vals = f.values();
    if (g.dim() == 1) {
        for (std::size_t i = 1; i + 1 < n; ++i) grad[i][0] = (vals[i + 1] - vals[i - 1]) * inv2h;
        return grad;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        for (std::size_t j = 1; j + 1 < n; ++j) {
            const std::size_t k = i * n + j;
            grad[k][0] = (vals[k + n] - vals[k - n]) * inv2h;
            grad[k][1] = (vals[k + 1] - vals[k - 1]) * inv2h;
        }
    }
    return grad;
}

std::vector<double> discrete_laplacian(const GridFunction& f) {
    const GridSpec& g = f.spec();
    const double invh2 = 1.0 / (g.spacing() * g.spacing());
    const std::size_t n = g.points_per_axis();
    std::vector<double> lap(f.size(), 0.0);
    const auto vals = f.values();
    if (g.dim() == 1) {
        for (std::size_t i = 1; i + 1 < n; ++i) lap[i] = (vals[i + 1] - 2.0 * vals[i] + vals[i - 1]) * invh2;
        return lap;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        for (std::size_t j = 1; j + 1 < n; ++j) {
            const std::size_t k = i * n + j;
            lap[k] = (vals[k + n] + vals[k - n] + vals[k + 1] + vals[k - 1] - 4.0 * vals[k]) * invh2;
        }
    }
    return lap;
}

double discrete_gradient_sup(const GridFunction& f) {
    double m = 0.0;
    for (const Point& p : discrete_gradient(f)) m = std::max(m, norm(p));
    return m;
}

double discrete_laplacian_sup(const GridFunction& f) {
    double m = 0.0;
    for (double v : discrete_laplacian(f)) m = std::max(m, std::fabs(v));
    return m;
}

double integral(const GridFunction& f) {
    const GridSpec& g = f.spec();
    const std::size_t n = g.points_per_axis();
    auto weight = [n](std::size_t i) { return (i == 0 || i + 1 == n) ? 0.5 : 1.0; };
    const auto vals = f.values();
    double sum = 0.0;
    if (g.dim() == 1) {
        for (std::size_t i = 0; i < n; ++i) sum += weight(i) * vals[i];
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < n; ++j) row += weight(j) * vals[i * n + j];
            sum += weight(i) * row;
        }
    }
    return sum * g.cell_volume();
}

double trapezoid_weight(const GridSpec& g, std::size_t k) {
    const std::size_t n = g.points_per_axis();
    auto axis = [n](std::size_t i) { return (i == 0 || i + 1 == n) ? 0.5 : 1.0; };
    if (g.dim() == 1) return g.cell_volume() * axis(k);
    return g.cell_volume() * axis(k / n) * axis(k % n);
}

void write_csv(std::ostream& out, const GridFunction& f) {
    const GridSpec& g = f.spec();
    out << (g.dim() == 1 ? "x,value\n" : "x,y,value\n");
    for (std::size_t k = 0; k < f.size(); ++k) {
        const Point p = g.node(k);
        out << format_double(p[0]);
        if (g.dim() == 2) out << ',' << format_double(p[1]);
        out << ',' << format_double(f[k]) << '\n';
    }
}

GridFunction read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty grid CSV");
    const auto header = split_csv(line);
    int dim = 0;
    if (header.size() == 2 && header[0] == "x" && header[1] == "value") dim = 1;
    else if (header.size() == 3 && header[0] == "x" && header[1] == "y" && header[2] == "value") dim = 2;
    else throw ValidationError("grid CSV header must be 'x,value' or 'x,y,value'");

    std::vector<double> xs, ys, vals;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto cols = split_csv(line);
        if (cols.size() != static_cast<std::size_t>(dim + 1)) throw ValidationError("grid CSV row has wrong column count");
        xs.push_back(parse_double(cols[0]));
        if (dim == 2) ys.push_back(parse_double(cols[1]));
        vals.push_back(parse_double(cols.back()));
    }
    std::size_t per_axis = vals.size();
    if (dim == 2) {
        per_axis = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(vals.size()))));
        if (per_axis * per_axis != vals.size()) throw ValidationError("2D grid CSV is not square");
    }
    if (per_axis < 2) throw ValidationError("grid CSV has too few nodes");
    const double half_width = -xs.front();
    GridSpec spec(dim, half_width, per_axis - 1);
    const double tol = 1e-9 * std::max(1.0, half_width);
    for (std::size_t k = 0; k < vals.size(); ++k) {
        const Point p = spec.node(k);
        if (std::fabs(p[0] - xs[k]) > tol || (dim == 2 && std::fabs(p[1] - ys[k]) > tol)) {
            throw ValidationError("grid CSV nodes are not a symmetric uniform grid in lexicographic order");
        }
    }
    return GridFunction(spec, std::move(vals));
}

}  // namespace vhj
