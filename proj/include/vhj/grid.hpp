#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace vhj {

// A point of R^d for d in {1, 2}; in 1D the second coordinate is unused and
// kept at zero so Euclidean norms need no dimension switch.
using Point = std::array<double, 2>;

inline double norm(const Point& p) { return std::hypot(p[0], p[1]); }
inline double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1]; }

/**
 * Uniform grid on [-X, X]^dim.
 *
 * `intervals` (a power of two, at least 16) counts the cells per axis, so
 * every axis carries intervals + 1 nodes and x = 0 is the node with index
 * intervals / 2. Nodes of a 2D grid are stored row-major with the x index
 * outermost.
 */
class GridSpec {
public:
    GridSpec(int dim, double half_width, std::size_t intervals);

    int dim() const { return dim_; }
    double half_width() const { return half_width_; }
    std::size_t intervals() const { return intervals_; }
    std::size_t points_per_axis() const { return intervals_ + 1; }
    std::size_t size() const;
    double spacing() const { return spacing_; }
    double cell_volume() const;

    double coordinate(std::ptrdiff_t axis_index) const {
        return -half_width_ + static_cast<double>(axis_index) * spacing_;
    }
    std::size_t origin_index() const { return intervals_ / 2; }
    std::size_t flat(std::size_t i, std::size_t j) const { return i * points_per_axis() + j; }
    Point node(std::size_t flat_index) const;
    bool is_interior(std::size_t flat_index) const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
    int dim_;
    double half_width_;
    std::size_t intervals_;
    double spacing_;
};

/// Samples of a function on a GridSpec; identically zero outside the grid.
class GridFunction {
public:
    GridFunction(GridSpec spec, std::vector<double> values);

    static GridFunction zeros(const GridSpec& spec);
    template <class F>
    static GridFunction sample(const GridSpec& spec, F&& fn) {
        std::vector<double> v(spec.size());
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = fn(spec.node(k));
        return GridFunction(spec, std::move(v));
    }

    const GridSpec& spec() const { return spec_; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t k) const { return values_[k]; }

    // Zero-extended access by (possibly out of range) axis indices.
    double at(std::ptrdiff_t i) const {
        return (i < 0 || i >= static_cast<std::ptrdiff_t>(values_.size())) ? 0.0 : values_[static_cast<std::size_t>(i)];
    }
    double at(std::ptrdiff_t i, std::ptrdiff_t j) const {
        const auto n = static_cast<std::ptrdiff_t>(spec_.points_per_axis());
        if (i < 0 || j < 0 || i >= n || j >= n) return 0.0;
        return values_[static_cast<std::size_t>(i * n + j)];
    }

    GridFunction abs() const;
    GridFunction& operator+=(const GridFunction& other);
    GridFunction& operator-=(const GridFunction& other);
    GridFunction& operator*=(double c);

private:
    GridSpec spec_;
    std::vector<double> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double c, GridFunction a);
GridFunction operator-(GridFunction a);

double sup_norm(const GridFunction& f);

// Central-difference gradient and 5-point (3-point in 1D) Laplacian at
// interior nodes. Boundary entries are zero.
std::vector<Point> discrete_gradient(const GridFunction& f);
std::vector<double> discrete_laplacian(const GridFunction& f);

double discrete_gradient_sup(const GridFunction& f);
double discrete_laplacian_sup(const GridFunction& f);

/// Trapezoidal rule over the truncated domain.
double integral(const GridFunction& f);
// Trapezoid quadrature weight of one node (cell volume times 1/2 per boundary axis).
double trapezoid_weight(const GridSpec& g, std::size_t flat_index);

// CSV with header `x,value` or `x,y,value`, one node per row in
// lexicographic order, 17 significant digits.
void write_csv(std::ostream& out, const GridFunction& f);
GridFunction read_csv(std::istream& in);

}  // namespace vhj
