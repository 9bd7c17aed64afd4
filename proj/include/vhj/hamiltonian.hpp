#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vhj/grid.hpp"

namespace vhj {

/**
 * Convex Hamiltonian H with H(0) = 0 and |H(p)| <= K (|p| + |p|^2).
 *
 * Closed-form kinds work in one or two dimensions and are radial:
 *   zero            H = 0
 *   quadratic(c)    H = c |p|^2 / 2
 *   power(a, q)     H = a |p|^q, 1 <= q <= 2
 * The sampled kind is one-dimensional: a convex piecewise-linear
 * interpolant of user samples, extended linearly beyond the table.
 */
class Hamiltonian {
public:
    enum class Kind { zero, quadratic, power, sampled };

    static Hamiltonian zero(int dim = 1);
    static Hamiltonian quadratic(double c, int dim = 1);
    static Hamiltonian power(double a, double q, int dim = 1);
    static Hamiltonian sampled(std::vector<double> p, std::vector<double> values);
    // CSV `p,value` with strictly increasing p.
    static Hamiltonian read_sampled_csv(std::istream& in);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    double growth_constant() const { return growth_; }
    double coefficient() const { return coef_; }
    double exponent() const { return exponent_; }
    const std::vector<double>& sample_points() const { return ps_; }
    const std::vector<double>& sample_values() const { return hs_; }

    double operator()(const Point& p) const;

    // A point of the subdifferential of H at 0, hence a zero of the conjugate.
    Point conjugate_minimizer() const;

    // One-sided derivatives of the 1D restriction (sampled kind only).
    double right_slope(double x) const;
    double left_slope(double x) const;

    std::string describe() const;

private:
    Hamiltonian() = default;

    Kind kind_ = Kind::zero;
    int dim_ = 1;
    double coef_ = 0.0;
    double exponent_ = 2.0;
    double growth_ = 0.0;
    std::vector<double> ps_;
    std::vector<double> hs_;
};

inline double eval_h(const Hamiltonian& h, const Point& p) { return h(p); }

struct ConjugateValue {
    double value;   // +inf when the defining supremum runs away
    bool attained;  // maximizer found strictly inside the search box
};

struct ConjugateSearch {
    double radius = 0.0;  // 0 selects 4 (|lambda| + K) + 1
    int samples = 1025;
    Point center{0.0, 0.0};
};

/// L(lambda) = sup_x (<lambda, x> - H(x)).
ConjugateValue legendre_conjugate(const Hamiltonian& h, const Point& lambda, const ConjugateSearch& search = {});

struct ConjugateTable {
    std::vector<Point> lambda_nodes;
    std::vector<double> values;
    std::vector<bool> attained_flags;
    std::size_t argmin = 0;

    Point minimizer() const { return lambda_nodes.at(argmin); }
    double min_value() const { return values.at(argmin); }
};

// Uniform grid on [-box, box]^dim with `lambda_samples` (odd, >= 64) nodes
// per axis; the minimizer of L is appended when it is not already a node.
ConjugateTable build_conjugate_table(const Hamiltonian& h, double lambda_box, int lambda_samples);

// Tabulates L on arbitrary nodes without invariant checks.
ConjugateTable tabulate_conjugate(const Hamiltonian& h, std::vector<Point> nodes);

// Throws ContractViolation when the table breaks nonnegativity, the zero
// minimum, or the quadratic lower growth bound L >= |lambda|^2 / (16 K).
void check_conjugate_invariants(const Hamiltonian& h, const ConjugateTable& table);

}  // namespace vhj
