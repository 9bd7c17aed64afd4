#pragma once

#include <iosfwd>
#include <vector>

#include "vhj/chernoff.hpp"
#include "vhj/grid.hpp"
#include "vhj/kernel.hpp"
#include "vhj/orlicz.hpp"

namespace vhj {

struct DominatingParams {
    double a = 0.0;
    YoungFunction young = YoungFunction::exponential(1.0);
    double truncation_multiple = kDefaultTruncation;

    // a = K^2 and b = 8 K + 1.
    static DominatingParams from_growth(double k);
    void validate() const;
};

/**
 * (T(t) f)(x) = phi^-1(E[phi(e^(a t) f(x + W_t))]) for f >= 0.
 *
 * Uses the same renormalized lattice weights as heat_step. The expectation
 * is accumulated as a log-sum-exp of log phi, so it neither overflows for
 * large e^(a t) f nor underflows in Gaussian tails. The kernel window is
 * widened past truncation_multiple sqrt(t) until the dropped tail, weighted
 * by the largest phi value, changes the result by less than 1e-12. t = 0
 * returns f.
 */
GridFunction t_op(const GridFunction& f, double t, const DominatingParams& params);

struct DominationResult {
    double one_step_violation;  // max |I(t) f| - T(t)|f|
    double iterate_violation;   // max |I(2^-n)^(2^n t) f| - T(t)|f|
};

DominationResult domination_check(const GridFunction& f, const Dyadic& t, unsigned level, const Hamiltonian& h,
                                  const DominatingParams& params, const ChernoffOptions& options = {});

/// max of T(s) T(t) f - T(s + t) f.
double semigroup_sub_check(const GridFunction& f, double s, double t, const DominatingParams& params);

struct NormPair {
    double lhs;
    double rhs;
};

/// (||T(t) f||_{Phi,R}, e^(a t) ||f||_{Phi,R}); f must lie in B_R(e^(-a t)).
NormPair norm_bound_check(const GridFunction& f, double t, double R, const DominatingParams& params);

/// (||S f - S g||_{Phi,R}, 4 e^(a t) ||f - g||_{Phi,R}) with S the level-n
/// iterate; f and g must lie in B_R(e^(-a t) / 3).
NormPair s_lipschitz_orlicz_check(const GridFunction& f, const GridFunction& g, const Dyadic& t, unsigned level,
                                  double R, const Hamiltonian& h, const DominatingParams& params,
                                  const ChernoffOptions& options = {});

/// Finite distribution; probabilities are nonnegative and sum to 1 within 1e-12.
struct DiscreteDistribution {
    std::vector<double> atoms;
    std::vector<double> probabilities;

    void validate() const;
    static DiscreteDistribution uniform(std::vector<double> atoms);
};

// CSV `atom,probability`.
DiscreteDistribution read_distribution_csv(std::istream& in);

/// Strictly increasing C^2 utility on the relevant interval.
class Utility {
public:
    enum class Kind { linear, square, power, log, exponential, young };

    static Utility linear();
    static Utility square();
    static Utility power(double p);        // x^p on x > 0
    static Utility log();                  // log x on x > 0
    static Utility exponential(double k);  // e^(k x), k > 0
    static Utility young(double b);        // (b x - 1) e^(b x) + 1 on x >= 0

    Kind kind() const { return kind_; }
    double value(double x) const;
    double d1(double x) const;
    double d2(double x) const;
    // u''/u', the absolute risk aversion.
    double risk_aversion(double x) const;
    // u^-1(E u(X)).
    double certainty_equivalent(const DiscreteDistribution& x) const;

private:
    Utility(Kind kind, double param) : kind_(kind), param_(param) {}

    Kind kind_;
    double param_;
};

/// Throws ValidationError unless u and v are increasing with u''/u' <= v''/v'
/// (tolerance 1e-8) on 1001 points of the convex hull of the atoms.
void check_risk_ordering(const Utility& u, const Utility& v, const DiscreteDistribution& x);

/// (u^-1(E u(X)), v^-1(E v(X))) after check_risk_ordering.
NormPair arrow_pratt_check(const Utility& u, const Utility& v, const DiscreteDistribution& x);

/// (c phi^-1(E phi(X)), phi^-1(E phi(c X))) for c >= 1 and X >= 0.
NormPair scaling_corollary_check(const DiscreteDistribution& x, double c, const YoungFunction& young);

struct TightnessRecipe {
    double r0;       // support radius
    double c;        // max(|B(r0)|, e^a sup f / m)
    double radius;   // 2 max(c, r0, 2 b c)
};

/// Support radius, constant c and the integration radius for the tail diagnostic.
TightnessRecipe tightness_radius(const GridFunction& f, double m, const DominatingParams& params);

struct TightnessPoint {
    double t;
    double integral;    // trapezoid integral of Phi(T(t) f / (m t)) over |x| > r
    double log_bound;   // log of c P(|W_t| >= r / 2) Phi(c / t), possibly -inf
};

/**
 * Tail integrals over the grid part of the complement of B(r). Requires
 * f >= 0 vanishing on the grid boundary, m in (0, 1] and r >= max(c, r0).
 */
std::vector<TightnessPoint> tightness_diagnostic(const GridFunction& f, double m, double r,
                                                 const std::vector<double>& t_list, const DominatingParams& params);

}  // namespace vhj
