#pragma once

#include <string>
#include <vector>

#include "vhj/grid.hpp"

namespace vhj {

/**
 * Young function Phi(x) = phi(|x|) with phi increasing, convex and phi(0) = 0.
 *
 *   exponential(b)  phi(x) = (b x - 1) e^(b x) + 1
 *   power(p)        phi(x) = x^p, p >= 1
 *   entropic        phi(x) = e^x - 1
 *
 * phi and its inverse are defined on [0, inf). log_phi and
 * phi_inverse_log stay finite where phi itself overflows.
 */
class YoungFunction {
public:
    enum class Kind { exponential, power, entropic };

    static YoungFunction exponential(double b);
    static YoungFunction power(double p);
    static YoungFunction entropic();
    // b = 8 K + 1.
    static YoungFunction for_growth(double k);

    Kind kind() const { return kind_; }
    double b() const { return param_; }
    double p() const { return param_; }

    double phi(double x) const;
    double log_phi(double x) const;
    double Phi(double x) const;
    double dphi(double x) const;
    double d2phi(double x) const;

    double phi_inverse(double y) const;
    // phi^-1(exp(log_y)).
    double phi_inverse_log(double log_y) const;

    std::string describe() const;

private:
    YoungFunction(Kind kind, double param) : kind_(kind), param_(param) {}

    Kind kind_;
    double param_;
};

/// phi^-1(y) for the exponential family with parameter b.
double phi_inverse(double y, double b);

/// Trapezoid integral of Phi(f / m); +inf when it overflows.
double modular(const GridFunction& f, double m, const YoungFunction& young);

/// inf { m > 0 : integral Phi(f / m) <= R }, relative tolerance 1e-12.
double luxemburg_norm(const GridFunction& f, double R, const YoungFunction& young);

struct NormEquivalence {
    double norm_1;  // ||f||_Phi
    double norm_R;  // ||f||_{Phi,R}
    bool lhs_ok;    // norm_R <= norm_1
    bool rhs_ok;    // norm_1 <= R norm_R
};

NormEquivalence norm_equivalence_check(const GridFunction& f, double R, const YoungFunction& young);

struct OrliczBall {
    double R = 1.0;
    double radius = 1.0;
    GridFunction center;
};

struct BallMembership {
    bool member;
    double distance;  // ||f - center||_{Phi,R}
};

BallMembership ball_membership(const GridFunction& f, const OrliczBall& ball, const YoungFunction& young);

/// R = 1 + integral Phi((f - center) / r); f then lies in B_R(center, r).
double ball_witness(const GridFunction& f, const GridFunction& center, double r, const YoungFunction& young);

/// Discrete convolution with the C-infinity bump exp(-1 / (1 - |y / width|^2)),
/// renormalized to unit discrete mass; f is zero off the grid.
GridFunction mollify(const GridFunction& f, double width);

struct MollifyCheck {
    double lhs;  // ||f * eta||_{Phi,R}
    double rhs;  // ||f||_{Phi,R}
};

MollifyCheck mollify_contract_check(const GridFunction& f, double width, double R, const YoungFunction& young);

/// Truncates f to the closed ball |x| <= radius and mollifies at `width`.
GridFunction density_approximant(const GridFunction& f, double radius, double width);

/// c f with ||c f||_{Phi,R} = target; f must be nonzero.
GridFunction rescale_to_norm(const GridFunction& f, double target, double R, const YoungFunction& young);

}  // namespace vhj
