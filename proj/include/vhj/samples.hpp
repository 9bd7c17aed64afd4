#pragma once

#include <cstdint>
#include <random>

#include "vhj/grid.hpp"

namespace vhj {

// Initial data families. Radial profiles use the Euclidean distance to `center`.

/// amplitude * exp(-|x - center|^2 / (2 sigma^2)).
GridFunction gaussian_bump(const GridSpec& g, double sigma, Point center = {0.0, 0.0}, double amplitude = 1.0);

/// log(1 + exp(-|x|^2 / 2)).
GridFunction log_bump(const GridSpec& g);

/// max(0, 1 - |x| / w).
GridFunction hat(const GridSpec& g, double w);

/// Indicator of [a, b] (of [a, b]^2 in 2D); nodes on a jump carry 1/2 per axis.
GridFunction indicator(const GridSpec& g, double a, double b);

/// amplitude * exp(1 - 1 / (1 - |x - center|^2 / radius^2)) inside the ball, 0 outside.
/// Smooth, supported in the closed ball, peak value `amplitude`.
GridFunction compact_bump(const GridSpec& g, double radius, Point center = {0.0, 0.0}, double amplitude = 1.0);

/**
 * Deterministic generator of random smooth test data: sums of one to three
 * Gaussian or compact bumps whose supports stay in the inner half of the
 * domain.
 */
class BumpSampler {
public:
    explicit BumpSampler(std::uint64_t seed) : rng_(seed) {}

    // Gaussian bumps, amplitudes in [0, max_amplitude] or +-max_amplitude when `signed_values`.
    GridFunction gaussian(const GridSpec& g, bool signed_values, double max_amplitude = 1.0);
    // Compact bumps, amplitudes as above.
    GridFunction compact(const GridSpec& g, bool signed_values, double max_amplitude = 1.0);

    double uniform(double lo, double hi);
    std::mt19937_64& engine() { return rng_; }

private:
    Point center(const GridSpec& g);

    std::mt19937_64 rng_;
};

}  // namespace vhj
