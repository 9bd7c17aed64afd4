#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace vhj {

// Nonnegative dyadic rational k / 2^e, stored in lowest terms (k odd or k == 0).
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(std::uint64_t numerator, unsigned exponent);

    // Accepts "k/2^n", "k/N" with N a power of two, or a bare integer "k".
    static Dyadic parse(std::string_view text);

    std::uint64_t numerator() const { return numerator_; }
    unsigned exponent() const { return exponent_; }
    double value() const;
    bool is_zero() const { return numerator_ == 0; }

    // Smallest level n with 2^n * t integral.
    unsigned min_level() const { return exponent_; }
    // Number of steps of length 2^-level needed to reach t (2^level * t).
    std::uint64_t steps_at_level(unsigned level) const;

    std::string to_string() const;

    friend bool operator==(const Dyadic&, const Dyadic&) = default;

private:
    std::uint64_t numerator_ = 0;
    unsigned exponent_ = 0;
};

Dyadic operator+(const Dyadic& a, const Dyadic& b);

}  // namespace vhj
