#include "vhj/dyadic.hpp"

#include <bit>
#include <charconv>
#include <cmath>

#include "vhj/error.hpp"

namespace vhj {

namespace {

constexpr unsigned kMaxExponent = 40;

[[noreturn]] void reject(std::string_view text) {
    throw ValidationError("t must be dyadic k/2^n (got '" + std::string(text) + "')");
}

std::uint64_t parse_uint(std::string_view s, std::string_view whole) {
    if (s.empty()) reject(whole);
    std::uint64_t v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) reject(whole);
    return v;
}

}  // namespace

Dyadic::Dyadic(std::uint64_t numerator, unsigned exponent) : numerator_(numerator), exponent_(exponent) {
    if (exponent_ > kMaxExponent) throw ValidationError("dyadic exponent too large");
    if (numerator_ == 0) {
        exponent_ = 0;
        return;
    }
    while (exponent_ > 0 && (numerator_ & 1u) == 0) {
        numerator_ >>= 1;
        --exponent_;
    }
}

Dyadic Dyadic::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Dyadic(parse_uint(text, text), 0);
    const std::uint64_t k = parse_uint(text.substr(0, slash), text);
    std::string_view den = text.substr(slash + 1);
    if (den.starts_with("2^")) {
        const std::uint64_t n = parse_uint(den.substr(2), text);
        if (n > kMaxExponent) reject(text);
        return Dyadic(k, static_cast<unsigned>(n));
    }
    const std::uint64_t d = parse_uint(den, text);
    if (d == 0 || !std::has_single_bit(d)) reject(text);
    return Dyadic(k, static_cast<unsigned>(std::countr_zero(d)));
}

double Dyadic::value() const { return std::ldexp(static_cast<double>(numerator_), -static_cast<int>(exponent_)); }

std::uint64_t Dyadic::steps_at_level(unsigned level) const {
    if (level < exponent_) {
        throw ValidationError("level " + std::to_string(level) + " too coarse for t=" + to_string());
    }
    return numerator_ << (level - exponent_);
}

std::string Dyadic::to_string() const {
    return std::to_string(numerator_) + "/2^" + std::to_string(exponent_);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    const unsigned e = std::max(a.exponent(), b.exponent());
    return Dyadic((a.numerator() << (e - a.exponent())) + (b.numerator() << (e - b.exponent())), e);
}

}  // namespace vhj
