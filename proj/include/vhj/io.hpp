#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace vhj {

// Shortest-round-trip-safe text for doubles: 17 significant digits.
std::string format_double(double v);

double parse_double(std::string_view text);

// Splits a CSV line on commas, trimming surrounding whitespace.
std::vector<std::string_view> split_csv(std::string_view line);

}  // namespace vhj
