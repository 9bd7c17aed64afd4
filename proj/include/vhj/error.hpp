#pragma once

#include <stdexcept>
#include <string>

namespace vhj {

// Invalid input: bad parameters, malformed files, violated preconditions.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A checked mathematical contract (inequality, invariant) did not hold.
class ContractViolation : public std::runtime_error {
public:
    explicit ContractViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vhj
