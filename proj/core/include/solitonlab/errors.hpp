#pragma once

#include <stdexcept>
#include <string>

namespace solitonlab {

// Input lies outside the mathematical domain of an operation
// (negative discriminant-like quantities, poles of a speed function, x <= 0, ...).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally invalid argument (wrong sign, empty range, zero where nonzero required).
class ArgError : public std::invalid_argument {
public:
    explicit ArgError(const std::string& what) : std::invalid_argument(what) {}
};

// A bracketed root search could not isolate a root.
class RootFindFailed : public std::runtime_error {
public:
    explicit RootFindFailed(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace solitonlab
