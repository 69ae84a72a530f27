#pragma once

#include <stdexcept>
#include <string>

namespace scatdeco {

// Argument outside the mathematical domain of an operation (n < 0, m > n0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Arithmetic or conversion between quantities of different dimensions.
class DimensionError : public std::invalid_argument {
public:
    DimensionError(const std::string& lhs, const std::string& rhs)
        : std::invalid_argument("dimension mismatch: " + lhs + " vs " + rhs),
          lhs_(lhs), rhs_(rhs) {}

    const std::string& lhs() const noexcept { return lhs_; }
    const std::string& rhs() const noexcept { return rhs_; }

private:
    std::string lhs_;
    std::string rhs_;
};

// A numerical procedure failed to reach its tolerance.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}

    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

// Malformed user input: unknown preset, bad unit name, unparsable config.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace scatdeco
