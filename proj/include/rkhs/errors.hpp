#pragma once

#include <stdexcept>
#include <string>

namespace rkhs {

/// Failure categories surfaced by the library and mapped to CLI exit codes.
enum class ErrorCategory {
    domain,        // argument outside the admissible region
    accuracy,      // adaptive quadrature missed its tolerance
    degeneracy,    // Gram matrix not positive definite
    divergence,    // Picard sweeps blew up
    io,            // file could not be read or written
    contract,      // precondition on an integer/order argument violated
    construction,  // kernel system singular
};

const char* category_name(ErrorCategory c) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorCategory::domain, what) {}
};

class ContractError : public Error {
public:
    explicit ContractError(const std::string& what) : Error(ErrorCategory::contract, what) {}
};

class ConstructionError : public Error {
public:
    explicit ConstructionError(const std::string& what)
        : Error(ErrorCategory::construction, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorCategory::io, what) {}
};

/// Carries the best available estimate so callers can decide to accept it.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double estimate, double error_bound)
        : Error(ErrorCategory::accuracy, what), estimate_(estimate), bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return bound_; }

private:
    double estimate_;
    double bound_;
};

class DegeneracyError : public Error {
public:
    DegeneracyError(const std::string& what, std::size_t index)
        : Error(ErrorCategory::degeneracy, what), index_(index) {}

    /// Zero-based index of the first non-positive pivot.
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, int sweep, double growth)
        : Error(ErrorCategory::divergence, what), sweep_(sweep), growth_(growth) {}

    int sweep() const noexcept { return sweep_; }
    double growth() const noexcept { return growth_; }

private:
    int sweep_;
    double growth_;
};

}  // namespace rkhs
