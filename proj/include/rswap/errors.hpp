#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rswap {

/// Argument outside the domain an operation is defined on.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A bootstrap step could not bracket a root.
class CalibrationError : public std::runtime_error {
public:
    CalibrationError(double tenor, const std::string& what)
        : std::runtime_error(what), tenor_(tenor) {}
    double tenor() const noexcept { return tenor_; }

private:
    double tenor_;
};

/// Quotes that admit no non-negative hazard (e.g. zero spread after
/// a positive-hazard segment).
class InconsistentQuotesError : public CalibrationError {
public:
    using CalibrationError::CalibrationError;
};

/// Quote pair violating a no-arbitrage bound.
class ArbitrageError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Numerical procedure failed to converge.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries one message per offending row.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

}  // namespace rswap
