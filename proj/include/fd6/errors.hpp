#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fd6 {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value outside its mathematical domain: invalid scaled coefficient,
/// nonpositive mesh size, tolerance outside the supported window, and so on.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Expression text that does not conform to the grammar. Carries the byte
/// offset of the failure and the set of tokens that would have been accepted.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t byte_offset,
               std::string expected)
        : Error(message), byte_offset_(byte_offset),
          expected_(std::move(expected)) {}

    std::size_t byte_offset() const noexcept { return byte_offset_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t byte_offset_;
    std::string expected_;
};

/// Numeric evaluation failure, e.g. division by zero inside an expression.
class EvalError : public Error {
public:
    using Error::Error;
};

/// Linear-solver failure; carries the best residual achieved before giving up.
class SolverError : public Error {
public:
    SolverError(const std::string& message, double best_residual)
        : Error(message), best_residual_(best_residual) {}

    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

/// A caller-side or internal contract was violated (e.g. a required
/// derivative order is missing from a derivative table).
class ContractViolation : public Error {
public:
    using Error::Error;
};

} // namespace fd6
