#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace slb {

/// Base for every error the engine raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad argument to a kernel (nonpositive principal, zero periods, rate <= -1).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Operation called on a deal in the wrong state, e.g. the capital-lease
/// net position on an operating lease.
class InvalidState : public Error {
public:
    using Error::Error;
};

/// A curve the condition sets need is absent from the scenario.
class ConfigurationError : public Error {
public:
    ConfigurationError(std::string curve, const std::string& what)
        : Error(what), curve_(std::move(curve)) {}
    const std::string& curve() const noexcept { return curve_; }

private:
    std::string curve_;
};

/// Finite-difference stencil reaches outside the sampled curve.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Third derivative requested from a linearly interpolated curve.
class CapabilityError : public Error {
public:
    using Error::Error;
};

class SolverError : public Error {
public:
    using Error::Error;
};

/// Breakeven bracket without a sign change of N_sl - N_b.
class BracketError : public SolverError {
public:
    BracketError(double g_lo, double g_hi, const std::string& what)
        : SolverError(what), g_lo_(g_lo), g_hi_(g_hi) {}
    double g_lo() const noexcept { return g_lo_; }
    double g_hi() const noexcept { return g_hi_; }

private:
    double g_lo_;
    double g_hi_;
};

/// Malformed JSON text.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t line, std::size_t column, const std::string& what)
        : Error(what), line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Well-formed JSON that does not match the scenario schema.
class SchemaError : public Error {
public:
    SchemaError(std::string path, const std::string& message)
        : Error(path + ": " + message), path_(std::move(path)), message_(message) {}
    const std::string& path() const noexcept { return path_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::string path_;
    std::string message_;
};

enum class Severity { Warning, Violation };

struct Finding {
    Severity severity;
    std::string path;
    std::string message;

    bool operator==(const Finding&) const = default;
};

/// Deal parameters that break a hard invariant. Carries every finding,
/// warnings included, so callers can print the full picture.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Finding> findings);
    const std::vector<Finding>& findings() const noexcept { return findings_; }

private:
    std::vector<Finding> findings_;
};

}  // namespace slb
