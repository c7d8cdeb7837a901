#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hsconvex {

/// Parse failure: byte offset into the source text plus the set of tokens
/// that would have been accepted at that position.
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& msg)
        : std::runtime_error(msg), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

class MultipleVariablesError : public std::runtime_error {
public:
    MultipleVariablesError(std::string first, std::string second)
        : std::runtime_error("expression uses two distinct variables: '" + first + "' and '" +
                             second + "'"),
          first_(std::move(first)), second_(std::move(second)) {}

    const std::string& first() const { return first_; }
    const std::string& second() const { return second_; }

private:
    std::string first_, second_;
};

class EvalError : public std::runtime_error {
public:
    enum class Kind { DomainViolation, NonFinite, NotDifferentiable };

    EvalError(Kind kind, double at, const std::string& msg)
        : std::runtime_error(msg), kind_(kind), at_(at) {}

    Kind kind() const { return kind_; }
    /// The outer evaluation point at which the failure occurred.
    double at() const { return at_; }

private:
    Kind kind_;
    double at_;
};

/// The kernel h is undefined, non-finite, or negative at the queried t.
class KernelDomainError : public std::runtime_error {
public:
    KernelDomainError(double t, const std::string& msg) : std::runtime_error(msg), t_(t) {}
    double t() const { return t_; }

private:
    double t_;
};

/// A checked function violates the nonnegativity required by the convexity
/// class definitions.
class PreconditionError : public std::runtime_error {
public:
    PreconditionError(double x, const std::string& msg) : std::runtime_error(msg), x_(x) {}
    double x() const { return x_; }

private:
    double x_;
};

/// A theorem hypothesis (linearity, convexity, monotonicity, kernel
/// condition, class membership) failed its sampled check.
class HypothesisNotMet : public std::runtime_error {
public:
    HypothesisNotMet(std::string hypothesis, const std::string& msg)
        : std::runtime_error(msg), hypothesis_(std::move(hypothesis)) {}
    const std::string& hypothesis() const { return hypothesis_; }

private:
    std::string hypothesis_;
};

class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

class MeanDomainError : public std::runtime_error {
public:
    explicit MeanDomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An internal cross-check failed (e.g. the two symmetric forms of an
/// integral disagree beyond tolerance). Signals a tool defect, not a
/// property of the checked claim.
class InternalCheckError : public std::runtime_error {
public:
    explicit InternalCheckError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hsconvex
