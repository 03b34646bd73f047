#pragma once

#include <stdexcept>
#include <string>

namespace mbfem {

/// Argument outside the closed interval an operation is defined on.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A hypothesis on the problem data does not hold.
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A sampled function value or computed coefficient is NaN or infinite.
class NonFiniteError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class SingularMatrixError : public std::runtime_error {
  public:
    SingularMatrixError(const std::string& what, double condition_estimate)
        : std::runtime_error(what), condition_estimate_(condition_estimate) {}

    double condition_estimate() const noexcept { return condition_estimate_; }

  private:
    double condition_estimate_;
};

/// Diffusion law evaluated outside its declared [lower, upper] bounds.
class BoundViolationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class MissingExactSolutionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed configuration text; carries the 1-based line number (0 when not tied to a line).
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, int line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    int line() const noexcept { return line_; }

  private:
    int line_;
};

}  // namespace mbfem
