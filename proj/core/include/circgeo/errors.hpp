#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace circgeo {

// Coarse classification used by the command-line front end to pick an exit code.
enum class ErrorKind {
  Syntax,          // malformed expression or spec file
  Usage,           // bad arguments (index out of range, degenerate input)
  ExpressionDomain,
  Positivity,
  DomainConstraint,
  Verification,    // a hypothesis required by a check is not met
  Sampling,
  Io,
};

// Base of every error raised by the library. `operation()` names the
// operation that failed, e.g. "metric_at".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string operation, const std::string& message)
      : std::runtime_error(operation + ": " + message),
        kind_(kind),
        operation_(std::move(operation)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& operation() const noexcept { return operation_; }

 private:
  ErrorKind kind_;
  std::string operation_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& message)
      : Error(ErrorKind::Syntax, "parse", message + " at offset " + std::to_string(offset)),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

// sqrt of a negative, log of a non-positive, division by zero, ...
class DomainError : public Error {
 public:
  DomainError(std::string operation, std::string subexpression, const std::string& message)
      : Error(ErrorKind::ExpressionDomain, std::move(operation),
              message + " in '" + subexpression + "'"),
        subexpression_(std::move(subexpression)) {}

  const std::string& subexpression() const noexcept { return subexpression_; }

 private:
  std::string subexpression_;
};

class PositivityViolation : public Error {
 public:
  PositivityViolation(std::string operation, const std::string& message)
      : Error(ErrorKind::Positivity, std::move(operation), message) {}
};

class DomainViolation : public Error {
 public:
  DomainViolation(std::string operation, const std::string& message)
      : Error(ErrorKind::DomainConstraint, std::move(operation), message) {}
};

class NotAQBasis : public Error {
 public:
  NotAQBasis(std::string operation, const std::string& message)
      : Error(ErrorKind::Usage, std::move(operation), message) {}
};

class DegeneratePlane : public Error {
 public:
  DegeneratePlane(std::string operation, const std::string& message)
      : Error(ErrorKind::Usage, std::move(operation), message) {}
};

class ConstructionFailed : public Error {
 public:
  ConstructionFailed(std::string operation, const std::string& message)
      : Error(ErrorKind::Verification, std::move(operation), message) {}
};

class IdentityRNotSatisfied : public Error {
 public:
  IdentityRNotSatisfied(std::string operation, const std::string& message)
      : Error(ErrorKind::Verification, std::move(operation), message) {}
};

class UsageError : public Error {
 public:
  UsageError(std::string operation, const std::string& message)
      : Error(ErrorKind::Usage, std::move(operation), message) {}
};

}  // namespace circgeo
