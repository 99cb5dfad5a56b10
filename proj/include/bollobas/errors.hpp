#pragma once

#include <stdexcept>
#include <string>

namespace bollobas {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands disagree on ambient dimension, field, arity or context.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An inequality was requested whose licensing condition is not verified.
class LicenseError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A property that the constructive argument guarantees was observed to
/// fail. Over the rationals this indicates a bug.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive mode refused because the ground is above the configured guard.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Malformed or semantically invalid document. `where` is either a byte
/// offset ("byte 17") or a JSON pointer ("/tuples/2/0").
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string where)
      : Error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace bollobas
