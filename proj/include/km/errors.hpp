#pragma once

#include <stdexcept>
#include <string>

namespace km {

/// Base class for every error the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live on different scalar backends (exact vs floating).
class BackendMismatch : public Error {
 public:
  using Error::Error;
};

/// Vector lengths, algebra dimensions or truncation windows disagree.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An operation was asked for a value outside its domain
/// (division by zero, branch cut, non-finite float result, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Degenerate geometric input, e.g. a plane with |g^h|^2 = 0.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Input does not satisfy a structural precondition (not Euclidean, uncertified, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// JSON input does not match the expected schema; `pointer` is a JSON pointer
/// to the offending field.
class SchemaError : public Error {
 public:
  SchemaError(std::string pointer, const std::string& what)
      : Error(pointer + ": " + what), pointer_(std::move(pointer)) {}
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace km
