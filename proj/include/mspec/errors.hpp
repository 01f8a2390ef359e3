#pragma once

#include <stdexcept>
#include <string>

namespace mspec {

// Root of the library's exception hierarchy. The CLI maps each subclass to an
// exit code: DomainError/ValidationError -> 1, UsageError -> 2,
// BudgetExhausted -> 3.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A mathematical precondition does not hold (division by zero, field
// mismatch, degenerate Mobius map, non-zero-dimensional ideal, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

// A post-construction check failed: the computed object does not have the
// properties it was built to have.
class ValidationError : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    using Error::Error;
};

class UsageError : public Error {
  public:
    using Error::Error;
};

class BudgetExhausted : public Error {
  public:
    using Error::Error;
};

} // namespace mspec
