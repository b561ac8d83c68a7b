#pragma once

#include <stdexcept>
#include <string>

namespace covjet {

// All library failures derive from Error so callers can catch one type.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BackendMismatch : Error {
  using Error::Error;
};

struct BasePointMismatch : Error {
  using Error::Error;
};

// A jet or table was asked for more derivative orders than it carries.
struct OrderExhausted : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct InvariantViolation : Error {
  using Error::Error;
};

// A fractional operation left the representable class of power series.
struct DomainError : Error {
  using Error::Error;
};

struct NonPolynomialTransform : Error {
  using Error::Error;
};

}  // namespace covjet
