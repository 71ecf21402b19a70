#pragma once

#include <stdexcept>
#include <string>

namespace sfglearn {

// Base for all library errors so callers can catch the whole family at once.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct NonInvertibleDenominator : Error {
  NonInvertibleDenominator() : Error("denominator stream has zero leading coefficient") {}
};

struct IndexOutOfRange : Error {
  using Error::Error;
};

struct PrefixTooShort : Error {
  using Error::Error;
};

struct IndexBeyondPrefix : Error {
  using Error::Error;
};

struct InvalidGraph : Error {
  using Error::Error;
};

struct SingularSystem : Error {
  SingularSystem() : Error("register initialization system is inconsistent") {}
};

struct SizeCapExceeded : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace sfglearn
