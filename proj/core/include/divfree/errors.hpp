#pragma once

#include <stdexcept>
#include <string>

namespace divfree {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands of mismatched rank.
struct DimensionError : Error {
  using Error::Error;
};

// Mathematically invalid input (zero denominator, singular pairing, ...).
struct DomainError : Error {
  using Error::Error;
};

// A documented precondition was violated (element not divergence-free,
// direction not in the required kernel, ...).
struct ContractError : Error {
  using Error::Error;
};

// Malformed textual or JSON input.
struct ParseError : Error {
  using Error::Error;
};

// Filesystem trouble while reading or writing.
struct IoError : Error {
  using Error::Error;
};

}  // namespace divfree
