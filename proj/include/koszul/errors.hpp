#pragma once

#include <stdexcept>
#include <string>

namespace koszul {

// Base for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A scalar cannot be interpreted in the chosen field (e.g. p divides a denominator).
struct ArithmeticError : Error {
  using Error::Error;
};

// Shapes, ambient dimensions or bases do not match.
struct DimensionError : Error {
  using Error::Error;
};

// A subspace is not contained in the space it was declared inside.
struct ContainmentError : Error {
  using Error::Error;
};

// An operation was called on an input that violates its precondition
// (e.g. a ring that is not strongly graded).
struct PreconditionError : Error {
  using Error::Error;
};

// Malformed or invalid user input (parse errors, non-graded posets, ...).
struct InputError : Error {
  using Error::Error;
};

// An internal invariant failed: d∘d ≠ 0, associativity, criteria disagreement.
// These indicate a bug or a violated theorem and must never be silenced.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace koszul
