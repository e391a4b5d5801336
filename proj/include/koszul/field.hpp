#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace koszul {

// Exact scalar used for all stored structure constants.
using Scalar = mpq_class;

// The coefficient field: the rationals, or F_p for a word-sized prime p.
struct FieldSpec {
  enum class Kind { rationals, prime };

  Kind kind = Kind::rationals;
  std::uint64_t p = 0;

  static FieldSpec rationals() { return {}; }
  // Throws InputError unless p is a prime below 2^62.
  static FieldSpec prime_field(std::uint64_t p);
  // "rational" | "fp:P"
  static FieldSpec parse(std::string_view text);

  bool is_prime() const { return kind == Kind::prime; }
  std::string to_string() const;

  bool operator==(const FieldSpec&) const = default;
};

bool is_prime_number(std::uint64_t n);

// Canonical representative of `x` in the field: `x` itself over Q, the
// residue in [0, p) over F_p. Throws ArithmeticError if p divides the
// denominator.
Scalar reduce(const Scalar& x, const FieldSpec& field);

// Residue of x modulo p; throws ArithmeticError on a non-invertible denominator.
std::uint64_t residue(const Scalar& x, std::uint64_t p);

// Equality of two scalars as elements of the field.
bool equal_in(const Scalar& a, const Scalar& b, const FieldSpec& field);

}  // namespace koszul
