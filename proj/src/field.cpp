#include "koszul/field.hpp"

#include <charconv>

#include "koszul/errors.hpp"

namespace koszul {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return result;
}

static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));

std::uint64_t mpz_mod_u64(const mpz_class& z, std::uint64_t p) {
  return mpz_fdiv_ui(z.get_mpz_t(), p);
}

}  // namespace

bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL,
                              19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for 64-bit integers.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime_field(std::uint64_t p) {
  if (p >= (1ULL << 62) || !is_prime_number(p)) {
    throw InputError("field characteristic " + std::to_string(p) +
                     " is not a prime below 2^62");
  }
  FieldSpec f;
  f.kind = Kind::prime;
  f.p = p;
  return f;
}

FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "rational" || text == "rationals" || text == "Q") {
    return rationals();
  }
  if (text.starts_with("fp:")) {
    std::string_view digits = text.substr(3);
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
      throw InputError("bad field specification '" + std::string(text) + "'");
    }
    return prime_field(p);
  }
  throw InputError("bad field specification '" + std::string(text) +
                   "' (expected rational or fp:P)");
}

std::string FieldSpec::to_string() const {
  return is_prime() ? "fp:" + std::to_string(p) : "rational";
}

std::uint64_t residue(const Scalar& x, std::uint64_t p) {
  std::uint64_t num = mpz_mod_u64(x.get_num(), p);
  std::uint64_t den = mpz_mod_u64(x.get_den(), p);
  if (den == 0) {
    throw ArithmeticError("denominator of " + x.get_str() +
                          " is divisible by " + std::to_string(p));
  }
  return mul_mod(num, pow_mod(den, p - 2, p), p);
}

Scalar reduce(const Scalar& x, const FieldSpec& field) {
  if (!field.is_prime()) return x;
  return Scalar(static_cast<unsigned long>(residue(x, field.p)));
}

bool equal_in(const Scalar& a, const Scalar& b, const FieldSpec& field) {
  if (!field.is_prime()) return a == b;
  return residue(a, field.p) == residue(b, field.p);
}

}  // namespace koszul
