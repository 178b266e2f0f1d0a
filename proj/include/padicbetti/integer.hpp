#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace padicbetti {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer ipow(const Integer& base, unsigned long exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

inline Integer ipow(unsigned long base, unsigned long exponent) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exponent);
  return r;
}

// Canonical representative in [0, modulus).
inline Integer mod_floor(const Integer& x, const Integer& modulus) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Inverse of a modulo m; throws std::domain_error if not invertible.
Integer mod_inverse(const Integer& a, const Integer& m);

inline bool fits_int64(const Integer& x) { return x.fits_slong_p(); }

std::int64_t to_int64(const Integer& x);

bool is_prime(std::uint64_t n);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

// Euler totient.
std::uint64_t totient(std::uint64_t n);

// Prime factors (distinct) in ascending order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// Multiplicative order of a modulo m (gcd(a, m) = 1, m >= 1).
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus);

}  // namespace padicbetti
