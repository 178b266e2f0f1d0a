#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "padicbetti/integer.hpp"

namespace padicbetti {

/// Univariate polynomial over Z, coefficients from degree 0 upward.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Integer> coeffs);
  static IntPoly constant(const Integer& c);
  static IntPoly monomial(const Integer& c, std::size_t degree);

  // Parses expanded forms like "t^2-t+1", "3*t^4 - 2t + 5". Variable name t.
  static IntPoly parse(std::string_view text);

  bool is_zero() const { return coeffs_.empty(); }
  // Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Integer>& coeffs() const { return coeffs_; }
  Integer coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }
  const Integer& leading() const { return coeffs_.back(); }

  Integer evaluate(const Integer& x) const;
  IntPoly derivative() const;
  std::string to_string(char var = 't') const;

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend bool operator==(const IntPoly&, const IntPoly&) = default;

 private:
  void normalize();
  std::vector<Integer> coeffs_;
};

/// Univariate polynomial over Q.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coeffs);
  explicit RatPoly(const IntPoly& p);
  static RatPoly monomial(const Rational& c, std::size_t degree);

  bool is_zero() const { return coeffs_.empty(); }
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  const Rational& leading() const { return coeffs_.back(); }

  RatPoly monic() const;
  RatPoly derivative() const;
  // Integer polynomial with content 1 and positive leading coefficient.
  IntPoly primitive() const;
  std::string to_string(char var = 't') const;

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend bool operator==(const RatPoly&, const RatPoly&) = default;

 private:
  void normalize();
  std::vector<Rational> coeffs_;
};

// Quotient and remainder; throws std::domain_error on division by zero.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
// Monic gcd (zero if both are zero).
RatPoly poly_gcd(const RatPoly& a, const RatPoly& b);
// t^e mod f for f of positive degree.
RatPoly power_of_t_mod(const Integer& e, const RatPoly& f);
// f / gcd(f, f'), monic.
RatPoly radical(const RatPoly& f);

/// n-th cyclotomic polynomial (cached).
const IntPoly& cyclotomic(std::uint64_t n);

/// Multivariate Laurent polynomial with integer coefficients, optionally
/// reduced modulo a prime characteristic (0 means Z, i.e. coefficients in Q).
class LaurentPoly {
 public:
  using Exponent = std::vector<int>;

  LaurentPoly() = default;
  LaurentPoly(std::size_t vars, std::uint64_t characteristic = 0) : vars_(vars), char_(characteristic) {}
  static LaurentPoly constant(std::size_t vars, const Integer& c, std::uint64_t characteristic = 0);
  static LaurentPoly monomial(const Exponent& e, const Integer& c, std::uint64_t characteristic = 0);

  // Parses "t1^2*t2^-1 - 3 t1 + 1" with variables t1..tn (or t when vars == 1).
  static LaurentPoly parse(std::string_view text, std::size_t vars, std::uint64_t characteristic = 0);

  std::size_t vars() const { return vars_; }
  std::uint64_t characteristic() const { return char_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, Integer>& terms() const { return terms_; }

  void add_term(const Exponent& e, const Integer& c);
  // Largest total degree spread, max over variables of (max exp - min exp).
  int spread() const;
  std::string to_string() const;

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  std::size_t vars_ = 0;
  std::uint64_t char_ = 0;
  std::map<Exponent, Integer> terms_;
};

using LaurentMatrix = std::vector<std::vector<LaurentPoly>>;

/// All i x i minors for i = 1..min(rows, cols); result[i-1] lists them.
std::vector<std::vector<LaurentPoly>> all_minors(const LaurentMatrix& a);

}  // namespace padicbetti
