#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "padicbetti/integer.hpp"

namespace padicbetti {

/// Dense matrix of arbitrary-precision integers, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transposed() const;
  bool is_zero() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix matrix_power(const IntMatrix& a, const Integer& exponent);

/// Matrix over the prime field F_l with entries in [0, l).
class FpMatrix {
 public:
  FpMatrix(std::uint64_t modulus, std::size_t rows, std::size_t cols);
  static FpMatrix reduce(const IntMatrix& m, std::uint64_t modulus);

  std::uint64_t modulus() const { return modulus_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint64_t get(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t value);
  void add(std::size_t r, std::size_t c, std::int64_t value);

 private:
  friend std::size_t rank_fp(FpMatrix m);
  std::uint64_t modulus_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint64_t> data_;
};

/// Square matrix with entries in Z/p^N, stored as canonical residues.
class PAdicMatrix {
 public:
  PAdicMatrix(unsigned long p, unsigned precision, std::size_t n);
  PAdicMatrix(unsigned long p, unsigned precision, const IntMatrix& m);

  static PAdicMatrix identity(unsigned long p, unsigned precision, std::size_t n);

  unsigned long prime() const { return prime_; }
  unsigned precision() const { return precision_; }
  std::size_t size() const { return n_; }
  const Integer& modulus() const { return modulus_; }

  const Integer& operator()(std::size_t r, std::size_t c) const { return entries_(r, c); }
  void set(std::size_t r, std::size_t c, const Integer& v);

  const IntMatrix& residues() const { return entries_; }

  // Reduction to a lower precision.
  PAdicMatrix at_precision(unsigned precision) const;

  friend bool operator==(const PAdicMatrix&, const PAdicMatrix&) = default;

 private:
  unsigned long prime_;
  unsigned precision_;
  std::size_t n_;
  Integer modulus_;
  IntMatrix entries_;
};

/// Rank over Q by fraction-free (Bareiss) elimination.
std::size_t rank_q(IntMatrix m);

/// Rank over F_l; throws std::invalid_argument if l is not prime.
std::size_t rank_fp(FpMatrix m);

/// Exact determinant by fraction-free elimination.
Integer determinant(IntMatrix m);

struct SmithForm {
  std::vector<Integer> divisors;  // nonzero invariant factors d_1 | d_2 | ..., all positive
  std::size_t rank() const { return divisors.size(); }
};

/// Invariant factors over Z.
SmithForm smith_normal_form(IntMatrix m);

/// Product of the p'-parts of the invariant factors.
Integer torsion_card_pprime(const std::vector<Integer>& divisors, unsigned long p);

/// p-adic matrix logarithm on 1 + pM (1 + 4M for p = 2), correct mod p^N.
PAdicMatrix padic_log(const PAdicMatrix& a);

/// p-adic matrix exponential on pM (4M for p = 2), correct mod p^N.
PAdicMatrix padic_exp(const PAdicMatrix& b);

/// Determinant reduced mod p^N.
Integer det_mod(const PAdicMatrix& a);

}  // namespace padicbetti
