#include "padicbetti/matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "padicbetti/padic.hpp"

namespace padicbetti {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
    for (long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum: shape mismatch");
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix difference: shape mismatch");
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

IntMatrix matrix_power(const IntMatrix& a, const Integer& exponent) {
  if (!a.is_square()) throw std::invalid_argument("matrix_power: square matrix required");
  if (exponent < 0) throw std::invalid_argument("matrix_power: negative exponent");
  IntMatrix result = IntMatrix::identity(a.rows());
  IntMatrix base = a;
  Integer e = exponent;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t()) != 0) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------------------

FpMatrix::FpMatrix(std::uint64_t modulus, std::size_t rows, std::size_t cols)
    : modulus_(modulus), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  if (modulus < 2 || modulus >= (1ULL << 32)) throw std::invalid_argument("FpMatrix: modulus out of range");
}

FpMatrix FpMatrix::reduce(const IntMatrix& m, std::uint64_t modulus) {
  FpMatrix out(modulus, m.rows(), m.cols());
  Integer mod(static_cast<unsigned long>(modulus));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.data_[r * m.cols() + c] = mod_floor(m(r, c), mod).get_ui();
  return out;
}

void FpMatrix::set(std::size_t r, std::size_t c, std::int64_t value) {
  auto m = static_cast<std::int64_t>(modulus_);
  std::int64_t v = value % m;
  if (v < 0) v += m;
  data_[r * cols_ + c] = static_cast<std::uint64_t>(v);
}

void FpMatrix::add(std::size_t r, std::size_t c, std::int64_t value) {
  auto m = static_cast<std::int64_t>(modulus_);
  std::int64_t v = value % m;
  if (v < 0) v += m;
  data_[r * cols_ + c] = (data_[r * cols_ + c] + static_cast<std::uint64_t>(v)) % modulus_;
}

std::size_t rank_fp(FpMatrix m) {
  if (!is_prime(m.modulus_)) {
    throw std::invalid_argument("rank_fp: modulus " + std::to_string(m.modulus_) + " is not prime");
  }
  const std::uint64_t l = m.modulus_;
  const std::size_t rows = m.rows_;
  const std::size_t cols = m.cols_;
  auto at = [&](std::size_t r, std::size_t c) -> std::uint64_t& { return m.data_[r * cols + c]; };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && at(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t k = c; k < cols; ++k) std::swap(at(pivot, k), at(rank, k));
    }
    std::uint64_t inv = pow_mod_u64(at(rank, c), l - 2, l);
    for (std::size_t k = c; k < cols; ++k) at(rank, k) = at(rank, k) * inv % l;
    std::vector<std::size_t> support;
    for (std::size_t k = c + 1; k < cols; ++k)
      if (at(rank, k) != 0) support.push_back(k);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      std::uint64_t f = at(r, c);
      if (f == 0) continue;
      at(r, c) = 0;
      for (std::size_t k : support) at(r, k) = (at(r, k) + (l - f) * at(rank, k)) % l;
    }
    ++rank;
  }
  return rank;
}

// ---------------------------------------------------------------------------

namespace {

// Fraction-free forward elimination; returns rank and tracks row swaps.
std::size_t bareiss_echelon(IntMatrix& m, int* swap_sign) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  Integer prev = 1;
  Integer tmp;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(m(pivot, k), m(r, k));
      if (swap_sign != nullptr) *swap_sign = -*swap_sign;
    }
    const Integer& piv = m(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Integer f = m(i, c);
      for (std::size_t k = c + 1; k < cols; ++k) {
        // m(i,k) = (piv * m(i,k) - f * m(r,k)) / prev
        mpz_mul(tmp.get_mpz_t(), piv.get_mpz_t(), m(i, k).get_mpz_t());
        mpz_submul(tmp.get_mpz_t(), f.get_mpz_t(), m(r, k).get_mpz_t());
        mpz_divexact(m(i, k).get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

}  // namespace

std::size_t rank_q(IntMatrix m) { return bareiss_echelon(m, nullptr); }

Integer determinant(IntMatrix m) {
  if (!m.is_square()) throw std::invalid_argument("determinant: square matrix required");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  int sign = 1;
  std::size_t r = bareiss_echelon(m, &sign);
  if (r < n) return 0;
  return sign * m(n - 1, n - 1);
}

// ---------------------------------------------------------------------------

namespace {

struct SnfWorkspace {
  IntMatrix& m;
  std::size_t rows;
  std::size_t cols;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t k = 0; k < cols; ++k) std::swap(m(a, k), m(b, k));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t k = 0; k < rows; ++k) std::swap(m(k, a), m(k, b));
  }
  // row_target -= q * row_src, touching only the support of row_src from column t.
  void row_axpy(std::size_t target, std::size_t src, const Integer& q, const std::vector<std::size_t>& support) {
    for (std::size_t k : support) mpz_submul(m(target, k).get_mpz_t(), q.get_mpz_t(), m(src, k).get_mpz_t());
  }
  void col_axpy(std::size_t target, std::size_t src, const Integer& q, const std::vector<std::size_t>& support) {
    for (std::size_t k : support) mpz_submul(m(k, target).get_mpz_t(), q.get_mpz_t(), m(k, src).get_mpz_t());
  }
};

}  // namespace

SmithForm smith_normal_form(IntMatrix m) {
  SnfWorkspace w{m, m.rows(), m.cols()};
  SmithForm out;
  const std::size_t limit = std::min(w.rows, w.cols);
  Integer q;
  for (std::size_t t = 0; t < limit; ++t) {
    // Pivot of minimal absolute value in the trailing block.
    std::size_t pr = w.rows;
    std::size_t pc = w.cols;
    for (std::size_t i = t; i < w.rows; ++i) {
      for (std::size_t j = t; j < w.cols; ++j) {
        if (m(i, j) == 0) continue;
        if (pr == w.rows || mpz_cmpabs(m(i, j).get_mpz_t(), m(pr, pc).get_mpz_t()) < 0) {
          pr = i;
          pc = j;
          if (mpz_cmpabs_ui(m(i, j).get_mpz_t(), 1) == 0) break;
        }
      }
      if (pr != w.rows && mpz_cmpabs_ui(m(pr, pc).get_mpz_t(), 1) == 0) break;
    }
    if (pr == w.rows) break;
    w.swap_rows(t, pr);
    w.swap_cols(t, pc);

    for (;;) {
      bool changed = false;
      // Clear column t below the pivot.
      std::vector<std::size_t> row_support;
      for (std::size_t k = t; k < w.cols; ++k)
        if (m(t, k) != 0) row_support.push_back(k);
      for (std::size_t i = t + 1; i < w.rows; ++i) {
        if (m(i, t) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), m(i, t).get_mpz_t(), m(t, t).get_mpz_t());
        w.row_axpy(i, t, q, row_support);
        if (m(i, t) != 0) {
          w.swap_rows(t, i);
          changed = true;
          break;
        }
      }
      if (changed) continue;
      // Clear row t right of the pivot.
      std::vector<std::size_t> col_support;
      for (std::size_t k = t; k < w.rows; ++k)
        if (m(k, t) != 0) col_support.push_back(k);
      for (std::size_t j = t + 1; j < w.cols; ++j) {
        if (m(t, j) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), m(t, j).get_mpz_t(), m(t, t).get_mpz_t());
        w.col_axpy(j, t, q, col_support);
        if (m(t, j) != 0) {
          w.swap_cols(t, j);
          changed = true;
          break;
        }
      }
      if (changed) continue;
      // Divisibility of the trailing block by the pivot.
      if (mpz_cmpabs_ui(m(t, t).get_mpz_t(), 1) != 0) {
        for (std::size_t i = t + 1; i < w.rows && !changed; ++i) {
          for (std::size_t j = t + 1; j < w.cols; ++j) {
            if (mpz_divisible_p(m(i, j).get_mpz_t(), m(t, t).get_mpz_t()) == 0) {
              for (std::size_t k = t; k < w.cols; ++k) m(t, k) += m(i, k);
              changed = true;
              break;
            }
          }
        }
      }
      if (!changed) break;
    }
    out.divisors.push_back(abs(m(t, t)));
  }
  return out;
}

Integer torsion_card_pprime(const std::vector<Integer>& divisors, unsigned long p) {
  Integer card = 1;
  for (const auto& d : divisors) {
    if (d == 0) throw std::domain_error("torsion_card_pprime: zero invariant factor");
    card *= abs(p_prime_part(d, p));
  }
  return card;
}

// ---------------------------------------------------------------------------

PAdicMatrix::PAdicMatrix(unsigned long p, unsigned precision, std::size_t n)
    : prime_(p), precision_(precision), n_(n), modulus_(ipow(p, precision)), entries_(n, n) {
  require_prime(p);
  if (precision < 1) throw std::invalid_argument("PAdicMatrix: precision must be at least 1");
}

PAdicMatrix::PAdicMatrix(unsigned long p, unsigned precision, const IntMatrix& m)
    : PAdicMatrix(p, precision, m.rows()) {
  if (!m.is_square()) throw std::invalid_argument("PAdicMatrix: square matrix required");
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) entries_(i, j) = mod_floor(m(i, j), modulus_);
}

PAdicMatrix PAdicMatrix::identity(unsigned long p, unsigned precision, std::size_t n) {
  PAdicMatrix m(p, precision, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_(i, i) = 1 % m.modulus_;
  return m;
}

void PAdicMatrix::set(std::size_t r, std::size_t c, const Integer& v) { entries_(r, c) = mod_floor(v, modulus_); }

PAdicMatrix PAdicMatrix::at_precision(unsigned precision) const {
  return PAdicMatrix(prime_, precision, entries_);
}

namespace {

IntMatrix mul_mod(const IntMatrix& a, const IntMatrix& b, const Integer& mod) {
  IntMatrix out = a * b;
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = mod_floor(out(i, j), mod);
  return out;
}

// Smallest v with every entry of m divisible by p^v (capped at cap).
unsigned min_valuation(const IntMatrix& m, unsigned long p, unsigned cap) {
  unsigned v = cap;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) v = std::min(v, vp(m(i, j), p));
  return v;
}

unsigned floor_log(unsigned long j, unsigned long p) {
  unsigned k = 0;
  while (j >= p) {
    j /= p;
    ++k;
  }
  return k;
}

unsigned factorial_valuation(unsigned long j, unsigned long p) {
  unsigned v = 0;
  for (unsigned long q = p; q <= j; q *= p) v += static_cast<unsigned>(j / q);
  return v;
}

}  // namespace

PAdicMatrix padic_log(const PAdicMatrix& a) {
  const unsigned long p = a.prime();
  const unsigned precision = a.precision();
  const std::size_t n = a.size();
  IntMatrix b = a.residues();
  for (std::size_t i = 0; i < n; ++i) b(i, i) -= 1;
  const unsigned required = p == 2 ? 2U : 1U;
  if (min_valuation(b, p, precision) < std::min(required, precision)) {
    throw std::domain_error("matrix not in logarithm domain");
  }
  // Valuation of B^j / j is at least required*j - floor(log_p j).
  unsigned long j_max = 1;
  while (required * j_max < precision + floor_log(j_max, p)) ++j_max;
  const unsigned internal = precision + floor_log(j_max, p) + 1;
  const Integer big_mod = ipow(p, internal);
  const Integer out_mod = a.modulus();

  IntMatrix power = b;
  IntMatrix sum(n, n);
  for (unsigned long j = 1; j < j_max; ++j) {
    if (j > 1) power = mul_mod(power, b, big_mod);
    const unsigned v = vp(Integer(j), p);
    const Integer pv = ipow(p, v);
    const Integer unit_inv = mod_inverse(Integer(j) / pv, out_mod);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        Integer term;
        mpz_divexact(term.get_mpz_t(), power(r, c).get_mpz_t(), pv.get_mpz_t());
        term *= unit_inv;
        if (j % 2 == 0) term = -term;
        sum(r, c) += term;
      }
  }
  return PAdicMatrix(p, precision, sum);
}

PAdicMatrix padic_exp(const PAdicMatrix& b) {
  const unsigned long p = b.prime();
  const unsigned precision = b.precision();
  const std::size_t n = b.size();
  const unsigned required = p == 2 ? 2U : 1U;
  if (min_valuation(b.residues(), p, precision) < std::min(required, precision)) {
    throw std::domain_error("matrix not in exponential domain");
  }
  // v(B^j / j!) >= required*j - (j-1)/(p-1), increasing in j.
  auto bound_ok = [&](unsigned long j) {
    return (required * j) * (p - 1) >= precision * (p - 1) + (j - 1);
  };
  unsigned long j_max = 1;
  while (!bound_ok(j_max)) ++j_max;
  unsigned extra = 0;
  for (unsigned long j = 1; j < j_max; ++j) extra = std::max(extra, factorial_valuation(j, p));
  const unsigned internal = precision + extra;
  const Integer big_mod = ipow(p, internal);
  const Integer out_mod = b.modulus();

  IntMatrix sum = IntMatrix::identity(n);
  IntMatrix power = IntMatrix::identity(n);
  Integer fact_unit = 1;
  for (unsigned long j = 1; j < j_max; ++j) {
    power = mul_mod(power, b.residues(), big_mod);
    Integer jj(j);
    fact_unit *= p_prime_part(jj, p);
    const unsigned v = factorial_valuation(j, p);
    const Integer pv = ipow(p, v);
    const Integer unit_inv = mod_inverse(fact_unit, out_mod);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        Integer term;
        mpz_divexact(term.get_mpz_t(), power(r, c).get_mpz_t(), pv.get_mpz_t());
        sum(r, c) += term * unit_inv;
      }
  }
  return PAdicMatrix(p, precision, sum);
}

Integer det_mod(const PAdicMatrix& a) { return mod_floor(determinant(a.residues()), a.modulus()); }

}  // namespace padicbetti
