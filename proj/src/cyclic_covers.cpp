#include "padicbetti/cyclic_covers.hpp"

#include <algorithm>
#include <climits>
#include <sstream>
#include <stdexcept>

#include "padicbetti/padic.hpp"

namespace padicbetti {

namespace {

constexpr unsigned kMaxLevel = 40;

std::uint64_t count_against(const RatPoly& rad, const Integer& order) {
  if (rad.degree() < 1) return 0;
  RatPoly r = power_of_t_mod(order, rad) - RatPoly::monomial(1, 0);
  if (r.is_zero()) return static_cast<std::uint64_t>(rad.degree());
  return static_cast<std::uint64_t>(poly_gcd(rad, r).degree());
}

void check_m(std::uint64_t m, unsigned long p) {
  require_prime(p);
  if (m == 0) throw std::invalid_argument("m must be positive");
  if (m % p == 0) throw std::invalid_argument("m must be coprime to p");
}

}  // namespace

std::uint64_t roots_of_unity_count(const IntPoly& f, const Integer& order) {
  if (f.is_zero()) throw std::invalid_argument("root count of the zero polynomial");
  if (order <= 0) throw std::invalid_argument("root of unity order must be positive");
  return count_against(radical(RatPoly(f)), order);
}

RootCountResult count_roots_mu(const IntPoly& f, std::uint64_t m, unsigned long p) {
  if (f.is_zero()) throw std::invalid_argument("root count of the zero polynomial");
  check_m(m, p);
  const RatPoly rad = radical(RatPoly(f));
  const auto deg = static_cast<std::uint64_t>(std::max<long>(rad.degree(), 0));
  // A root of order m' p^k (k >= 1) has degree phi(m') p^(k-1) (p-1) <= deg, so once
  // p^n (p-1) > deg no new root can appear at level n+1.
  std::vector<std::uint64_t> counts;
  Integer ppow = 1;
  for (unsigned n = 0; n <= kMaxLevel; ++n, ppow *= p) {
    counts.push_back(count_against(rad, Integer(static_cast<unsigned long>(m)) * ppow));
    const bool past_bound = ppow * (p - 1) > deg;
    if (n >= 1 && past_bound && counts[n] == counts[n - 1]) {
      RootCountResult out;
      out.count = counts[n];
      unsigned first = n;
      while (first > 0 && counts[first - 1] == out.count) --first;
      out.stabilized_at = first;
      out.witness_order = Integer(static_cast<unsigned long>(m)) * ipow(p, first);
      return out;
    }
  }
  throw std::runtime_error("count_roots_mu: no stabilization below level 40");
}

Integer knot_b1(const std::vector<IntPoly>& deltas, std::uint64_t m, unsigned long p) {
  check_m(m, p);
  Integer b = 1;
  for (const auto& d : deltas) b += static_cast<unsigned long>(count_roots_mu(d, m, p).count);
  return b;
}

// ---------------------------------------------------------------------------

namespace {

using PolyMatrix = std::vector<std::vector<RatPoly>>;

PolyMatrix to_poly_matrix(const LaurentMatrix& a, std::size_t rows, std::size_t cols) {
  if (a.size() != rows) throw std::invalid_argument("Laurent matrix: row count mismatch");
  int low = INT_MAX;
  for (const auto& row : a) {
    if (row.size() != cols) throw std::invalid_argument("Laurent matrix: column count mismatch");
    for (const auto& x : row) {
      if (!x.is_zero() && x.vars() != 1) throw std::invalid_argument("cyclic covers need a single Laurent variable");
      if (x.characteristic() != 0) throw std::invalid_argument("cyclic covers work over Q");
      for (const auto& [e, c] : x.terms()) low = std::min(low, e[0]);
    }
  }
  PolyMatrix out(rows, std::vector<RatPoly>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      for (const auto& [e, c] : a[i][j].terms())
        out[i][j] = out[i][j] + RatPoly::monomial(Rational(c), static_cast<std::size_t>(e[0] - low));
  return out;
}

RatPoly strip_t(RatPoly f) {
  f = f.monic();
  std::size_t k = 0;
  while (k < f.coeffs().size() && f.coeffs()[k] == 0) ++k;
  if (k == 0) return f;
  return RatPoly(std::vector<Rational>(f.coeffs().begin() + static_cast<long>(k), f.coeffs().end()));
}

}  // namespace

LaurentSmithForm laurent_smith_form(const LaurentMatrix& a, std::size_t rows, std::size_t cols) {
  PolyMatrix m = to_poly_matrix(a, rows, cols);
  LaurentSmithForm out;
  std::vector<RatPoly> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // smallest-degree nonzero entry of the trailing block
      long best = -1;
      std::size_t bi = 0, bj = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (!m[i][j].is_zero() && (best < 0 || m[i][j].degree() < best)) {
            best = m[i][j].degree();
            bi = i;
            bj = j;
          }
      if (best < 0) goto done;
      std::swap(m[t], m[bi]);
      for (auto& row : m) std::swap(row[t], row[bj]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t].is_zero()) continue;
        RatPoly q = divmod(m[i][t], m[t][t]).first;
        for (std::size_t j = t; j < cols; ++j) m[i][j] = m[i][j] - q * m[t][j];
        if (!m[i][t].is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j].is_zero()) continue;
        RatPoly q = divmod(m[t][j], m[t][t]).first;
        for (std::size_t i = t; i < rows; ++i) m[i][j] = m[i][j] - q * m[i][t];
        if (!m[t][j].is_zero()) clean = false;
      }
      if (!clean) continue;
      // divisibility: fold an offending row into row t and repeat
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!divmod(m[i][j], m[t][t]).second.is_zero()) {
            for (std::size_t k = t; k < cols; ++k) m[t][k] = m[t][k] + m[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(m[t][t]);
  }
done:
  for (auto& d : diag) out.factors.push_back(strip_t(d));
  return out;
}

std::string CyclicCoverResult::certificate() const {
  std::ostringstream os;
  os << "e=" << e << " lower=[";
  for (std::size_t i = 0; i < lower.factors.size(); ++i)
    os << (i ? ", " : "") << lower.factors[i].primitive().to_string() << ":" << lower_counts[i];
  os << "] upper=[";
  for (std::size_t i = 0; i < upper.factors.size(); ++i)
    os << (i ? ", " : "") << upper.factors[i].primitive().to_string() << ":" << upper_counts[i];
  os << "]";
  return os.str();
}

namespace {

void check_composition(const LaurentMatrix& aj, const LaurentMatrix& aj1, std::size_t e_j) {
  if (aj.empty() || aj1.empty()) return;
  const std::size_t cols = aj[0].size();
  for (const auto& row : aj1) {
    if (row.size() != e_j) throw std::invalid_argument("A_{j+1} must have e_j columns");
    for (std::size_t c = 0; c < cols; ++c) {
      LaurentPoly s(1);
      for (std::size_t k = 0; k < e_j; ++k) s = s + row[k] * aj[k][c];
      if (!s.is_zero()) throw std::invalid_argument("A_{j+1} A_j is not zero");
    }
  }
}

}  // namespace

CyclicCoverResult cyclic_cover_bj(const LaurentMatrix& aj, std::size_t e_prev, const LaurentMatrix& aj1,
                                  std::size_t e_j, std::uint64_t m, unsigned long p) {
  check_m(m, p);
  if (!aj.empty() && aj.size() != e_j) throw std::invalid_argument("A_j must have e_j rows");
  check_composition(aj, aj1, e_j);
  CyclicCoverResult r;
  r.e = e_j;
  if (!aj.empty() && e_prev > 0) r.lower = laurent_smith_form(aj, e_j, e_prev);
  if (!aj1.empty() && e_j > 0) r.upper = laurent_smith_form(aj1, aj1.size(), e_j);
  r.value = 0;
  for (const auto& f : r.lower.factors) {
    r.lower_counts.push_back(count_roots_mu(f.primitive(), m, p).count);
    r.value += static_cast<unsigned long>(r.lower_counts.back());
  }
  for (const auto& f : r.upper.factors) {
    r.upper_counts.push_back(count_roots_mu(f.primitive(), m, p).count);
    r.value += static_cast<unsigned long>(r.upper_counts.back());
  }
  return r;
}

Integer cyclic_cover_level_formula(std::size_t e_j, std::size_t u, std::size_t v,
                                   const std::vector<std::uint64_t>& factor_counts_at_n, std::uint64_t m,
                                   unsigned long p, unsigned n) {
  if (u + v > e_j) throw std::invalid_argument("u + v exceeds e_j");
  Integer b = Integer(static_cast<unsigned long>(m)) * ipow(p, n) * static_cast<unsigned long>(e_j - u - v);
  for (auto c : factor_counts_at_n) b += static_cast<unsigned long>(c);
  return b;
}

Integer cyclic_cover_level(const CyclicCoverResult& r, std::uint64_t m, unsigned long p, unsigned n) {
  const Integer order = Integer(static_cast<unsigned long>(m)) * ipow(p, n);
  std::vector<std::uint64_t> counts;
  for (const auto& f : r.lower.factors) counts.push_back(roots_of_unity_count(f.primitive(), order));
  for (const auto& f : r.upper.factors) counts.push_back(roots_of_unity_count(f.primitive(), order));
  return cyclic_cover_level_formula(r.e, r.lower.rank(), r.upper.rank(), counts, m, p, n);
}

}  // namespace padicbetti
