#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "padicbetti/integer.hpp"
#include "padicbetti/poly.hpp"

namespace padicbetti {

struct RootCountResult {
  std::uint64_t count = 0;         // distinct roots of f in mu(m p^infinity)
  unsigned stabilized_at = 0;      // first n with count = |V(f) cap mu(m p^n)|
  Integer witness_order;           // m p^stabilized_at
};

/// deg gcd(rad f, t^order - 1), the number of distinct order-th roots of unity among the roots of f.
std::uint64_t roots_of_unity_count(const IntPoly& f, const Integer& order);

/// |V(f) cap mu(m p^infinity)| by exact gcds with t^{m p^n} - 1.
RootCountResult count_roots_mu(const IntPoly& f, std::uint64_t m, unsigned long p);

/// 1 + sum_i |V(Delta_i) cap mu(m p^infinity)|.
Integer knot_b1(const std::vector<IntPoly>& deltas, std::uint64_t m, unsigned long p);

/// Invariant factors of a matrix over Q[t, t^-1], monic and free of t factors.
struct LaurentSmithForm {
  std::vector<RatPoly> factors;  // nonzero invariant factors, each dividing the next
  std::size_t rank() const { return factors.size(); }
};

/// Matrix in a single Laurent variable, rows x cols.
LaurentSmithForm laurent_smith_form(const LaurentMatrix& a, std::size_t rows, std::size_t cols);

struct CyclicCoverResult {
  Integer value;                     // the limit Betti number
  std::size_t e = 0;                 // e_j
  LaurentSmithForm lower;            // factors g_i of A_j (u = rank)
  LaurentSmithForm upper;            // factors f_i of A_{j+1} (v = rank)
  std::vector<std::uint64_t> lower_counts;
  std::vector<std::uint64_t> upper_counts;
  std::string certificate() const;
};

/// b_j of the infinite cyclic cover along Z -> Z/m p^n, from A_j (e_j x e_{j-1}) and
/// A_{j+1} (e_{j+1} x e_j) over Q[t, t^-1]. An empty matrix stands for the zero map.
CyclicCoverResult cyclic_cover_bj(const LaurentMatrix& aj, std::size_t e_prev, const LaurentMatrix& aj1,
                                  std::size_t e_j, std::uint64_t m, unsigned long p);

/// b_j(Y / m p^n Z; Q) = m p^n (e_j - u - v) + sum of level-n root counts.
Integer cyclic_cover_level_formula(std::size_t e_j, std::size_t u, std::size_t v,
                                   const std::vector<std::uint64_t>& factor_counts_at_n, std::uint64_t m,
                                   unsigned long p, unsigned n);

/// Level value from a computed result; counts taken against t^{m p^n} - 1.
Integer cyclic_cover_level(const CyclicCoverResult& r, std::uint64_t m, unsigned long p, unsigned n);

}  // namespace padicbetti
