#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padicbetti/complexes.hpp"
#include "padicbetti/groups.hpp"
#include "padicbetti/padic.hpp"

namespace padicbetti {

/// Coefficient field: Q (characteristic 0) or F_l.
struct FieldSpec {
  std::uint64_t characteristic = 0;

  static FieldSpec rationals() { return {0}; }
  static FieldSpec prime_field(std::uint64_t ell);
  // "Q" or "F<l>"
  static FieldSpec parse(const std::string& text);
  bool is_rational() const { return characteristic == 0; }
  std::string to_string() const;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

struct EngineOptions {
  // Largest matrix side e_j |Q| for which r(A) is materialized.
  std::uint64_t max_dimension = 20000;
  // Largest |Q| for the character route on abelian quotients.
  std::uint64_t max_character_order = 1ULL << 24;
  bool use_characters = true;
  // 0: read PADIC_BETTI_THREADS, default 1.
  unsigned threads = 0;
};

unsigned engine_threads(const EngineOptions& options);

/// Generator images must kill the relations: A_{j+1} A_j = 0 after pushing words to Z[Q].
/// Throws std::invalid_argument otherwise.
void check_quotient_factorization(const ChainComplexSpec& c, const FiniteQuotient& q);
bool factors_through(const ChainComplexSpec& c, const FiniteQuotient& q);

/// rank of r(A_j) on C(Q, k)^{e_{j-1}}; 0 when j = 0 or j > d.
std::uint64_t boundary_rank(const ChainComplexSpec& c, const FiniteQuotient& q, FieldSpec k, std::size_t j,
                            const EngineOptions& options = {});

/// dim_k H^j(X~/Gamma_Q; k) = e_j |Q| - rank r(A_{j+1}) - rank r(A_j).
/// p = 0 skips the characteristic check.
std::uint64_t betti_at_level(const ChainComplexSpec& c, const FiniteQuotient& q, FieldSpec k, std::size_t j,
                             unsigned long p = 0, const EngineOptions& options = {});

/// |tors H^j(X~/Gamma_Q; Z[1/p])| from the invariant factors of r(A_j); 1 for j = 0.
Integer torsion_at_level(const ChainComplexSpec& c, const FiniteQuotient& q, unsigned long p, std::size_t j,
                         const EngineOptions& options = {});

enum class InvariantKind { betti, torsion, euler };

struct InvariantRequest {
  InvariantKind kind = InvariantKind::betti;
  std::size_t degree = 0;
  FieldSpec field;
};

struct LevelValue {
  unsigned n;
  std::uint64_t order;
  Integer value;
};

struct InvariantSequence {
  InvariantRequest request;
  std::vector<LevelValue> levels;
  PAdicApprox limit = PAdicApprox::insufficient_data(2);
  std::optional<bool> monotone;  // betti only
  std::optional<bool> euler;     // alternating sum matches |Q| chi at every level (complete complexes)

  std::vector<Integer> values() const;
};

/// Per-level values along the tower and their p-adic limit. Betti sequences on
/// p-kernel towers with char(k) != p must be nondecreasing; a violation throws.
InvariantSequence approximate(const ChainComplexSpec& c, const QuotientTower& tower, const InvariantRequest& request,
                              unsigned precision, unsigned window = kDefaultWindow, const EngineOptions& options = {},
                              bool check_euler = false);

/// Limit of |Q_n| chi(X), cross-checked level-wise against the alternating sum of Betti numbers.
InvariantSequence euler_padic(const ChainComplexSpec& c, const QuotientTower& tower, unsigned precision,
                              unsigned window = kDefaultWindow, const EngineOptions& options = {});

/// 1 + ||G|| - sum ||G:K_i|| + sum ||G:K_i|| b_1(X_i), evaluated at the common precision.
PAdicApprox wedge_predicted_b1(const std::vector<PAdicApprox>& b1_parts, const std::vector<PAdicIndex>& indices,
                               const PAdicApprox& order);

/// |Q_n : <images of the listed generators>| along the tower.
std::vector<Integer> subgroup_index_sequence(const QuotientTower& tower, const std::vector<std::size_t>& generators);
std::vector<Integer> order_sequence(const QuotientTower& tower);

/// Finite G-set levels: X^{N_n} with the action of the generators of Gamma.
struct GSetLevel {
  std::size_t size = 0;
  std::vector<std::vector<std::size_t>> actions;  // per generator, point -> point
  std::optional<std::vector<std::size_t>> inclusion;  // previous level -> this level
};

struct GSetTower {
  unsigned long p = 0;
  std::vector<FiniteQuotient> quotients;
  std::vector<GSetLevel> levels;
};

/// Checks that each action factors through Q_n and that inclusions are injective and equivariant.
void check_gset_tower(const GSetTower& ts);

GSetTower gset_constant(const QuotientTower& tower, std::size_t size);
GSetTower gset_regular(const QuotientTower& tower);
GSetTower gset_disjoint_union(const GSetTower& a, const GSetTower& b);
GSetTower gset_product(const GSetTower& a, const GSetTower& b);

/// p-adic limit of |X^{N_n}|.
PAdicApprox padic_cardinality(const GSetTower& ts, unsigned long p, unsigned precision,
                              unsigned window = kDefaultWindow);

}  // namespace padicbetti
