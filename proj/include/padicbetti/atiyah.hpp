#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padicbetti/approximation.hpp"
#include "padicbetti/groups.hpp"
#include "padicbetti/padic.hpp"
#include "padicbetti/poly.hpp"

namespace padicbetti {

/// c_{k,p}: 1 for Q, p log_p(q) for F_q. Kept exact; p^{c} = q^p for F_q.
struct CConstant {
  unsigned long p = 0;
  std::uint64_t q = 0;  // 0 for Q

  double value() const;
  // p^{n+1-c} <= diff, compared exactly in integers
  bool bound_holds(const Integer& diff, unsigned n) const;
  std::string to_string() const;
};

CConstant c_constant(std::uint64_t q, unsigned long p);  // q = 0 means Q; q a prime power
CConstant c_constant(FieldSpec k, unsigned long p);

enum class GrowthMode { stabilized, fast_growth, inconclusive };
std::string_view to_string(GrowthMode mode);

struct BoundRecord {
  unsigned n;
  Integer value;
  bool holds;
};

struct GrowthVerdict {
  GrowthMode mode = GrowthMode::inconclusive;
  std::optional<Integer> stabilized_value;
  std::vector<BoundRecord> bound_checked;
};

/// Classifies a Betti sequence along a Frattini tower (level n = Q / Phi^n):
/// stabilized when the last `window` values equal b_limit, fast growth when
/// every level satisfies b(n) >= p^{n+1-c} + b_limit.
GrowthVerdict dichotomy_check(const InvariantSequence& seq, const Integer& b_limit, const CConstant& c,
                              unsigned window = 2);

/// Checks of the Frattini length rules on one group.
struct FrattiniRuleReport {
  std::string group;
  unsigned length = 0;
  std::size_t subgroups_checked = 0;
  std::size_t normal_checked = 0;
  bool quotient_rule = true;   // F(G) <= F(N) + F(G/N)
  bool subgroup_rule = true;   // F(G) <= F(H) + v_p |G:H|
  std::vector<std::string> failures;
  bool ok() const { return quotient_rule && subgroup_rule; }
};

FrattiniRuleReport frattini_rules_check(std::shared_ptr<const FiniteGroup> g, unsigned long p,
                                         const std::string& name);

/// Matrix A over k in variables t_1..t_{d+s}, with t_{d+i} -> sum_j lambda[i][j] t_j.
struct AtiyahInstance {
  LaurentMatrix a;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t d = 1;
  std::size_t s = 0;
  std::vector<std::vector<Integer>> lambda;  // s x d, known mod p^depth
  unsigned long p = 2;
  FieldSpec field;

  void validate() const;
  std::string describe() const;
};

/// Element images in (Z/p^N)^d of t_1..t_{d+s}.
std::vector<GroupElem> atiyah_images(const AtiyahInstance& inst, const AbelianGroup& level, unsigned N);

/// dim_k ker r(A_N) at level (Z/p^N)^d, r(A): C(Q)^cols -> C(Q)^rows: cols|Q| minus the rank of the unfolded matrix.
std::uint64_t atiyah_level_dim(const AtiyahInstance& inst, unsigned N);

struct AtiyahResult {
  std::vector<std::uint64_t> dims;  // levels 1..depth
  PAdicApprox limit = PAdicApprox::insufficient_data(2);
  bool monotone = true;
  bool eventually_constant = false;  // last `window` values literally equal
  bool integral = false;             // converged and eventually constant
};

AtiyahResult atiyah_kernel_dim(const AtiyahInstance& inst, unsigned depth, unsigned precision,
                               unsigned window = kDefaultWindow);

/// Kernel dimension via minor ideals: sum over characters zeta of
/// #{i <= cols : every i x i minor vanishes at eps(zeta)}.
std::uint64_t atiyah_minors_dim(const AtiyahInstance& inst, unsigned N);

/// minors formula equals direct nullity at every level 1..depth.
bool minors_formula_check(const AtiyahInstance& inst, unsigned depth);

/// Seeded random instance: entries are sums of up to `terms` monomials of total degree <= max_degree.
AtiyahInstance random_atiyah_instance(std::uint64_t seed, std::size_t rows, std::size_t cols, std::size_t d,
                                      std::size_t s, unsigned long p, FieldSpec k, unsigned depth,
                                      unsigned max_degree = 2, unsigned terms = 3);

}  // namespace padicbetti
