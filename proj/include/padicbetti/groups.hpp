#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "padicbetti/integer.hpp"
#include "padicbetti/matrix.hpp"

namespace padicbetti {

using GroupElem = std::uint64_t;

class AbelianGroup;

/// A finite group on the index set 0..order-1 with 0 the identity.
class FiniteGroup {
 public:
  virtual ~FiniteGroup() = default;
  virtual std::uint64_t order() const = 0;
  virtual GroupElem multiply(GroupElem a, GroupElem b) const = 0;
  virtual GroupElem inverse(GroupElem a) const = 0;
  virtual std::string describe() const = 0;
  // Non-null when the group is a product of cyclic groups in mixed-radix encoding.
  virtual const AbelianGroup* as_abelian() const { return nullptr; }

  GroupElem power(GroupElem a, std::uint64_t e) const;
  GroupElem commutator(GroupElem a, GroupElem b) const;  // a b a^-1 b^-1
  std::uint64_t element_order(GroupElem a) const;
};

/// Z/n_1 x ... x Z/n_k; coordinate 0 is the least significant digit.
class AbelianGroup final : public FiniteGroup {
 public:
  explicit AbelianGroup(std::vector<std::uint64_t> moduli);

  std::uint64_t order() const override { return order_; }
  GroupElem multiply(GroupElem a, GroupElem b) const override;
  GroupElem inverse(GroupElem a) const override;
  std::string describe() const override;
  const AbelianGroup* as_abelian() const override { return this; }

  const std::vector<std::uint64_t>& moduli() const { return moduli_; }
  std::vector<std::uint64_t> coords(GroupElem a) const;
  GroupElem index(const std::vector<std::uint64_t>& coords) const;
  // Element from arbitrary integer coordinates (reduced).
  GroupElem from_integers(const std::vector<Integer>& coords) const;
  // Least common multiple of the moduli.
  std::uint64_t exponent() const;

 private:
  std::vector<std::uint64_t> moduli_;
  std::uint64_t order_;
};

/// (Z/q)^N x| Z/q with (v, i)(w, j) = (v + A^i w, i + j); t = (0, 1) must
/// have order q, i.e. A^q = I mod q.
class SemidirectGroup final : public FiniteGroup {
 public:
  SemidirectGroup(const IntMatrix& a, std::uint64_t q);

  std::uint64_t order() const override { return order_; }
  GroupElem multiply(GroupElem a, GroupElem b) const override;
  GroupElem inverse(GroupElem a) const override;
  std::string describe() const override;

  std::size_t dim() const { return n_; }
  std::uint64_t q() const { return q_; }
  GroupElem make(const std::vector<std::uint64_t>& v, std::uint64_t i) const;
  std::pair<std::vector<std::uint64_t>, std::uint64_t> split(GroupElem a) const;

 private:
  std::size_t n_;
  std::uint64_t q_;
  std::uint64_t base_order_;  // q^N
  std::uint64_t order_;
  std::vector<std::vector<std::uint64_t>> powers_;  // A^i mod q, row-major N x N
};

/// Explicit multiplication table.
class TableGroup final : public FiniteGroup {
 public:
  // Validates identity 0, Latin-square property and associativity (exhaustive up to order 256).
  TableGroup(std::uint64_t order, std::vector<std::uint32_t> table, std::string name = "table");
  static std::shared_ptr<TableGroup> from_function(std::uint64_t order,
                                                   const std::function<GroupElem(GroupElem, GroupElem)>& mul,
                                                   std::string name);

  std::uint64_t order() const override { return order_; }
  GroupElem multiply(GroupElem a, GroupElem b) const override { return table_[a * order_ + b]; }
  GroupElem inverse(GroupElem a) const override { return inverse_[a]; }
  std::string describe() const override { return name_; }
  const std::vector<std::uint32_t>& table() const { return table_; }

 private:
  std::uint64_t order_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
  std::string name_;
};

/// G x H with index a + |G| b.
class DirectProductGroup final : public FiniteGroup {
 public:
  DirectProductGroup(std::shared_ptr<const FiniteGroup> g, std::shared_ptr<const FiniteGroup> h);
  std::uint64_t order() const override { return g_->order() * h_->order(); }
  GroupElem multiply(GroupElem a, GroupElem b) const override;
  GroupElem inverse(GroupElem a) const override;
  std::string describe() const override { return g_->describe() + " x " + h_->describe(); }

 private:
  std::shared_ptr<const FiniteGroup> g_;
  std::shared_ptr<const FiniteGroup> h_;
};

std::shared_ptr<const FiniteGroup> direct_product(std::shared_ptr<const FiniteGroup> g,
                                                  std::shared_ptr<const FiniteGroup> h);

/// A finite group together with the images of the generators of Gamma.
struct FiniteQuotient {
  std::shared_ptr<const FiniteGroup> group;
  std::vector<GroupElem> images;

  std::uint64_t order() const { return group->order(); }
  // x -> x * g for all x.
  std::vector<GroupElem> right_multiplication(GroupElem g) const;
  // Size of the subgroup generated by the images.
  std::uint64_t generated_order() const;
  bool is_dense() const { return generated_order() == order(); }
};

FiniteQuotient trivial_quotient(std::size_t generators);

/// Compatible chain of finite quotients Q_n = G / N_n.
struct QuotientTower {
  unsigned long p = 0;
  std::vector<FiniteQuotient> levels;
  std::vector<unsigned> level_numbers;  // n for each entry of levels
  // project(k, x): element x of levels[k + 1] to levels[k].
  std::function<GroupElem(std::size_t, GroupElem)> project;
  // Kernels ker(Q_m -> Q_k) are p-groups for k >= this index into levels.
  std::optional<std::size_t> p_kernel_from;
  std::string name;

  std::size_t size() const { return levels.size(); }
  // First `count` levels only.
  QuotientTower truncated(std::size_t count) const;
  // Drops the first `count` levels.
  QuotientTower dropped(std::size_t count) const;
};

/// Validates generator compatibility of projections, divisibility of orders,
/// and the homomorphism property (exhaustive for small levels, sampled otherwise).
void check_tower(const QuotientTower& tower);

// Images: per generator of Gamma, a coordinate vector of length d (m = 1) or d + 1
// (first coordinate taken mod m, the rest mod p^n).
QuotientTower tower_abelian(std::uint64_t m, std::size_t d, unsigned long p, unsigned depth,
                            const std::vector<std::vector<Integer>>& images);
// Gamma generated by (s, t): s -> omega mod p^n, t -> 1.
QuotientTower tower_irrational_line(unsigned long p, unsigned depth, const std::vector<Integer>& omega_residues);
// Gamma = Z^N x|_A Z with generators x_1..x_N, t.
QuotientTower tower_semidirect(const IntMatrix& a, unsigned long p, unsigned depth);
// Levels G / Phi^n(G), n = 1..F(G).
QuotientTower tower_frattini(const FiniteQuotient& top, unsigned long p);
// Level-wise direct product; generators of the first tower come first.
QuotientTower tower_product(const QuotientTower& a, const QuotientTower& b);
// Constant tower of a single finite quotient.
QuotientTower tower_constant(const FiniteQuotient& q, unsigned long p, unsigned depth);

// Sorted element list of the subgroup generated by gens.
std::vector<GroupElem> subgroup_closure(const FiniteGroup& g, const std::vector<GroupElem>& gens);
bool is_normal(const FiniteGroup& g, const std::vector<GroupElem>& subgroup);
bool is_p_group(const FiniteGroup& g, unsigned long p);

struct QuotientResult {
  std::shared_ptr<const FiniteGroup> group;
  std::vector<GroupElem> coset_of;  // element of G -> element of G/N
};

/// G/N for a normal subgroup N, by coset enumeration (abelian structure kept
/// when N = p^k G in an abelian group).
QuotientResult quotient_group(std::shared_ptr<const FiniteGroup> g, const std::vector<GroupElem>& normal);

struct FrattiniResult {
  std::vector<GroupElem> subgroup;  // elements of Phi(Q)
  FiniteQuotient quotient;          // Q / Phi(Q) with induced generator images
};

// Subgroup generated by all h^p and all commutators [h, h'] for h, h' in H.
std::vector<GroupElem> frattini_of_subgroup(const FiniteGroup& g, const std::vector<GroupElem>& h, unsigned long p);
FrattiniResult frattini_subgroup(const FiniteQuotient& q, unsigned long p);
unsigned frattini_length(const FiniteGroup& g, unsigned long p);
unsigned frattini_length_of_subgroup(const FiniteGroup& g, const std::vector<GroupElem>& h, unsigned long p);

// Every subgroup of a small group, each as a sorted element list.
std::vector<std::vector<GroupElem>> all_subgroups(const FiniteGroup& g);

// Named small groups: C<n>, products "C2xC4", D8, Q8, D16, Q16, SD16, M16,
// Heis3 (or Heis<p>), C9:C3, S3.
std::shared_ptr<const FiniteGroup> small_group(std::string_view name);
// Every abelian p-group of order p^k, k <= max_exponent, as moduli lists.
std::vector<std::vector<std::uint64_t>> abelian_p_group_types(unsigned long p, unsigned max_exponent);
// Names of the non-abelian groups of order <= p^4 available as tables.
std::vector<std::string> nonabelian_small_group_names(unsigned long p);

}  // namespace padicbetti
