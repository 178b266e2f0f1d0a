#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "padicbetti/finite_field.hpp"
#include "padicbetti/groups.hpp"
#include "padicbetti/poly.hpp"

namespace padicbetti {

/// Character theory of a finite abelian group Q = prod Z/n_i over Q(zeta_E) or
/// F_l(zeta_E), E = exp(Q). Characters are indexed like group elements:
/// chi_a(q) = zeta_E^{sum_i a_i q_i E / n_i}.
class CharacterTable {
 public:
  // characteristic 0 or a prime l not dividing |Q|.
  CharacterTable(const AbelianGroup& group, std::uint64_t characteristic);

  const AbelianGroup& group() const { return group_; }
  std::uint64_t exponent() const { return exponent_; }

  // Element of Z[Q] (or F_l[Q]); each term stores q_i * E / n_i mod E.
  struct Reduced {
    std::vector<std::vector<std::uint64_t>> weights;  // per term: q_i * E / n_i mod E
    std::vector<std::int64_t> coeffs;
    bool is_zero() const { return coeffs.empty(); }
  };

  // Image of a Laurent polynomial under the variable -> element map, combined in Z[Q].
  Reduced reduce(const LaurentPoly& f, const std::vector<GroupElem>& variable_images) const;

  // Calls visit(representative coords, orbit weight) once per Galois (char 0) or
  // Frobenius (char l) orbit of characters; weights sum to |Q|.
  void for_each_orbit(const std::function<void(const std::vector<std::uint64_t>&, std::uint64_t)>& visit) const;

  // Whether f(chi_a) = 0.
  bool vanishes(const Reduced& f, const std::vector<std::uint64_t>& a) const;

 private:
  std::uint64_t order_of(const std::vector<std::uint64_t>& a) const;

  AbelianGroup group_;
  std::uint64_t characteristic_;
  std::uint64_t exponent_;
  std::shared_ptr<GaloisField> field_;
  std::vector<GaloisField::Elem> zeta_powers_;
};

/// sum over characters chi of rank A(chi); A over Z (or F_l) in the Laurent
/// variables, variable i mapped to variable_images[i]. Empty when the route does not apply.
std::optional<std::uint64_t> character_rank_sum(const LaurentMatrix& a, std::size_t rows, std::size_t cols,
                                                const AbelianGroup& group,
                                                const std::vector<GroupElem>& variable_images,
                                                std::uint64_t characteristic);

}  // namespace padicbetti
