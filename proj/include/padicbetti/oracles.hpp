#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "padicbetti/approximation.hpp"
#include "padicbetti/atiyah.hpp"
#include "padicbetti/complexes.hpp"
#include "padicbetti/matrix.hpp"

namespace padicbetti {

// Brute-force cross-checks. Nothing here reuses the elimination code of the main routes.

struct OracleReport {
  std::string quantity;
  std::string main_value;
  std::string oracle_value;
  bool agree = false;
};

/// Invariant factors from gcds of k x k minors (cofactor expansion); at most 5x5.
std::vector<Integer> oracle_snf_minor_gcd(const IntMatrix& m);

/// b_j of the Q-cover from its explicit cell structure (cells = cells of X x Q), |Q| <= 24.
std::uint64_t oracle_cover_cohomology(const ChainComplexSpec& c, const FiniteQuotient& q, FieldSpec k, std::size_t j);

/// sum over zeta in mu(p^N)^d of the nullity of A(eps(zeta)), evaluated numerically
/// in Q(zeta_{p^N}) or in a finite field containing mu(p^N).
std::uint64_t oracle_character_kernel(const AtiyahInstance& inst, unsigned N);

/// The full randomized suite: at least `per_pair` seeded instances for each main/oracle pair.
std::vector<OracleReport> run_oracle_suite(std::uint64_t seed = 20240611, std::size_t per_pair = 50);

}  // namespace padicbetti
