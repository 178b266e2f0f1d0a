#pragma once

#include <cstdint>
#include <vector>

#include "padicbetti/integer.hpp"

namespace padicbetti {

/// The field F_{l^r} as F_l[x]/(f) for an irreducible monic f of degree r.
/// Elements are coefficient vectors of length r.
class GaloisField {
 public:
  using Elem = std::vector<std::uint64_t>;

  // Irreducible modulus found by a deterministic seeded search.
  GaloisField(std::uint64_t characteristic, unsigned degree, std::uint64_t seed = 0x5eed);

  // Smallest extension of F_l containing the E-th roots of unity (gcd(l, E) = 1).
  static GaloisField containing_roots_of_unity(std::uint64_t characteristic, std::uint64_t order);

  std::uint64_t characteristic() const { return ell_; }
  unsigned degree() const { return r_; }
  Integer size() const { return ipow(ell_, r_); }
  const std::vector<std::uint64_t>& modulus() const { return f_; }

  Elem zero() const { return Elem(r_, 0); }
  Elem one() const;
  Elem from_int(const Integer& c) const;
  bool is_zero(const Elem& a) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scale(const Elem& a, std::uint64_t c) const;
  Elem pow(const Elem& a, const Integer& e) const;
  Elem inverse(const Elem& a) const;

  // An element of exact multiplicative order E; E must divide l^r - 1.
  Elem primitive_root_of_unity(std::uint64_t order) const;

 private:
  std::uint64_t ell_;
  unsigned r_;
  std::vector<std::uint64_t> f_;  // monic, degree r, low to high
};

/// Rabin irreducibility test for a monic polynomial over F_l (low to high).
bool is_irreducible_mod(const std::vector<std::uint64_t>& f, std::uint64_t ell);

}  // namespace padicbetti
