#include "padicbetti/finite_field.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace padicbetti {

namespace {

using Poly = std::vector<std::uint64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod f over F_l, f monic.
Poly poly_mod(Poly a, const Poly& f, std::uint64_t l) {
  trim(a);
  const std::size_t df = f.size() - 1;
  while (a.size() > df) {
    std::uint64_t lead = a.back();
    std::size_t shift = a.size() - 1 - df;
    if (lead != 0) {
      for (std::size_t i = 0; i <= df; ++i) a[shift + i] = (a[shift + i] + (l - lead) * f[i] % l) % l;
    }
    a.pop_back();
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t l) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % l;
  }
  return poly_mod(std::move(c), f, l);
}

Poly poly_powmod(Poly base, const Integer& e, const Poly& f, std::uint64_t l) {
  Poly result{1};
  result = poly_mod(result, f, l);
  base = poly_mod(base, f, l);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (std::size_t k = bits; k-- > 0;) {
    result = poly_mulmod(result, result, f, l);
    if (mpz_tstbit(e.get_mpz_t(), k) != 0) result = poly_mulmod(result, base, f, l);
  }
  return result;
}

Poly poly_sub(Poly a, const Poly& b, std::uint64_t l) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + l - b[i]) % l;
  trim(a);
  return a;
}

Poly poly_gcd_mod(Poly a, Poly b, std::uint64_t l) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    std::uint64_t inv = pow_mod_u64(b.back(), l - 2, l);
    Poly bm = b;
    for (auto& c : bm) c = c * inv % l;
    Poly r = poly_mod(a, bm, l);
    a = std::move(bm);
    b = std::move(r);
  }
  return a;
}

}  // namespace

bool is_irreducible_mod(const std::vector<std::uint64_t>& f, std::uint64_t ell) {
  if (f.size() < 2 || f.back() != 1) throw std::invalid_argument("is_irreducible_mod: monic polynomial required");
  const unsigned r = static_cast<unsigned>(f.size() - 1);
  if (r == 1) return true;
  Poly x{0, 1};
  // x^(l^r) == x mod f
  Poly xr = poly_powmod(x, ipow(ell, r), f, ell);
  if (!poly_sub(xr, poly_mod(x, f, ell), ell).empty()) return false;
  for (auto q : prime_factors(r)) {
    Poly xq = poly_powmod(x, ipow(ell, r / static_cast<unsigned>(q)), f, ell);
    Poly g = poly_gcd_mod(f, poly_sub(xq, x, ell), ell);
    if (g.size() > 1) return false;
  }
  return true;
}

GaloisField::GaloisField(std::uint64_t characteristic, unsigned degree, std::uint64_t seed)
    : ell_(characteristic), r_(degree) {
  if (!is_prime(characteristic) || characteristic >= (1ULL << 31)) {
    throw std::invalid_argument("GaloisField: characteristic must be a prime below 2^31, got " +
                                std::to_string(characteristic));
  }
  if (degree < 1) throw std::invalid_argument("GaloisField: degree must be positive");
  if (degree == 1) {
    f_ = {0, 1};
    return;
  }
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Poly f(degree + 1);
    f[degree] = 1;
    for (unsigned i = 0; i < degree; ++i) f[i] = rng() % ell_;
    if (f[0] == 0) continue;
    if (is_irreducible_mod(f, ell_)) {
      f_ = std::move(f);
      return;
    }
  }
  throw std::runtime_error("GaloisField: no irreducible polynomial found");
}

GaloisField GaloisField::containing_roots_of_unity(std::uint64_t characteristic, std::uint64_t order) {
  if (gcd_u64(characteristic, order) != 1) {
    throw std::invalid_argument("roots of unity of order divisible by the characteristic do not exist");
  }
  return GaloisField(characteristic, static_cast<unsigned>(multiplicative_order(characteristic % order, order)));
}

GaloisField::Elem GaloisField::one() const {
  Elem e(r_, 0);
  e[0] = 1 % ell_;
  return e;
}

GaloisField::Elem GaloisField::from_int(const Integer& c) const {
  Elem e(r_, 0);
  e[0] = mod_floor(c, Integer(static_cast<unsigned long>(ell_))).get_ui();
  return e;
}

bool GaloisField::is_zero(const Elem& a) const {
  for (auto c : a)
    if (c != 0) return false;
  return true;
}

GaloisField::Elem GaloisField::add(const Elem& a, const Elem& b) const {
  Elem c(r_);
  for (unsigned i = 0; i < r_; ++i) c[i] = (a[i] + b[i]) % ell_;
  return c;
}

GaloisField::Elem GaloisField::sub(const Elem& a, const Elem& b) const {
  Elem c(r_);
  for (unsigned i = 0; i < r_; ++i) c[i] = (a[i] + ell_ - b[i]) % ell_;
  return c;
}

GaloisField::Elem GaloisField::scale(const Elem& a, std::uint64_t k) const {
  Elem c(r_);
  k %= ell_;
  for (unsigned i = 0; i < r_; ++i) c[i] = a[i] * k % ell_;
  return c;
}

GaloisField::Elem GaloisField::mul(const Elem& a, const Elem& b) const {
  Poly prod(2 * r_ - 1, 0);
  for (unsigned i = 0; i < r_; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < r_; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % ell_;
  }
  for (std::size_t k = prod.size(); k-- > r_;) {
    std::uint64_t lead = prod[k];
    if (lead == 0) continue;
    std::size_t shift = k - r_;
    for (unsigned i = 0; i < r_; ++i) prod[shift + i] = (prod[shift + i] + (ell_ - lead) * f_[i]) % ell_;
    prod[k] = 0;
  }
  prod.resize(r_);
  return prod;
}

GaloisField::Elem GaloisField::pow(const Elem& a, const Integer& e) const {
  if (e < 0) return pow(inverse(a), -e);
  Elem result = one();
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (std::size_t k = bits; k-- > 0;) {
    result = mul(result, result);
    if (mpz_tstbit(e.get_mpz_t(), k) != 0) result = mul(result, a);
  }
  return result;
}

GaloisField::Elem GaloisField::inverse(const Elem& a) const {
  if (is_zero(a)) throw std::domain_error("GaloisField: inverse of zero");
  return pow(a, size() - 2);
}

GaloisField::Elem GaloisField::primitive_root_of_unity(std::uint64_t order) const {
  Integer group = size() - 1;
  if (mpz_divisible_ui_p(group.get_mpz_t(), order) == 0) {
    throw std::domain_error("GaloisField: " + std::to_string(order) + " does not divide the unit group order");
  }
  Integer cofactor = group / static_cast<unsigned long>(order);
  auto factors = prime_factors(order);
  std::mt19937_64 rng(order * 7919 + ell_);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Elem g(r_);
    for (unsigned i = 0; i < r_; ++i) g[i] = rng() % ell_;
    if (is_zero(g)) continue;
    Elem h = pow(g, cofactor);
    bool ok = true;
    for (auto q : factors) {
      if (pow(h, Integer(static_cast<unsigned long>(order / q))) == one()) {
        ok = false;
        break;
      }
    }
    if (ok) return h;
  }
  throw std::runtime_error("GaloisField: primitive root of unity not found");
}

}  // namespace padicbetti
