#include "padicbetti/padic.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace padicbetti {

Integer mod_inverse(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw std::domain_error("element not invertible modulo " + m.get_str());
  }
  return r;
}

std::int64_t to_int64(const Integer& x) {
  if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + x.get_str());
  return x.get_si();
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t totient(std::uint64_t n) {
  std::uint64_t r = n;
  for (auto q : prime_factors(n)) r = r / q * (q - 1);
  return r;
}

std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus) {
  unsigned __int128 result = 1 % modulus;
  unsigned __int128 b = base % modulus;
  while (exponent > 0) {
    if (exponent & 1U) result = result * b % modulus;
    b = b * b % modulus;
    exponent >>= 1U;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 1;
  if (gcd_u64(a % m, m) != 1) throw std::domain_error("multiplicative_order: not a unit");
  std::uint64_t order = totient(m);
  for (auto q : prime_factors(order)) {
    while (order % q == 0 && pow_mod_u64(a, order / q, m) == 1) order /= q;
  }
  return order;
}

std::string_view to_string(LimitStatus status) {
  switch (status) {
    case LimitStatus::converged: return "converged";
    case LimitStatus::growth_detected: return "growth-detected";
    case LimitStatus::insufficient_data: return "insufficient-data";
  }
  return "insufficient-data";
}

LimitStatus limit_status_from_string(std::string_view s) {
  if (s == "converged") return LimitStatus::converged;
  if (s == "growth-detected") return LimitStatus::growth_detected;
  if (s == "insufficient-data") return LimitStatus::insufficient_data;
  throw std::invalid_argument("unknown limit status '" + std::string(s) + "'");
}

void require_prime(unsigned long p, std::string_view what) {
  if (!is_prime(p)) {
    throw std::invalid_argument(std::string(what) + " must be prime, got " + std::to_string(p));
  }
}

PAdicApprox PAdicApprox::converged(unsigned long p, unsigned precision, const Integer& value) {
  require_prime(p);
  if (precision < 1) throw std::invalid_argument("precision must be at least 1");
  return PAdicApprox(p, precision, mod_floor(value, ipow(p, precision)), LimitStatus::converged);
}

PAdicApprox PAdicApprox::growth_detected(unsigned long p) {
  require_prime(p);
  return PAdicApprox(p, 0, 0, LimitStatus::growth_detected);
}

PAdicApprox PAdicApprox::insufficient_data(unsigned long p) {
  require_prime(p);
  return PAdicApprox(p, 0, 0, LimitStatus::insufficient_data);
}

PAdicApprox PAdicApprox::truncated(unsigned precision) const {
  if (!is_converged()) return *this;
  if (precision >= precision_) return *this;
  if (precision == 0) return insufficient_data(prime_);
  return converged(prime_, precision, residue_);
}

bool PAdicApprox::agrees_with(const PAdicApprox& other) const {
  if (!is_converged() || !other.is_converged() || prime_ != other.prime_) return false;
  unsigned m = std::min(precision_, other.precision_);
  Integer mod = ipow(prime_, m);
  return mod_floor(residue_ - other.residue_, mod) == 0;
}

unsigned vp(const Integer& x, unsigned long p) {
  if (x == 0) throw std::domain_error("valuation of zero undefined");
  require_prime(p);
  Integer y = abs(x);
  unsigned v = 0;
  while (mpz_divisible_ui_p(y.get_mpz_t(), p) != 0) {
    mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), p);
    ++v;
  }
  return v;
}

Integer p_prime_part(const Integer& x, unsigned long p) {
  if (x == 0) throw std::domain_error("p'-part of zero undefined");
  Integer y = x;
  Integer pp = ipow(p, vp(x, p));
  mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), pp.get_mpz_t());
  return y;
}

PAdicApprox padic_limit(std::span<const Integer> seq, unsigned long p, unsigned target_precision,
                        unsigned window) {
  require_prime(p);
  if (seq.empty()) throw std::invalid_argument("padic_limit: empty sequence");
  if (window < 2) throw std::invalid_argument("padic_limit: window must be at least 2");
  if (target_precision < 1) throw std::invalid_argument("padic_limit: precision must be at least 1");
  if (seq.size() < window) return PAdicApprox::insufficient_data(p);

  auto tail = seq.subspan(seq.size() - window);
  const Integer& last = tail.back();

  // Largest m such that every tail term agrees with the last one mod p^m.
  unsigned agreed = target_precision;
  for (const auto& term : tail) {
    Integer diff = term - last;
    if (diff == 0) continue;
    agreed = std::min(agreed, vp(diff, p));
  }
  if (agreed >= 1) return PAdicApprox::converged(p, agreed, last);

  bool growing = true;
  for (std::size_t i = 1; i < tail.size(); ++i) {
    if (abs(tail[i]) <= abs(tail[i - 1])) growing = false;
  }
  bool distinct_mod_p = true;
  for (std::size_t i = 0; i < tail.size() && distinct_mod_p; ++i) {
    for (std::size_t j = i + 1; j < tail.size(); ++j) {
      if (mpz_divisible_ui_p(Integer(tail[i] - tail[j]).get_mpz_t(), p) != 0) {
        distinct_mod_p = false;
        break;
      }
    }
  }
  if (growing && distinct_mod_p) return PAdicApprox::growth_detected(p);
  return PAdicApprox::insufficient_data(p);
}

PAdicIndex padic_index_from_tower(std::span<const Integer> indices, unsigned long p,
                                  unsigned target_precision, unsigned window) {
  if (indices.empty()) throw std::invalid_argument("padic_index_from_tower: empty sequence");
  for (const auto& x : indices) {
    if (x < 1) throw std::invalid_argument("padic_index_from_tower: indices must be positive");
  }
  PAdicIndex out{padic_limit(indices, p, target_precision, window), false, std::nullopt};
  if (indices.size() >= window) {
    auto tail = indices.subspan(indices.size() - window);
    bool constant = std::all_of(tail.begin(), tail.end(), [&](const Integer& x) { return x == tail.back(); });
    if (constant) {
      out.is_open = true;
      out.exact = tail.back();
    }
  }
  return out;
}

}  // namespace padicbetti
