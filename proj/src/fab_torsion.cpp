#include "padicbetti/fab_torsion.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace padicbetti {

IntPoly characteristic_polynomial(const IntMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("characteristic polynomial of a non-square matrix");
  const std::size_t n = a.rows();
  std::vector<Integer> c(n + 1);
  c[n] = 1;
  IntMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix next = a * m;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    m = std::move(next);
    IntMatrix am = a * m;
    Integer tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    // exact: Newton identities over Z
    c[n - k] = -tr / static_cast<unsigned long>(k);
  }
  return IntPoly(std::move(c));
}

RootOfUnityCertificate check_A1(const IntMatrix& a) {
  RootOfUnityCertificate cert;
  cert.charpoly = characteristic_polynomial(a);
  const std::uint64_t n = a.rows();
  // phi(d) >= sqrt(d / 2), so phi(d) <= n forces d <= 2 n^2
  const std::uint64_t bound = std::max<std::uint64_t>(2 * n * n, 2);
  const RatPoly f(cert.charpoly);
  for (std::uint64_t d = 1; d <= bound; ++d) {
    if (totient(d) > n) continue;
    cert.checked.push_back(d);
    if (divmod(f, RatPoly(cyclotomic(d))).second.is_zero()) cert.dividing.push_back(d);
  }
  cert.holds = cert.dividing.empty();
  return cert;
}

bool check_A2(const IntMatrix& a, unsigned long p) {
  const Integer q = p == 2 ? 4 : p;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (mod_floor(a(i, j) - (i == j ? 1 : 0), q) != 0) return false;
  return true;
}

namespace {

// Smallest e >= 1 with A^e = I mod q, searched up to a bound.
std::uint64_t congruence_order(const IntMatrix& a, const Integer& q, std::uint64_t limit) {
  const std::size_t n = a.rows();
  IntMatrix cur = a;
  for (std::uint64_t e = 1; e <= limit; ++e) {
    bool id = true;
    for (std::size_t i = 0; i < n && id; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        cur(i, j) = mod_floor(cur(i, j), q);
        if (cur(i, j) != (i == j ? 1 : 0)) {
          id = false;
        }
      }
    if (id) return e;
    cur = cur * a;
  }
  return 0;
}

IntMatrix minus_identity(IntMatrix m) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= 1;
  return m;
}

}  // namespace

FabGroupSpec make_fab_spec(const IntMatrix& a, unsigned long p) {
  require_prime(p);
  if (!a.is_square() || a.rows() == 0) throw std::invalid_argument("A must be a nonempty square matrix");
  Integer det = determinant(a);
  if (det != 1 && det != -1) throw std::invalid_argument("A must have determinant +-1");
  if (!check_A1(a).holds) throw std::domain_error("(A1) violated: an eigenvalue of A is a root of unity");
  if (!check_A2(a, p)) {
    const Integer q = p == 2 ? 4 : p;
    std::uint64_t e = congruence_order(a, q, 100000);
    std::string hint = e ? " (e = " + std::to_string(e) + " works)" : "";
    throw std::domain_error("A is not congruent to I mod " + q.get_str() + "; replace A by a power A^e" + hint);
  }
  return {a, p};
}

IntMatrix fab_transcendence_matrix(unsigned long p) {
  IntMatrix a(2, 2);
  a(0, 0) = 1 + Integer(p) * p;
  a(0, 1) = p;
  a(1, 0) = p;
  a(1, 1) = 1;
  return a;
}

int epsilon_sign(const IntMatrix& a, unsigned long p) {
  require_prime(p);
  Integer d = determinant(minus_identity(p == 2 ? a * a : a));
  if (d == 0) throw std::domain_error("(A1) violated: determinant vanishes");
  return sgn(d);
}

Integer det_power_minus_identity(const IntMatrix& a, unsigned long p, unsigned n) {
  return determinant(minus_identity(matrix_power(a, ipow(p, n))));
}

PAdicApprox torsion_closed_form(const FabGroupSpec& spec, unsigned precision) {
  if (precision == 0) throw std::invalid_argument("precision must be positive");
  const unsigned long p = spec.p;
  if (!check_A2(spec.a, p)) throw std::domain_error("A is not in the logarithm domain");
  const int eps = epsilon_sign(spec.a, p);
  const unsigned cap = 8 * precision + 64;
  unsigned work = precision + 4;
  for (;;) {
    Integer det = det_mod(padic_log(PAdicMatrix(p, work, spec.a)));
    if (det == 0) {
      if (work >= cap) throw std::domain_error("det(log A) vanishes mod p^" + std::to_string(work) + "; increase precision");
      work = std::min(cap, 2 * work);
      continue;
    }
    const unsigned v = vp(det, p);
    if (work < precision + v) {
      work = precision + v;
      continue;
    }
    Integer unit = det / ipow(p, v);
    return PAdicApprox::converged(p, precision, mod_floor(eps * unit, ipow(p, precision)));
  }
}

InvariantSequence torsion_approx(const FabGroupSpec& spec, unsigned n_max, unsigned precision, unsigned window) {
  InvariantSequence seq;
  seq.request = {InvariantKind::torsion, 2, FieldSpec::rationals()};
  for (unsigned n = 0; n <= n_max; ++n) {
    Integer d = det_power_minus_identity(spec.a, spec.p, n);
    if (d == 0) throw std::domain_error("(A1) violated: det(A^{p^n} - I) = 0");
    Integer v = p_prime_part(abs(d), spec.p);
    seq.levels.push_back({n, ipow(spec.p, n).get_ui(), v});
  }
  auto vals = seq.values();
  seq.limit = padic_limit(vals, spec.p, precision, window);
  return seq;
}

LogLimitResidual log_limit_check(const IntMatrix& a, unsigned long p, unsigned n, unsigned precision) {
  require_prime(p);
  if (!check_A2(a, p)) throw std::domain_error("A is not in the logarithm domain");
  const Integer pn = ipow(p, n);
  IntMatrix b = minus_identity(matrix_power(a, pn));
  PAdicMatrix log_a = padic_log(PAdicMatrix(p, precision, a));
  const Integer mod = ipow(p, precision);
  LogLimitResidual out{precision, precision, true};
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      if (mod_floor(b(i, j), pn) != 0) throw std::logic_error("A^{p^n} - I not divisible by p^n");
      Integer diff = mod_floor(b(i, j) / pn - log_a(i, j), mod);
      if (diff == 0) continue;
      out.exact_zero = false;
      out.valuation = std::min(out.valuation, vp(diff, p));
    }
  return out;
}

namespace {

// Square root of u mod p^precision for a unit quadratic residue u, p odd.
Integer hensel_sqrt(const Integer& u, unsigned long p, unsigned precision) {
  const Integer up = mod_floor(u, p);
  if (p > 1000000) throw std::invalid_argument("hensel_sqrt: prime too large for the residue search");
  Integer s = -1;
  for (unsigned long x = 1; x < p; ++x)
    if (mod_floor(Integer(x) * x - up, p) == 0) {
      s = x;
      break;
    }
  if (s < 0) throw std::domain_error("eigenvalues are not in Q_p");
  const Integer mod = ipow(p, precision);
  for (unsigned k = 1; k < precision; k *= 2) {
    // s <- s - (s^2 - u) / (2 s)
    Integer inv = mod_inverse(2 * s, mod);
    s = mod_floor(s - (s * s - u) * inv, mod);
  }
  return mod_floor(s, mod);
}

}  // namespace

bool eigenvalue_log_identity(const IntMatrix& a, unsigned long p, unsigned precision) {
  require_prime(p);
  if (p == 2) throw std::invalid_argument("eigenvalue identity is checked for odd p");
  if (a.rows() != 2 || a.cols() != 2 || determinant(a) != 1) throw std::invalid_argument("2x2 matrix of determinant 1 required");
  if (!check_A2(a, p)) throw std::domain_error("A is not in the logarithm domain");
  const Integer tr = a(0, 0) + a(1, 1);
  const Integer disc = tr * tr - 4;
  if (disc == 0) throw std::domain_error("repeated eigenvalue");
  const unsigned k = vp(disc, p);
  if (k % 2 != 0) throw std::domain_error("eigenvalues are not in Q_p");
  const unsigned work = precision + k + 4;
  const Integer mod = ipow(p, work);
  Integer s = hensel_sqrt(disc / ipow(p, k), p, work);
  Integer lambda = mod_floor((tr + ipow(p, k / 2) * s) * mod_inverse(2, mod), mod);
  IntMatrix l1(1, 1);
  l1(0, 0) = lambda;
  Integer log_lambda = padic_log(PAdicMatrix(p, work, l1))(0, 0);
  Integer det_log = det_mod(padic_log(PAdicMatrix(p, work, a)));
  return mod_floor(det_log + log_lambda * log_lambda, ipow(p, precision)) == 0;
}

}  // namespace padicbetti
