#pragma once

#include <cstdint>
#include <vector>

#include "padicbetti/approximation.hpp"
#include "padicbetti/matrix.hpp"
#include "padicbetti/padic.hpp"
#include "padicbetti/poly.hpp"

namespace padicbetti {

/// Gamma = Z^N x|_A Z at a prime p.
struct FabGroupSpec {
  IntMatrix a;
  unsigned long p = 0;
};

struct RootOfUnityCertificate {
  bool holds = false;                  // no eigenvalue is a root of unity
  IntPoly charpoly;
  std::vector<std::uint64_t> checked;  // every d with phi(d) <= N
  std::vector<std::uint64_t> dividing; // those d with Phi_d | charpoly
};

/// Characteristic polynomial det(t I - A), Faddeev-LeVerrier over Q.
IntPoly characteristic_polynomial(const IntMatrix& a);

/// Eigenvalues avoid roots of unity iff no cyclotomic Phi_d of degree <= N divides charpoly(A).
RootOfUnityCertificate check_A1(const IntMatrix& a);

/// A = I mod p (mod 4 for p = 2).
bool check_A2(const IntMatrix& a, unsigned long p);

/// Validates det A = +-1 and both conditions; the error names a power A^e that fixes a failing congruence.
FabGroupSpec make_fab_spec(const IntMatrix& a, unsigned long p);

/// [[1 + p^2, p], [p, 1]].
IntMatrix fab_transcendence_matrix(unsigned long p);

/// sign det(A - I) for odd p, sign det(A^2 - I) for p = 2.
int epsilon_sign(const IntMatrix& a, unsigned long p);

/// det(A^{p^n} - I), exact.
Integer det_power_minus_identity(const IntMatrix& a, unsigned long p, unsigned n);

/// eps * det(log A)_(p') mod p^precision.
PAdicApprox torsion_closed_form(const FabGroupSpec& spec, unsigned precision);

/// |det(A^{p^n} - I)|_(p') for n = 0..n_max and their p-adic limit.
InvariantSequence torsion_approx(const FabGroupSpec& spec, unsigned n_max, unsigned precision,
                                 unsigned window = kDefaultWindow);

struct LogLimitResidual {
  unsigned valuation;  // min entry valuation of p^-n (A^{p^n} - I) - log A, capped at precision
  unsigned precision;
  bool exact_zero;     // difference vanished to full precision
};

LogLimitResidual log_limit_check(const IntMatrix& a, unsigned long p, unsigned n, unsigned precision);

/// For 2x2 A with det 1 and eigenvalues in Q_p: checks det(log A) = -log(lambda)^2 mod p^precision
/// with lambda a Hensel-lifted eigenvalue.
bool eigenvalue_log_identity(const IntMatrix& a, unsigned long p, unsigned precision);

}  // namespace padicbetti
