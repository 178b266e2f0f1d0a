#include <gtest/gtest.h>

#include <random>

#include "padicbetti/matrix.hpp"
#include "padicbetti/oracles.hpp"
#include "padicbetti/padic.hpp"

using namespace padicbetti;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

// sum_{j<=terms} (-1)^{j-1} x^j / j as an exact rational, reduced mod p^n
Integer log_series_mod(long x, unsigned long p, unsigned n, unsigned terms) {
  Rational s = 0;
  Integer pw = 1;
  for (unsigned j = 1; j <= terms; ++j) {
    pw *= x;
    Rational t(pw, Integer(j));
    t.canonicalize();
    s += (j % 2 ? t : Rational(-t));
  }
  Integer mod = ipow(p, n);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), s.get_den().get_mpz_t(), mod.get_mpz_t());
  return mod_floor(s.get_num() * inv, mod);
}

}  // namespace

TEST(RankQ, Examples) {
  EXPECT_EQ(rank_q(IntMatrix::identity(2)), 2u);
  EXPECT_EQ(rank_q(IntMatrix{{1, 2}, {2, 4}}), 1u);
  EXPECT_EQ(rank_q(IntMatrix{{2, 0, 1}, {0, 3, 1}, {2, 3, 2}}), 2u);
  EXPECT_EQ(rank_q(IntMatrix(3, 0)), 0u);
}

TEST(RankFp, Examples) {
  EXPECT_EQ(rank_fp(FpMatrix::reduce(IntMatrix{{1, 1}, {1, 1}}, 2)), 1u);
  EXPECT_EQ(rank_fp(FpMatrix::reduce(IntMatrix{{3, 0}, {0, 3}}, 3)), 0u);
  EXPECT_EQ(rank_fp(FpMatrix::reduce(IntMatrix{{1, 2}, {3, 4}}, 5)), 2u);
  EXPECT_THROW(rank_fp(FpMatrix(4, 1, 1)), std::invalid_argument);
}

TEST(Smith, Examples) {
  auto a = smith_normal_form(IntMatrix{{2, 0}, {0, 3}}).divisors;
  EXPECT_EQ(a, (std::vector<Integer>{1, 6}));
  auto b = smith_normal_form(IntMatrix::identity(4)).divisors;
  EXPECT_EQ(b, std::vector<Integer>(4, Integer(1)));
  auto c = smith_normal_form(IntMatrix{{2, 4}, {6, 8}}).divisors;
  EXPECT_EQ(c, (std::vector<Integer>{2, 4}));
  EXPECT_TRUE(smith_normal_form(IntMatrix(2, 3)).divisors.empty());
}

TEST(Smith, AgreesWithMinorGcdOracle) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 80; ++i) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    IntMatrix m = random_matrix(rng, r, c, 6);
    if (i % 4 == 0 && r > 1)  // force a dependent row
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * 2;
    auto snf = smith_normal_form(m);
    EXPECT_EQ(snf.divisors, oracle_snf_minor_gcd(m)) << "instance " << i;
    EXPECT_EQ(snf.rank(), rank_q(m));
    for (std::size_t k = 1; k < snf.divisors.size(); ++k) EXPECT_EQ(snf.divisors[k] % snf.divisors[k - 1], 0);
  }
}

TEST(Rank, ModularAgreesWhenEllAvoidsDivisors) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 60; ++i) {
    IntMatrix m = random_matrix(rng, 1 + rng() % 6, 1 + rng() % 6, 5);
    auto snf = smith_normal_form(m);
    for (std::uint64_t ell : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL}) {
      std::size_t rf = rank_fp(FpMatrix::reduce(m, ell));
      EXPECT_LE(rf, rank_q(m));
      bool avoids = std::all_of(snf.divisors.begin(), snf.divisors.end(),
                                [&](const Integer& d) { return mpz_divisible_ui_p(d.get_mpz_t(), ell) == 0; });
      if (avoids) EXPECT_EQ(rf, rank_q(m));
    }
  }
}

TEST(Determinant, Basics) {
  EXPECT_EQ(determinant(IntMatrix{{2, 1}, {1, 1}}), 1);
  EXPECT_EQ(determinant(IntMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(determinant(IntMatrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 10}}), -3);
}

TEST(TorsionPPrime, Examples) {
  EXPECT_EQ(torsion_card_pprime({1, 6}, 2), 3);
  EXPECT_EQ(torsion_card_pprime({1, 1, 1}, 7), 1);
  EXPECT_EQ(torsion_card_pprime({4, 12}, 3), 16);
  EXPECT_THROW(torsion_card_pprime({0}, 3), std::domain_error);
}

TEST(PadicLog, IdentityAndScalar) {
  auto z = padic_log(PAdicMatrix::identity(5, 3, 2));
  EXPECT_TRUE(z.residues().is_zero());
  auto l = padic_log(PAdicMatrix(5, 3, IntMatrix{{6}}));
  EXPECT_EQ(l(0, 0), log_series_mod(5, 5, 3, 40));
  auto l2 = padic_log(PAdicMatrix(2, 6, IntMatrix{{5}}));
  EXPECT_EQ(l2(0, 0), log_series_mod(4, 2, 6, 80));
}

TEST(PadicLog, DomainErrors) {
  EXPECT_THROW(padic_log(PAdicMatrix(5, 3, IntMatrix{{2}})), std::domain_error);
  EXPECT_THROW(padic_log(PAdicMatrix(2, 3, IntMatrix{{3}})), std::domain_error);
  EXPECT_THROW(padic_exp(PAdicMatrix(3, 3, IntMatrix{{1}})), std::domain_error);
}

TEST(PadicExp, Examples) {
  auto one = padic_exp(PAdicMatrix(3, 2, IntMatrix(2, 2)));
  EXPECT_EQ(one, PAdicMatrix::identity(3, 2, 2));
  // exp(3) = 1 + 3 + 9/2 + 27/6 + ... mod 9
  Rational s = 0, term = 1;
  for (int j = 0; j < 30; ++j) {
    s += term;
    term = term * 3 / (j + 1);
  }
  Integer inv;
  Integer nine = 9;
  mpz_invert(inv.get_mpz_t(), s.get_den().get_mpz_t(), nine.get_mpz_t());
  EXPECT_EQ(padic_exp(PAdicMatrix(3, 2, IntMatrix{{3}}))(0, 0), mod_floor(s.get_num() * inv, nine));
}

TEST(PadicLogExp, InversePairAndPowers) {
  std::mt19937_64 rng(5);
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    const unsigned long q = p == 2 ? 4 : p;
    for (int i = 0; i < 15; ++i) {
      IntMatrix a = IntMatrix::identity(2);
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) a(r, c) += Integer(static_cast<long>(rng() % 50)) * q * p;
      PAdicMatrix pa(p, 6, a);
      PAdicMatrix la = padic_log(pa);
      EXPECT_EQ(padic_exp(la), pa);
      EXPECT_EQ(padic_log(padic_exp(la)), la);
      // log(A^3) = 3 log A
      PAdicMatrix cube(p, 6, matrix_power(a, 3));
      IntMatrix three = la.residues();
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) three(r, c) *= 3;
      EXPECT_EQ(padic_log(cube), PAdicMatrix(p, 6, three));
    }
  }
}

TEST(DetMod, Examples) {
  EXPECT_EQ(det_mod(PAdicMatrix::identity(3, 4, 3)), 1);
  EXPECT_EQ(det_mod(PAdicMatrix(5, 2, IntMatrix{{3, 0}, {0, 4}})), 12);
  EXPECT_EQ(det_mod(PAdicMatrix(5, 2, IntMatrix{{0, 1}, {1, 0}})), 24);
}
