#include <gtest/gtest.h>

#include "padicbetti/approximation.hpp"
#include "padicbetti/cyclic_covers.hpp"

using namespace padicbetti;

namespace {

IntPoly poly(const char* s) { return IntPoly::parse(s); }

// every generator -> t
LaurentMatrix collapse(const LaurentMatrix& a) {
  LaurentMatrix out;
  for (const auto& row : a) {
    std::vector<LaurentPoly> r;
    for (const auto& x : row) {
      LaurentPoly y(1);
      for (const auto& [e, c] : x.terms()) {
        int total = 0;
        for (int v : e) total += v;
        y.add_term({total}, c);
      }
      r.push_back(y);
    }
    out.push_back(r);
  }
  return out;
}

// x_1 -> t, the others -> 1
LaurentMatrix first_variable(const LaurentMatrix& a) {
  LaurentMatrix out;
  for (const auto& row : a) {
    std::vector<LaurentPoly> r;
    for (const auto& x : row) {
      LaurentPoly y(1);
      for (const auto& [e, c] : x.terms()) y.add_term({e[0]}, c);
      r.push_back(y);
    }
    out.push_back(r);
  }
  return out;
}

LaurentMatrix single(const char* s) { return {{LaurentPoly::parse(s, 1)}}; }

}  // namespace

TEST(CountRootsMu, Examples) {
  for (unsigned long p : {2UL, 3UL, 5UL, 7UL}) EXPECT_EQ(count_roots_mu(poly("t-1"), 1, p).count, 1u);
  EXPECT_EQ(count_roots_mu(poly("t^2-t+1"), 1, 5).count, 0u);
  auto r = count_roots_mu(poly("t^2-t+1"), 6, 5);
  EXPECT_EQ(r.count, 2u);
  EXPECT_EQ(r.witness_order, Integer(6) * ipow(5UL, r.stabilized_at));
  EXPECT_EQ(count_roots_mu(poly("t^2-1"), 1, 2).count, 2u);
  // Phi_8 appears only at 2^3
  auto r8 = count_roots_mu(poly("t^4+1"), 1, 2);
  EXPECT_EQ(r8.count, 4u);
  EXPECT_GE(r8.stabilized_at, 3u);
  // repeated factors count once
  EXPECT_EQ(count_roots_mu(poly("t^3-3*t^2+3*t-1"), 1, 3).count, 1u);
  EXPECT_EQ(count_roots_mu(poly("2*t+5"), 1, 3).count, 0u);
}

TEST(CountRootsMu, Errors) {
  EXPECT_THROW(count_roots_mu(IntPoly(), 1, 3), std::invalid_argument);
  EXPECT_THROW(count_roots_mu(poly("t-1"), 6, 3), std::invalid_argument);
  EXPECT_THROW(count_roots_mu(poly("t-1"), 1, 4), std::invalid_argument);
}

TEST(CountRootsMu, MonotoneUnderDivisibility) {
  const std::vector<IntPoly> fs{poly("t^2-t+1"), poly("t^4-1"), poly("t^6-1"), poly("t^2+t+1"), poly("t^10-1")};
  for (unsigned long p : {7UL, 11UL})
    for (const auto& f : fs)
      for (std::uint64_t m = 1; m <= 6; ++m)
        for (std::uint64_t k = 2; m * k <= 12; ++k)
          if (m % p != 0 && (m * k) % p != 0)
            EXPECT_LE(count_roots_mu(f, m, p).count, count_roots_mu(f, m * k, p).count);
}

TEST(Radical, Squarefree) {
  for (const char* s : {"t^3-3*t^2+3*t-1", "t^4-2*t^2+1", "t^5+t^4", "t^2-t+1"}) {
    auto r = radical(RatPoly(poly(s)));
    EXPECT_EQ(poly_gcd(r, r.derivative()).degree(), 0) << s;
  }
}

TEST(KnotB1, TrefoilTable) {
  const auto tref = poly("t^2-t+1");
  EXPECT_EQ(knot_b1({tref}, 1, 7), 1);
  EXPECT_EQ(knot_b1({tref}, 6, 5), 3);
  EXPECT_EQ(knot_b1({tref}, 3, 2), 3);
  for (unsigned long p : {2UL, 3UL, 5UL, 7UL})
    for (std::uint64_t m = 1; m <= 12; ++m) {
      if (m % p == 0) continue;
      EXPECT_EQ(knot_b1({tref}, m, p), (m * p) % 6 == 0 ? 3 : 1) << m << " " << p;
    }
}

TEST(KnotB1, GenuineAlexanderPolynomialsAtM1) {
  // trefoil, figure eight, 5_1, 5_2, 6_1, 7_4
  for (const char* s : {"t^2-t+1", "t^2-3*t+1", "t^4-t^3+t^2-t+1", "2*t^2-3*t+2", "2*t^2-5*t+2", "4*t^2-7*t+4"}) {
    auto d = poly(s);
    EXPECT_EQ(abs(d.evaluate(1)), 1) << s;
    for (unsigned long p : {2UL, 3UL, 5UL, 7UL}) EXPECT_EQ(knot_b1({d}, 1, p), 1) << s;
  }
}

TEST(LaurentSmith, Examples) {
  auto s = laurent_smith_form(single("t^2-1"), 1, 1);
  ASSERT_EQ(s.rank(), 1u);
  EXPECT_EQ(s.factors[0], RatPoly(poly("t^2-1")));
  // units t^a and constants are normalized away
  auto u = laurent_smith_form(single("3*t^-2-3*t^-1"), 1, 1);
  ASSERT_EQ(u.rank(), 1u);
  EXPECT_EQ(u.factors[0], RatPoly(poly("t-1")));
  LaurentMatrix d{{LaurentPoly::parse("t-1", 1), LaurentPoly(1)}, {LaurentPoly(1), LaurentPoly::parse("t+1", 1)}};
  auto ds = laurent_smith_form(d, 2, 2);
  ASSERT_EQ(ds.rank(), 2u);
  EXPECT_EQ(ds.factors[0].degree(), 0);
  EXPECT_EQ(ds.factors[1], RatPoly(poly("t^2-1")));
}

TEST(CyclicCoverBj, Examples) {
  auto circle = cyclic_cover_bj(single("t-1"), 1, {}, 1, 1, 3);
  EXPECT_EQ(circle.value, 1);
  auto diag = cyclic_cover_bj({}, 1, single("t^2-1"), 1, 1, 2);
  EXPECT_EQ(diag.value, 2);
  EXPECT_FALSE(diag.certificate().empty());
}

TEST(CyclicCoverBj, RejectsNonzeroComposition) {
  LaurentMatrix aj{{LaurentPoly::parse("t-1", 1)}};
  LaurentMatrix aj1{{LaurentPoly::parse("1", 1)}};
  EXPECT_THROW(cyclic_cover_bj(aj, 1, aj1, 1, 1, 3), std::invalid_argument);
}

TEST(CyclicCoverBj, TrefoilMatchesKnotFormulaAndDirectLevels) {
  auto c = complex_trefoil();
  auto a1 = collapse(abelianize(c.boundary(1), 2, 1, 2));
  auto a2 = collapse(abelianize(c.boundary(2), 1, 2, 2));
  for (unsigned long p : {2UL, 5UL, 7UL})
    for (std::uint64_t m : {1UL, 3UL, 6UL}) {
      if (m % p == 0) continue;
      auto r = cyclic_cover_bj(a1, 1, a2, 2, m, p);
      EXPECT_EQ(r.lower.rank(), 1u);
      EXPECT_EQ(r.lower.factors[0], RatPoly(poly("t-1")));
      EXPECT_EQ(r.value, knot_b1({poly("t^2-t+1")}, m, p));
      for (unsigned n = 0; n <= 2; ++n) {
        const std::uint64_t order = m * ipow(p, n).get_ui();
        if (order * 2 > 400) continue;
        FiniteQuotient q{std::make_shared<AbelianGroup>(std::vector<std::uint64_t>{order}), {1, 1}};
        EXPECT_EQ(cyclic_cover_level(r, m, p, n), Integer(static_cast<unsigned long>(betti_at_level(c, q, FieldSpec::rationals(), 1))))
            << "m=" << m << " p=" << p << " n=" << n;
      }
    }
}

TEST(LevelFormula, Examples) {
  EXPECT_EQ(cyclic_cover_level_formula(2, 1, 1, {1, 0}, 1, 5, 3), 1);
  for (unsigned n = 1; n <= 3; ++n) EXPECT_EQ(cyclic_cover_level_formula(1, 0, 1, {2}, 6, 5, n), 2);
  EXPECT_EQ(cyclic_cover_level_formula(3, 1, 0, {1}, 2, 3, 1), 6 * 2 + 1);
}

TEST(LevelFormula, ProductReadingAgainstDirectLevels) {
  // x -> t, y -> 1. Free group: e - u - v = 1 and b1 = p^n + 1. Torus: e - u - v = 0 and b1 = 2.
  for (auto c : {complex_free(2), complex_torus(2)}) {
    const bool torus = c.ranks.size() == 3;
    LaurentMatrix a1 = first_variable(abelianize(c.boundary(1), 2, 1, 2));
    LaurentMatrix a2 = torus ? first_variable(abelianize(c.boundary(2), 1, 2, 2)) : LaurentMatrix{};
    auto r = cyclic_cover_bj(a1, 1, a2, 2, 1, 3);
    EXPECT_EQ(r.e - r.lower.rank() - r.upper.rank(), torus ? 0u : 1u);
    for (unsigned n = 0; n <= 3; ++n) {
      FiniteQuotient q{std::make_shared<AbelianGroup>(std::vector<std::uint64_t>{ipow(3UL, n).get_ui()}), {1, 0}};
      const auto direct = betti_at_level(c, q, FieldSpec::rationals(), 1);
      EXPECT_EQ(direct, torus ? 2u : ipow(3UL, n).get_ui() + 1);
      EXPECT_EQ(cyclic_cover_level(r, 1, 3, n), Integer(static_cast<unsigned long>(direct))) << n;
    }
  }
}
