#include <gtest/gtest.h>

#include "padicbetti/approximation.hpp"
#include "padicbetti/fab_torsion.hpp"
#include "padicbetti/registry.hpp"

using namespace padicbetti;

namespace {

QuotientTower standard_abelian(std::size_t gens, std::size_t d, unsigned long p, unsigned depth) {
  std::vector<std::vector<Integer>> images;
  for (std::size_t i = 0; i < gens; ++i) {
    std::vector<Integer> v(d, 0);
    v[i % d] = 1;
    images.push_back(v);
  }
  return tower_abelian(1, d, p, depth, images);
}

FiniteQuotient cyclic(std::uint64_t n, std::vector<GroupElem> images) {
  return {std::make_shared<AbelianGroup>(std::vector<std::uint64_t>{n}), std::move(images)};
}

InvariantRequest betti(std::size_t j, FieldSpec k = FieldSpec::rationals()) {
  return {InvariantKind::betti, j, k};
}

}  // namespace

TEST(BettiAtLevel, Examples) {
  auto t2 = complex_torus(2);
  auto v = std::make_shared<AbelianGroup>(std::vector<std::uint64_t>{3, 3});
  FiniteQuotient q{v, {1, 3}};
  EXPECT_EQ(betti_at_level(t2, q, FieldSpec::rationals(), 1, 3), 2u);
  EXPECT_EQ(betti_at_level(complex_circle(), cyclic(27, {1}), FieldSpec::rationals(), 0, 3), 1u);
  EXPECT_EQ(betti_at_level(complex_free(2), cyclic(3, {1, 1}), FieldSpec::prime_field(7), 1, 3), 4u);
  EXPECT_EQ(betti_at_level(complex_free(2), cyclic(3, {1, 0}), FieldSpec::prime_field(7), 1, 3), 4u);
}

TEST(BettiAtLevel, RoutesAgree) {
  // character route vs materialized matrices
  EngineOptions dense;
  dense.use_characters = false;
  auto s = complex_surface(2);
  auto t = standard_abelian(4, 2, 3, 2);
  for (const auto& q : t.levels)
    for (std::size_t j = 0; j <= 2; ++j)
      for (auto k : {FieldSpec::rationals(), FieldSpec::prime_field(5)})
        EXPECT_EQ(betti_at_level(s, q, k, j, 3), betti_at_level(s, q, k, j, 3, dense));
}

TEST(BettiAtLevel, Errors) {
  auto q = cyclic(3, {1});
  EXPECT_THROW(betti_at_level(complex_circle(), q, FieldSpec::prime_field(3), 0, 3), std::domain_error);
  auto fab = complex_fab(IntMatrix{{10, 3}, {3, 1}});
  auto fq = tower_semidirect(IntMatrix{{10, 3}, {3, 1}}, 3, 1).levels[0];
  EXPECT_NO_THROW(betti_at_level(fab, fq, FieldSpec::rationals(), 1, 3));
  EXPECT_THROW(betti_at_level(fab, fq, FieldSpec::rationals(), 2, 3), std::invalid_argument);
  // images violating the relator of T^2
  auto s3 = small_group("S3");
  GroupElem x = 1, y = 1;
  while (s3->multiply(x, y) == s3->multiply(y, x)) ++y;
  FiniteQuotient bad{s3, {x, y}};
  EXPECT_FALSE(factors_through(complex_torus(2), bad));
  EXPECT_THROW(betti_at_level(complex_torus(2), bad, FieldSpec::rationals(), 1), std::invalid_argument);
  EXPECT_THROW(betti_at_level(complex_torus(2), cyclic(3, {1}), FieldSpec::rationals(), 1), std::invalid_argument);
}

TEST(BettiAtLevel, BudgetOverrun) {
  EngineOptions small;
  small.use_characters = false;
  small.max_dimension = 50;
  EXPECT_THROW(betti_at_level(complex_circle(), cyclic(64, {1}), FieldSpec::rationals(), 1, 2, small), std::length_error);
}

TEST(TorsionAtLevel, Examples) {
  EXPECT_EQ(torsion_at_level(complex_surface(2), trivial_quotient(4), 3, 0), 1);
  EXPECT_EQ(torsion_at_level(complex_klein_bottle(), trivial_quotient(2), 3, 2), 2);
  EXPECT_EQ(torsion_at_level(complex_klein_bottle(), trivial_quotient(2), 2, 2), 1);
}

TEST(TorsionAtLevel, SemidirectLevelsMatchDeterminants) {
  // level 1 only: level 2 is a group of order 729
  for (const IntMatrix& a : {IntMatrix{{10, 3}, {3, 1}}, IntMatrix{{34, 21}, {21, 13}}}) {
    auto c = complex_fab(a);
    auto t = tower_semidirect(a, 3, 1);
    Integer expect = abs(p_prime_part(det_power_minus_identity(a, 3, 1), 3));
    EXPECT_EQ(torsion_at_level(c, t.levels[0], 3, 2), expect);
  }
}

TEST(Approximate, SurfaceAbelianizedLimit) {
  // covers of degree N have genus N (g - 1) + 1, so b1 = 2N + 2 for g = 2
  auto s = complex_surface(2);
  auto seq = approximate(s, standard_abelian(4, 1, 3, 4), betti(1), 3, 2);
  for (const auto& l : seq.levels) EXPECT_EQ(l.value, 2 * Integer(static_cast<unsigned long>(l.order)) + 2);
  ASSERT_TRUE(seq.limit.is_converged());
  EXPECT_EQ(seq.limit.residue(), 2);
  EXPECT_EQ(seq.limit.precision(), 3u);
  EXPECT_EQ(seq.monotone, std::optional<bool>(true));
  auto full = approximate(s, standard_abelian(4, 4, 3, 2), betti(1), 2, 2);
  for (const auto& l : full.levels) EXPECT_EQ(l.value, 2 * Integer(static_cast<unsigned long>(l.order)) + 2);
  EXPECT_EQ(full.limit.residue(), 2);
  // the torus never grows
  auto t = approximate(complex_surface(1), standard_abelian(2, 2, 3, 3), betti(1), 3, 3);
  for (const auto& l : t.levels) EXPECT_EQ(l.value, 2);
}

TEST(Approximate, FreeGroupNielsenSchreier) {
  for (unsigned long p : {2UL, 3UL}) {
    auto seq = approximate(complex_free(2), standard_abelian(2, 2, p, 4), betti(1), 3, 2);
    for (const auto& l : seq.levels) EXPECT_EQ(l.value, 1 + Integer(static_cast<unsigned long>(l.order)));
    ASSERT_TRUE(seq.limit.is_converged());
    EXPECT_EQ(seq.limit.residue(), 1);
  }
}

TEST(Approximate, CompletionDependence) {
  auto x = complex_product(complex_circle(), complex_wedge(complex_circle(), complex_sphere(3)));
  const unsigned long p = 3;
  for (long omega : {1L, 3L, 9L}) {
    std::vector<Integer> residues;
    for (unsigned n = 1; n <= 4; ++n) residues.push_back(mod_floor(Integer(omega), ipow(p, n)));
    auto t = tower_irrational_line(p, 4, residues);
    auto seq = approximate(x, t, betti(4), 4, 2);
    const unsigned v = vp(Integer(omega), p);
    for (const auto& l : seq.levels) EXPECT_EQ(l.value, ipow(p, std::min(l.n, v)));
    ASSERT_TRUE(seq.limit.is_converged());
    EXPECT_EQ(seq.limit.residue(), mod_floor(ipow(p, v), seq.limit.modulus()));
  }
}

TEST(Approximate, DegreeBoundAndMonotoneViolation) {
  auto fab = complex_fab(IntMatrix{{10, 3}, {3, 1}});
  auto t = tower_semidirect(IntMatrix{{10, 3}, {3, 1}}, 3, 1);
  EXPECT_THROW(approximate(fab, t, betti(2), 2), std::invalid_argument);
  // a tower whose second level is smaller than the first cannot be a p-kernel tower
  QuotientTower bogus;
  bogus.p = 3;
  bogus.levels = {cyclic(3, {1, 1}), trivial_quotient(2)};
  bogus.level_numbers = {1, 2};
  bogus.p_kernel_from = 0;
  bogus.project = [](std::size_t, GroupElem) { return GroupElem{0}; };
  EXPECT_THROW(approximate(complex_free(2), bogus, betti(1), 2, 2), std::logic_error);
}

TEST(Approximate, LevelOrderPreservedWithThreads) {
  EngineOptions opts;
  opts.threads = 3;
  auto t = standard_abelian(3, 3, 2, 3);
  auto a = approximate(complex_torus(3), t, betti(2), 3, 2, opts);
  auto b = approximate(complex_torus(3), t, betti(2), 3, 2);
  ASSERT_EQ(a.levels.size(), b.levels.size());
  for (std::size_t i = 0; i < a.levels.size(); ++i) {
    EXPECT_EQ(a.levels[i].n, b.levels[i].n);
    EXPECT_EQ(a.levels[i].value, b.levels[i].value);
  }
}

TEST(Euler, Examples) {
  auto s = euler_padic(complex_surface(2), standard_abelian(4, 1, 5, 4), 2, 2);
  ASSERT_TRUE(s.limit.is_converged());
  EXPECT_EQ(s.limit.residue(), 0);
  EXPECT_EQ(s.euler, std::optional<bool>(true));
  auto q = tower_constant(cyclic(4, {1, 1}), 3, 3);
  auto c = euler_padic(complex_surface(1), q, 2, 2);
  auto k = euler_padic(complex_klein_bottle(), tower_constant(cyclic(4, {2, 1}), 3, 3), 2, 2);
  EXPECT_EQ(c.levels.back().value, 0);
  EXPECT_EQ(k.levels.back().value, 0);
  auto w = euler_padic(complex_free(3), tower_constant(cyclic(5, {1, 1, 1}), 3, 2), 2, 2);
  EXPECT_EQ(w.levels.back().value, -10);
  auto t3 = euler_padic(complex_torus(3), standard_abelian(3, 3, 2, 3), 3, 2);
  ASSERT_TRUE(t3.limit.is_converged());
  EXPECT_EQ(t3.limit.residue(), 0);
}

TEST(Euler, AlternatingSumAtEveryLevel) {
  auto c = complex_surface(2);
  auto t = standard_abelian(4, 2, 2, 3);
  auto seq = approximate(c, t, betti(1), 2, 2, {}, true);
  EXPECT_EQ(seq.euler, std::optional<bool>(true));
}

TEST(Duality, SurfacesLevelwise) {
  for (std::size_t g = 1; g <= 3; ++g) {
    auto c = complex_surface(g);
    auto t = standard_abelian(2 * g, 2, 3, 2);
    for (const auto& q : t.levels)
      for (auto k : {FieldSpec::rationals(), FieldSpec::prime_field(2)})
        EXPECT_EQ(betti_at_level(c, q, k, 0, 3), betti_at_level(c, q, k, 2, 3));
  }
}

TEST(Kunneth, ProductsLevelwise) {
  auto a = complex_circle(), b = complex_torus(2);
  auto ab = complex_product(a, b);
  auto ta = standard_abelian(1, 1, 2, 3), tb = standard_abelian(2, 2, 2, 3);
  auto tab = tower_product(ta, tb);
  for (std::size_t i = 0; i < tab.size(); ++i)
    for (std::size_t n = 0; n <= 3; ++n) {
      std::uint64_t sum = 0;
      for (std::size_t j = 0; j <= std::min<std::size_t>(n, 1); ++j)
        if (n - j <= 2)
          sum += betti_at_level(a, ta.levels[i], FieldSpec::rationals(), j) *
                 betti_at_level(b, tb.levels[i], FieldSpec::rationals(), n - j);
      EXPECT_EQ(betti_at_level(ab, tab.levels[i], FieldSpec::rationals(), n), sum);
    }
}

TEST(VirtualInvariance, DroppingLevelsKeepsLimit) {
  auto c = complex_surface(2);
  auto t = standard_abelian(4, 1, 2, 5);
  auto full = approximate(c, t, betti(1), 3, 2);
  auto dropped = approximate(c, t.dropped(2), betti(1), 3, 2);
  ASSERT_TRUE(full.limit.is_converged());
  EXPECT_EQ(full.limit, dropped.limit);
  auto f = approximate(complex_free(2), standard_abelian(2, 1, 2, 6), betti(1), 3, 2);
  auto fd = approximate(complex_free(2), standard_abelian(2, 1, 2, 6).dropped(3), betti(1), 3, 2);
  EXPECT_EQ(f.limit, fd.limit);
}

TEST(Wedge, FinitePredictionFormula) {
  // G finite of order q, K_i = G: 1 + q - 2 + b1 + b1'
  const unsigned long p = 5;
  auto order = PAdicApprox::converged(p, 3, 4);
  auto idx = PAdicIndex{PAdicApprox::converged(p, 3, 1), true, Integer(1)};
  auto b = wedge_predicted_b1({PAdicApprox::converged(p, 3, 2), PAdicApprox::converged(p, 3, 1)}, {idx, idx}, order);
  EXPECT_EQ(b.residue(), 1 + 4 - 2 + 2 + 1);
  auto zero = PAdicApprox::converged(p, 3, 0);
  auto b2 = wedge_predicted_b1({PAdicApprox::converged(p, 3, 1), PAdicApprox::converged(p, 3, 1)},
                               {PAdicIndex{zero, false, std::nullopt}, PAdicIndex{zero, false, std::nullopt}}, zero);
  EXPECT_EQ(b2.residue(), 1);
}

TEST(Wedge, DualRouteAgainstDirectApproximation) {
  const unsigned long p = 3;
  const unsigned depth = 4, prec = 3;
  auto x1 = complex_torus(2), x2 = complex_circle();
  auto w = complex_wedge(x1, x2);
  auto tw = tower_abelian(1, 1, p, depth, {{1}, {0}, {1}});
  auto t1 = tower_abelian(1, 1, p, depth, {{1}, {0}});
  auto t2 = tower_abelian(1, 1, p, depth, {{1}});
  auto direct = approximate(w, tw, betti(1), prec, 2);
  auto b1 = approximate(x1, t1, betti(1), prec, 2).limit;
  auto b2 = approximate(x2, t2, betti(1), prec, 2).limit;
  auto k1 = padic_index_from_tower(subgroup_index_sequence(tw, {0, 1}), p, prec, 2);
  auto k2 = padic_index_from_tower(subgroup_index_sequence(tw, {2}), p, prec, 2);
  auto ord = order_sequence(tw);
  auto g = padic_limit(ord, p, prec, 2);
  auto predicted = wedge_predicted_b1({b1, b2}, {k1, k2}, g);
  ASSERT_TRUE(direct.limit.is_converged());
  ASSERT_TRUE(predicted.is_converged());
  EXPECT_TRUE(direct.limit.agrees_with(predicted));
  EXPECT_EQ(predicted.residue(), 2);
}

TEST(Wedge, FreeGroupProP) {
  // two circles, G the pro-p completion of Z^2 via both coordinates: ||G|| = ||G:K_i|| = 0
  const unsigned long p = 2;
  auto t = standard_abelian(2, 2, p, 5);
  auto k1 = padic_index_from_tower(subgroup_index_sequence(t, {0}), p, 3, 2);
  auto k2 = padic_index_from_tower(subgroup_index_sequence(t, {1}), p, 3, 2);
  auto g = padic_limit(order_sequence(t), p, 3, 2);
  auto one = PAdicApprox::converged(p, 3, 1);
  auto predicted = wedge_predicted_b1({one, one}, {k1, k2}, g);
  ASSERT_TRUE(predicted.is_converged());
  EXPECT_EQ(predicted.residue(), 1);
}

TEST(GSets, CardinalityExamples) {
  auto t = standard_abelian(2, 2, 3, 4);
  auto c = gset_constant(t, 7);
  check_gset_tower(c);
  auto pc = padic_cardinality(c, 3, 3, 2);
  EXPECT_EQ(pc.residue(), 7);
  auto r = gset_regular(t);
  check_gset_tower(r);
  auto pr = padic_cardinality(r, 3, 3, 2);
  ASSERT_TRUE(pr.is_converged());
  EXPECT_EQ(pr.residue(), 0);
  auto u = gset_disjoint_union(c, r);
  check_gset_tower(u);
  auto pu = padic_cardinality(u, 3, 3, 2);
  EXPECT_EQ(pu.residue(), 7);
}

TEST(GSets, AdditiveAndMultiplicativeLevelwise) {
  auto t = standard_abelian(1, 1, 2, 3);
  auto a = gset_constant(t, 3), b = gset_regular(t);
  auto s = gset_disjoint_union(a, b), m = gset_product(a, b);
  check_gset_tower(s);
  check_gset_tower(m);
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_EQ(s.levels[i].size, a.levels[i].size + b.levels[i].size);
    EXPECT_EQ(m.levels[i].size, a.levels[i].size * b.levels[i].size);
  }
}

TEST(GSets, RejectsBrokenInclusion) {
  auto t = standard_abelian(1, 1, 2, 3);
  auto r = gset_constant(t, 3);
  r.levels[1].inclusion = std::vector<std::size_t>{0, 0, 1};
  EXPECT_THROW(check_gset_tower(r), std::invalid_argument);
  auto bad = gset_regular(t);
  bad.levels[1].actions[0] = std::vector<std::size_t>{1, 1, 3, 2};  // not a permutation
  EXPECT_THROW(check_gset_tower(bad), std::invalid_argument);
}

TEST(FieldSpec, Parse) {
  EXPECT_EQ(FieldSpec::parse("Q"), FieldSpec::rationals());
  EXPECT_EQ(FieldSpec::parse("F5").characteristic, 5u);
  EXPECT_THROW(FieldSpec::parse("F4"), std::invalid_argument);
  EXPECT_THROW(FieldSpec::parse("R"), std::invalid_argument);
}
