#include <gtest/gtest.h>

#include <cmath>

#include "padicbetti/atiyah.hpp"
#include "padicbetti/oracles.hpp"

using namespace padicbetti;

namespace {

AtiyahInstance instance(std::vector<std::vector<const char*>> entries, std::size_t d, std::size_t s,
                        std::vector<std::vector<Integer>> lambda = {}, unsigned long p = 2,
                        FieldSpec k = FieldSpec::prime_field(3)) {
  AtiyahInstance inst;
  inst.d = d;
  inst.s = s;
  inst.p = p;
  inst.field = k;
  inst.lambda = std::move(lambda);
  inst.rows = entries.size();
  inst.cols = entries[0].size();
  for (const auto& row : entries) {
    std::vector<LaurentPoly> r;
    for (const char* e : row) r.push_back(LaurentPoly::parse(e, d + s, k.characteristic));
    inst.a.push_back(r);
  }
  inst.validate();
  return inst;
}

InvariantSequence sequence(std::vector<long> values) {
  InvariantSequence s;
  for (std::size_t i = 0; i < values.size(); ++i) s.levels.push_back({static_cast<unsigned>(i + 1), 1, Integer(values[i])});
  return s;
}

}  // namespace

TEST(CConstant, Examples) {
  EXPECT_EQ(c_constant(0, 7).value(), 1.0);
  auto f2 = c_constant(2, 3);
  EXPECT_NEAR(f2.value(), 3 * std::log(2.0) / std::log(3.0), 1e-12);
  // 3^{n+1} / 8 <= diff
  EXPECT_TRUE(f2.bound_holds(Integer(4), 2));   // 27/8 <= 4
  EXPECT_FALSE(f2.bound_holds(Integer(3), 2));
  EXPECT_NEAR(c_constant(9, 3).value(), 6.0, 1e-12);
  EXPECT_THROW(c_constant(3, 3), std::domain_error);
  EXPECT_THROW(c_constant(FieldSpec::prime_field(2), 2), std::domain_error);
  EXPECT_THROW(c_constant(6, 5), std::invalid_argument);
  // Q at p: diff >= p^n
  auto q = c_constant(FieldSpec::rationals(), 2);
  EXPECT_TRUE(q.bound_holds(Integer(8), 3));
  EXPECT_FALSE(q.bound_holds(Integer(7), 3));
}

TEST(Dichotomy, Examples) {
  auto t = dichotomy_check(sequence({2, 2, 2, 2}), 2, c_constant(0, 3));
  EXPECT_EQ(t.mode, GrowthMode::stabilized);
  EXPECT_EQ(t.stabilized_value, std::optional<Integer>(2));
  // F_2 over (Z/3^n)^2: 1 + 9^n
  auto f = dichotomy_check(sequence({10, 82, 730, 6562}), 1, c_constant(0, 3));
  EXPECT_EQ(f.mode, GrowthMode::fast_growth);
  for (const auto& r : f.bound_checked) EXPECT_TRUE(r.holds);
  EXPECT_EQ(dichotomy_check(sequence({10}), 1, c_constant(0, 3)).mode, GrowthMode::inconclusive);
}

TEST(Dichotomy, NeverFastGrowthWithAViolation) {
  auto v = dichotomy_check(sequence({2, 82, 730, 6562}), 1, c_constant(0, 3));
  EXPECT_NE(v.mode, GrowthMode::fast_growth);
  EXPECT_FALSE(v.bound_checked[0].holds);
}

TEST(Dichotomy, FrattiniTowers) {
  for (unsigned long p : {2UL, 3UL}) {
    auto top = std::make_shared<AbelianGroup>(std::vector<std::uint64_t>{ipow(p, 4).get_ui(), ipow(p, 4).get_ui()});
    auto t = tower_frattini(FiniteQuotient{top, {1, top->index({0, 1})}}, p);
    ASSERT_EQ(t.size(), 4u);
    auto torus = approximate(complex_torus(2), t, {InvariantKind::betti, 1, FieldSpec::rationals()}, 3, 2);
    EXPECT_EQ(dichotomy_check(torus, 2, c_constant(0, p)).mode, GrowthMode::stabilized);
    for (auto k : {FieldSpec::rationals(), FieldSpec::prime_field(5)}) {
      auto free = approximate(complex_free(2), t, {InvariantKind::betti, 1, k}, 3, 2);
      auto v = dichotomy_check(free, 1, c_constant(k, p));
      EXPECT_EQ(v.mode, GrowthMode::fast_growth);
      EXPECT_EQ(v.bound_checked.size(), 4u);
    }
  }
}

TEST(AtiyahKernelDim, Augmentation) {
  auto r = atiyah_kernel_dim(instance({{"t - 1"}}, 1, 0), 3, 2, 2);
  EXPECT_EQ(r.dims, (std::vector<std::uint64_t>{1, 1, 1}));
  ASSERT_TRUE(r.limit.is_converged());
  EXPECT_EQ(r.limit.residue(), 1);
  EXPECT_TRUE(r.integral);
}

TEST(AtiyahKernelDim, Diagonal) {
  auto inst = instance({{"t - 1", "0"}, {"0", "t + 1"}}, 1, 0);
  auto r = atiyah_kernel_dim(inst, 3, 2, 2);
  EXPECT_EQ(r.dims, (std::vector<std::uint64_t>{2, 2, 2}));
  EXPECT_EQ(r.limit.residue(), 2);
  EXPECT_TRUE(minors_formula_check(inst, 2));
  EXPECT_EQ(oracle_character_kernel(inst, 1), 2u);
}

TEST(AtiyahKernelDim, KernelLivesOnTheColumnSide) {
  // r(A): C(Q)^cols -> C(Q)^rows
  auto wide = atiyah_kernel_dim(instance({{"t - 1", "t + 1"}}, 1, 0), 3, 2, 2);
  EXPECT_EQ(wide.dims, (std::vector<std::uint64_t>{2, 4, 8}));
  EXPECT_FALSE(wide.eventually_constant);
  EXPECT_EQ(wide.limit.residue(), 0);
  auto tall = atiyah_kernel_dim(instance({{"t - 1"}, {"t + 1"}}, 1, 0), 3, 2, 2);
  EXPECT_EQ(tall.dims, (std::vector<std::uint64_t>{0, 0, 0}));
  EXPECT_TRUE(minors_formula_check(instance({{"t - 1", "t + 1"}}, 1, 0), 2));
}

TEST(AtiyahKernelDim, CompletionDependence) {
  // t2 -> omega t1 with omega = 4: invariants of translation by 4 on Z/2^N
  auto inst = instance({{"t2 - 1"}}, 1, 1, {{Integer(4)}});
  auto r = atiyah_kernel_dim(inst, 3, 3, 2);
  EXPECT_EQ(r.dims, (std::vector<std::uint64_t>{2, 4, 4}));
  EXPECT_TRUE(r.monotone);
}

TEST(AtiyahKernelDim, Errors) {
  AtiyahInstance bad;
  bad.d = 1;
  bad.p = 3;
  bad.field = FieldSpec::prime_field(3);
  bad.rows = bad.cols = 1;
  bad.a = {{LaurentPoly::parse("t - 1", 1, 3)}};
  EXPECT_THROW(bad.validate(), std::domain_error);
  auto ok = instance({{"t2 - 1"}}, 1, 1, {{Integer(1)}});
  EXPECT_NO_THROW(atiyah_level_dim(ok, 2));
}

TEST(MinorsFormula, RandomSmallInstances) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto inst = random_atiyah_instance(seed, 2, 2, 1, 0, 2, FieldSpec::prime_field(3), 2);
    EXPECT_TRUE(minors_formula_check(inst, 1)) << inst.describe();
    EXPECT_EQ(atiyah_minors_dim(inst, 1), oracle_character_kernel(inst, 1)) << inst.describe();
  }
  auto q = random_atiyah_instance(99, 2, 1, 2, 0, 2, FieldSpec::rationals(), 2);
  EXPECT_TRUE(minors_formula_check(q, 1)) << q.describe();
}

TEST(MinorsFormula, RandomInstanceIsDeterministic) {
  auto a = random_atiyah_instance(5, 2, 2, 2, 1, 2, FieldSpec::prime_field(3), 3);
  auto b = random_atiyah_instance(5, 2, 2, 2, 1, 2, FieldSpec::prime_field(3), 3);
  EXPECT_EQ(a.describe(), b.describe());
}
