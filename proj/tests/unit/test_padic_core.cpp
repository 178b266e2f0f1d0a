#include <gtest/gtest.h>

#include <random>

#include "padicbetti/padic.hpp"

using namespace padicbetti;

namespace {

std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// repeated division, independent of vp
unsigned naive_valuation(long x, long p) {
  unsigned v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace

TEST(Valuation, Examples) {
  EXPECT_EQ(vp(12, 2), 2u);
  EXPECT_EQ(vp(7, 5), 0u);
  EXPECT_EQ(vp(250, 5), 3u);
  EXPECT_EQ(vp(250, 5), naive_valuation(250, 5));
  EXPECT_THROW(vp(0, 3), std::domain_error);
}

TEST(PPrimePart, Examples) {
  EXPECT_EQ(p_prime_part(12, 2), 3);
  EXPECT_EQ(p_prime_part(-50, 5), -2);
  EXPECT_EQ(p_prime_part(7, 3), 7);
  EXPECT_THROW(p_prime_part(0, 3), std::domain_error);
}

TEST(PPrimePart, FactorizationAndMultiplicativity) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> dist(-100000, 100000);
  for (unsigned long p : {2UL, 3UL, 5UL, 7UL}) {
    for (int i = 0; i < 200; ++i) {
      long x = dist(rng), y = dist(rng);
      if (x == 0 || y == 0) continue;
      Integer X(x), Y(y);
      EXPECT_EQ(ipow(p, vp(X, p)) * p_prime_part(X, p), X);
      EXPECT_EQ(vp(X * Y, p), vp(X, p) + vp(Y, p));
      EXPECT_EQ(p_prime_part(X * Y, p), p_prime_part(X, p) * p_prime_part(Y, p));
    }
  }
}

TEST(PadicLimit, ConstantSequence) {
  auto s = ints({2, 2, 2, 2});
  auto a = padic_limit(s, 3, 3, 3);
  ASSERT_TRUE(a.is_converged());
  EXPECT_EQ(a.precision(), 3u);
  EXPECT_EQ(a.residue(), 2);
}

TEST(PadicLimit, PartialAgreement) {
  auto s = ints({1, 6, 26, 126});
  auto a = padic_limit(s, 5, 2, 2);
  ASSERT_TRUE(a.is_converged());
  EXPECT_EQ(a.precision(), 2u);
  EXPECT_EQ(a.residue(), 1);
}

TEST(PadicLimit, NoAgreement) {
  auto s = ints({1, 2, 4, 8, 16});
  EXPECT_EQ(padic_limit(s, 3, 2, 3).status(), LimitStatus::insufficient_data);
}

TEST(PadicLimit, GrowthWithoutAgreement) {
  auto s = ints({1, 2, 6, 10, 15});  // 6, 10, 15 distinct mod 7 and increasing
  EXPECT_EQ(padic_limit(s, 7, 2, 3).status(), LimitStatus::growth_detected);
}

TEST(PadicLimit, NeverClaimsMoreThanWitnessed) {
  auto s = ints({5, 5 + 9, 5 + 27});
  auto a = padic_limit(s, 3, 10, 2);
  ASSERT_TRUE(a.is_converged());
  EXPECT_EQ(a.precision(), 2u);
  EXPECT_EQ(a.residue(), 5);
}

TEST(PadicLimit, NegativeValuesCanonical) {
  auto s = ints({-10, -50, -250, -1250});
  auto a = padic_limit(s, 5, 3, 2);
  ASSERT_TRUE(a.is_converged());
  EXPECT_EQ(a.residue(), 0);
  auto b = padic_limit(ints({-1, -1, -1}), 3, 2, 3);
  EXPECT_EQ(b.residue(), 8);
}

TEST(PadicLimit, OnlyTrailingWindowMatters) {
  auto tail = ints({7, 7, 7});
  auto base = padic_limit(tail, 5, 3, 3);
  for (long junk : {-4L, 0L, 123456L}) {
    std::vector<Integer> s{Integer(junk)};
    s.insert(s.end(), tail.begin(), tail.end());
    EXPECT_EQ(padic_limit(s, 5, 3, 3), base);
  }
}

TEST(PadicLimit, Errors) {
  std::vector<Integer> empty;
  EXPECT_THROW(padic_limit(empty, 3, 2, 2), std::invalid_argument);
  EXPECT_THROW(padic_limit(ints({1, 1}), 4, 2, 2), std::invalid_argument);
  EXPECT_THROW(padic_limit(ints({1, 1}), 3, 2, 1), std::invalid_argument);
}

TEST(PadicIndex, OpenSubgroup) {
  auto r = padic_index_from_tower(ints({6, 6, 6, 6}), 3, 3, 3);
  EXPECT_TRUE(r.is_open);
  ASSERT_TRUE(r.exact);
  EXPECT_EQ(*r.exact, 6);
}

TEST(PadicIndex, NonOpenIsZero) {
  auto r = padic_index_from_tower(ints({3, 9, 27, 81}), 3, 3, 2);
  EXPECT_FALSE(r.is_open);
  ASSERT_TRUE(r.value.is_converged());
  EXPECT_EQ(r.value.residue(), 0);
  EXPECT_EQ(r.value.precision(), 3u);

  auto s = padic_index_from_tower(ints({6, 18, 54}), 3, 3, 2);
  ASSERT_TRUE(s.value.is_converged());
  EXPECT_GE(s.value.precision(), 1u);
  EXPECT_EQ(s.value.residue(), 0);
}

TEST(PAdicApprox, TruncationAndAgreement) {
  auto a = PAdicApprox::converged(5, 3, 126);
  EXPECT_EQ(a.residue(), 1);
  auto b = a.truncated(1);
  EXPECT_EQ(b.precision(), 1u);
  EXPECT_TRUE(a.agrees_with(PAdicApprox::converged(5, 2, 26)));
  EXPECT_FALSE(a.agrees_with(PAdicApprox::converged(5, 2, 2)));
  EXPECT_EQ(PAdicApprox::growth_detected(3).precision(), 0u);
  EXPECT_THROW(PAdicApprox::converged(6, 2, 1), std::invalid_argument);
}
