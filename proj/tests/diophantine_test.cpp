#include <gtest/gtest.h>

#include <random>

#include "nestpow/diophantine.hpp"

using nestpow::Integer;
using nestpow::Rational;

namespace {

// Every m with sum m_j c_j = target and each term of the target's sign or zero.
// Such terms satisfy |m_j c_j| <= |target|, which bounds the search box.
std::vector<std::vector<Integer>> brute_force(const Rational& target, const std::vector<Rational>& c) {
  std::vector<std::vector<Integer>> out;
  std::vector<int> bound;
  for (const auto& x : c) bound.push_back(static_cast<int>(nestpow::floor(target.abs() / x.abs())));
  std::vector<int> m(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) m[j] = -bound[j];
  while (true) {
    Rational sum;
    bool signs = true;
    for (std::size_t j = 0; j < c.size(); ++j) {
      const Rational term = Rational(m[j]) * c[j];
      sum += term;
      signs = signs && (term.is_zero() || term.sign() == target.sign());
    }
    if (signs && sum == target) out.emplace_back(m.begin(), m.end());
    std::size_t j = c.size();
    while (j > 0 && m[j - 1] == bound[j - 1]) {
      --j;
      m[j] = -bound[j];
    }
    if (j == 0) break;
    ++m[j - 1];
  }
  return out;
}

}  // namespace

TEST(Diophantine, AbsorptionExampleHasThreeSolutions) {
  const auto p = nestpow::make_problem(14, {Rational(6, 7), Rational(10, 7)});
  const auto all = nestpow::enumerate_solutions(p);
  const std::vector<std::vector<Integer>> expected{{3, 8}, {8, 5}, {13, 2}};
  EXPECT_EQ(all, expected);
  EXPECT_EQ(nestpow::first_solution(p), expected.front());
}

TEST(Diophantine, NoSolutionWhenGcdDoesNotDivide) {
  EXPECT_FALSE(nestpow::first_solution(nestpow::make_problem(Rational(1, 2), {2, 4})).has_value());
  EXPECT_TRUE(nestpow::enumerate_solutions(nestpow::make_problem(1, {2})).empty());
}

TEST(Diophantine, NegativeTargetUsesNonPositiveTerms) {
  const auto all = nestpow::enumerate_solutions(nestpow::make_problem(-4, {2, -2}));
  const std::vector<std::vector<Integer>> expected{{-2, 0}, {-1, 1}, {0, 2}};
  EXPECT_EQ(all, expected);
}

TEST(Diophantine, ValidationRejectsDegenerateProblems) {
  EXPECT_THROW(nestpow::make_problem(0, {1}), std::invalid_argument);
  EXPECT_THROW(nestpow::make_problem(1, {}), std::invalid_argument);
  EXPECT_THROW(nestpow::make_problem(1, {0, 1}), std::invalid_argument);
  nestpow::AbsorptionProblem bad{2, {1}, -1};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Diophantine, MatchesBruteForceEnumeration) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<int> count(1, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rational> c;
    const int n = count(rng);
    for (int k = 0; k < n; ++k) {
      int x = 0;
      while (x == 0) x = num(rng);
      c.emplace_back(x, den(rng));
    }
    int t = 0;
    while (t == 0) t = num(rng);
    const Rational target(t, den(rng));
    const auto expected = brute_force(target, c);
    EXPECT_EQ(nestpow::enumerate_solutions(nestpow::make_problem(target, c)), expected)
        << "target " << target;
  }
}
