#include <gtest/gtest.h>

#include "nestpow/parse.hpp"
#include "nestpow/polynomial.hpp"
#include "nestpow/render.hpp"

using namespace nestpow;

namespace {

Polynomial poly(std::vector<long long> c) {
  std::vector<Rational> r(c.begin(), c.end());
  return Polynomial(std::move(r));
}

Polynomial power(const Polynomial& p, unsigned k) {
  Polynomial out = poly({1});
  for (unsigned j = 0; j < k; ++j) out = out * p;
  return out;
}

}  // namespace

TEST(Polynomial, Arithmetic) {
  const Polynomial a = poly({1, 1});
  const Polynomial b = poly({-1, 1});
  EXPECT_EQ(a * b, poly({-1, 0, 1}));
  EXPECT_EQ(a + b, poly({0, 2}));
  EXPECT_EQ(a - a, Polynomial());
  EXPECT_EQ(poly({1, 2, 3}).derivative(), poly({2, 6}));
  auto [quotient, remainder] = poly({-1, 0, 1}).divide(a);
  EXPECT_EQ(quotient, b);
  EXPECT_TRUE(remainder.is_zero());
  EXPECT_THROW((void)a.divide(Polynomial()), std::domain_error);
}

TEST(Polynomial, Gcd) {
  EXPECT_EQ(gcd(poly({-1, 0, 1}), poly({1, 2, 1})), poly({1, 1}));
  EXPECT_EQ(gcd(poly({2, 2}), poly({3})), poly({1}));
}

TEST(Polynomial, SquareFreeReconstructs) {
  const Polynomial p1 = poly({1, 1});
  const Polynomial p2 = poly({-2, 0, 1});
  const Polynomial p3 = poly({3, 1});
  const Polynomial f = poly({5}) * p1 * power(p2, 2) * power(p3, 3);
  const auto parts = square_free(f);
  Polynomial rebuilt = poly({1});
  for (const auto& part : parts) {
    EXPECT_EQ(part.factor.leading(), Rational(1));
    EXPECT_EQ(gcd(part.factor, part.factor.derivative()), poly({1}));
    rebuilt = rebuilt * power(part.factor, part.multiplicity);
  }
  EXPECT_EQ(poly({5}) * rebuilt, f);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0].multiplicity, 1u);
  EXPECT_EQ(parts[1].multiplicity, 2u);
  EXPECT_EQ(parts[2].multiplicity, 3u);
}

TEST(Polynomial, FromExpression) {
  const auto p = as_polynomial(parse("z^2 + 2*z + 1"));
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->first, symbol("z"));
  EXPECT_EQ(p->second, poly({1, 2, 1}));
  EXPECT_FALSE(as_polynomial(parse("x*y + 1")).has_value());
  EXPECT_FALSE(as_polynomial(parse("sqrt(z) + 1")).has_value());
  EXPECT_EQ(to_text(to_expr(poly({1, 1}), symbol("z"))), "1 + z");
}
