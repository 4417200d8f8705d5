#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "nestpow/complex_eval.hpp"
#include "nestpow/npp.hpp"
#include "nestpow/parse.hpp"
#include "nestpow/render.hpp"
#include "test_support.hpp"

using namespace nestpow;
using nestpow::fixtures::w;

TEST(Npp, MakeEnforcesInvariants) {
  const auto p = make_npp(w(), 1, {{3, Rational(1, 2)}, {2, Rational(1, 3)}, {3, Rational(1, 4)}, {4, 0}});
  ASSERT_EQ(p.factors.size(), 2u);
  EXPECT_EQ(p.factors[0], (NestedFactor{2, Rational(1, 3)}));
  EXPECT_EQ(p.factors[1], (NestedFactor{3, Rational(3, 4)}));
  // Integer gamma and -1 < beta <= 1 fold into alpha.
  const auto q = make_npp(w(), 0, {{2, 3}, {Rational(1, 2), Rational(5, 3)}});
  EXPECT_TRUE(q.factors.empty());
  EXPECT_EQ(q.alpha, Rational(6) + Rational(5, 6));
  EXPECT_THROW(make_npp(w(), 0, {{0, Rational(1, 2)}}), std::invalid_argument);
}

TEST(Npp, DenestTrivial) {
  EXPECT_EQ(denest_trivial(Rational(1, 2), Rational(5, 3)), Rational(5, 6));
  EXPECT_EQ(denest_trivial(2, 3), Rational(6));
  EXPECT_FALSE(denest_trivial(2, Rational(5, 3)).has_value());
  EXPECT_FALSE(denest_trivial(-1, Rational(1, 2)).has_value());
}

TEST(Npp, DenestTrivialAgreesWithPrincipalBranch) {
  // Where denesting is claimed valid, the nested and flat forms agree at every sample.
  for (int bn = -6; bn <= 6; ++bn) {
    for (int bd : {1, 2, 3, 5}) {
      if (bn == 0) continue;
      const Rational beta(bn, bd);
      for (const Rational& gamma : {Rational(5, 3), Rational(-1, 2), Rational(3), Rational(-2), Rational(7, 4)}) {
        const auto flat = denest_trivial(beta, gamma);
        if (!flat) continue;
        const Expr nested = make_node(Kind::Power, {}, {}, 0,
                                      {make_node(Kind::Power, {}, {}, 0, {w(), number(beta)}), number(gamma)});
        EXPECT_EQ(fixtures::numeric_mismatches(nested, pow(w(), number(*flat))), 0) << beta << " " << gamma;
      }
    }
  }
}

TEST(Npp, Extract) {
  auto split = split_product(parse("w^(-3)*(w^2)^(5/3)"));
  ASSERT_EQ(split.groups.size(), 1u);
  EXPECT_EQ(split.groups[0].alpha, Rational(-3));
  EXPECT_EQ(split.groups[0].factors, (std::vector<NestedFactor>{{2, Rational(5, 3)}}));
  EXPECT_TRUE(split.rest.empty());

  split = split_product(parse("w^6*(w^2)^(1/2)*(w^3)^(1/2)*(w^4)^(1/2)"));
  ASSERT_EQ(split.groups.size(), 1u);
  EXPECT_EQ(split.groups[0].alpha, Rational(6));
  EXPECT_EQ(split.groups[0].factors,
            (std::vector<NestedFactor>{{2, Rational(1, 2)}, {3, Rational(1, 2)}, {4, Rational(1, 2)}}));
}

TEST(Npp, ExtractFindsCompoundBases) {
  const Expr u = parse("log(x^2*(x+y))");
  const auto all = extract(parse("log(x^2*(x+y))^(-1) * (log(x^2*(x+y))^2)^(5/3) * z"));
  const auto it = std::find_if(all.begin(), all.end(), [&](const auto& p) { return p.base == u; });
  ASSERT_NE(it, all.end());
  EXPECT_EQ(it->alpha, Rational(-1));
  EXPECT_EQ(it->factors, (std::vector<NestedFactor>{{2, Rational(5, 3)}}));
  EXPECT_EQ(it->cofactor, symbol("z"));
}

TEST(Npp, Emit) {
  EXPECT_EQ(to_text(emit(make_npp(w(), -1, {{2, Rational(1, 2)}}))), "sqrt(w^2)/w");
  EXPECT_EQ(emit(make_npp(w(), 0, {})), integer(1));
  EXPECT_EQ(to_text(emit(make_npp(w(), 1, {{-2, Rational(1, 2)}}))), "w*sqrt(1/w^2)");
}

TEST(Npp, EmitThenSplitRoundTrips) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 300; ++k) {
    const auto p = fixtures::random_npp(rng);
    const auto split = split_product(emit(p));
    if (p.factors.empty()) continue;
    ASSERT_EQ(split.groups.size(), 1u);
    EXPECT_EQ(split.groups[0], p);
  }
}

TEST(Npp, RaiseNested) {
  EXPECT_EQ(raise_nested(2, Rational(3, 4), Rational(7, 6)), (NestedFactor{2, Rational(7, 8)}));
  EXPECT_EQ(raise_nested(3, Rational(-1, 3), Rational(-1, 2)), (NestedFactor{3, Rational(1, 6)}));
  EXPECT_THROW(raise_nested(2, Rational(3, 2), 2), std::invalid_argument);
  // ((w^2)^(1/2))^2 folds back to w^2.
  const auto f = raise_nested(2, Rational(1, 2), 2);
  EXPECT_EQ(denest_trivial(f.beta, f.gamma), Rational(2));
}

TEST(Npp, RaiseNestedMatchesNumericOracle) {
  // ((w^3)^(-1/3))^(-1/2) against (w^3)^(1/6) at 100 generic points.
  const Expr lhs = make_node(
      Kind::Power, {}, {}, 0,
      {make_node(Kind::Power, {}, {}, 0, {pow(w(), integer(3)), number(Rational(-1, 3))}), number(Rational(-1, 2))});
  const NestedFactor f = raise_nested(3, Rational(-1, 3), Rational(-1, 2));
  const Expr rhs = pow(pow(w(), number(f.beta)), number(f.gamma));
  const auto points = sample_points(3);
  for (std::size_t k = points.size() - 100; k < points.size(); ++k) {
    const Bindings at{{"w", points[k]}};
    EXPECT_TRUE(matches(evaluate(lhs, at), evaluate(rhs, at))) << points[k];
  }
}
