#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nestpow/complex_eval.hpp"
#include "nestpow/parse.hpp"

using namespace nestpow;

namespace {

ExtValue eval(const char* text, Bindings at = {}, ArgZero arg0 = ArgZero::Zero) {
  return evaluate(parse(text, BuildMode::Verbatim), at, arg0);
}

void expect_value(const ExtValue& v, Complex z) {
  ASSERT_TRUE(v.is_finite());
  EXPECT_NEAR(v.value().real(), z.real(), 1e-12);
  EXPECT_NEAR(v.value().imag(), z.imag(), 1e-12);
}

}  // namespace

TEST(Evaluate, BranchExamples) {
  expect_value(eval("1/(1+1/0)"), 0.0);
  expect_value(eval("(i^(-2))^(-1/2)"), Complex(0.0, -1.0));
  expect_value(eval("(i^2)^(1/2)"), Complex(0.0, 1.0));
  EXPECT_TRUE(eval("0*(1/0)").is_undefined());
}

TEST(Evaluate, PrincipalBranch) {
  expect_value(eval("(-1)^(1/2)"), Complex(0.0, 1.0));
  expect_value(eval("(-8)^(1/3)"), Complex(1.0, std::sqrt(3.0)));
  expect_value(eval("arg(-1)"), std::numbers::pi);
  // -1 - 0i is on the upper side of the cut.
  expect_value(eval("arg(w)", {{"w", Complex(-1.0, -0.0)}}), std::numbers::pi);
  expect_value(eval("log(-1)"), Complex(0.0, std::numbers::pi));
}

TEST(Evaluate, ExtendedRules) {
  EXPECT_TRUE(eval("1/0").is_infinite());
  EXPECT_TRUE(eval("1/0 + 1/0").is_undefined());
  EXPECT_TRUE(eval("1/0 + 1").is_infinite());
  EXPECT_TRUE(eval("(1/0)*2").is_infinite());
  expect_value(eval("0^0"), 1.0);
  expect_value(eval("0^(1/2)"), 0.0);
  EXPECT_TRUE(eval("0^(-1/2)").is_infinite());
  EXPECT_TRUE(eval("log(0)").is_infinite());
  EXPECT_TRUE(eval("Undefined + 1").is_undefined());
  expect_value(eval("arg(0)"), 0.0);
  EXPECT_TRUE(eval("arg(0)", {}, ArgZero::Undefined).is_undefined());
  // The pole has no direction either.
  expect_value(eval("arg(1/0)"), 0.0);
  EXPECT_TRUE(eval("arg(1/0)", {}, ArgZero::Undefined).is_undefined());
  EXPECT_TRUE(eval("re(1/0)").is_undefined());
}

TEST(Evaluate, ConditionsAndPiecewise) {
  const char* csgn = "piecewise(re(w) > 0 || re(w) == 0 && im(w) >= 0, 1, -1)";
  expect_value(eval(csgn, {{"w", Complex(0.0, 2.0)}}), 1.0);
  expect_value(eval(csgn, {{"w", Complex(0.0, -2.0)}}), -1.0);
  expect_value(eval(csgn, {{"w", Complex(-3.0, 1.0)}}), -1.0);
  expect_value(eval(csgn, {{"w", 0.0}}), 1.0);
  // A condition that cannot be decided makes the whole piecewise unknown.
  EXPECT_TRUE(eval("piecewise(1/0 > 0, 1, 2)").is_undefined());
  // w == 0 short-circuits before the guarded branch is evaluated.
  expect_value(eval("piecewise(w == 0, 0, arg(w))", {{"w", 0.0}}, ArgZero::Undefined), 0.0);
}

TEST(Evaluate, UnboundSymbolThrows) {
  try {
    (void)eval("w + z", {{"w", 1.0}});
    FAIL();
  } catch (const UnboundSymbol& e) {
    EXPECT_EQ(e.name(), "z");
  }
}

TEST(Evaluate, PrincipalBranchLawForSmallBeta) {
  // (w^b)^g = w^(b g) whenever -1 < b <= 1.
  for (const Rational& beta : {Rational(1, 2), Rational(-1, 3), Rational(1), Rational(3, 4)}) {
    for (const Rational& gamma : {Rational(5, 3), Rational(-7, 2), Rational(1, 5)}) {
      const Expr nested = make_node(Kind::Power, {}, {}, 0,
                                    {make_node(Kind::Power, {}, {}, 0, {symbol("w"), number(beta)}), number(gamma)});
      const Expr flat = make_node(Kind::Power, {}, {}, 0, {symbol("w"), number(beta * gamma)});
      for (const Complex& z : sample_points()) {
        const Bindings at{{"w", z}};
        EXPECT_TRUE(matches(evaluate(nested, at), evaluate(flat, at))) << beta << " " << gamma << " " << z;
      }
    }
  }
}

TEST(SamplePoints, Coverage) {
  const auto points = sample_points(0);
  EXPECT_EQ(points, sample_points(0));
  EXPECT_NE(points, sample_points(1));
  EXPECT_GE(points.size(), 200u);
  EXPECT_EQ(std::count(points.begin(), points.end(), Complex(0.0, 0.0)), 1);
  int positive_imaginary = 0;
  int negative_imaginary = 0;
  int positive_real = 0;
  int negative_real = 0;
  int generic = 0;
  for (const Complex& z : points) {
    if (z == Complex(0.0, 0.0)) continue;
    if (z.real() == 0.0) (z.imag() > 0 ? positive_imaginary : negative_imaginary)++;
    else if (z.imag() == 0.0) (z.real() > 0 ? positive_real : negative_real)++;
    else {
      ++generic;
      EXPECT_GE(std::abs(z), 0.1 - 1e-12);
      EXPECT_LE(std::abs(z), 10.0 + 1e-12);
    }
    if (z.real() == 0.0) {
      EXPECT_EQ(std::abs(std::arg(z)), std::numbers::pi / 2);
    }
  }
  EXPECT_EQ(positive_imaginary, 8);
  EXPECT_EQ(negative_imaginary, 8);
  EXPECT_EQ(positive_real, 8);
  EXPECT_EQ(negative_real, 8);
  EXPECT_GE(generic, 180);
}

TEST(Matches, Tolerance) {
  EXPECT_TRUE(matches(ExtValue::finite({1.0, 0.0}), ExtValue::finite({1.0 + 1e-12, 0.0})));
  EXPECT_FALSE(matches(ExtValue::finite({1.0, 0.0}), ExtValue::finite({1.0 + 1e-6, 0.0})));
  EXPECT_TRUE(matches(ExtValue::undefined(), ExtValue::undefined()));
  EXPECT_TRUE(matches(ExtValue::infinity(), ExtValue::infinity()));
  EXPECT_FALSE(matches(ExtValue::infinity(), ExtValue::undefined()));
  EXPECT_FALSE(matches(ExtValue::finite({}), ExtValue::undefined()));
}

TEST(ToString, Formats) {
  EXPECT_EQ(to_string(ExtValue::finite({0.0, -1.0})), "-i");
  EXPECT_EQ(to_string(ExtValue::finite({0.0, 1.0})), "i");
  EXPECT_EQ(to_string(ExtValue::finite({-0.0, 0.0})), "0");
  EXPECT_EQ(to_string(ExtValue::finite({2.5, -3.0})), "2.5-3i");
  EXPECT_EQ(to_string(ExtValue::finite({1.0, 1e-17})), "1");
  EXPECT_EQ(to_string(ExtValue::finite({0.5, 2.0})), "0.5+2i");
  EXPECT_EQ(to_string(ExtValue::infinity()), "ComplexInfinity");
  EXPECT_EQ(to_string(ExtValue::undefined()), "0/0");
}
