#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "nestpow/expr.hpp"
#include "nestpow/npp.hpp"
#include "nestpow/rational.hpp"

namespace nestpow {

enum class FormLevel { Form1 = 1, Form2 = 2, Form3 = 3, Form4 = 4 };

// Outer exponents reduced into (-1, 1); the integer parts move into alpha.
NestedPowerProduct to_form1(const NestedPowerProduct& p);

struct Shifted {
  Rational alpha;
  Rational gamma;

  friend bool operator==(const Shifted&, const Shifted&) = default;
};

// One application of w^a (w^b)^g = w^(a + b*s) (w^b)^(g - s), s = sign(g), when it
// repairs or shrinks the removable singularity at the origin.
std::optional<Shifted> shift_step(const Rational& alpha, const Rational& beta, const Rational& gamma);

struct CrossShifted {
  Rational alpha;
  Rational gamma2;

  friend bool operator==(const CrossShifted&, const CrossShifted&) = default;
};

// Shift of the second nested factor against the first.
std::optional<CrossShifted> cross_shift_step(const Rational& alpha, const NestedFactor& f1,
                                             const NestedFactor& f2);

// Form 1 followed by shift_step and cross_shift_step until neither applies.
// steps, when given, receives the number of shifts applied.
NestedPowerProduct shift_to_fixpoint(const NestedPowerProduct& p, int* steps = nullptr);

// min(positive exponent mass, negative exponent mass) at the origin.
Rational singularity_multiplicity(const NestedPowerProduct& p);

// Among the 2^n Form-1 products equivalent to p, the one with the smallest
// (multiplicity, sum |beta*gamma|, negative gamma count, -gamma vector).
NestedPowerProduct minimal_representative(const NestedPowerProduct& p);

NestedPowerProduct to_form2(const NestedPowerProduct& p);

// Lexicographically smallest m with sum m_j beta_j = alpha and every m_j beta_j
// of alpha's sign or zero. Throws std::invalid_argument when alpha is zero.
std::optional<std::vector<Integer>> solve_absorption(const Rational& alpha,
                                                     std::span<const Rational> betas);

// Form-2 product with alpha moved into the nested exponents when it can be absorbed whole.
NestedPowerProduct absorb(const NestedPowerProduct& form2);

Expr to_form3(const NestedPowerProduct& p);

// (-1)^(sum c_beta * arg(base^beta) / pi); beta = 1 stands for arg(base).
struct UnitPolarFactor {
  Expr base;
  std::map<Rational, Rational> coefficients;
  ArgZero arg0 = ArgZero::Zero;

  // sum c_beta * arg(base^beta) / pi
  Expr exponent() const;
  // (-1)^exponent(), guarded by base == 0 when arg(0) is undefined.
  Expr to_expr() const;

  friend bool operator==(const UnitPolarFactor&, const UnitPolarFactor&) = default;
};

struct Form4 {
  UnitPolarFactor factor;
  Rational exponent;
  Expr cofactor = integer(1);
};

// exponent = alpha + sum beta*gamma; canonicalize applies Form 2 first.
Form4 to_form4(const NestedPowerProduct& p, ArgZero arg0, bool canonicalize = true);

// Piecewise constant display of a single-factor unit-polar factor for
// beta = +-2 with half-integer gamma or beta = 4 with quarter-integer gamma.
std::optional<Expr> render_piecewise(const UnitPolarFactor& factor);

// cofactor * unit factor (piecewise when possible) * base^exponent.
Expr emit(const Form4& form);

// Square-free factorization of a univariate polynomial radicand.
Expr normalize_radicand(const Expr& e);

}  // namespace nestpow
