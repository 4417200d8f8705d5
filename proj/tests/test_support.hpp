#pragma once

#include <array>
#include <random>
#include <string>

#include "nestpow/complex_eval.hpp"
#include "nestpow/expr.hpp"
#include "nestpow/npp.hpp"

namespace nestpow::fixtures {

// Rows m = -3..3, columns n = -3..2 of the Form-3 family tables.
using GoldenTable = std::array<std::array<const char*, 6>, 7>;
extern const GoldenTable kFamily1Form3;
extern const GoldenTable kFamily2Form3;

const GoldenTable& golden_table(int family);

Expr w();
Expr q(long long num, long long den = 1);

// Count of sample points where both sides are defined and differ, plus points
// where a is defined and b is not.
int numeric_mismatches(const Expr& a, const Expr& b);

// Random product over w: alpha in [-6, 6], beta in {+-2, +-3, +-4}, gamma
// denominators at most 6.
NestedPowerProduct random_npp(std::mt19937_64& rng, int max_factors = 3);

}  // namespace nestpow::fixtures
