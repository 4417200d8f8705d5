#pragma once

#include <optional>
#include <vector>

#include "nestpow/rational.hpp"

namespace nestpow {

// sum_j m_j * coefficients[j] = target with every m_j * coefficients[j] of the
// target's sign or zero.
struct AbsorptionProblem {
  Rational target;
  std::vector<Rational> coefficients;
  int sign = 1;

  // Throws std::invalid_argument if target is zero, coefficients are empty or
  // contain zero, or sign disagrees with the target.
  void validate() const;
};

AbsorptionProblem make_problem(Rational target, std::vector<Rational> coefficients);

// All solutions in lexicographic order.
std::vector<std::vector<Integer>> enumerate_solutions(const AbsorptionProblem& p);

// Lexicographically smallest solution.
std::optional<std::vector<Integer>> first_solution(const AbsorptionProblem& p);

}  // namespace nestpow
