#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nestpow/expr.hpp"

namespace nestpow {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Grammar, loosest to tightest:
//   a || b,  a && b,  a < b (<= > >= == !=),  a + b - c,  a * b / c,  -a,  a ^ b
// '^' is right-associative and its exponent may carry a leading minus (w^-2).
// Functions: sqrt arg re im log exp csgn piecewise(c1, v1, ..., otherwise).
// Constants: i, pi, ComplexInfinity, Undefined.
Expr parse(std::string_view text, BuildMode mode = BuildMode::Canonical);

}  // namespace nestpow
