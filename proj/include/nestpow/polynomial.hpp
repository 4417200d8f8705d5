#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nestpow/expr.hpp"
#include "nestpow/rational.hpp"

namespace nestpow {

// Univariate polynomial with rational coefficients, lowest degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);

  const std::vector<Rational>& coefficients() const { return coefficients_; }
  bool is_zero() const { return coefficients_.empty(); }
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  const Rational& leading() const { return coefficients_.back(); }

  Polynomial derivative() const;
  Polynomial monic() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  // Quotient and remainder; throws std::domain_error on a zero divisor.
  std::pair<Polynomial, Polynomial> divide(const Polynomial& divisor) const;

 private:
  void trim();

  std::vector<Rational> coefficients_;
};

// Monic gcd.
Polynomial gcd(Polynomial a, Polynomial b);

struct SquareFreePart {
  Polynomial factor;  // monic, square-free
  unsigned multiplicity;
};

// Yun's algorithm: f = leading(f) * prod factor^multiplicity.
std::vector<SquareFreePart> square_free(const Polynomial& f);

// Reads e as a polynomial in its single free symbol.
std::optional<std::pair<Expr, Polynomial>> as_polynomial(const Expr& e);

Expr to_expr(const Polynomial& p, const Expr& variable);

}  // namespace nestpow
