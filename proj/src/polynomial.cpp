#include "nestpow/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace nestpow {

namespace {

constexpr long kMaxDegree = 256;

std::optional<std::pair<Expr, std::pair<Rational, long>>> monomial(const Expr& term) {
  auto [k, rest] = split_coefficient(term);
  if (rest.is_one()) return std::make_pair(Expr(), std::make_pair(k, 0L));
  if (rest.is(Kind::Symbol)) return std::make_pair(rest, std::make_pair(k, 1L));
  if (rest.is(Kind::Power) && rest.base().is(Kind::Symbol) && rest.exponent().is_number()) {
    const Rational& n = rest.exponent().number();
    if (n.is_integer() && n.sign() > 0 && n <= Rational(kMaxDegree)) {
      return std::make_pair(rest.base(), std::make_pair(k, n.numerator().convert_to<long>()));
    }
  }
  return std::nullopt;
}

}  // namespace

Polynomial::Polynomial(std::vector<Rational> coefficients) : coefficients_(std::move(coefficients)) {
  trim();
}

void Polynomial::trim() {
  while (!coefficients_.empty() && coefficients_.back().is_zero()) coefficients_.pop_back();
}

Polynomial Polynomial::derivative() const {
  std::vector<Rational> d;
  for (std::size_t k = 1; k < coefficients_.size(); ++k) {
    d.push_back(coefficients_[k] * Rational(static_cast<long long>(k)));
  }
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  std::vector<Rational> c = coefficients_;
  const Rational lead = leading();
  for (auto& x : c) x /= lead;
  return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coefficients_.size(), b.coefficients_.size()));
  for (std::size_t k = 0; k < a.coefficients_.size(); ++k) c[k] += a.coefficients_[k];
  for (std::size_t k = 0; k < b.coefficients_.size(); ++k) c[k] += b.coefficients_[k];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c = b.coefficients_;
  for (auto& x : c) x = -x;
  return a + Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coefficients_.size() + b.coefficients_.size() - 1);
  for (std::size_t i = 0; i < a.coefficients_.size(); ++i) {
    for (std::size_t j = 0; j < b.coefficients_.size(); ++j) {
      c[i + j] += a.coefficients_[i] * b.coefficients_[j];
    }
  }
  return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> Polynomial::divide(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = coefficients_;
  const int dd = divisor.degree();
  std::vector<Rational> quot(std::max(0, degree() - dd + 1));
  for (int k = degree(); k >= dd; --k) {
    const Rational q = rem[k] / divisor.leading();
    if (q.is_zero()) continue;
    quot[k - dd] = q;
    for (int j = 0; j <= dd; ++j) rem[k - dd + j] -= q * divisor.coefficients_[j];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a.divide(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<SquareFreePart> square_free(const Polynomial& f) {
  std::vector<SquareFreePart> parts;
  if (f.degree() < 1) return parts;
  const Polynomial g = f.monic();
  const Polynomial dg = g.derivative();
  const Polynomial a0 = gcd(g, dg);
  Polynomial b = g.divide(a0).first;
  Polynomial c = dg.divide(a0).first;
  Polynomial d = c - b.derivative();
  for (unsigned i = 1; b.degree() >= 1; ++i) {
    const Polynomial a = gcd(b, d);
    if (a.degree() >= 1) parts.push_back({a, i});
    b = b.divide(a).first;
    c = d.divide(a).first;
    d = c - b.derivative();
  }
  return parts;
}

std::optional<std::pair<Expr, Polynomial>> as_polynomial(const Expr& e) {
  const auto terms = e.is(Kind::Sum) ? e.children() : std::vector<Expr>{e};
  std::optional<Expr> variable;
  std::vector<Rational> c;
  for (const auto& t : terms) {
    auto m = monomial(t);
    if (!m) return std::nullopt;
    auto& [var, power] = *m;
    if (power.second > 0) {
      if (variable && !(*variable == var)) return std::nullopt;
      variable = var;
    }
    const auto k = static_cast<std::size_t>(power.second);
    if (c.size() <= k) c.resize(k + 1);
    c[k] += power.first;
  }
  if (!variable) return std::nullopt;
  return std::make_pair(*variable, Polynomial(std::move(c)));
}

Expr to_expr(const Polynomial& p, const Expr& variable) {
  std::vector<Expr> terms;
  for (std::size_t k = 0; k < p.coefficients().size(); ++k) {
    if (p.coefficients()[k].is_zero()) continue;
    terms.push_back(mul({number(p.coefficients()[k]),
                         pow(variable, integer(static_cast<long long>(k)))}));
  }
  return add(std::move(terms));
}

}  // namespace nestpow
