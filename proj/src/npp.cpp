#include "nestpow/npp.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace nestpow {

namespace {

bool constant_base(const Expr& w) {
  return w.is_number() || w.is(Kind::ImaginaryUnit) || w.is(Kind::Pi) ||
         w.is(Kind::ComplexInfinity) || w.is(Kind::Undefined);
}

// Recognizes (w^beta)^gamma with rational beta, gamma.
bool nested_factor(const Expr& f) {
  if (!f.is(Kind::Power) || !f.exponent().is_number()) return false;
  const Expr& inner = f.base();
  return inner.is(Kind::Power) && inner.exponent().is_number() && !constant_base(inner.base());
}

void collect(const Expr& e, std::vector<NestedPowerProduct>& out) {
  if (!e.is(Kind::Product) && !e.is(Kind::Power)) {
    for (const auto& c : e.children()) collect(c, out);
    return;
  }
  ProductSplit split = split_product(e);
  for (std::size_t g = 0; g < split.groups.size(); ++g) {
    std::vector<Expr> others = split.rest;
    for (std::size_t h = 0; h < split.groups.size(); ++h) {
      if (h != g) others.push_back(emit(split.groups[h]));
    }
    NestedPowerProduct p = split.groups[g];
    p.cofactor = mul(std::move(others));
    out.push_back(std::move(p));
    collect(split.groups[g].base, out);
  }
  for (const auto& r : split.rest) {
    for (const auto& c : r.children()) collect(c, out);
  }
}

}  // namespace

std::optional<Rational> denest_trivial(const Rational& beta, const Rational& gamma) {
  if ((beta > Rational(-1) && beta <= Rational(1)) || gamma.is_integer()) return beta * gamma;
  return std::nullopt;
}

NestedFactor raise_nested(const Rational& beta, const Rational& gamma_hat, const Rational& lambda) {
  if (!(gamma_hat > Rational(-1) && gamma_hat < Rational(1))) {
    throw std::invalid_argument("raise_nested needs -1 < gamma < 1, got " + gamma_hat.to_string());
  }
  return {beta, gamma_hat * lambda};
}

NestedPowerProduct make_npp(Expr base, Rational alpha, std::vector<NestedFactor> factors,
                            Expr cofactor) {
  std::map<Rational, Rational> merged;
  for (const auto& f : factors) {
    if (f.beta.is_zero()) throw std::invalid_argument("nested factor with zero beta");
    merged[f.beta] += f.gamma;
  }
  NestedPowerProduct p{std::move(base), std::move(alpha), {}, std::move(cofactor)};
  for (const auto& [beta, gamma] : merged) {
    if (gamma.is_zero()) continue;
    if (auto flat = denest_trivial(beta, gamma)) {
      p.alpha += *flat;
    } else {
      p.factors.push_back({beta, gamma});
    }
  }
  return p;
}

ProductSplit split_product(const Expr& e) {
  const auto factors = factors_of(e);
  std::map<Expr, std::vector<NestedFactor>, ExprLess> nested;
  for (const auto& f : factors) {
    if (nested_factor(f)) {
      nested[f.base().base()].push_back({f.base().exponent().number(), f.exponent().number()});
    }
  }
  std::map<Expr, Rational, ExprLess> alphas;
  ProductSplit split;
  for (const auto& f : factors) {
    if (nested_factor(f)) continue;
    auto [b, x] = split_power(f);
    if (x.is_number() && nested.count(b) != 0) {
      alphas[b] += x.number();
    } else {
      split.rest.push_back(f);
    }
  }
  for (auto& [b, fs] : nested) {
    split.groups.push_back(make_npp(b, alphas[b], std::move(fs)));
  }
  return split;
}

std::vector<NestedPowerProduct> extract(const Expr& e) {
  std::vector<NestedPowerProduct> out;
  collect(e, out);
  return out;
}

Expr emit(const NestedPowerProduct& p) {
  std::vector<Expr> factors{p.cofactor, pow(p.base, number(p.alpha))};
  for (const auto& f : p.factors) {
    factors.push_back(pow(pow(p.base, number(f.beta)), number(f.gamma)));
  }
  return mul(std::move(factors));
}

}  // namespace nestpow
