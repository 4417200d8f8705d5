#pragma once

#include <optional>
#include <vector>

#include "nestpow/expr.hpp"
#include "nestpow/rational.hpp"

namespace nestpow {

// One nested factor (w^beta)^gamma.
struct NestedFactor {
  Rational beta;
  Rational gamma;

  friend bool operator==(const NestedFactor&, const NestedFactor&) = default;
};

// w^alpha * prod (w^beta_k)^gamma_k * cofactor.
struct NestedPowerProduct {
  Expr base;
  Rational alpha;
  std::vector<NestedFactor> factors;
  Expr cofactor = integer(1);

  friend bool operator==(const NestedPowerProduct&, const NestedPowerProduct&) = default;
};

// Builds a product with the type invariants: trivial nestings folded into alpha,
// equal betas merged, zero gammas dropped, betas ascending.
NestedPowerProduct make_npp(Expr base, Rational alpha, std::vector<NestedFactor> factors,
                            Expr cofactor = integer(1));

// Nested power products of one product node, with everything else kept aside.
struct ProductSplit {
  std::vector<NestedPowerProduct> groups;  // cofactor 1, ordered by base
  std::vector<Expr> rest;
};

ProductSplit split_product(const Expr& e);

// Every nested power product in every maximal product of e; each cofactor holds
// the remaining factors of its product.
std::vector<NestedPowerProduct> extract(const Expr& e);

Expr emit(const NestedPowerProduct& p);

// beta*gamma when (w^beta)^gamma = w^(beta*gamma) identically, nullopt otherwise.
std::optional<Rational> denest_trivial(const Rational& beta, const Rational& gamma);

// ((w^beta)^gamma_hat)^lambda for a Form-1 gamma_hat. Throws std::invalid_argument
// unless -1 < gamma_hat < 1.
NestedFactor raise_nested(const Rational& beta, const Rational& gamma_hat, const Rational& lambda);

}  // namespace nestpow
