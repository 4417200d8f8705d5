#include "nestpow/forms.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "nestpow/diophantine.hpp"
#include "nestpow/polynomial.hpp"

namespace nestpow {

namespace {

constexpr int kMaxShiftRounds = 10000;
constexpr std::size_t kMaxEnumeratedFactors = 16;

Rational min_abs(const Rational& a, const Rational& b) { return std::min(a.abs(), b.abs()); }

struct RepresentativeKey {
  Rational multiplicity;
  Rational nested_mass;
  std::size_t negatives;
  std::vector<Rational> negated_gammas;

  auto tie() const { return std::tie(multiplicity, nested_mass, negatives, negated_gammas); }
  bool operator<(const RepresentativeKey& other) const { return tie() < other.tie(); }
};

RepresentativeKey key_of(const NestedPowerProduct& p) {
  RepresentativeKey key{singularity_multiplicity(p), 0, 0, {}};
  for (const auto& f : p.factors) {
    key.nested_mass += (f.beta * f.gamma).abs();
    if (f.gamma.sign() < 0) ++key.negatives;
    key.negated_gammas.push_back(-f.gamma);
  }
  return key;
}

Expr unit_power(const Integer& quarter_turns) { return pow(imaginary_unit(), number(Rational(quarter_turns))); }

Expr re_of(const Expr& w) { return apply(FunctionKind::Re, w); }
Expr im_of(const Expr& w) { return apply(FunctionKind::Im, w); }

Expr two_piece(const Expr& w, RelationOp im_side) {
  const Expr zero = integer(0);
  Expr k0 = logic(LogicOp::Or, {relation(RelationOp::Greater, re_of(w), zero),
                                logic(LogicOp::And, {relation(RelationOp::Equal, re_of(w), zero),
                                                     relation(im_side, im_of(w), zero)})});
  return piecewise({{k0, integer(1)}}, integer(-1));
}

// Sectors of arg(w) with arg(w^4) = 4 arg(w) - 2 pi k for k = 0, 1, +-2, -1.
Expr four_piece(const Expr& w, const Rational& gamma) {
  const Integer q = (gamma * Rational(4)).numerator();
  const Expr re = re_of(w);
  const Expr im = im_of(w);
  Expr k0 = logic(LogicOp::Or,
                  {relation(RelationOp::Equal, w, integer(0)),
                   logic(LogicOp::And, {relation(RelationOp::Less, -re, im),
                                        relation(RelationOp::LessEqual, im, re)})});
  Expr k1 = logic(LogicOp::And, {relation(RelationOp::LessEqual, -im, re),
                                 relation(RelationOp::Less, re, im)});
  Expr k2 = logic(LogicOp::And, {relation(RelationOp::LessEqual, re, im),
                                 relation(RelationOp::Less, im, -re)});
  // exp(-2 pi i gamma k) = i^(-q k)
  return piecewise({{k0, integer(1)}, {k1, unit_power(-q)}, {k2, unit_power(-2 * q)}},
                   unit_power(q));
}

}  // namespace

NestedPowerProduct to_form1(const NestedPowerProduct& p) {
  NestedPowerProduct q = p;
  for (auto& f : q.factors) {
    q.alpha += f.beta * Rational(ip(f.gamma));
    f.gamma = fp(f.gamma);
  }
  return make_npp(q.base, q.alpha, q.factors, q.cofactor);
}

std::optional<Shifted> shift_step(const Rational& alpha, const Rational& beta, const Rational& gamma) {
  const Rational net = beta * gamma;
  if (sign(alpha) == sign(net)) return std::nullopt;
  const Rational s(gamma.sign());
  const Rational alpha2 = alpha + beta * s;
  const Rational gamma2 = gamma - s;
  const Rational net2 = beta * gamma2;
  const Rational before = min_abs(alpha, net);
  const Rational after = min_abs(alpha2, net2);
  const bool repaired =
      (sign(alpha2) == sign(net2) && !alpha2.is_zero() && !net2.is_zero()) || alpha2.is_zero();
  const bool reduced = before > after;
  const bool smaller_nesting = before == after && gamma.abs() > gamma2.abs();
  const Rational half_beta = beta.abs() / Rational(2);
  const bool rationalized = gamma == Rational(-1, 2) &&
                            min_abs(alpha, half_beta) == min_abs(alpha - beta, half_beta);
  if (repaired || reduced || smaller_nesting || rationalized) return Shifted{alpha2, gamma2};
  return std::nullopt;
}

std::optional<CrossShifted> cross_shift_step(const Rational& alpha, const NestedFactor& f1,
                                             const NestedFactor& f2) {
  const Rational net1 = f1.beta * f1.gamma;
  const Rational net2 = f2.beta * f2.gamma;
  if (sign(net1) == sign(net2)) return std::nullopt;
  if (!(f2.beta.abs() > f1.beta.abs())) return std::nullopt;
  const Rational s(f2.gamma.sign());
  if (sign(f2.beta * (f2.gamma - s)) != sign(net1 + f2.beta * s)) return std::nullopt;
  return CrossShifted{alpha + f2.beta * s, f2.gamma - s};
}

NestedPowerProduct shift_to_fixpoint(const NestedPowerProduct& p, int* steps) {
  NestedPowerProduct q = to_form1(p);
  int count = 0;
  for (int round = 0; round < kMaxShiftRounds; ++round) {
    bool changed = false;
    for (auto& f : q.factors) {
      if (auto s = shift_step(q.alpha, f.beta, f.gamma)) {
        q.alpha = s->alpha;
        f.gamma = s->gamma;
        ++count;
        changed = true;
        break;
      }
    }
    if (changed) continue;
    for (std::size_t j = 0; j < q.factors.size() && !changed; ++j) {
      for (std::size_t k = 0; k < q.factors.size() && !changed; ++k) {
        if (j == k) continue;
        if (auto s = cross_shift_step(q.alpha, q.factors[j], q.factors[k])) {
          q.alpha = s->alpha;
          q.factors[k].gamma = s->gamma2;
          ++count;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  if (steps != nullptr) *steps = count;
  return q;
}

Rational singularity_multiplicity(const NestedPowerProduct& p) {
  Rational positive = std::max(p.alpha, Rational(0));
  Rational negative = -std::min(p.alpha, Rational(0));
  for (const auto& f : p.factors) {
    const Rational net = f.beta * f.gamma;
    if (net.sign() > 0) {
      positive += net;
    } else {
      negative -= net;
    }
  }
  return std::min(positive, negative);
}

NestedPowerProduct minimal_representative(const NestedPowerProduct& p) {
  const NestedPowerProduct base = to_form1(p);
  const std::size_t n = base.factors.size();
  if (n == 0) return base;
  if (n > kMaxEnumeratedFactors) throw std::length_error("too many nested factors to enumerate");
  Rational total = base.alpha;
  for (const auto& f : base.factors) total += f.beta * f.gamma;

  std::optional<NestedPowerProduct> best;
  std::optional<RepresentativeKey> best_key;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    NestedPowerProduct candidate = base;
    Rational nested_total = 0;
    for (std::size_t k = 0; k < n; ++k) {
      auto& f = candidate.factors[k];
      if ((mask >> k) & 1U) f.gamma -= Rational(f.gamma.sign());
      nested_total += f.beta * f.gamma;
    }
    candidate.alpha = total - nested_total;
    RepresentativeKey key = key_of(candidate);
    if (!best_key || key < *best_key) {
      best_key = std::move(key);
      best = std::move(candidate);
    }
  }
  return *best;
}

NestedPowerProduct to_form2(const NestedPowerProduct& p) {
  NestedPowerProduct q = shift_to_fixpoint(p);
  if (q.factors.size() >= 2 && q.factors.size() <= kMaxEnumeratedFactors) {
    q = minimal_representative(q);
  }
  return q;
}

std::optional<std::vector<Integer>> solve_absorption(const Rational& alpha,
                                                     std::span<const Rational> betas) {
  if (alpha.is_zero()) throw std::invalid_argument("nothing to absorb: alpha is zero");
  return first_solution(make_problem(alpha, std::vector<Rational>(betas.begin(), betas.end())));
}

NestedPowerProduct absorb(const NestedPowerProduct& form2) {
  if (form2.alpha.is_zero() || form2.factors.empty()) return form2;
  std::vector<Rational> betas;
  for (const auto& f : form2.factors) betas.push_back(f.beta);
  auto m = solve_absorption(form2.alpha, betas);
  if (!m) return form2;
  NestedPowerProduct q = form2;
  q.alpha = 0;
  for (std::size_t k = 0; k < q.factors.size(); ++k) q.factors[k].gamma += Rational((*m)[k]);
  return q;
}

Expr to_form3(const NestedPowerProduct& p) { return emit(absorb(to_form2(p))); }

Expr UnitPolarFactor::exponent() const {
  std::vector<Expr> terms;
  for (const auto& [beta, c] : coefficients) {
    const Expr arg = apply(FunctionKind::Arg, beta == 1 ? base : pow(base, number(beta)));
    terms.push_back(mul({number(c), arg}));
  }
  return mul({add(std::move(terms)), pow(pi_constant(), integer(-1))});
}

Expr UnitPolarFactor::to_expr() const {
  if (coefficients.empty()) return integer(1);
  Expr sigma = exponent();
  if (arg0 == ArgZero::Undefined) {
    sigma = piecewise({{relation(RelationOp::Equal, base, integer(0)), integer(0)}}, sigma);
  }
  return pow(integer(-1), sigma);
}

Form4 to_form4(const NestedPowerProduct& p, ArgZero arg0, bool canonicalize) {
  const NestedPowerProduct q = canonicalize ? to_form2(p) : p;
  Form4 form{{q.base, {}, arg0}, q.alpha, q.cofactor};
  for (const auto& f : q.factors) {
    const Rational net = f.beta * f.gamma;
    form.exponent += net;
    form.factor.coefficients[f.beta] += f.gamma;
    form.factor.coefficients[Rational(1)] -= net;
  }
  std::erase_if(form.factor.coefficients, [](const auto& entry) { return entry.second.is_zero(); });
  return form;
}

std::optional<Expr> render_piecewise(const UnitPolarFactor& factor) {
  if (factor.coefficients.size() != 2) return std::nullopt;
  const auto unit = factor.coefficients.find(Rational(1));
  if (unit == factor.coefficients.end()) return std::nullopt;
  const auto nested = unit == factor.coefficients.begin() ? std::next(unit) : factor.coefficients.begin();
  const Rational& beta = nested->first;
  const Rational& gamma = nested->second;
  if (unit->second != -(beta * gamma) || gamma.is_integer()) return std::nullopt;
  if (beta == 2 && (gamma * Rational(2)).is_integer()) {
    return two_piece(factor.base, RelationOp::GreaterEqual);
  }
  if (beta == -2 && (gamma * Rational(2)).is_integer()) {
    return two_piece(factor.base, RelationOp::LessEqual);
  }
  if (beta == 4 && (gamma * Rational(4)).is_integer()) return four_piece(factor.base, gamma);
  return std::nullopt;
}

Expr emit(const Form4& form) {
  Expr unit = render_piecewise(form.factor).value_or(form.factor.to_expr());
  return mul({form.cofactor, unit, pow(form.factor.base, number(form.exponent))});
}

Expr normalize_radicand(const Expr& e) {
  if (!e.is(Kind::Power) || !e.base().is(Kind::Sum) || !e.exponent().is_number() ||
      e.exponent().number().is_integer()) {
    return e;
  }
  auto poly = as_polynomial(e.base());
  if (!poly) return e;
  const auto& [variable, p] = *poly;
  const auto parts = square_free(p);
  if (parts.size() == 1 && parts.front().multiplicity == 1) return e;
  std::vector<Expr> factors;
  for (const auto& part : parts) {
    factors.push_back(pow(to_expr(part.factor, variable), integer(part.multiplicity)));
  }
  const Rational lead = p.leading();
  if (lead.sign() < 0) factors.push_back(number(lead));
  Expr radicand = mul(std::move(factors));
  if (radicand == e.base()) return e;
  Expr result = pow(radicand, e.exponent());
  if (lead.sign() > 0 && lead != 1) result = mul({pow(number(lead), e.exponent()), result});
  return result;
}

}  // namespace nestpow
