#include "nestpow/pipeline.hpp"

#include "nestpow/npp.hpp"

namespace nestpow {

namespace {

bool zero_coefficient_product(const Expr& e) {
  return e.is(Kind::Product) && e.children().front().is_zero();
}

class Rewriter {
 public:
  explicit Rewriter(FormLevel target) : during_target_(target == FormLevel::Form1 ? FormLevel::Form1 : FormLevel::Form2) {}

  Expr operator()(const Expr& e) const {
    switch (e.kind()) {
      case Kind::Sum:
        return collect_sum(map_children(e, *this), *this);
      case Kind::Product:
      case Kind::Power: {
        Expr rebuilt = map_children(e, *this);
        rebuilt = normalize_radicand(rebuilt);
        // 0 times anything that did not reduce to a pole or to 0/0 is 0.
        if (zero_coefficient_product(rebuilt)) return integer(0);
        return canonical_products(rebuilt);
      }
      default:
        return map_children(e, *this);
    }
  }

 private:
  Expr canonical_products(const Expr& e) const {
    if (!e.is(Kind::Product) && !e.is(Kind::Power)) return e;
    ProductSplit split = split_product(e);
    if (split.groups.empty()) return e;
    std::vector<Expr> factors = split.rest;
    for (const auto& g : split.groups) {
      factors.push_back(emit(during_target_ == FormLevel::Form1 ? to_form1(g) : to_form2(g)));
    }
    return mul(std::move(factors));
  }

  FormLevel during_target_;
};

class Display {
 public:
  Display(FormLevel target, ArgZero arg0) : target_(target), arg0_(arg0) {}

  Expr operator()(const Expr& e) const {
    switch (e.kind()) {
      case Kind::Product:
      case Kind::Power:
        return display_product(e);
      default:
        return map_children(e, *this);
    }
  }

 private:
  // Displays the insides of a factor without treating the factor as a product of its own.
  Expr display_factor(const Expr& f) const {
    if (!f.is(Kind::Power)) return (*this)(f);
    const Expr& b = f.base();
    Expr inner = b.is(Kind::Power) ? pow((*this)(b.base()), (*this)(b.exponent())) : (*this)(b);
    return pow(inner, (*this)(f.exponent()));
  }

  Expr display_group(const NestedPowerProduct& g) const {
    switch (target_) {
      case FormLevel::Form3:
        return emit(absorb(g));
      case FormLevel::Form4:
        return emit(to_form4(g, arg0_, false));
      default:
        return emit(g);
    }
  }

  Expr display_product(const Expr& e) const {
    std::vector<Expr> factors;
    for (const auto& f : factors_of(e)) factors.push_back(display_factor(f));
    const Expr p = mul(std::move(factors));
    if (!p.is(Kind::Product) && !p.is(Kind::Power)) return p;
    ProductSplit split = split_product(p);
    if (split.groups.empty()) return p;
    std::vector<Expr> out = split.rest;
    for (const auto& g : split.groups) out.push_back(display_group(g));
    return mul(std::move(out));
  }

  FormLevel target_;
  ArgZero arg0_;
};

}  // namespace

Expr simplify_during(const Expr& e, FormLevel target) { return Rewriter(target)(e); }

Expr simplify(const Expr& e, const SimplifyOptions& options) {
  const Expr rewritten = Rewriter(options.target)(e);
  if (options.target == FormLevel::Form1 || options.target == FormLevel::Form2) return rewritten;
  return Display(options.target, options.arg0)(rewritten);
}

}  // namespace nestpow
