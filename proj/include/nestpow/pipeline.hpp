#pragma once

#include "nestpow/expr.hpp"
#include "nestpow/forms.hpp"

namespace nestpow {

struct SimplifyOptions {
  FormLevel target = FormLevel::Form3;
  ArgZero arg0 = ArgZero::Zero;
};

// Bottom-up rewriting: radicand normalization, Form 1 or Form 2 on every nested
// power product, term collection; then one display pass for Form 3 or Form 4.
Expr simplify(const Expr& e, const SimplifyOptions& options = {});

// The rewriting phase alone (Form 1 or Form 2 canonical, no display forms).
Expr simplify_during(const Expr& e, FormLevel target = FormLevel::Form2);

}  // namespace nestpow
