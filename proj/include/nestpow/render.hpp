#pragma once

#include <string>
#include <string_view>

#include "nestpow/expr.hpp"

namespace nestpow {

enum class Format { Text, Latex, Json };

std::string render(const Expr& e, Format format = Format::Text);

std::string to_text(const Expr& e);
std::string to_latex(const Expr& e);
std::string to_json(const Expr& e);

// Inverse of to_json; rebuilds through the canonical constructors.
Expr from_json(std::string_view json);

std::ostream& operator<<(std::ostream& os, const Expr& e);

}  // namespace nestpow
