#include "nestpow/render.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace nestpow {

namespace {

enum Precedence : int {
  kOr = 1,
  kAnd = 2,
  kRelation = 3,
  kSum = 4,
  kProduct = 5,
  kPower = 6,
  kAtom = 7,
};

const Rational kHalf(1, 2);

bool negative_number_exponent(const Expr& e) {
  return e.is(Kind::Power) && e.exponent().is_number() && e.exponent().number().sign() < 0;
}

// b^(-r) for a factor b^r with negative rational r, without simplification.
Expr invert_factor(const Expr& factor) {
  const Rational r = -factor.exponent().number();
  if (r == 1) return factor.base();
  return make_node(Kind::Power, {}, {}, 0, {factor.base(), number(r)});
}

Expr negate_term(const Expr& term) {
  if (term.is_number()) return number(-term.number());
  auto [k, rest] = split_coefficient(term);
  if (-k == 1) return rest;
  std::vector<Expr> factors{number(-k)};
  for (const auto& f : factors_of(rest)) factors.push_back(f);
  return make_node(Kind::Product, {}, {}, 0, std::move(factors));
}

int precedence(const Expr& e) {
  switch (e.kind()) {
    case Kind::Number:
      return e.number().sign() < 0 || !e.number().is_integer() ? kProduct : kAtom;
    case Kind::Product:
      return kProduct;
    case Kind::Sum:
      return kSum;
    case Kind::Power:
      if (e.exponent().is_number()) {
        if (e.exponent().number() == kHalf) return kAtom;
        if (e.exponent().number().sign() < 0) return kProduct;
      }
      return kPower;
    case Kind::Relation:
      return kRelation;
    case Kind::Logic:
      return e.logic() == LogicOp::And ? kAnd : kOr;
    case Kind::Undefined:
      return kProduct;
    default:
      return kAtom;
  }
}

const char* relation_text(RelationOp op) {
  switch (op) {
    case RelationOp::Less:
      return "<";
    case RelationOp::LessEqual:
      return "<=";
    case RelationOp::Greater:
      return ">";
    case RelationOp::GreaterEqual:
      return ">=";
    case RelationOp::Equal:
      return "==";
    case RelationOp::NotEqual:
      return "!=";
  }
  return "?";
}

const char* function_text(FunctionKind f) {
  switch (f) {
    case FunctionKind::Arg:
      return "arg";
    case FunctionKind::Re:
      return "re";
    case FunctionKind::Im:
      return "im";
    case FunctionKind::Log:
      return "log";
    case FunctionKind::Exp:
      return "exp";
  }
  return "?";
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k > 0) out += sep;
    out += parts[k];
  }
  return out;
}

struct Fraction {
  bool negative = false;
  std::vector<Expr> numerator;
  std::vector<Expr> denominator;
  Integer coefficient_num = 1;
  Integer coefficient_den = 1;
};

Fraction split_fraction(const Expr& e) {
  Fraction f;
  for (const auto& factor : factors_of(e)) {
    if (factor.is_number()) {
      const Rational& c = factor.number();
      f.negative = c.sign() < 0;
      f.coefficient_num = boost::multiprecision::abs(c.numerator());
      f.coefficient_den = c.denominator();
    } else if (negative_number_exponent(factor)) {
      f.denominator.push_back(invert_factor(factor));
    } else {
      f.numerator.push_back(factor);
    }
  }
  // Powers of plain symbols lead, so w*sqrt(1/w^2) rather than sqrt(1/w^2)*w.
  auto plain = [](const Expr& x) {
    const Expr& b = split_power(x).first;
    return !b.is(Kind::Power) && !b.is(Kind::Product) && !b.is(Kind::Sum);
  };
  std::stable_partition(f.numerator.begin(), f.numerator.end(), plain);
  std::stable_partition(f.denominator.begin(), f.denominator.end(), plain);
  return f;
}

class TextRenderer {
 public:
  std::string operator()(const Expr& e) const { return render(e); }

 private:
  std::string wrap(const Expr& e, int min_precedence) const {
    std::string s = render(e);
    return precedence(e) < min_precedence ? "(" + s + ")" : s;
  }

  std::string render_fraction(const Expr& e) const {
    Fraction f = split_fraction(e);
    std::vector<std::string> num;
    if (f.coefficient_num != 1) num.push_back(f.coefficient_num.str());
    for (const auto& x : f.numerator) num.push_back(wrap(x, kPower));
    std::vector<std::string> den;
    if (f.coefficient_den != 1) den.push_back(f.coefficient_den.str());
    for (const auto& x : f.denominator) den.push_back(wrap(x, kPower));
    std::string out = f.negative ? "-" : "";
    out += num.empty() ? "1" : join(num, "*");
    if (!den.empty()) {
      out += "/";
      out += den.size() > 1 ? "(" + join(den, "*") + ")" : den.front();
    }
    return out;
  }

  std::string render_power(const Expr& e) const {
    const Expr& b = e.base();
    const Expr& x = e.exponent();
    if (x.is_number()) {
      const Rational& r = x.number();
      if (r.sign() < 0) return render_fraction(e);
      if (r == kHalf) return "sqrt(" + render(b) + ")";
      if (r.is_integer()) return wrap(b, kAtom) + "^" + r.to_string();
      return wrap(b, kAtom) + "^(" + r.to_string() + ")";
    }
    const bool bare = x.is(Kind::Symbol) || x.is(Kind::Function) || x.is(Kind::Piecewise) ||
                      x.is(Kind::Pi) || x.is(Kind::ImaginaryUnit);
    return wrap(b, kAtom) + "^" + (bare ? render(x) : "(" + render(x) + ")");
  }

  std::string render_sum(const Expr& e) const {
    std::string out;
    bool first = true;
    for (const auto& t : e.children()) {
      if (first) {
        out = wrap(t, kSum + 1);
        first = false;
        continue;
      }
      const auto k = split_coefficient(t).first;
      if (k.sign() < 0) {
        out += " - " + wrap(negate_term(t), kSum + 1);
      } else {
        out += " + " + wrap(t, kSum + 1);
      }
    }
    return out;
  }

  std::string render(const Expr& e) const {
    switch (e.kind()) {
      case Kind::Number:
        return e.number().to_string();
      case Kind::ImaginaryUnit:
        return "i";
      case Kind::Pi:
        return "pi";
      case Kind::Symbol:
        return e.name();
      case Kind::ComplexInfinity:
        return "ComplexInfinity";
      case Kind::Undefined:
        return "0/0";
      case Kind::Function:
        return std::string(function_text(e.function())) + "(" + render(e.children()[0]) + ")";
      case Kind::Power:
        return render_power(e);
      case Kind::Product:
        return render_fraction(e);
      case Kind::Sum:
        return render_sum(e);
      case Kind::Relation:
        return wrap(e.children()[0], kSum) + " " + relation_text(e.relation()) + " " +
               wrap(e.children()[1], kSum);
      case Kind::Logic: {
        const bool conj = e.logic() == LogicOp::And;
        std::vector<std::string> parts;
        for (const auto& c : e.children()) parts.push_back(wrap(c, conj ? kRelation : kAnd));
        return join(parts, conj ? " && " : " || ");
      }
      case Kind::Piecewise: {
        std::vector<std::string> parts;
        for (const auto& c : e.children()) parts.push_back(render(c));
        return "piecewise(" + join(parts, ", ") + ")";
      }
    }
    return "?";
  }
};

class LatexRenderer {
 public:
  std::string operator()(const Expr& e) const { return render(e); }

 private:
  std::string wrap(const Expr& e, int min_precedence) const {
    std::string s = render(e);
    return precedence(e) < min_precedence ? "\\left(" + s + "\\right)" : s;
  }

  static std::string number_text(const Rational& r) {
    if (r.is_integer()) return r.to_string();
    std::string sign = r.sign() < 0 ? "-" : "";
    return sign + "\\frac{" + Integer(boost::multiprecision::abs(r.numerator())).str() + "}{" +
           r.denominator().str() + "}";
  }

  std::string render_fraction(const Expr& e) const {
    Fraction f = split_fraction(e);
    std::vector<std::string> num;
    if (f.coefficient_num != 1) num.push_back(f.coefficient_num.str());
    for (const auto& x : f.numerator) num.push_back(wrap(x, kPower));
    std::vector<std::string> den;
    if (f.coefficient_den != 1) den.push_back(f.coefficient_den.str());
    for (const auto& x : f.denominator) den.push_back(wrap(x, kPower));
    std::string top = num.empty() ? "1" : join(num, " ");
    std::string out = f.negative ? "-" : "";
    if (den.empty()) return out + top;
    return out + "\\frac{" + top + "}{" + join(den, " ") + "}";
  }

  std::string render(const Expr& e) const {
    switch (e.kind()) {
      case Kind::Number:
        return number_text(e.number());
      case Kind::ImaginaryUnit:
        return "i";
      case Kind::Pi:
        return "\\pi";
      case Kind::Symbol:
        return e.name();
      case Kind::ComplexInfinity:
        return "\\tilde{\\infty}";
      case Kind::Undefined:
        return "\\frac{0}{0}";
      case Kind::Function: {
        static const char* names[] = {"\\arg", "\\operatorname{Re}", "\\operatorname{Im}",
                                      "\\log", "\\exp"};
        return std::string(names[static_cast<int>(e.function())]) + "\\left(" +
               render(e.children()[0]) + "\\right)";
      }
      case Kind::Power: {
        const Expr& x = e.exponent();
        if (x.is_number() && x.number().sign() < 0) return render_fraction(e);
        if (x.is_number() && x.number() == kHalf) return "\\sqrt{" + render(e.base()) + "}";
        std::string b = e.base().is(Kind::Power) || precedence(e.base()) < kAtom
                            ? "\\left(" + render(e.base()) + "\\right)"
                            : render(e.base());
        return b + "^{" + render(x) + "}";
      }
      case Kind::Product:
        return render_fraction(e);
      case Kind::Sum: {
        std::string out;
        bool first = true;
        for (const auto& t : e.children()) {
          if (first) {
            out = wrap(t, kSum + 1);
            first = false;
          } else if (split_coefficient(t).first.sign() < 0) {
            out += " - " + wrap(negate_term(t), kSum + 1);
          } else {
            out += " + " + wrap(t, kSum + 1);
          }
        }
        return out;
      }
      case Kind::Relation: {
        static const char* ops[] = {"<", "\\le", ">", "\\ge", "=", "\\ne"};
        return wrap(e.children()[0], kSum) + " " + ops[static_cast<int>(e.relation())] + " " +
               wrap(e.children()[1], kSum);
      }
      case Kind::Logic: {
        const bool conj = e.logic() == LogicOp::And;
        std::vector<std::string> parts;
        for (const auto& c : e.children()) parts.push_back(wrap(c, conj ? kRelation : kAnd));
        return join(parts, conj ? " \\land " : " \\lor ");
      }
      case Kind::Piecewise: {
        const auto& c = e.children();
        std::string out = "\\begin{cases}";
        for (std::size_t k = 0; k + 1 < c.size(); k += 2) {
          out += render(c[k + 1]) + " & " + render(c[k]) + " \\\\ ";
        }
        out += render(c.back()) + " & \\text{otherwise}\\end{cases}";
        return out;
      }
    }
    return "?";
  }
};

const char* kind_name(Kind kind) {
  switch (kind) {
    case Kind::Number:
      return "number";
    case Kind::ImaginaryUnit:
      return "imaginary_unit";
    case Kind::Pi:
      return "pi";
    case Kind::Symbol:
      return "symbol";
    case Kind::Function:
      return "function";
    case Kind::Power:
      return "power";
    case Kind::Product:
      return "product";
    case Kind::Sum:
      return "sum";
    case Kind::Relation:
      return "relation";
    case Kind::Logic:
      return "logic";
    case Kind::Piecewise:
      return "piecewise";
    case Kind::ComplexInfinity:
      return "complex_infinity";
    case Kind::Undefined:
      return "undefined";
  }
  return "?";
}

nlohmann::json json_of(const Expr& e) {
  nlohmann::json j;
  j["kind"] = kind_name(e.kind());
  switch (e.kind()) {
    case Kind::Number:
      j["value"] = e.number().to_string();
      return j;
    case Kind::Symbol:
      j["name"] = e.name();
      return j;
    case Kind::Function:
      j["name"] = function_text(e.function());
      break;
    case Kind::Relation:
      j["name"] = relation_text(e.relation());
      break;
    case Kind::Logic:
      j["name"] = e.logic() == LogicOp::And ? "and" : "or";
      break;
    default:
      break;
  }
  if (!e.children().empty()) {
    nlohmann::json children = nlohmann::json::array();
    for (const auto& c : e.children()) children.push_back(json_of(c));
    j["children"] = std::move(children);
  }
  return j;
}

Expr expr_of(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  std::vector<Expr> children;
  if (j.contains("children")) {
    for (const auto& c : j.at("children")) children.push_back(expr_of(c));
  }
  auto arity = [&](std::size_t n) {
    if (children.size() != n) throw std::invalid_argument("bad arity for " + kind);
  };
  if (kind == "number") return number(Rational::parse(j.at("value").get<std::string>()));
  if (kind == "symbol") return symbol(j.at("name").get<std::string>());
  if (kind == "imaginary_unit") return imaginary_unit();
  if (kind == "pi") return pi_constant();
  if (kind == "complex_infinity") return complex_infinity();
  if (kind == "undefined") return undefined();
  if (kind == "power") {
    arity(2);
    return pow(children[0], children[1]);
  }
  if (kind == "product") return mul(std::move(children));
  if (kind == "sum") return add(std::move(children));
  if (kind == "function") {
    arity(1);
    const std::string name = j.at("name").get<std::string>();
    for (int f = 0; f <= static_cast<int>(FunctionKind::Exp); ++f) {
      if (name == function_text(static_cast<FunctionKind>(f))) {
        return apply(static_cast<FunctionKind>(f), children[0]);
      }
    }
    throw std::invalid_argument("unknown function " + name);
  }
  if (kind == "relation") {
    arity(2);
    const std::string name = j.at("name").get<std::string>();
    for (int op = 0; op <= static_cast<int>(RelationOp::NotEqual); ++op) {
      if (name == relation_text(static_cast<RelationOp>(op))) {
        return relation(static_cast<RelationOp>(op), children[0], children[1]);
      }
    }
    throw std::invalid_argument("unknown relation " + name);
  }
  if (kind == "logic") {
    const std::string name = j.at("name").get<std::string>();
    return logic(name == "and" ? LogicOp::And : LogicOp::Or, std::move(children));
  }
  if (kind == "piecewise") {
    if (children.size() % 2 == 0) throw std::invalid_argument("bad piecewise arity");
    std::vector<std::pair<Expr, Expr>> pieces;
    for (std::size_t k = 0; k + 1 < children.size(); k += 2) {
      pieces.emplace_back(children[k], children[k + 1]);
    }
    return piecewise(std::move(pieces), children.back());
  }
  throw std::invalid_argument("unknown kind " + kind);
}

}  // namespace

std::string to_text(const Expr& e) { return TextRenderer{}(e); }

std::string to_latex(const Expr& e) { return LatexRenderer{}(e); }

std::string to_json(const Expr& e) { return json_of(e).dump(); }

Expr from_json(std::string_view json) { return expr_of(nlohmann::json::parse(json)); }

std::string render(const Expr& e, Format format) {
  switch (format) {
    case Format::Latex:
      return to_latex(e);
    case Format::Json:
      return to_json(e);
    default:
      return to_text(e);
  }
}

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << to_text(e); }

}  // namespace nestpow
