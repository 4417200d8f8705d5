#include "nestpow/parse.hpp"

#include <cctype>
#include <optional>
#include <utility>
#include <vector>

namespace nestpow {

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)),
      position_(position) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, BuildMode mode) : text_(text), mode_(mode) {}

  Expr parse_all() {
    Expr e = parse_or();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  Expr negate(const Expr& e) { return mul(mode_, {integer(-1), e}); }

  Expr parse_or() {
    std::vector<Expr> items{parse_and()};
    while (accept("||")) items.push_back(parse_and());
    return items.size() == 1 ? items.front() : logic(LogicOp::Or, std::move(items));
  }

  Expr parse_and() {
    std::vector<Expr> items{parse_relation()};
    while (accept("&&")) items.push_back(parse_relation());
    return items.size() == 1 ? items.front() : logic(LogicOp::And, std::move(items));
  }

  std::optional<RelationOp> relation_op() {
    static const std::pair<std::string_view, RelationOp> ops[] = {
        {"<=", RelationOp::LessEqual}, {">=", RelationOp::GreaterEqual},
        {"==", RelationOp::Equal},     {"!=", RelationOp::NotEqual},
        {"<", RelationOp::Less},       {">", RelationOp::Greater},
    };
    for (const auto& [token, op] : ops) {
      if (accept(token)) return op;
    }
    return std::nullopt;
  }

  Expr parse_relation() {
    Expr lhs = parse_additive();
    if (auto op = relation_op()) return relation(*op, lhs, parse_additive());
    return lhs;
  }

  Expr parse_additive() {
    std::vector<Expr> terms{parse_term()};
    while (true) {
      if (accept("+")) {
        terms.push_back(parse_term());
      } else if (accept("-")) {
        terms.push_back(negate(parse_term()));
      } else {
        break;
      }
    }
    return terms.size() == 1 ? terms.front() : add(mode_, std::move(terms));
  }

  Expr parse_term() {
    std::vector<Expr> factors{parse_unary()};
    while (true) {
      skip_space();
      if (accept("*")) {
        factors.push_back(parse_unary());
      } else if (accept("/")) {
        factors.push_back(pow(mode_, parse_unary(), integer(-1)));
      } else {
        break;
      }
    }
    return factors.size() == 1 ? factors.front() : mul(mode_, std::move(factors));
  }

  Expr parse_unary() {
    if (accept("-")) return negate(parse_unary());
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (accept("^")) return pow(mode_, base, parse_unary());
    return base;
  }

  Expr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    if (accept("(")) {
      Expr inner = parse_or();
      expect(")");
      return inner;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') fail("decimal literals are not supported");
    return number(Rational::parse(text_.substr(start, pos_ - start)));
  }

  std::vector<Expr> parse_arguments() {
    std::vector<Expr> args;
    expect("(");
    if (accept(")")) return args;
    args.push_back(parse_or());
    while (accept(",")) args.push_back(parse_or());
    expect(")");
    return args;
  }

  Expr single_argument(const std::string& name, std::size_t at) {
    auto args = parse_arguments();
    if (args.size() != 1) throw ParseError(name + " takes one argument", at);
    return args.front();
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    skip_space();
    const bool call = pos_ < text_.size() && text_[pos_] == '(';
    if (!call) {
      if (name == "i") return imaginary_unit();
      if (name == "pi") return pi_constant();
      if (name == "ComplexInfinity") return complex_infinity();
      if (name == "Undefined") return undefined();
      return symbol(name);
    }
    if (name == "sqrt") return pow(mode_, single_argument(name, start), number(Rational(1, 2)));
    if (name == "arg") return apply(FunctionKind::Arg, single_argument(name, start));
    if (name == "re") return apply(FunctionKind::Re, single_argument(name, start));
    if (name == "im") return apply(FunctionKind::Im, single_argument(name, start));
    if (name == "log") return apply(FunctionKind::Log, single_argument(name, start));
    if (name == "exp") return apply(FunctionKind::Exp, single_argument(name, start));
    if (name == "csgn") {
      const Expr x = single_argument(name, start);
      const Expr re = apply(FunctionKind::Re, x);
      const Expr im = apply(FunctionKind::Im, x);
      const Expr zero = integer(0);
      Expr upper = logic(LogicOp::Or,
                         {relation(RelationOp::Greater, re, zero),
                          logic(LogicOp::And, {relation(RelationOp::Equal, re, zero),
                                               relation(RelationOp::GreaterEqual, im, zero)})});
      return piecewise({{upper, integer(1)}}, integer(-1));
    }
    if (name == "piecewise") {
      auto args = parse_arguments();
      if (args.size() % 2 == 0) throw ParseError("piecewise needs an odd argument count", start);
      std::vector<std::pair<Expr, Expr>> pieces;
      for (std::size_t k = 0; k + 1 < args.size(); k += 2) pieces.emplace_back(args[k], args[k + 1]);
      return piecewise(std::move(pieces), args.back());
    }
    throw ParseError("unknown function '" + name + "'", start);
  }

  std::string_view text_;
  BuildMode mode_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, BuildMode mode) { return Parser(text, mode).parse_all(); }

}  // namespace nestpow
