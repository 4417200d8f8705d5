#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nestpow/rational.hpp"

namespace nestpow {

enum class Kind : std::uint8_t {
  Number,
  ImaginaryUnit,
  Pi,
  Symbol,
  Function,
  Power,
  Product,
  Sum,
  Relation,
  Logic,
  Piecewise,
  ComplexInfinity,
  Undefined,
};

enum class FunctionKind : std::uint8_t { Arg, Re, Im, Log, Exp };
enum class RelationOp : std::uint8_t { Less, LessEqual, Greater, GreaterEqual, Equal, NotEqual };
enum class LogicOp : std::uint8_t { And, Or };

// Value of arg(0): 0 as in most systems, or undefined.
enum class ArgZero : std::uint8_t { Zero, Undefined };

enum class BuildMode : std::uint8_t { Canonical, Verbatim };

class Expr;

namespace detail {
struct Node;
}

// Immutable expression tree handle with structural equality.
class Expr {
 public:
  Expr();

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  bool is_number() const { return is(Kind::Number); }
  bool is_zero() const;
  bool is_one() const;

  const Rational& number() const;
  const std::string& name() const;
  FunctionKind function() const;
  RelationOp relation() const;
  LogicOp logic() const;
  const std::vector<Expr>& children() const;

  const Expr& base() const;
  const Expr& exponent() const;

  std::size_t hash() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}
  friend Expr make_node(Kind kind, Rational value, std::string name, std::uint8_t tag,
                        std::vector<Expr> children);
  friend std::strong_ordering compare(const Expr& a, const Expr& b);

  std::shared_ptr<const detail::Node> node_;
};

namespace detail {
struct Node {
  Kind kind;
  Rational value;
  std::string name;
  std::uint8_t tag = 0;
  std::vector<Expr> children;
  std::size_t hash = 0;
};
}  // namespace detail

// Creates a node with no simplification. Callers are responsible for invariants.
Expr make_node(Kind kind, Rational value, std::string name, std::uint8_t tag,
               std::vector<Expr> children);

// Total structural order. A non-power x is ordered as the pair (x, 1) against powers,
// so w^a sorts before (w^b)^g and powers of one base stay adjacent.
std::strong_ordering compare(const Expr& a, const Expr& b);

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

Expr number(Rational value);
Expr integer(long long value);
Expr symbol(std::string name);
Expr imaginary_unit();
Expr pi_constant();
Expr complex_infinity();
Expr undefined();

Expr add(std::vector<Expr> terms);
Expr mul(std::vector<Expr> factors);
Expr pow(const Expr& base, const Expr& exponent);
Expr apply(FunctionKind function, const Expr& argument);
Expr relation(RelationOp op, const Expr& lhs, const Expr& rhs);
Expr logic(LogicOp op, std::vector<Expr> operands);
// Children are c1, v1, c2, v2, ..., otherwise.
Expr piecewise(std::vector<std::pair<Expr, Expr>> pieces, const Expr& otherwise);

// Builders that fold numbers and flatten but never merge or denest, so an
// external result keeps the shape it was written in.
namespace verbatim {
Expr add(std::vector<Expr> terms);
Expr mul(std::vector<Expr> factors);
Expr pow(const Expr& base, const Expr& exponent);
}  // namespace verbatim

Expr add(BuildMode mode, std::vector<Expr> terms);
Expr mul(BuildMode mode, std::vector<Expr> factors);
Expr pow(BuildMode mode, const Expr& base, const Expr& exponent);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);

// Rebuilds e with the same kind and new children through the canonical constructors.
Expr with_children(const Expr& e, std::vector<Expr> children);

// Applies f to every child and rebuilds canonically.
Expr map_children(const Expr& e, const std::function<Expr(const Expr&)>& f);

// Canonical rebuild of a (possibly verbatim) tree.
Expr canonicalize(const Expr& e);

// Splits a term into rational coefficient and remainder; remainder 1 for numbers.
std::pair<Rational, Expr> split_coefficient(const Expr& term);

// Splits a factor into (base, exponent); non-powers have exponent 1.
std::pair<Expr, Expr> split_power(const Expr& factor);

// Product factors, or the expression itself.
std::vector<Expr> factors_of(const Expr& e);

std::set<std::string> free_symbols(const Expr& e);

// Splits every term into coefficient times pipeline(remainder) and merges equal remainders.
Expr collect_sum(const Expr& e, const std::function<Expr(const Expr&)>& pipeline);

}  // namespace nestpow

template <>
struct std::hash<nestpow::Expr> {
  std::size_t operator()(const nestpow::Expr& e) const { return e.hash(); }
};
