#include "nestpow/expr.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

namespace nestpow {

namespace {

constexpr long kMaxExactExponent = 4096;
constexpr long kMaxExactRootDegree = 64;

std::size_t combine(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

const Expr& one_expr() {
  static const Expr one = number(1);
  return one;
}

bool equal_nodes(const detail::Node& a, const detail::Node& b);

std::optional<Integer> exact_root(const Integer& n, unsigned degree) {
  if (n.sign() < 0) return std::nullopt;
  if (n < 2 || degree == 1) return n;
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
  Integer lo = 0;
  Integer hi = Integer(1) << (bits / degree + 1);
  while (lo < hi) {
    Integer mid = (lo + hi + 1) / 2;
    if (boost::multiprecision::pow(mid, degree) <= n) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  if (boost::multiprecision::pow(lo, degree) == n) return lo;
  return std::nullopt;
}

Rational rational_power(const Rational& q, const Integer& exponent) {
  const auto e = static_cast<unsigned>(boost::multiprecision::abs(exponent));
  Rational r(boost::multiprecision::pow(q.numerator(), e),
             boost::multiprecision::pow(q.denominator(), e));
  if (exponent.sign() < 0) r = Rational(1) / r;
  return r;
}

bool small_integer(const Rational& r, long limit) {
  return r.is_integer() && boost::multiprecision::abs(r.numerator()) <= limit;
}

// Numeric base raised to a rational exponent, when the value is a rational.
std::optional<Expr> numeric_power(const Rational& q, const Rational& r) {
  if (q.is_zero()) return r.sign() > 0 ? number(0) : complex_infinity();
  if (q == 1) return number(1);
  if (small_integer(r, kMaxExactExponent)) return number(rational_power(q, r.numerator()));
  if (r.is_integer() || q.sign() < 0 || r.denominator() > kMaxExactRootDegree) return std::nullopt;
  const auto degree = static_cast<unsigned>(r.denominator());
  auto num = exact_root(q.numerator(), degree);
  auto den = exact_root(q.denominator(), degree);
  if (!num || !den || boost::multiprecision::abs(r.numerator()) > kMaxExactExponent) {
    return std::nullopt;
  }
  return number(rational_power(Rational(*num, *den), r.numerator()));
}

Expr imaginary_power(const Integer& k) {
  Integer m = k % 4;
  if (m < 0) m += 4;
  switch (static_cast<int>(m)) {
    case 0:
      return number(1);
    case 1:
      return imaginary_unit();
    case 2:
      return number(-1);
    default:
      return make_node(Kind::Product, {}, {}, 0, {number(-1), imaginary_unit()});
  }
}

bool is_potential_pole(const Expr& factor) {
  if (factor.is(Kind::Function)) return factor.function() == FunctionKind::Log;
  if (!factor.is(Kind::Power)) return false;
  const Expr& e = factor.exponent();
  return !e.is_number() || e.number().sign() < 0;
}

std::vector<Expr> flatten(std::vector<Expr> items, Kind kind) {
  std::vector<Expr> flat;
  flat.reserve(items.size());
  for (auto& item : items) {
    if (item.is(kind)) {
      for (const auto& child : item.children()) flat.push_back(child);
    } else {
      flat.push_back(std::move(item));
    }
  }
  return flat;
}

Expr product_node(const Rational& coefficient, std::vector<Expr> factors) {
  std::sort(factors.begin(), factors.end(), ExprLess{});
  if (coefficient != 1) factors.insert(factors.begin(), number(coefficient));
  if (factors.empty()) return number(coefficient);
  if (factors.size() == 1) return factors.front();
  return make_node(Kind::Product, {}, {}, 0, std::move(factors));
}

bool equal_nodes(const detail::Node& a, const detail::Node& b) {
  if (a.kind != b.kind || a.hash != b.hash || a.tag != b.tag) return false;
  if (a.value != b.value || a.name != b.name) return false;
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!(a.children[i] == b.children[i])) return false;
  }
  return true;
}

std::strong_ordering compare_children(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = compare(a[i], b[i]); c != 0) return c;
  }
  return a.size() <=> b.size();
}

}  // namespace

Expr make_node(Kind kind, Rational value, std::string name, std::uint8_t tag,
               std::vector<Expr> children) {
  auto node = std::make_shared<detail::Node>();
  node->kind = kind;
  std::size_t h = combine(static_cast<std::size_t>(kind), tag);
  if (kind == Kind::Number) h = combine(h, value.hash());
  if (kind == Kind::Symbol) h = combine(h, std::hash<std::string>{}(name));
  for (const auto& c : children) h = combine(h, c.hash());
  node->value = std::move(value);
  node->name = std::move(name);
  node->tag = tag;
  node->children = std::move(children);
  node->hash = h;
  return Expr(std::move(node));
}

Expr::Expr() : Expr(nestpow::integer(0)) {}

Kind Expr::kind() const { return node_->kind; }

bool Expr::is_zero() const { return is_number() && node_->value.is_zero(); }

bool Expr::is_one() const { return is_number() && node_->value == 1; }

const Rational& Expr::number() const {
  if (!is_number()) throw std::logic_error("not a number");
  return node_->value;
}

const std::string& Expr::name() const { return node_->name; }

FunctionKind Expr::function() const { return static_cast<FunctionKind>(node_->tag); }

RelationOp Expr::relation() const { return static_cast<RelationOp>(node_->tag); }

LogicOp Expr::logic() const { return static_cast<LogicOp>(node_->tag); }

const std::vector<Expr>& Expr::children() const { return node_->children; }

const Expr& Expr::base() const {
  if (!is(Kind::Power)) throw std::logic_error("not a power");
  return node_->children[0];
}

const Expr& Expr::exponent() const {
  if (!is(Kind::Power)) throw std::logic_error("not a power");
  return node_->children[1];
}

std::size_t Expr::hash() const { return node_->hash; }

bool operator==(const Expr& a, const Expr& b) {
  return a.node_ == b.node_ || equal_nodes(*a.node_, *b.node_);
}

std::strong_ordering compare(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const bool a_power = a.is(Kind::Power);
  const bool b_power = b.is(Kind::Power);
  if (a_power || b_power) {
    if (auto c = compare(a_power ? a.base() : a, b_power ? b.base() : b); c != 0) return c;
    return compare(a_power ? a.exponent() : one_expr(), b_power ? b.exponent() : one_expr());
  }
  if (a.kind() != b.kind()) return a.kind() <=> b.kind();
  switch (a.kind()) {
    case Kind::Number:
      return a.number() <=> b.number();
    case Kind::Symbol:
      return a.name().compare(b.name()) <=> 0;
    case Kind::Function:
    case Kind::Relation:
    case Kind::Logic:
      if (a.node_->tag != b.node_->tag) return a.node_->tag <=> b.node_->tag;
      return compare_children(a.children(), b.children());
    default:
      return compare_children(a.children(), b.children());
  }
}

Expr number(Rational value) { return make_node(Kind::Number, std::move(value), {}, 0, {}); }

Expr integer(long long value) { return number(Rational(value)); }

Expr symbol(std::string name) { return make_node(Kind::Symbol, {}, std::move(name), 0, {}); }

Expr imaginary_unit() {
  static const Expr i = make_node(Kind::ImaginaryUnit, {}, {}, 0, {});
  return i;
}

Expr pi_constant() {
  static const Expr p = make_node(Kind::Pi, {}, {}, 0, {});
  return p;
}

Expr complex_infinity() {
  static const Expr inf = make_node(Kind::ComplexInfinity, {}, {}, 0, {});
  return inf;
}

Expr undefined() {
  static const Expr u = make_node(Kind::Undefined, {}, {}, 0, {});
  return u;
}

std::pair<Rational, Expr> split_coefficient(const Expr& term) {
  if (term.is_number()) return {term.number(), one_expr()};
  if (term.is(Kind::Product) && term.children().front().is_number()) {
    const auto& factors = term.children();
    std::vector<Expr> rest(factors.begin() + 1, factors.end());
    if (rest.size() == 1) return {factors.front().number(), rest.front()};
    return {factors.front().number(), make_node(Kind::Product, {}, {}, 0, std::move(rest))};
  }
  return {Rational(1), term};
}

std::pair<Expr, Expr> split_power(const Expr& factor) {
  if (factor.is(Kind::Power)) return {factor.base(), factor.exponent()};
  return {factor, one_expr()};
}

std::vector<Expr> factors_of(const Expr& e) {
  if (e.is(Kind::Product)) return e.children();
  return {e};
}

Expr add(std::vector<Expr> terms) {
  auto flat = flatten(std::move(terms), Kind::Sum);
  Rational constant = 0;
  int infinities = 0;
  std::map<Expr, Rational, ExprLess> collected;
  for (const auto& t : flat) {
    if (t.is(Kind::Undefined)) return undefined();
    if (t.is(Kind::ComplexInfinity)) {
      ++infinities;
      continue;
    }
    if (t.is_number()) {
      constant += t.number();
      continue;
    }
    auto [k, rest] = split_coefficient(t);
    collected[rest] += k;
  }
  if (infinities > 1) return undefined();
  if (infinities == 1) return complex_infinity();
  std::vector<Expr> out;
  if (!constant.is_zero()) out.push_back(number(constant));
  for (const auto& [rest, k] : collected) {
    if (k.is_zero()) continue;
    out.push_back(k == 1 ? rest : mul({number(k), rest}));
  }
  if (out.empty()) return number(0);
  if (out.size() == 1) return out.front();
  return make_node(Kind::Sum, {}, {}, 0, std::move(out));
}

Expr mul(std::vector<Expr> factors) {
  auto flat = flatten(std::move(factors), Kind::Product);
  Rational coefficient = 1;
  bool infinity = false;
  std::map<Expr, std::vector<Expr>, ExprLess> powers;
  for (const auto& f : flat) {
    if (f.is(Kind::Undefined)) return undefined();
    if (f.is(Kind::ComplexInfinity)) {
      infinity = true;
      continue;
    }
    if (f.is_number()) {
      coefficient *= f.number();
      continue;
    }
    auto [b, e] = split_power(f);
    powers[b].push_back(e);
  }
  if (infinity && coefficient.is_zero()) return undefined();

  std::vector<Expr> out;
  std::vector<Expr> reshaped;
  for (auto& [b, exponents] : powers) {
    Expr p = pow(b, add(exponents));
    if (p.is_number()) {
      coefficient *= p.number();
    } else if (p.is(Kind::Product) || p.is(Kind::ComplexInfinity) || p.is(Kind::Undefined) ||
               !(split_power(p).first == b)) {
      reshaped.push_back(p);
    } else {
      out.push_back(p);
    }
  }
  if (!reshaped.empty()) {
    reshaped.insert(reshaped.end(), out.begin(), out.end());
    reshaped.push_back(number(coefficient));
    if (infinity) reshaped.push_back(complex_infinity());
    return mul(std::move(reshaped));
  }
  if (infinity) {
    if (out.empty()) return complex_infinity();
    out.push_back(complex_infinity());
  }
  if (coefficient.is_zero()) {
    // A zero coefficient survives only next to a possible pole, where 0*oo would be 0/0.
    if (std::none_of(out.begin(), out.end(), is_potential_pole)) return number(0);
  }
  return product_node(coefficient, std::move(out));
}

Expr pow(const Expr& base, const Expr& exponent) {
  if (base.is(Kind::Undefined) || exponent.is(Kind::Undefined)) return undefined();
  if (base.is_one()) return base;
  if (!exponent.is_number()) return make_node(Kind::Power, {}, {}, 0, {base, exponent});
  const Rational& r = exponent.number();
  if (r.is_zero()) return number(1);
  if (r == 1) return base;
  switch (base.kind()) {
    case Kind::Number:
      if (auto v = numeric_power(base.number(), r)) return *v;
      break;
    case Kind::ImaginaryUnit:
      if (r.is_integer()) return imaginary_power(r.numerator());
      break;
    case Kind::ComplexInfinity:
      return r.sign() > 0 ? complex_infinity() : number(0);
    case Kind::Power: {
      const Expr& inner = base.exponent();
      if (inner.is_number()) {
        const Rational& a = inner.number();
        if (r.is_integer() || (a > Rational(-1) && a <= Rational(1))) {
          return pow(base.base(), number(a * r));
        }
      } else if (r.is_integer()) {
        return pow(base.base(), mul({inner, exponent}));
      }
      break;
    }
    case Kind::Product:
      if (r.is_integer()) {
        std::vector<Expr> parts;
        for (const auto& f : base.children()) parts.push_back(pow(f, exponent));
        return mul(std::move(parts));
      }
      break;
    default:
      break;
  }
  return make_node(Kind::Power, {}, {}, 0, {base, exponent});
}

Expr apply(FunctionKind function, const Expr& argument) {
  if (argument.is(Kind::Undefined)) return undefined();
  return make_node(Kind::Function, {}, {}, static_cast<std::uint8_t>(function), {argument});
}

Expr relation(RelationOp op, const Expr& lhs, const Expr& rhs) {
  return make_node(Kind::Relation, {}, {}, static_cast<std::uint8_t>(op), {lhs, rhs});
}

Expr logic(LogicOp op, std::vector<Expr> operands) {
  std::vector<Expr> flat;
  for (auto& o : operands) {
    if (o.is(Kind::Logic) && o.logic() == op) {
      for (const auto& c : o.children()) flat.push_back(c);
    } else {
      flat.push_back(std::move(o));
    }
  }
  if (flat.size() == 1) return flat.front();
  if (flat.empty()) throw std::invalid_argument("empty logical connective");
  return make_node(Kind::Logic, {}, {}, static_cast<std::uint8_t>(op), std::move(flat));
}

Expr piecewise(std::vector<std::pair<Expr, Expr>> pieces, const Expr& otherwise) {
  if (pieces.empty()) return otherwise;
  std::vector<Expr> children;
  for (auto& [c, v] : pieces) {
    children.push_back(std::move(c));
    children.push_back(std::move(v));
  }
  children.push_back(otherwise);
  return make_node(Kind::Piecewise, {}, {}, 0, std::move(children));
}

namespace verbatim {

Expr add(std::vector<Expr> terms) {
  auto flat = flatten(std::move(terms), Kind::Sum);
  Rational constant = 0;
  int infinities = 0;
  std::vector<Expr> out;
  for (auto& t : flat) {
    if (t.is(Kind::Undefined)) return undefined();
    if (t.is(Kind::ComplexInfinity)) {
      ++infinities;
    } else if (t.is_number()) {
      constant += t.number();
    } else {
      out.push_back(std::move(t));
    }
  }
  if (infinities > 1) return undefined();
  if (infinities == 1) return complex_infinity();
  std::sort(out.begin(), out.end(), ExprLess{});
  if (!constant.is_zero()) out.insert(out.begin(), number(constant));
  if (out.empty()) return number(0);
  if (out.size() == 1) return out.front();
  return make_node(Kind::Sum, {}, {}, 0, std::move(out));
}

Expr mul(std::vector<Expr> factors) {
  auto flat = flatten(std::move(factors), Kind::Product);
  Rational coefficient = 1;
  bool infinity = false;
  std::vector<Expr> out;
  for (auto& f : flat) {
    if (f.is(Kind::Undefined)) return undefined();
    if (f.is(Kind::ComplexInfinity)) {
      infinity = true;
    } else if (f.is_number()) {
      coefficient *= f.number();
    } else {
      out.push_back(std::move(f));
    }
  }
  if (infinity) {
    if (coefficient.is_zero()) return undefined();
    if (out.empty()) return complex_infinity();
    out.push_back(complex_infinity());
  }
  if (coefficient.is_zero() && std::none_of(out.begin(), out.end(), is_potential_pole)) {
    return number(0);
  }
  return product_node(coefficient, std::move(out));
}

Expr pow(const Expr& base, const Expr& exponent) {
  if (base.is(Kind::Undefined) || exponent.is(Kind::Undefined)) return undefined();
  if (exponent.is_number()) {
    const Rational& r = exponent.number();
    if (r.is_zero()) return number(1);
    if (r == 1) return base;
    if (base.is_number() && r.is_integer()) {
      if (auto v = numeric_power(base.number(), r)) return *v;
    }
    if (base.is(Kind::ImaginaryUnit) && r.is_integer()) return imaginary_power(r.numerator());
    if (base.is(Kind::ComplexInfinity)) return r.sign() > 0 ? complex_infinity() : number(0);
  }
  return make_node(Kind::Power, {}, {}, 0, {base, exponent});
}

}  // namespace verbatim

Expr add(BuildMode mode, std::vector<Expr> terms) {
  return mode == BuildMode::Canonical ? add(std::move(terms)) : verbatim::add(std::move(terms));
}

Expr mul(BuildMode mode, std::vector<Expr> factors) {
  return mode == BuildMode::Canonical ? mul(std::move(factors)) : verbatim::mul(std::move(factors));
}

Expr pow(BuildMode mode, const Expr& base, const Expr& exponent) {
  return mode == BuildMode::Canonical ? pow(base, exponent) : verbatim::pow(base, exponent);
}

Expr operator+(const Expr& a, const Expr& b) { return add({a, b}); }

Expr operator-(const Expr& a, const Expr& b) { return add({a, mul({integer(-1), b})}); }

Expr operator-(const Expr& a) { return mul({integer(-1), a}); }

Expr operator*(const Expr& a, const Expr& b) { return mul({a, b}); }

Expr operator/(const Expr& a, const Expr& b) { return mul({a, pow(b, integer(-1))}); }

Expr with_children(const Expr& e, std::vector<Expr> children) {
  switch (e.kind()) {
    case Kind::Power:
      return pow(children[0], children[1]);
    case Kind::Product:
      return mul(std::move(children));
    case Kind::Sum:
      return add(std::move(children));
    case Kind::Function:
      return apply(e.function(), children[0]);
    case Kind::Relation:
      return relation(e.relation(), children[0], children[1]);
    case Kind::Logic:
      return logic(e.logic(), std::move(children));
    case Kind::Piecewise: {
      std::vector<std::pair<Expr, Expr>> pieces;
      for (std::size_t i = 0; i + 1 < children.size(); i += 2) {
        pieces.emplace_back(children[i], children[i + 1]);
      }
      return piecewise(std::move(pieces), children.back());
    }
    default:
      return e;
  }
}

Expr map_children(const Expr& e, const std::function<Expr(const Expr&)>& f) {
  if (e.children().empty()) return e;
  std::vector<Expr> children;
  children.reserve(e.children().size());
  for (const auto& c : e.children()) children.push_back(f(c));
  return with_children(e, std::move(children));
}

Expr canonicalize(const Expr& e) { return map_children(e, canonicalize); }

std::set<std::string> free_symbols(const Expr& e) {
  std::set<std::string> out;
  std::function<void(const Expr&)> visit = [&](const Expr& x) {
    if (x.is(Kind::Symbol)) out.insert(x.name());
    for (const auto& c : x.children()) visit(c);
  };
  visit(e);
  return out;
}

Expr collect_sum(const Expr& e, const std::function<Expr(const Expr&)>& pipeline) {
  if (!e.is(Kind::Sum)) return e;
  std::vector<Expr> terms;
  for (const auto& t : e.children()) {
    auto [k, rest] = split_coefficient(t);
    terms.push_back(mul({number(k), pipeline(rest)}));
  }
  return add(std::move(terms));
}

}  // namespace nestpow
