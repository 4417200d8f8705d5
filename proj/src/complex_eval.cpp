#include "nestpow/complex_eval.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <random>

namespace nestpow {

namespace {

constexpr double kAbsoluteFloor = 1e-14;
constexpr int kMaxRepeatedMultiply = 64;
const Rational kHalf(1, 2);

ExtValue from_complex(Complex z) {
  if (std::isnan(z.real()) || std::isnan(z.imag())) return ExtValue::undefined();
  if (std::isinf(z.real()) || std::isinf(z.imag())) return ExtValue::infinity();
  return ExtValue::finite(z);
}

Complex integer_power(Complex b, long n) {
  const bool invert = n < 0;
  unsigned long k = invert ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  Complex result(1.0, 0.0);
  Complex factor = b;
  while (k > 0) {
    if (k & 1UL) result *= factor;
    factor *= factor;
    k >>= 1U;
  }
  return invert ? Complex(1.0, 0.0) / result : result;
}

class Evaluator {
 public:
  Evaluator(const Bindings& bindings, ArgZero arg0) : bindings_(bindings), arg0_(arg0) {}

  ExtValue value(const Expr& e) const {
    switch (e.kind()) {
      case Kind::Number:
        return ExtValue::finite({e.number().to_double(), 0.0});
      case Kind::ImaginaryUnit:
        return ExtValue::finite({0.0, 1.0});
      case Kind::Pi:
        return ExtValue::finite({std::numbers::pi, 0.0});
      case Kind::Symbol: {
        auto it = bindings_.find(e.name());
        if (it == bindings_.end()) throw UnboundSymbol(e.name());
        return ExtValue::finite(it->second);
      }
      case Kind::ComplexInfinity:
        return ExtValue::infinity();
      case Kind::Undefined:
        return ExtValue::undefined();
      case Kind::Function:
        return function(e.function(), value(e.children()[0]));
      case Kind::Power:
        return power(e);
      case Kind::Product:
        return product(e);
      case Kind::Sum:
        return sum(e);
      case Kind::Relation:
      case Kind::Logic: {
        auto c = condition(e);
        if (!c) return ExtValue::undefined();
        return ExtValue::finite({*c ? 1.0 : 0.0, 0.0});
      }
      case Kind::Piecewise:
        return piecewise(e);
    }
    return ExtValue::undefined();
  }

  std::optional<bool> condition(const Expr& e) const {
    if (e.is(Kind::Logic)) {
      const bool conj = e.logic() == LogicOp::And;
      for (const auto& c : e.children()) {
        auto v = condition(c);
        if (!v) return std::nullopt;
        if (*v != conj) return *v;
      }
      return conj;
    }
    if (!e.is(Kind::Relation)) {
      ExtValue v = value(e);
      if (!v.is_finite()) return std::nullopt;
      return v.value() != Complex(0.0, 0.0);
    }
    const ExtValue a = value(e.children()[0]);
    const ExtValue b = value(e.children()[1]);
    if (e.relation() == RelationOp::Equal || e.relation() == RelationOp::NotEqual) {
      if (a.is_undefined() || b.is_undefined()) return std::nullopt;
      const bool same = a.kind() == b.kind() && (!a.is_finite() || a.value() == b.value());
      return e.relation() == RelationOp::Equal ? same : !same;
    }
    if (!a.is_finite() || !b.is_finite()) return std::nullopt;
    const double x = a.value().real();
    const double y = b.value().real();
    switch (e.relation()) {
      case RelationOp::Less:
        return x < y;
      case RelationOp::LessEqual:
        return x <= y;
      case RelationOp::Greater:
        return x > y;
      default:
        return x >= y;
    }
  }

 private:
  ExtValue arg_of_origin() const {
    return arg0_ == ArgZero::Zero ? ExtValue::finite({}) : ExtValue::undefined();
  }

  ExtValue function(FunctionKind f, const ExtValue& x) const {
    if (x.is_infinite()) {
      if (f == FunctionKind::Log) return ExtValue::infinity();
      // Infinity has no direction either; it takes the same convention as zero.
      if (f == FunctionKind::Arg) return arg_of_origin();
    }
    if (!x.is_finite()) return ExtValue::undefined();
    const Complex z = x.value();
    switch (f) {
      case FunctionKind::Arg:
        if (z == Complex(0.0, 0.0)) return arg_of_origin();
        return ExtValue::finite({std::arg(z), 0.0});
      case FunctionKind::Re:
        return ExtValue::finite({z.real(), 0.0});
      case FunctionKind::Im:
        return ExtValue::finite({z.imag(), 0.0});
      case FunctionKind::Log:
        if (z == Complex(0.0, 0.0)) return ExtValue::infinity();
        return from_complex(std::log(z));
      case FunctionKind::Exp:
        return from_complex(std::exp(z));
    }
    return ExtValue::undefined();
  }

  ExtValue power(const Expr& e) const {
    const ExtValue b = value(e.base());
    const ExtValue x = value(e.exponent());
    if (b.is_undefined() || !x.is_finite()) return ExtValue::undefined();
    const Complex r = x.value();
    const bool real_exponent = r.imag() == 0.0;
    if (b.is_infinite()) {
      if (!real_exponent || r.real() == 0.0) return ExtValue::undefined();
      return r.real() > 0 ? ExtValue::infinity() : ExtValue::finite({});
    }
    const Complex z = b.value();
    if (z == Complex(0.0, 0.0)) {
      if (!real_exponent) return ExtValue::undefined();
      if (r.real() > 0) return ExtValue::finite({});
      if (r.real() < 0) return ExtValue::infinity();
      return ExtValue::finite({1.0, 0.0});
    }
    const Expr& exponent = e.exponent();
    if (exponent.is_number()) {
      const Rational& q = exponent.number();
      if (q.is_integer() && boost::multiprecision::abs(q.numerator()) <= kMaxRepeatedMultiply) {
        return from_complex(integer_power(z, q.numerator().convert_to<long>()));
      }
      if (q == kHalf) return from_complex(std::sqrt(z));
      if (q == -kHalf) return from_complex(Complex(1.0, 0.0) / std::sqrt(z));
    }
    return from_complex(std::exp(r * std::log(z)));
  }

  ExtValue product(const Expr& e) const {
    Complex acc(1.0, 0.0);
    bool zero = false;
    bool infinite = false;
    bool undefined = false;
    for (const auto& f : e.children()) {
      const ExtValue v = value(f);
      if (v.is_undefined()) {
        undefined = true;
      } else if (v.is_infinite()) {
        infinite = true;
      } else if (v.value() == Complex(0.0, 0.0)) {
        zero = true;
      } else {
        acc *= v.value();
      }
    }
    if (undefined || (zero && infinite)) return ExtValue::undefined();
    if (infinite) return ExtValue::infinity();
    if (zero) return ExtValue::finite({});
    return from_complex(acc);
  }

  ExtValue sum(const Expr& e) const {
    Complex acc(0.0, 0.0);
    int infinities = 0;
    for (const auto& t : e.children()) {
      const ExtValue v = value(t);
      if (v.is_undefined()) return ExtValue::undefined();
      if (v.is_infinite()) {
        ++infinities;
      } else {
        acc += v.value();
      }
    }
    if (infinities > 1) return ExtValue::undefined();
    if (infinities == 1) return ExtValue::infinity();
    return from_complex(acc);
  }

  ExtValue piecewise(const Expr& e) const {
    const auto& c = e.children();
    for (std::size_t k = 0; k + 1 < c.size(); k += 2) {
      auto holds = condition(c[k]);
      if (!holds) return ExtValue::undefined();
      if (*holds) return value(c[k + 1]);
    }
    return value(c.back());
  }

  const Bindings& bindings_;
  ArgZero arg0_;
};

std::string format_real(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.15g", x);
  std::string s(buffer);
  if (s == "-0") s = "0";
  return s;
}

std::string format_imaginary(double y) {
  if (y == 1.0) return "i";
  if (y == -1.0) return "-i";
  return format_real(y) + "i";
}

}  // namespace

ExtValue ExtValue::finite(Complex z) {
  // Adding +0.0 turns -0.0 into +0.0, keeping arg(-1 - 0i) = pi.
  return ExtValue(Kind::Finite, Complex(z.real() + 0.0, z.imag() + 0.0));
}

ExtValue evaluate(const Expr& e, const Bindings& bindings, ArgZero arg0) {
  return Evaluator(bindings, arg0).value(e);
}

bool matches(const ExtValue& a, const ExtValue& b, double relative_tolerance) {
  if (a.kind() != b.kind()) return false;
  if (!a.is_finite()) return true;
  const double scale = std::max(std::abs(a.value()), std::abs(b.value()));
  return std::abs(a.value() - b.value()) <= relative_tolerance * scale + kAbsoluteFloor;
}

std::vector<Complex> sample_points(std::uint64_t seed) {
  std::vector<Complex> points{Complex(0.0, 0.0)};
  const double magnitudes[] = {0.1, 0.25, 0.5, 1.0, 2.0, 3.5, 5.0, 10.0};
  const Complex directions[] = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
  for (const auto& d : directions) {
    for (double m : magnitudes) points.emplace_back(d.real() * m + 0.0, d.imag() * m + 0.0);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_radius(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (int k = 0; k < 180; ++k) {
    const double r = std::pow(10.0, log_radius(rng));
    points.push_back(std::polar(r, angle(rng)));
  }
  return points;
}

std::string to_string(const ExtValue& v) {
  if (v.is_undefined()) return "0/0";
  if (v.is_infinite()) return "ComplexInfinity";
  double re = v.value().real();
  double im = v.value().imag();
  const double scale = std::max(std::abs(re), std::abs(im));
  if (std::abs(re) < 1e-12 * scale) re = 0.0;
  if (std::abs(im) < 1e-12 * scale) im = 0.0;
  if (im == 0.0) return format_real(re);
  if (re == 0.0) return format_imaginary(im);
  const std::string imaginary = format_imaginary(std::abs(im));
  return format_real(re) + (im < 0 ? "-" : "+") + imaginary;
}

}  // namespace nestpow
