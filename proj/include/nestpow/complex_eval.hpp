#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nestpow/expr.hpp"

namespace nestpow {

using Complex = std::complex<double>;

// A point of the extended complex plane, or the unknown value 0/0.
class ExtValue {
 public:
  enum class Kind : std::uint8_t { Finite, ComplexInfinity, Undefined };

  static ExtValue finite(Complex z);
  static ExtValue infinity() { return ExtValue(Kind::ComplexInfinity, {}); }
  static ExtValue undefined() { return ExtValue(Kind::Undefined, {}); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_infinite() const { return kind_ == Kind::ComplexInfinity; }
  bool is_undefined() const { return kind_ == Kind::Undefined; }
  // Finite or infinite.
  bool is_defined() const { return kind_ != Kind::Undefined; }
  const Complex& value() const { return value_; }

 private:
  ExtValue(Kind kind, Complex value) : kind_(kind), value_(value) {}

  Kind kind_;
  Complex value_;
};

class UnboundSymbol : public std::invalid_argument {
 public:
  explicit UnboundSymbol(const std::string& name)
      : std::invalid_argument("unbound symbol '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

using Bindings = std::map<std::string, Complex>;

// Principal-branch evaluation with 0/0 and complex infinity propagation.
// Throws UnboundSymbol for a free symbol without a binding.
ExtValue evaluate(const Expr& e, const Bindings& bindings, ArgZero arg0 = ArgZero::Zero);

// Both undefined, both infinite, or finite and within the relative tolerance.
bool matches(const ExtValue& a, const ExtValue& b, double relative_tolerance = 1e-9);

// 0, eight magnitudes on each of the four half axes, and 180 generic points with
// |w| in [0.1, 10]; deterministic in the seed.
std::vector<Complex> sample_points(std::uint64_t seed = 0);

// "a+bi" with exact-looking formatting, "ComplexInfinity" or "0/0".
std::string to_string(const ExtValue& v);

}  // namespace nestpow
