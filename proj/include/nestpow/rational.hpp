#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace nestpow {

using Integer = boost::multiprecision::cpp_int;

// Exact fraction kept in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long long value);  // NOLINT(google-explicit-constructor)
  Rational(Integer numerator, Integer denominator = 1);

  // Accepts "n" or "n/d" with an optional leading minus sign.
  static Rational parse(std::string_view text);

  const Integer& numerator() const { return num_; }
  const Integer& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_.sign(); }

  Rational abs() const;
  double to_double() const;
  std::string to_string() const;
  std::size_t hash() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  void normalize();

  Integer num_{0};
  Integer den_{1};
};

int sign(const Rational& x);

// Integer part, truncating toward zero.
Integer ip(const Rational& x);

// Fractional part x - ip(x).
Rational fp(const Rational& x);

Integer floor(const Rational& x);
Integer ceil(const Rational& x);

// Largest positive g such that every element is an integer multiple of g.
// Throws std::invalid_argument on an empty list or a zero element.
Rational rat_gcd(std::span<const Rational> xs);

std::ostream& operator<<(std::ostream& os, const Rational& x);

}  // namespace nestpow

template <>
struct std::hash<nestpow::Rational> {
  std::size_t operator()(const nestpow::Rational& x) const { return x.hash(); }
};
