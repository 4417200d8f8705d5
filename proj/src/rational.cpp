#include "nestpow/rational.hpp"

#include <functional>
#include <ostream>
#include <stdexcept>

namespace nestpow {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw std::invalid_argument("malformed integer: " + std::string(s));
  }
  Integer value{std::string(s)};
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational::Rational(long long value) : num_(value), den_(1) {}

Rational::Rational(Integer numerator, Integer denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  normalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  auto den_text = text.substr(slash + 1);
  if (!all_digits(den_text)) {
    throw std::invalid_argument("malformed denominator: " + std::string(text));
  }
  return Rational(parse_integer(text.substr(0, slash)), Integer(std::string(den_text)));
}

void Rational::normalize() {
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  Integer g = boost::multiprecision::gcd(num_, den_);
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::abs() const {
  Rational r = *this;
  if (r.num_.sign() < 0) r.num_ = -r.num_;
  return r;
}

double Rational::to_double() const {
  return num_.convert_to<double>() / den_.convert_to<double>();
}

std::string Rational::to_string() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

std::size_t Rational::hash() const {
  return std::hash<std::string>{}(to_string());
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  num_ = num_ * rhs.den_ + rhs.num_ * den_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero");
  num_ *= rhs.den_;
  den_ *= rhs.num_;
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const Integer lhs = a.num_ * b.den_;
  const Integer rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

int sign(const Rational& x) { return x.sign(); }

Integer ip(const Rational& x) { return x.numerator() / x.denominator(); }

Rational fp(const Rational& x) { return x - Rational(ip(x)); }

Integer floor(const Rational& x) {
  Integer q = ip(x);
  if (x.sign() < 0 && !x.is_integer()) q -= 1;
  return q;
}

Integer ceil(const Rational& x) {
  Integer q = ip(x);
  if (x.sign() > 0 && !x.is_integer()) q += 1;
  return q;
}

Rational rat_gcd(std::span<const Rational> xs) {
  if (xs.empty()) throw std::invalid_argument("rat_gcd of an empty list");
  Integer num_gcd = 0;
  Integer den_lcm = 1;
  for (const auto& x : xs) {
    if (x.is_zero()) throw std::invalid_argument("rat_gcd with a zero element");
    num_gcd = boost::multiprecision::gcd(num_gcd, Integer(abs(x.numerator())));
    den_lcm = boost::multiprecision::lcm(den_lcm, x.denominator());
  }
  return Rational(num_gcd, den_lcm);
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }

}  // namespace nestpow
