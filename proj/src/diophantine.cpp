#include "nestpow/diophantine.hpp"

#include <stdexcept>

namespace nestpow {

namespace {

class Search {
 public:
  Search(const AbsorptionProblem& p, bool stop_at_first) : stop_at_first_(stop_at_first) {
    p.validate();
    Integer scale = p.target.denominator();
    for (const auto& c : p.coefficients) scale = boost::multiprecision::lcm(scale, c.denominator());
    const Integer target = (p.target * Rational(scale)).numerator();
    remaining_ = boost::multiprecision::abs(target);
    for (const auto& c : p.coefficients) {
      const Integer scaled = (c * Rational(scale)).numerator();
      weights_.push_back(boost::multiprecision::abs(scaled));
      directions_.push_back(target.sign() * scaled.sign());
    }
    suffix_gcd_.assign(weights_.size() + 1, 0);
    for (std::size_t j = weights_.size(); j-- > 0;) {
      suffix_gcd_[j] = boost::multiprecision::gcd(suffix_gcd_[j + 1], weights_[j]);
    }
    current_.assign(weights_.size(), 0);
  }

  std::vector<std::vector<Integer>> run() {
    descend(0, remaining_);
    return std::move(found_);
  }

 private:
  bool descend(std::size_t j, const Integer& remaining) {
    if (j == weights_.size()) {
      if (!remaining.is_zero()) return false;
      found_.push_back(current_);
      return stop_at_first_;
    }
    if (remaining % suffix_gcd_[j] != 0) return false;
    const Integer most = remaining / weights_[j];
    const bool ascending = directions_[j] > 0;
    for (Integer step = 0; step <= most; ++step) {
      const Integer k = ascending ? step : most - step;
      current_[j] = directions_[j] > 0 ? k : Integer(-k);
      if (descend(j + 1, remaining - k * weights_[j])) return true;
    }
    current_[j] = 0;
    return false;
  }

  bool stop_at_first_;
  Integer remaining_;
  std::vector<Integer> weights_;
  std::vector<int> directions_;
  std::vector<Integer> suffix_gcd_;
  std::vector<Integer> current_;
  std::vector<std::vector<Integer>> found_;
};

}  // namespace

void AbsorptionProblem::validate() const {
  if (target.is_zero()) throw std::invalid_argument("absorption target must be non-zero");
  if (coefficients.empty()) throw std::invalid_argument("absorption needs coefficients");
  for (const auto& c : coefficients) {
    if (c.is_zero()) throw std::invalid_argument("absorption coefficient is zero");
  }
  if (sign != target.sign()) throw std::invalid_argument("sign disagrees with target");
}

AbsorptionProblem make_problem(Rational target, std::vector<Rational> coefficients) {
  const int s = target.sign();
  AbsorptionProblem p{std::move(target), std::move(coefficients), s};
  p.validate();
  return p;
}

std::vector<std::vector<Integer>> enumerate_solutions(const AbsorptionProblem& p) {
  return Search(p, false).run();
}

std::optional<std::vector<Integer>> first_solution(const AbsorptionProblem& p) {
  auto found = Search(p, true).run();
  if (found.empty()) return std::nullopt;
  return std::move(found.front());
}

}  // namespace nestpow
