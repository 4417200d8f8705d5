#pragma once

#include <array>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "nestpow/expr.hpp"
#include "nestpow/families.hpp"
#include "nestpow/rational.hpp"

namespace nestpow {

inline constexpr int kGoalCount = 8;

// Goals a result fails, each with a witness.
class FlawSet {
 public:
  void set(int goal, std::string evidence);
  bool has(int goal) const { return flags_.contains(goal); }
  bool empty() const { return flags_.empty(); }
  std::set<int> goals() const;
  const std::string& evidence(int goal) const { return flags_.at(goal); }
  const std::map<int, std::string>& flags() const { return flags_; }
  // "3,5,6" or "" when clean.
  std::string to_string() const;

  friend bool operator==(const FlawSet&, const FlawSet&) = default;

 private:
  std::map<int, std::string> flags_;
};

using Pipeline = std::function<Expr(const Expr&)>;

// The artifact's own Form-3 simplifier.
Pipeline default_pipeline();

// alpha_hat w^alpha_hat (w^beta)^gamma_hat read off a result with one nested factor.
struct SingleFactorView {
  Rational alpha_hat;
  Rational beta;
  Rational gamma_hat;
};

// nullopt unless the result, rebuilt canonically, is a single-base product with
// exactly one nested factor and nothing else.
std::optional<SingleFactorView> single_factor_view(const Expr& result);

std::optional<std::string> check_goal1(const Expr& input, const Expr& result);
std::optional<std::string> check_goal2(const Expr& a, const Expr& b, const Pipeline& pipeline);
std::optional<std::string> check_goal3(const SingleFactorView& v, bool alpha_original_zero);
std::optional<std::string> check_goal4(const SingleFactorView& v);
std::optional<std::string> check_goal5(const SingleFactorView& v, bool alpha_original_zero);
std::optional<std::string> check_goal7(const Expr& result, const Pipeline& pipeline);
std::optional<std::string> check_goal8(const SingleFactorView& v);

// Goals 1, 3, 4, 5 and 8: what inspection of one result against its input reveals.
FlawSet structural_flaws(const Expr& input, const Expr& result, bool alpha_original_zero);

// One member of an equivalence class competing for goal 6.
struct Candidate {
  Expr result;
  FlawSet flaws;
};

// Index of the best candidate: fewer lower-numbered flaws first, then equality
// with the canonical result, then structural order.
std::size_t best_candidate(std::span<const Candidate> members, const Expr& canonical);

// Flaw iff result is not structurally the best member's result.
std::optional<std::string> check_goal6(const Expr& result, std::span<const Candidate> members,
                                       const Expr& canonical);

enum class AuditMode { Internal, External };

// Goals assessed in a mode.
std::set<int> assessable_goals(AuditMode mode);

// Results by (m, n); cells may be absent. Entries in the extended border act as
// goal-6 neighbours.
using ResultTable = std::map<std::pair<int, int>, Expr>;

struct TableAudit {
  int family = 1;
  AuditMode mode = AuditMode::External;
  std::map<std::pair<int, int>, FlawSet> cells;  // audited cells only
  std::array<double, kGoalCount> percentages{};   // per goal, over audited cells

  double percentage(int goal) const { return percentages.at(static_cast<std::size_t>(goal - 1)); }
};

TableAudit audit_table(const ResultTable& results, int family, AuditMode mode,
                       const Pipeline& pipeline = default_pipeline());

ResultTable to_result_table(const FamilyGrid& grid);

class TableFormatError : public std::runtime_error {
 public:
  TableFormatError(const std::string& message, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// CSV with header family,m,n,result. The result runs to the end of the line and
// may be double-quoted. Only rows of the given family are kept. Results are read
// verbatim, keeping the shape they were written in.
ResultTable read_result_csv(std::istream& in, int family);

}  // namespace nestpow
