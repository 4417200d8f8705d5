#include "nestpow/auditor.hpp"

#include <algorithm>
#include <sstream>

#include "nestpow/complex_eval.hpp"
#include "nestpow/npp.hpp"
#include "nestpow/parse.hpp"
#include "nestpow/pipeline.hpp"
#include "nestpow/render.hpp"

namespace nestpow {

namespace {

std::string view_text(const SingleFactorView& v) {
  return "alpha=" + v.alpha_hat.to_string() + ", beta=" + v.beta.to_string() +
         ", gamma=" + v.gamma_hat.to_string();
}

// min(positive mass, negative mass) of w^a (w^b)^g at the origin.
Rational multiplicity(const Rational& alpha, const Rational& beta, const Rational& gamma) {
  Rational positive;
  Rational negative;
  for (const Rational& x : {alpha, beta * gamma}) {
    if (x.sign() > 0) positive += x;
    if (x.sign() < 0) negative -= x;
  }
  return std::min(positive, negative);
}

// Rank key: flaw indicators for goals 1..8, lexicographically smaller is better.
std::array<bool, kGoalCount> flaw_key(const FlawSet& flaws) {
  std::array<bool, kGoalCount> key{};
  for (int g : flaws.goals()) key[static_cast<std::size_t>(g - 1)] = true;
  return key;
}

std::string cell_text(int m, int n) { return "(" + std::to_string(m) + ", " + std::to_string(n) + ")"; }

}  // namespace

void FlawSet::set(int goal, std::string evidence) {
  if (goal < 1 || goal > kGoalCount) throw std::out_of_range("goal " + std::to_string(goal));
  flags_[goal] = std::move(evidence);
}

std::set<int> FlawSet::goals() const {
  std::set<int> out;
  for (const auto& [g, _] : flags_) out.insert(g);
  return out;
}

std::string FlawSet::to_string() const {
  std::string out;
  for (const auto& [g, _] : flags_) {
    if (!out.empty()) out += ',';
    out += std::to_string(g);
  }
  return out;
}

Pipeline default_pipeline() {
  return [](const Expr& e) { return simplify(e); };
}

std::optional<SingleFactorView> single_factor_view(const Expr& result) {
  const Expr e = canonicalize(result);
  if (!e.is(Kind::Product) && !e.is(Kind::Power)) return std::nullopt;
  const ProductSplit split = split_product(e);
  if (!split.rest.empty() || split.groups.size() != 1) return std::nullopt;
  const NestedPowerProduct& g = split.groups.front();
  if (g.factors.size() != 1) return std::nullopt;
  return SingleFactorView{g.alpha, g.factors.front().beta, g.factors.front().gamma};
}

std::optional<std::string> check_goal1(const Expr& input, const Expr& result) {
  std::set<std::string> names = free_symbols(input);
  names.merge(free_symbols(result));
  const std::vector<Complex> points = sample_points();
  const std::vector<std::string> symbols(names.begin(), names.end());
  const std::size_t rounds = symbols.empty() ? 1 : points.size();
  for (std::size_t k = 0; k < rounds; ++k) {
    Bindings at;
    for (std::size_t s = 0; s < symbols.size(); ++s) at[symbols[s]] = points[(k + 37 * s) % points.size()];
    const ExtValue expected = evaluate(input, at);
    if (!expected.is_defined()) continue;
    const ExtValue actual = evaluate(result, at);
    if (matches(expected, actual)) continue;
    std::string where;
    for (const auto& [name, z] : at) {
      where += (where.empty() ? "" : ", ") + name + "=" + to_string(ExtValue::finite(z));
    }
    return "at " + (where.empty() ? std::string("any point") : where) + ": input " + to_string(expected) +
           ", result " + to_string(actual);
  }
  return std::nullopt;
}

std::optional<std::string> check_goal2(const Expr& a, const Expr& b, const Pipeline& pipeline) {
  const Expr difference = pipeline(a - b);
  if (difference.is_zero()) return std::nullopt;
  return "(" + to_text(a) + ") - (" + to_text(b) + ") simplifies to " + to_text(difference);
}

std::optional<std::string> check_goal3(const SingleFactorView& v, bool alpha_original_zero) {
  const Rational& a = v.alpha_hat;
  const Rational& g = v.gamma_hat;
  const Rational bg = v.beta * g;
  if (alpha_original_zero || a.is_zero()) return std::nullopt;
  if (a.sign() == bg.sign() && g.abs() < 1) return std::nullopt;
  const Rational s(g.sign());
  if (a.sign() != bg.sign() && g.abs() < 1 &&
      std::min(bg.abs(), a.abs()) <= std::min((v.beta * (g - s)).abs(), (a + v.beta * s).abs())) {
    return std::nullopt;
  }
  return "removable singularity not minimized: " + view_text(v);
}

std::optional<std::string> check_goal4(const SingleFactorView& v) {
  if (v.alpha_hat.is_zero() || !(v.alpha_hat / v.beta).is_integer()) return std::nullopt;
  return "w^" + v.alpha_hat.to_string() + " is an integer power of w^" + v.beta.to_string();
}

std::optional<std::string> check_goal5(const SingleFactorView& v, bool alpha_original_zero) {
  const Rational& a = v.alpha_hat;
  const Rational& g = v.gamma_hat;
  const Rational bg = v.beta * g;
  if (alpha_original_zero || a.is_zero()) return std::nullopt;
  if (a.sign() == bg.sign() && g.abs() < 1) return std::nullopt;
  if (a.sign() != bg.sign() && g.abs() <= Rational(1, 2)) return std::nullopt;
  return "outer exponent magnitude not minimized: " + view_text(v);
}

std::optional<std::string> check_goal7(const Expr& result, const Pipeline& pipeline) {
  const Expr again = pipeline(result);
  if (again == canonicalize(result)) return std::nullopt;
  return "resimplifies to " + to_text(again);
}

std::optional<std::string> check_goal8(const SingleFactorView& v) {
  if (v.alpha_hat.is_zero() || v.gamma_hat.sign() >= 0) return std::nullopt;
  const Rational alpha = v.alpha_hat - v.beta;
  const Rational gamma = v.gamma_hat + 1;
  if (multiplicity(alpha, v.beta, gamma) > multiplicity(v.alpha_hat, v.beta, v.gamma_hat)) {
    return std::nullopt;
  }
  return "denominator rationalizable to alpha=" + alpha.to_string() + ", gamma=" + gamma.to_string();
}

FlawSet structural_flaws(const Expr& input, const Expr& result, bool alpha_original_zero) {
  FlawSet flaws;
  if (auto e = check_goal1(input, result)) flaws.set(1, *e);
  if (auto v = single_factor_view(result)) {
    if (auto e = check_goal3(*v, alpha_original_zero)) flaws.set(3, *e);
    if (auto e = check_goal4(*v)) flaws.set(4, *e);
    if (auto e = check_goal5(*v, alpha_original_zero)) flaws.set(5, *e);
    if (auto e = check_goal8(*v)) flaws.set(8, *e);
  }
  return flaws;
}

std::size_t best_candidate(std::span<const Candidate> members, const Expr& canonical) {
  if (members.empty()) throw std::invalid_argument("empty equivalence class");
  const Expr target = canonicalize(canonical);
  auto better = [&](const Candidate& x, const Candidate& y) {
    const auto kx = flaw_key(x.flaws);
    const auto ky = flaw_key(y.flaws);
    if (kx != ky) return kx < ky;
    const bool cx = canonicalize(x.result) == target;
    const bool cy = canonicalize(y.result) == target;
    if (cx != cy) return cx;
    return compare(canonicalize(x.result), canonicalize(y.result)) < 0;
  };
  std::size_t best = 0;
  for (std::size_t k = 1; k < members.size(); ++k) {
    if (better(members[k], members[best])) best = k;
  }
  return best;
}

std::optional<std::string> check_goal6(const Expr& result, std::span<const Candidate> members,
                                       const Expr& canonical) {
  const Candidate& best = members[best_candidate(members, canonical)];
  if (canonicalize(best.result) == canonicalize(result)) return std::nullopt;
  return "equivalent result " + to_text(best.result) + " is better";
}

std::set<int> assessable_goals(AuditMode mode) {
  if (mode == AuditMode::Internal) return {1, 2, 3, 4, 5, 6, 7, 8};
  return {1, 3, 4, 5, 6, 8};
}

TableAudit audit_table(const ResultTable& results, int family, AuditMode mode, const Pipeline& pipeline) {
  require_family(family);
  for (const auto& [cell, _] : results) {
    if (!kExtendedBounds.contains(cell.first, cell.second)) {
      throw std::invalid_argument("cell " + cell_text(cell.first, cell.second) + " outside the audited grid");
    }
  }

  // Every class member's result and structural flaws, computed once. Members
  // without a supplied result take the pipeline's.
  std::map<std::pair<int, int>, Candidate> candidates;
  std::map<std::pair<int, int>, Expr> canonical;
  auto canonical_at = [&](int m, int n) -> const Expr& {
    auto it = canonical.find({m, n});
    if (it == canonical.end()) it = canonical.emplace(std::pair{m, n}, pipeline(family_input(family, m, n))).first;
    return it->second;
  };
  auto candidate_at = [&](int m, int n) -> const Candidate& {
    auto it = candidates.find({m, n});
    if (it != candidates.end()) return it->second;
    auto supplied = results.find({m, n});
    const Expr result = supplied != results.end() ? supplied->second : canonical_at(m, n);
    Candidate c{result, structural_flaws(family_input(family, m, n), result, m == 0)};
    return candidates.emplace(std::pair{m, n}, std::move(c)).first->second;
  };

  TableAudit audit{family, mode, {}, {}};
  const int step = class_step(family);
  for (const auto& [cell, result] : results) {
    const auto [m, n] = cell;
    if (!kTableBounds.contains(m, n)) continue;
    FlawSet flaws = candidate_at(m, n).flaws;

    std::vector<Candidate> members;
    for (const auto& [mm, nn] : equivalence_class(family, m, n)) members.push_back(candidate_at(mm, nn));
    if (auto e = check_goal6(result, members, canonical_at(m, n))) flaws.set(6, *e);

    if (mode == AuditMode::Internal) {
      const Expr input = family_input(family, m, n);
      for (int dir : {1, -1}) {
        const Expr other = family_input(family, m + 2 * dir, n + step * dir);
        if (auto e = check_goal2(input, other, pipeline)) {
          flaws.set(2, *e);
          break;
        }
      }
      if (auto e = check_goal7(result, pipeline)) flaws.set(7, *e);
    }
    audit.cells.emplace(cell, std::move(flaws));
  }

  if (!audit.cells.empty()) {
    for (int g = 1; g <= kGoalCount; ++g) {
      const auto flagged = std::count_if(audit.cells.begin(), audit.cells.end(),
                                         [g](const auto& entry) { return entry.second.has(g); });
      audit.percentages[static_cast<std::size_t>(g - 1)] =
          100.0 * static_cast<double>(flagged) / static_cast<double>(audit.cells.size());
    }
  }
  return audit;
}

ResultTable to_result_table(const FamilyGrid& grid) {
  ResultTable table;
  for (int m = kTableBounds.min_m; m <= kTableBounds.max_m; ++m) {
    for (int n = kTableBounds.min_n; n <= kTableBounds.max_n; ++n) table.emplace(std::pair{m, n}, grid.at(m, n));
  }
  return table;
}

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int parse_int(const std::string& field, int line) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(field, &used);
    if (used == field.size()) return value;
  } catch (const std::logic_error&) {
  }
  throw TableFormatError("expected an integer, got '" + field + "'", line);
}

std::string unquote(const std::string& field, int line) {
  if (field.empty() || field.front() != '"') return field;
  if (field.size() < 2 || field.back() != '"') throw TableFormatError("unterminated quoted field", line);
  std::string out;
  for (std::size_t k = 1; k + 1 < field.size(); ++k) {
    out += field[k];
    if (field[k] == '"') {
      if (field[k + 1] != '"' || k + 2 >= field.size()) throw TableFormatError("stray quote", line);
      ++k;
    }
  }
  return out;
}

}  // namespace

ResultTable read_result_csv(std::istream& in, int family) {
  require_family(family);
  ResultTable table;
  std::string raw;
  int line = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty()) continue;
    if (!header) {
      std::string compact;
      std::remove_copy_if(text.begin(), text.end(), std::back_inserter(compact),
                          [](char c) { return c == ' ' || c == '\t'; });
      if (compact != "family,m,n,result") throw TableFormatError("expected header family,m,n,result", line);
      header = true;
      continue;
    }
    std::array<std::string, 3> keys;
    std::size_t pos = 0;
    for (auto& key : keys) {
      const auto comma = text.find(',', pos);
      if (comma == std::string::npos) throw TableFormatError("expected 4 fields", line);
      key = trim(text.substr(pos, comma - pos));
      pos = comma + 1;
    }
    if (parse_int(keys[0], line) != family) continue;
    const int m = parse_int(keys[1], line);
    const int n = parse_int(keys[2], line);
    const std::string result = unquote(trim(text.substr(pos)), line);
    if (result.empty()) throw TableFormatError("empty result", line);
    try {
      if (!table.emplace(std::pair{m, n}, parse(result, BuildMode::Verbatim)).second) {
        throw TableFormatError("duplicate cell " + cell_text(m, n), line);
      }
    } catch (const ParseError& e) {
      throw TableFormatError(std::string("result: ") + e.what(), line);
    }
  }
  if (!header) throw TableFormatError("missing header", line);
  return table;
}

}  // namespace nestpow
