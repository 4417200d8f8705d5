#include "nestpow/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "nestpow/auditor.hpp"
#include "nestpow/families.hpp"
#include "nestpow/parse.hpp"
#include "nestpow/pipeline.hpp"
#include "nestpow/render.hpp"

namespace nestpow {

namespace {

constexpr int kUsageError = 1;
constexpr int kInputError = 2;

const std::map<std::string, ArgZero> kArgZeroNames{{"zero", ArgZero::Zero}, {"undefined", ArgZero::Undefined}};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<double> parse_double(std::string_view text) {
  if (text.empty()) return std::nullopt;
  const std::string s(text);
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(s.c_str(), &end);
  if (errno != 0 || end != s.c_str() + s.size()) return std::nullopt;
  return value;
}

std::optional<double> parse_imaginary(std::string_view text) {
  // text ends in 'i'; the coefficient may be empty or a bare sign.
  const std::string_view coefficient = text.substr(0, text.size() - 1);
  if (coefficient.empty() || coefficient == "+") return 1.0;
  if (coefficient == "-") return -1.0;
  return parse_double(coefficient);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string pad(const std::string& s, std::size_t width) {
  return s + std::string(width > s.size() ? width - s.size() : 0, ' ');
}

std::string rstrip(std::string s) {
  s.erase(s.find_last_not_of(' ') + 1);
  return s;
}

// Aligned columns separated by two spaces.
void print_aligned(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    widths.resize(std::max(widths.size(), row.size()));
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) line += pad(row[c], widths[c] + 2);
    out << rstrip(line) << '\n';
  }
}

std::string row_label(int m) { return "w^" + std::to_string(m); }

std::string column_label(int family, int n) {
  const Rational r = Rational(n) + (family == 1 ? Rational(2, 3) : Rational(1, 2));
  return std::string(family == 1 ? "(w^2)^(" : "(w^-2)^(") + r.to_string() + ")";
}

FormLevel form_level(int form) {
  if (form < 1 || form > 4) throw UsageError("--form must be 1, 2, 3 or 4");
  return static_cast<FormLevel>(form);
}

Format expr_format(const std::string& name) {
  if (name == "text") return Format::Text;
  if (name == "latex") return Format::Latex;
  if (name == "json") return Format::Json;
  throw UsageError("unknown format '" + name + "'");
}

Bindings parse_bindings(const std::string& spec) {
  Bindings bindings;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("binding '" + item + "' is not NAME=COMPLEX");
    const auto z = parse_complex(std::string_view(item).substr(eq + 1));
    if (!z) throw UsageError("malformed complex number in '" + item + "'");
    bindings[item.substr(0, eq)] = *z;
  }
  return bindings;
}

void print_table(std::ostream& out, int family, const FamilyGrid& grid, const std::string& format) {
  const GridBounds& b = kTableBounds;
  if (format == "text") {
    std::vector<std::vector<std::string>> rows{{""}};
    for (int n = b.min_n; n <= b.max_n; ++n) rows[0].push_back(column_label(family, n));
    for (int m = b.min_m; m <= b.max_m; ++m) {
      std::vector<std::string> row{row_label(m)};
      for (int n = b.min_n; n <= b.max_n; ++n) row.push_back(to_text(grid.at(m, n)));
      rows.push_back(std::move(row));
    }
    print_aligned(out, rows);
  } else if (format == "csv") {
    out << "m";
    for (int n = b.min_n; n <= b.max_n; ++n) out << ',' << csv_field(column_label(family, n));
    out << '\n';
    for (int m = b.min_m; m <= b.max_m; ++m) {
      out << m;
      for (int n = b.min_n; n <= b.max_n; ++n) out << ',' << csv_field(to_text(grid.at(m, n)));
      out << '\n';
    }
  } else if (format == "cells") {
    out << "family,m,n,result\n";
    for (int m = b.min_m; m <= b.max_m; ++m) {
      for (int n = b.min_n; n <= b.max_n; ++n) {
        out << family << ',' << m << ',' << n << ',' << csv_field(to_text(grid.at(m, n))) << '\n';
      }
    }
  } else if (format == "md") {
    out << "| |";
    for (int n = b.min_n; n <= b.max_n; ++n) out << " `" << column_label(family, n) << "` |";
    out << "\n|---|";
    for (int n = b.min_n; n <= b.max_n; ++n) out << "---|";
    out << '\n';
    for (int m = b.min_m; m <= b.max_m; ++m) {
      out << "| `" << row_label(m) << "` |";
      for (int n = b.min_n; n <= b.max_n; ++n) out << " `" << to_text(grid.at(m, n)) << "` |";
      out << '\n';
    }
  } else if (format == "latex") {
    out << "\\begin{tabular}{c|" << std::string(static_cast<std::size_t>(b.columns()), 'c') << "}\n";
    for (int n = b.min_n; n <= b.max_n; ++n) {
      out << " & $" << to_latex(pow(pow(symbol("w"), integer(family == 1 ? 2 : -2)),
                                    number(Rational(n) + (family == 1 ? Rational(2, 3) : Rational(1, 2)))))
          << '$';
    }
    out << " \\\\\n\\hline\n";
    for (int m = b.min_m; m <= b.max_m; ++m) {
      out << "$" << to_latex(pow(symbol("w"), integer(m))) << "$";
      for (int n = b.min_n; n <= b.max_n; ++n) out << " & $" << to_latex(grid.at(m, n)) << '$';
      out << " \\\\\n";
    }
    out << "\\end{tabular}\n";
  } else if (format == "json") {
    out << "{\"family\":" << family << ",\"rows\":[";
    for (int m = b.min_m; m <= b.max_m; ++m) {
      out << (m == b.min_m ? "" : ",") << "{\"m\":" << m << ",\"cells\":[";
      for (int n = b.min_n; n <= b.max_n; ++n) {
        out << (n == b.min_n ? "" : ",") << "{\"n\":" << n << ",\"result\":" << to_json(grid.at(m, n)) << '}';
      }
      out << "]}";
    }
    out << "]}\n";
  } else {
    throw UsageError("unknown table format '" + format + "'");
  }
}

std::string percent(double p) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << p << '%';
  return os.str();
}

void print_flaws(std::ostream& out, const FlawSet& flaws) {
  if (flaws.empty()) {
    out << "flaws: none\n";
    return;
  }
  out << "flaws: " << flaws.to_string() << '\n';
  for (const auto& [goal, evidence] : flaws.flags()) out << "  goal " << goal << ": " << evidence << '\n';
}

void print_table_audit(std::ostream& out, const TableAudit& audit, const std::string& format) {
  const std::set<int> goals = assessable_goals(audit.mode);
  if (format == "csv") {
    out << "m,n,flaws\n";
    for (const auto& [cell, flaws] : audit.cells) {
      std::string list = flaws.to_string();
      std::replace(list.begin(), list.end(), ',', ';');
      out << cell.first << ',' << cell.second << ',' << list << '\n';
    }
    out << "\ngoal,percent\n";
    for (int g = 1; g <= kGoalCount; ++g) {
      out << g << ',';
      if (goals.contains(g)) {
        out << std::fixed << std::setprecision(1) << audit.percentage(g);
      } else {
        out << "n/a";
      }
      out << '\n';
    }
    return;
  }
  if (format != "text") throw UsageError("unknown audit format '" + format + "'");
  const GridBounds& b = kTableBounds;
  std::vector<std::vector<std::string>> rows{{""}};
  for (int n = b.min_n; n <= b.max_n; ++n) rows[0].push_back(column_label(audit.family, n));
  for (int m = b.min_m; m <= b.max_m; ++m) {
    std::vector<std::string> row{row_label(m)};
    for (int n = b.min_n; n <= b.max_n; ++n) {
      auto it = audit.cells.find({m, n});
      if (it == audit.cells.end()) {
        row.emplace_back(".");
      } else {
        row.push_back(it->second.empty() ? "-" : it->second.to_string());
      }
    }
    rows.push_back(std::move(row));
  }
  print_aligned(out, rows);
  out << '\n';
  for (int g = 1; g <= kGoalCount; ++g) {
    out << "goal " << g << ": " << (goals.contains(g) ? percent(audit.percentage(g)) : "not assessable") << '\n';
  }
}

Expr read_expr(const std::string& text) { return parse(text); }

}  // namespace

std::optional<Complex> parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  if (s.empty()) return std::nullopt;
  if (s.back() != 'i') {
    auto re = parse_double(s);
    if (!re) return std::nullopt;
    return Complex(*re, 0.0);
  }
  // Split at the last sign that is not leading and not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size() - 1; k > 0; --k) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {
    auto im = parse_imaginary(s);
    if (!im) return std::nullopt;
    return Complex(0.0, *im);
  }
  auto re = parse_double(std::string_view(s).substr(0, split));
  auto im = parse_imaginary(std::string_view(s).substr(split));
  if (!re || !im) return std::nullopt;
  return Complex(*re, *im);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Canonical simplification of nested power products"};
  app.name("nestpow");
  app.require_subcommand(1);

  std::string expr_text;
  std::string result_text;
  std::string file;
  std::string format = "text";
  std::string bindings_text;
  std::vector<std::string> equivalents;
  int form = 3;
  int family = 1;
  bool internal = false;
  std::string arg0_name = "zero";

  auto add_arg0 = [&](CLI::App* cmd) {
    cmd->add_option("--arg0", arg0_name, "value of arg(0): zero or undefined")
        ->check(CLI::IsMember({"zero", "undefined"}));
  };

  CLI::App* simplify_cmd = app.add_subcommand("simplify", "simplify an expression");
  simplify_cmd->add_option("expr", expr_text)->required();
  simplify_cmd->add_option("--form", form, "target form 1-4");
  simplify_cmd->add_option("--format", format, "text, latex or json");
  add_arg0(simplify_cmd);

  CLI::App* table_cmd = app.add_subcommand("table", "simplify a test family grid");
  table_cmd->add_option("--family", family)->required();
  table_cmd->add_option("--form", form, "target form 1-4");
  table_cmd->add_option("--format", format, "text, csv, md, json, latex or cells");
  add_arg0(table_cmd);

  CLI::App* audit_cmd = app.add_subcommand("audit", "audit one result against its input");
  audit_cmd->add_option("input", expr_text)->required();
  audit_cmd->add_option("result", result_text)->required();
  audit_cmd->add_option("--equiv", equivalents, "equivalent results competing for goal 6");

  CLI::App* audit_table_cmd = app.add_subcommand("audit-table", "audit a family grid");
  audit_table_cmd->add_option("file", file, "CSV with header family,m,n,result");
  audit_table_cmd->add_option("--family", family)->required();
  audit_table_cmd->add_flag("--internal", internal, "also assess goals 2 and 7 with this pipeline");
  audit_table_cmd->add_option("--format", format, "text or csv");

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate numerically on the principal branch");
  eval_cmd->add_option("expr", expr_text)->required();
  eval_cmd->add_option("--at", bindings_text, "NAME=COMPLEX,...");
  add_arg0(eval_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsageError;
  }
  const ArgZero arg0 = kArgZeroNames.at(arg0_name);

  try {
    if (simplify_cmd->parsed()) {
      const Expr result = simplify(read_expr(expr_text), {form_level(form), arg0});
      out << render(result, expr_format(format)) << '\n';
    } else if (table_cmd->parsed()) {
      require_family(family);
      print_table(out, family, family_grid(family, {form_level(form), arg0}), format);
    } else if (audit_cmd->parsed()) {
      const Expr input = parse(expr_text);
      const Expr result = parse(result_text, BuildMode::Verbatim);
      const bool alpha_zero = [&] {
        auto split = split_product(input);
        return split.groups.size() == 1 && split.groups.front().alpha.is_zero();
      }();
      FlawSet flaws = structural_flaws(input, result, alpha_zero);
      if (!equivalents.empty()) {
        const Pipeline pipeline = default_pipeline();
        std::vector<Candidate> members{{result, flaws}};
        for (const auto& text : equivalents) {
          const Expr e = parse(text, BuildMode::Verbatim);
          members.push_back({e, structural_flaws(input, e, alpha_zero)});
        }
        if (auto e = check_goal6(result, members, pipeline(input))) flaws.set(6, *e);
      }
      print_flaws(out, flaws);
    } else if (audit_table_cmd->parsed()) {
      require_family(family);
      ResultTable table;
      if (file.empty()) {
        if (!internal) throw UsageError("audit-table needs a FILE unless --internal is given");
        table = to_result_table(family_grid(family));
      } else {
        std::ifstream in(file);
        if (!in) throw UsageError("cannot open '" + file + "'");
        table = read_result_csv(in, family);
      }
      print_table_audit(out, audit_table(table, family, internal ? AuditMode::Internal : AuditMode::External),
                        format);
    } else if (eval_cmd->parsed()) {
      const Expr e = parse(expr_text, BuildMode::Verbatim);
      const Bindings bindings = bindings_text.empty() ? Bindings{} : parse_bindings(bindings_text);
      out << to_string(evaluate(e, bindings, arg0)) << '\n';
    }
  } catch (const ParseError& e) {
    err << "parse error at position " << e.position() << ": " << e.what() << '\n';
    return kInputError;
  } catch (const UnboundSymbol& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const TableFormatError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return 0;
}

}  // namespace nestpow
