#include "nestpow/families.hpp"

#include <stdexcept>
#include <string>

namespace nestpow {

void require_family(int family) {
  if (family != 1 && family != 2) {
    throw std::invalid_argument("family must be 1 or 2, got " + std::to_string(family));
  }
}

Expr family_input(int family, int m, int n) {
  require_family(family);
  const Expr w = symbol("w");
  const Expr inner = pow(w, integer(family == 1 ? 2 : -2));
  const Rational outer = Rational(n) + (family == 1 ? Rational(2, 3) : Rational(1, 2));
  return mul({pow(w, integer(m)), pow(inner, number(outer))});
}

int class_step(int family) {
  require_family(family);
  return family == 1 ? -1 : 1;
}

std::vector<std::pair<int, int>> equivalence_class(int family, int m, int n, const GridBounds& bounds) {
  const int step = class_step(family);
  // Walk down to the first member inside the bounds, then collect upwards.
  int k = 0;
  while (bounds.contains(m + 2 * (k - 1), n + step * (k - 1))) --k;
  std::vector<std::pair<int, int>> members;
  for (; bounds.contains(m + 2 * k, n + step * k); ++k) members.emplace_back(m + 2 * k, n + step * k);
  return members;
}

FamilyGrid::FamilyGrid(int family)
    : family_(family), cells_(static_cast<std::size_t>(kTableBounds.rows() * kTableBounds.columns())) {
  require_family(family);
}

std::size_t FamilyGrid::index(int m, int n) const {
  if (!kTableBounds.contains(m, n)) {
    throw std::out_of_range("cell (" + std::to_string(m) + ", " + std::to_string(n) + ") outside the table");
  }
  return static_cast<std::size_t>((m - kTableBounds.min_m) * kTableBounds.columns() + (n - kTableBounds.min_n));
}

const Expr& FamilyGrid::at(int m, int n) const { return cells_[index(m, n)]; }

void FamilyGrid::set(int m, int n, Expr value) { cells_[index(m, n)] = std::move(value); }

FamilyGrid family_grid(int family, const SimplifyOptions& options) {
  FamilyGrid grid(family);
  for (int m = kTableBounds.min_m; m <= kTableBounds.max_m; ++m) {
    for (int n = kTableBounds.min_n; n <= kTableBounds.max_n; ++n) {
      grid.set(m, n, simplify(family_input(family, m, n), options));
    }
  }
  return grid;
}

}  // namespace nestpow
