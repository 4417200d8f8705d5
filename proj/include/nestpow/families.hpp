#pragma once

#include <utility>
#include <vector>

#include "nestpow/expr.hpp"
#include "nestpow/pipeline.hpp"

namespace nestpow {

// Family 1: w^m (w^2)^(n + 2/3).  Family 2: w^m (w^-2)^(n + 1/2).
Expr family_input(int family, int m, int n);

// Throws std::invalid_argument unless family is 1 or 2.
void require_family(int family);

// Offset in n when m grows by 2 within one equivalence class.
int class_step(int family);

struct GridBounds {
  int min_m;
  int max_m;
  int min_n;
  int max_n;

  bool contains(int m, int n) const { return m >= min_m && m <= max_m && n >= min_n && n <= max_n; }
  int rows() const { return max_m - min_m + 1; }
  int columns() const { return max_n - min_n + 1; }
};

inline constexpr GridBounds kTableBounds{-3, 3, -3, 2};
// The displayed grid plus two rows and one column on every side.
inline constexpr GridBounds kExtendedBounds{-5, 5, -4, 3};

// Cells (m + 2k, n + step*k) inside the bounds, including (m, n) itself.
std::vector<std::pair<int, int>> equivalence_class(int family, int m, int n,
                                                   const GridBounds& bounds = kExtendedBounds);

// Results indexed by (m, n) over kTableBounds.
class FamilyGrid {
 public:
  explicit FamilyGrid(int family);

  int family() const { return family_; }
  const Expr& at(int m, int n) const;
  void set(int m, int n, Expr value);

 private:
  std::size_t index(int m, int n) const;

  int family_;
  std::vector<Expr> cells_;
};

FamilyGrid family_grid(int family, const SimplifyOptions& options = {});

}  // namespace nestpow
