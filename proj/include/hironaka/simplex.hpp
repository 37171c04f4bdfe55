#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hironaka/scalar.hpp"

namespace hironaka::lp {

// Dense equality system A x = b over exact rationals.
struct EqualitySystem {
  std::size_t num_vars = 0;
  std::vector<std::vector<Rational>> rows;  // each of length num_vars
  std::vector<Rational> rhs;
};

// Phase-one simplex with Bland's rule: decides whether {x >= 0 : A x = b} is
// nonempty. Exact, so the answer is never subject to round-off. Returns a
// feasible point when one exists.
inline std::optional<std::vector<Rational>> find_feasible_point(const EqualitySystem& sys) {
  const std::size_t m = sys.rows.size();
  const std::size_t n = sys.num_vars;
  const std::size_t cols = n + m;  // originals then one artificial per row

  std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(cols + 1));
  for (std::size_t r = 0; r < m; ++r) {
    const bool flip = sys.rhs[r] < 0;
    for (std::size_t c = 0; c < n; ++c) tab[r][c] = flip ? Rational(-sys.rows[r][c]) : sys.rows[r][c];
    tab[r][n + r] = 1;
    tab[r][cols] = flip ? Rational(-sys.rhs[r]) : sys.rhs[r];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) basis[r] = n + r;

  // Reduced costs of the phase-one objective (sum of artificials).
  std::vector<Rational> cost(cols + 1);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < m; ++r) cost[c] -= tab[r][c];
  }
  for (std::size_t r = 0; r < m; ++r) cost[cols] -= tab[r][cols];

  for (;;) {
    std::size_t enter = cols;
    for (std::size_t c = 0; c < cols; ++c) {
      if (cost[c] < 0) {
        enter = c;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = m;
    Rational best_ratio;
    for (std::size_t r = 0; r < m; ++r) {
      if (tab[r][enter] <= 0) continue;
      Rational ratio = tab[r][cols] / tab[r][enter];
      if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = std::move(ratio);
      }
    }
    // Phase one is bounded below by zero, so an entering column always has a
    // positive entry.
    if (leave == m) break;

    const Rational pivot = tab[leave][enter];
    for (auto& v : tab[leave]) v /= pivot;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave || tab[r][enter] == 0) continue;
      const Rational factor = tab[r][enter];
      for (std::size_t c = 0; c <= cols; ++c) {
        if (tab[leave][c] != 0) tab[r][c] -= factor * tab[leave][c];
      }
    }
    if (cost[enter] != 0) {
      const Rational factor = cost[enter];
      for (std::size_t c = 0; c <= cols; ++c) {
        if (tab[leave][c] != 0) cost[c] -= factor * tab[leave][c];
      }
    }
    basis[leave] = enter;
  }

  // Optimal phase-one value is -cost[cols]; feasible iff it is zero.
  if (cost[cols] != 0) return std::nullopt;
  std::vector<Rational> x(n);
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n) x[basis[r]] = tab[r][cols];
  }
  return x;
}

}  // namespace hironaka::lp
