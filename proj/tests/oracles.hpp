#pragma once

// Test-only reference computations. Nothing here calls the simplex solver.

#include "boxcert/lp.hpp"

#include <optional>
#include <vector>

namespace oracle {

using boxcert::Rational;

/// Solves a square system exactly by Gauss-Jordan; nullopt when singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    const Rational inv = Rational(1) / a[c][c];
    for (auto& v : a[c]) v *= inv;
    b[c] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const Rational f = a[r][c];
      for (std::size_t k = 0; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  return b;
}

/// max c.x over {A x <= b, 0 <= x <= u} by enumerating every basic point.
/// Returns nullopt when infeasible. Bounded by construction.
inline std::optional<Rational> brute_force_max(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                                               const std::vector<Rational>& u, const std::vector<Rational>& c) {
  const std::size_t n = c.size();
  // Every half-space as (row, rhs) in "row . x <= rhs" form.
  std::vector<std::vector<Rational>> rows = A;
  std::vector<Rational> rhs = b;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> lo(n), hi(n);
    lo[j] = -1;
    hi[j] = 1;
    rows.push_back(lo);
    rhs.push_back(0);
    rows.push_back(hi);
    rhs.push_back(u[j]);
  }
  const std::size_t m = rows.size();
  std::optional<Rational> best;
  std::vector<std::size_t> pick(n);
  // Enumerate n-subsets of half-spaces.
  std::vector<bool> sel(m, false);
  std::fill(sel.begin(), sel.begin() + static_cast<std::ptrdiff_t>(n), true);
  do {
    std::vector<std::vector<Rational>> sa;
    std::vector<Rational> sb;
    for (std::size_t i = 0; i < m; ++i)
      if (sel[i]) {
        sa.push_back(rows[i]);
        sb.push_back(rhs[i]);
      }
    auto x = solve_square(sa, sb);
    if (!x) continue;
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      Rational lhs;
      for (std::size_t j = 0; j < n; ++j) lhs += rows[i][j] * (*x)[j];
      ok = lhs <= rhs[i];
    }
    if (!ok) continue;
    Rational val;
    for (std::size_t j = 0; j < n; ++j) val += c[j] * (*x)[j];
    if (!best || val > *best) best = val;
  } while (std::prev_permutation(sel.begin(), sel.end()));
  return best;
}

}  // namespace oracle
