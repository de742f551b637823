/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#ifndef EXMIP_TESTS_LP_VERTEX_ORACLE_HPP
#define EXMIP_TESTS_LP_VERTEX_ORACLE_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "exmip/model.hpp"

namespace exmip::testing {

struct VertexOracleResult {
  bool feasible = false;
  Rational objective;  // excludes obj_constant
  std::vector<Rational> x;
};

namespace detail {

/// Plain Gaussian elimination, written independently of the solver's
/// numerics so the oracle stays a second route.
inline std::optional<std::vector<Rational>> solve_square(
    std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const int k = static_cast<int>(b.size());
  for (int col = 0; col < k; ++col) {
    int piv = -1;
    for (int row = col; row < k; ++row) {
      if (!a[row][col].is_zero()) {
        piv = row;
        break;
      }
    }
    if (piv < 0) return std::nullopt;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (int row = col + 1; row < k; ++row) {
      if (a[row][col].is_zero()) continue;
      const Rational f = a[row][col] / a[col][col];
      for (int c2 = col; c2 < k; ++c2) a[row][c2] -= f * a[col][c2];
      b[row] -= f * b[col];
    }
  }
  std::vector<Rational> x(k);
  for (int row = k - 1; row >= 0; --row) {
    Rational s = b[row];
    for (int c2 = row + 1; c2 < k; ++c2) s -= a[row][c2] * x[c2];
    x[row] = s / a[row][row];
  }
  return x;
}

}  // namespace detail

/// Exact LP oracle by enumeration of all candidate vertices: every choice of
/// variables fixed at a bound plus active rows totaling n constraints.
/// Requires finite bounds on every column (polytope), so feasibility implies
/// an optimal vertex exists.
inline VertexOracleResult lp_vertex_oracle(const RationalMIP& model,
                                           const std::vector<ExtendedRational>* lb_in = nullptr,
                                           const std::vector<ExtendedRational>* ub_in = nullptr) {
  const int n = model.n, m = model.m;
  const std::vector<ExtendedRational>& lb = lb_in ? *lb_in : model.lb;
  const std::vector<ExtendedRational>& ub = ub_in ? *ub_in : model.ub;
  for (int j = 0; j < n; ++j) {
    if (!lb[j].is_finite() || !ub[j].is_finite()) {
      throw std::invalid_argument("vertex oracle needs finite bounds");
    }
  }

  VertexOracleResult best;
  std::vector<int> fix_side(n, -1);  // -1 free, 0 lower, 1 upper

  const auto evaluate = [&](const std::vector<int>& active_rows) {
    std::vector<int> free_cols;
    for (int j = 0; j < n; ++j) {
      if (fix_side[j] < 0) free_cols.push_back(j);
    }
    const int k = static_cast<int>(free_cols.size());
    if (static_cast<int>(active_rows.size()) != k) return;
    std::vector<Rational> x(n);
    for (int j = 0; j < n; ++j) {
      if (fix_side[j] == 0) x[j] = lb[j].value();
      if (fix_side[j] == 1) x[j] = ub[j].value();
    }
    if (k > 0) {
      std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k));
      std::vector<Rational> b(k);
      for (int r = 0; r < k; ++r) {
        const SparseVec& row = model.rows[active_rows[r]];
        Rational rhs = model.rhs[active_rows[r]];
        for (size_t t = 0; t < row.size(); ++t) {
          const int j = row.idx[t];
          if (fix_side[j] >= 0) {
            rhs -= row.val[t] * x[j];
          } else {
            const auto pos = std::lower_bound(free_cols.begin(),
                                              free_cols.end(), j) -
                             free_cols.begin();
            a[r][pos] = row.val[t];
          }
        }
        b[r] = rhs;
      }
      const auto sol = detail::solve_square(std::move(a), std::move(b));
      if (!sol) return;
      for (int r = 0; r < k; ++r) x[free_cols[r]] = (*sol)[r];
    }
    // Full feasibility check.
    for (int j = 0; j < n; ++j) {
      if (x[j] < lb[j].value() || x[j] > ub[j].value()) return;
    }
    for (int i = 0; i < m; ++i) {
      if (!model.row_satisfied(i, model.activity(i, x))) return;
    }
    Rational z;
    for (int j = 0; j < n; ++j) z += model.obj[j] * x[j];
    if (!best.feasible || z < best.objective) {
      best.feasible = true;
      best.objective = z;
      best.x = x;
    }
  };

  // Choose active rows among all rows for the current bound fixing.
  std::vector<int> active_rows;
  const auto enum_rows = [&](auto&& self, int start, int needed) -> void {
    if (needed == 0) {
      evaluate(active_rows);
      return;
    }
    if (m - start < needed) return;
    for (int i = start; i < m; ++i) {
      active_rows.push_back(i);
      self(self, i + 1, needed - 1);
      active_rows.pop_back();
    }
  };

  const auto enum_fixings = [&](auto&& self, int j, int free_count) -> void {
    if (j == n) {
      if (free_count <= m) enum_rows(enum_rows, 0, free_count);
      return;
    }
    fix_side[j] = -1;
    self(self, j + 1, free_count + 1);
    fix_side[j] = 0;
    self(self, j + 1, free_count);
    if (!(ub[j].value() == lb[j].value())) {
      fix_side[j] = 1;
      self(self, j + 1, free_count);
    }
    fix_side[j] = -1;
  };

  enum_fixings(enum_fixings, 0, 0);
  return best;
}

}  // namespace exmip::testing

#endif  // EXMIP_TESTS_LP_VERTEX_ORACLE_HPP
