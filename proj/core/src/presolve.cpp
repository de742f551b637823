/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#include "exmip/presolve.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace exmip {

namespace {

void remove_entry(SparseVec& v, int col) {
  const auto it = std::lower_bound(v.idx.begin(), v.idx.end(), col);
  if (it == v.idx.end() || *it != col) return;
  const size_t k = static_cast<size_t>(it - v.idx.begin());
  v.idx.erase(it);
  v.val.erase(v.val.begin() + k);
}

void set_entry(SparseVec& v, int col, const Rational& value) {
  const auto it = std::lower_bound(v.idx.begin(), v.idx.end(), col);
  if (it != v.idx.end() && *it == col) {
    const size_t k = static_cast<size_t>(it - v.idx.begin());
    if (value.is_zero()) {
      v.idx.erase(it);
      v.val.erase(v.val.begin() + k);
    } else {
      v.val[k] = value;
    }
    return;
  }
  if (value.is_zero()) return;
  const size_t k = static_cast<size_t>(it - v.idx.begin());
  v.idx.insert(it, col);
  v.val.insert(v.val.begin() + k, value);
}

/// Mutable presolve state over the original index space; rows and columns
/// are masked out rather than compacted until the end.
struct Work {
  RationalMIP m;
  std::vector<uint8_t> col_alive, row_alive;
  std::vector<Reduction> reds;
  PresolveStats stats;
  long round_changes = 0;
  std::optional<InfeasibilityWitness> witness;

  explicit Work(const RationalMIP& model)
      : m(model),
        col_alive(static_cast<size_t>(model.n), 1),
        row_alive(static_cast<size_t>(model.m), 1) {}

  bool infeasible() const { return witness.has_value(); }

  std::vector<std::vector<int>> column_rows() const {
    std::vector<std::vector<int>> cols(static_cast<size_t>(m.n));
    for (int i = 0; i < m.m; ++i) {
      if (!row_alive[i]) continue;
      for (const int j : m.rows[i].idx) cols[j].push_back(i);
    }
    return cols;
  }

  void mark_col_infeasible(int col) {
    InfeasibilityWitness w{InfeasibilityWitness::Kind::EmptyColumnDomain, col,
                           Rational(), Rational()};
    if (m.lb[col].is_finite()) w.lo = m.lb[col].value();
    if (m.ub[col].is_finite()) w.hi = m.ub[col].value();
    witness = w;
  }

  void delete_row(int row) {
    row_alive[row] = 0;
    Reduction r;
    r.kind = ReductionKind::DeleteRow;
    r.row = row;
    reds.push_back(std::move(r));
    ++stats.rows_deleted;
    ++round_changes;
  }

  /// Substitutes a known value into every row and the objective, then
  /// removes the column.
  void fix_col(int col, const Rational& value) {
    for (int i = 0; i < m.m; ++i) {
      if (!row_alive[i]) continue;
      const Rational a = m.rows[i].at(col);
      if (a.is_zero()) continue;
      m.rhs[i] -= a * value;
      remove_entry(m.rows[i], col);
    }
    m.obj_constant += m.obj[col] * value;
    m.obj[col] = Rational();
    col_alive[col] = 0;
    Reduction r;
    r.kind = ReductionKind::Fix;
    r.col = col;
    r.value = value;
    reds.push_back(std::move(r));
    ++stats.fixed;
    ++round_changes;
  }

  /// Tightens one side of a column's bounds; returns true on change.
  bool change_bound(int col, bool lower, const Rational& value) {
    if (lower) {
      if (m.lb[col].is_finite() && !(value > m.lb[col].value())) return false;
      m.lb[col] = value;
    } else {
      if (m.ub[col].is_finite() && !(value < m.ub[col].value())) return false;
      m.ub[col] = value;
    }
    Reduction r;
    r.kind = ReductionKind::BoundChange;
    r.col = col;
    r.lower = lower;
    r.value = value;
    reds.push_back(std::move(r));
    ++stats.bound_changes;
    ++round_changes;
    if (m.lb[col].is_finite() && m.ub[col].is_finite() &&
        m.lb[col].value() > m.ub[col].value()) {
      mark_col_infeasible(col);
    }
    return true;
  }

  /// Rows whose support emptied: constant sense rhs, either trivially
  /// satisfied (delete) or an infeasibility witness.
  void cleanup_empty_rows() {
    for (int i = 0; i < m.m && !infeasible(); ++i) {
      if (!row_alive[i] || !m.rows[i].idx.empty()) continue;
      const bool ok = m.row_satisfied(i, Rational());
      if (ok) {
        delete_row(i);
      } else {
        witness = InfeasibilityWitness{
            InfeasibilityWitness::Kind::UnsatisfiableRow, i, m.rhs[i],
            Rational()};
      }
    }
  }

  /// Columns pinched to a point become fixes.
  void cleanup_fixed_cols() {
    for (int j = 0; j < m.n && !infeasible(); ++j) {
      if (!col_alive[j]) continue;
      if (m.lb[j].is_finite() && m.ub[j].is_finite() &&
          m.lb[j].value() == m.ub[j].value()) {
        fix_col(j, m.lb[j].value());
      }
    }
  }
};

/// Row activity bounds over the current box; finite flags go false when any
/// involved bound is infinite.
struct ActivityBounds {
  Rational min_act, max_act;
  bool min_finite = true, max_finite = true;
  int min_infinite_count = 0, max_infinite_count = 0;
  // Contribution of column j removed from the min/max activity; only valid
  // when at most that column's contribution is infinite.
};

ActivityBounds activity_bounds(const RationalMIP& m, int row) {
  ActivityBounds b;
  const SparseVec& r = m.rows[row];
  for (size_t k = 0; k < r.size(); ++k) {
    const int j = r.idx[k];
    const Rational& a = r.val[k];
    const ExtendedRational& lo = a.sign() > 0 ? m.lb[j] : m.ub[j];
    const ExtendedRational& hi = a.sign() > 0 ? m.ub[j] : m.lb[j];
    if (lo.is_finite()) {
      b.min_act += a * lo.value();
    } else {
      b.min_finite = false;
      ++b.min_infinite_count;
    }
    if (hi.is_finite()) {
      b.max_act += a * hi.value();
    } else {
      b.max_finite = false;
      ++b.max_infinite_count;
    }
  }
  return b;
}

void propagate_row(const RationalMIP& m, int row,
                   const std::function<void(int, bool, Rational)>& tighten) {
  const SparseVec& r = m.rows[row];
  const RowSense sense = m.sense[row];
  const ActivityBounds b = activity_bounds(m, row);

  // a_j x_j >= rhs - maxact_without_j  (for G- and E-rows)
  // a_j x_j <= rhs - minact_without_j  (for L- and E-rows)
  for (size_t k = 0; k < r.size(); ++k) {
    const int j = r.idx[k];
    const Rational& a = r.val[k];
    const bool pos = a.sign() > 0;
    if (sense != RowSense::LessEqual) {
      // Need maxact of the rest finite.
      const ExtendedRational& own_hi = pos ? m.ub[j] : m.lb[j];
      bool rest_finite = false;
      Rational rest;
      if (b.max_finite) {
        rest_finite = true;
        rest = b.max_act - (pos ? a * own_hi.value() : a * own_hi.value());
      } else if (b.max_infinite_count == 1 && !own_hi.is_finite()) {
        rest_finite = true;
        rest = b.max_act;
      }
      if (rest_finite) {
        const Rational target = (m.rhs[row] - rest) / a;
        if (pos) {
          Rational t = m.integer[j] ? target.ceil() : target;
          tighten(j, true, std::move(t));
        } else {
          Rational t = m.integer[j] ? target.floor() : target;
          tighten(j, false, std::move(t));
        }
      }
    }
    if (sense != RowSense::GreaterEqual) {
      const ExtendedRational& own_lo = pos ? m.lb[j] : m.ub[j];
      bool rest_finite = false;
      Rational rest;
      if (b.min_finite) {
        rest_finite = true;
        rest = b.min_act - a * own_lo.value();
      } else if (b.min_infinite_count == 1 && !own_lo.is_finite()) {
        rest_finite = true;
        rest = b.min_act;
      }
      if (rest_finite) {
        const Rational target = (m.rhs[row] - rest) / a;
        if (pos) {
          Rational t = m.integer[j] ? target.floor() : target;
          tighten(j, false, std::move(t));
        } else {
          Rational t = m.integer[j] ? target.ceil() : target;
          tighten(j, true, std::move(t));
        }
      }
    }
  }
}

void run_propagation(Work& w) {
  for (int i = 0; i < w.m.m && !w.infeasible(); ++i) {
    if (!w.row_alive[i]) continue;
    propagate_row(w.m, i, [&](int col, bool lower, Rational v) {
      if (w.infeasible()) return;
      w.change_bound(col, lower, v);
    });
  }
}

/// Coefficient strengthening on an L-view of a row: sigma = +1 for L-rows,
/// -1 for G-rows (which are negated into L-form).
void run_coefficient_strengthening(Work& w) {
  for (int i = 0; i < w.m.m && !w.infeasible(); ++i) {
    if (!w.row_alive[i]) continue;
    if (w.m.sense[i] == RowSense::Equal) continue;
    const Rational sigma =
        w.m.sense[i] == RowSense::LessEqual ? Rational(1) : Rational(-1);
    bool changed = true;
    while (changed && !w.infeasible()) {
      changed = false;
      const SparseVec row = w.m.rows[i];  // snapshot
      const Rational b = sigma * w.m.rhs[i];
      for (size_t k = 0; k < row.size(); ++k) {
        const int j = row.idx[k];
        if (!w.m.integer[j]) continue;
        const Rational a = sigma * row.val[k];
        // maxact of the rest in the L-view.
        bool rest_finite = true;
        Rational rest;
        for (size_t t = 0; t < row.size() && rest_finite; ++t) {
          if (t == k) continue;
          const int jt = row.idx[t];
          const Rational at = sigma * row.val[t];
          const ExtendedRational& hi = at.sign() > 0 ? w.m.ub[jt] : w.m.lb[jt];
          if (!hi.is_finite()) {
            rest_finite = false;
          } else {
            rest += at * hi.value();
          }
        }
        if (!rest_finite) continue;
        Rational delta, new_coef, new_rhs;
        if (a.sign() > 0) {
          if (!w.m.ub[j].is_finite()) continue;
          const Rational& u = w.m.ub[j].value();
          delta = b - rest - a * (u - Rational(1));
          if (delta.sign() <= 0 || delta > a) continue;
          new_coef = a - delta;
          new_rhs = b - delta * u;
        } else {
          if (!w.m.lb[j].is_finite()) continue;
          const Rational& l = w.m.lb[j].value();
          delta = b - rest + a * (l + Rational(1));
          if (delta.sign() <= 0 || delta > -a) continue;
          new_coef = a + delta;
          new_rhs = b + delta * l;
        }
        Reduction red;
        red.kind = ReductionKind::StrengthenCoef;
        red.row = i;
        red.col = j;
        red.coef = sigma * new_coef;
        red.value = row.val[k];
        red.expr_rhs = sigma * new_rhs;
        set_entry(w.m.rows[i], j, sigma * new_coef);
        w.m.rhs[i] = sigma * new_rhs;
        w.reds.push_back(std::move(red));
        ++w.stats.coef_strengthened;
        ++w.round_changes;
        changed = true;
        break;  // re-derive activities with the updated row
      }
    }
  }
}

void run_singleton_columns(Work& w) {
  const auto cols = w.column_rows();
  for (int j = 0; j < w.m.n && !w.infeasible(); ++j) {
    if (!w.col_alive[j] || w.m.integer[j]) continue;
    if (cols[j].size() != 1) continue;
    const int i = cols[j][0];
    if (!w.row_alive[i] || w.m.sense[i] != RowSense::Equal) continue;
    const Rational a = w.m.rows[i].at(j);
    if (a.is_zero()) continue;

    // Implied bounds of x_j = (rhs - rest) / a over the rest's range.
    bool lo_finite = true, hi_finite = true;
    Rational rest_min, rest_max;
    const SparseVec& row = w.m.rows[i];
    for (size_t k = 0; k < row.size(); ++k) {
      if (row.idx[k] == j) continue;
      const int jt = row.idx[k];
      const Rational& at = row.val[k];
      const ExtendedRational& lo = at.sign() > 0 ? w.m.lb[jt] : w.m.ub[jt];
      const ExtendedRational& hi = at.sign() > 0 ? w.m.ub[jt] : w.m.lb[jt];
      if (lo.is_finite()) rest_min += at * lo.value(); else lo_finite = false;
      if (hi.is_finite()) rest_max += at * hi.value(); else hi_finite = false;
    }
    // x_j range endpoints (a > 0): [(rhs - rest_max)/a, (rhs - rest_min)/a].
    const bool pos = a.sign() > 0;
    const bool implied_lo_finite = pos ? hi_finite : lo_finite;
    const bool implied_hi_finite = pos ? lo_finite : hi_finite;
    Rational implied_lo, implied_hi;
    if (implied_lo_finite) {
      implied_lo = (w.m.rhs[i] - (pos ? rest_max : rest_min)) / a;
    }
    if (implied_hi_finite) {
      implied_hi = (w.m.rhs[i] - (pos ? rest_min : rest_max)) / a;
    }
    const bool lo_ok = !w.m.lb[j].is_finite() ||
                       (implied_lo_finite && implied_lo >= w.m.lb[j].value());
    const bool hi_ok = !w.m.ub[j].is_finite() ||
                       (implied_hi_finite && implied_hi <= w.m.ub[j].value());
    if (!lo_ok || !hi_ok) continue;

    // Substitute x_j out: the row stops constraining the other columns.
    Reduction red;
    red.kind = ReductionKind::SubstituteRow;
    red.col = j;
    red.row = i;
    red.self_coef = a;
    red.expr_rhs = w.m.rhs[i];
    for (size_t k = 0; k < row.size(); ++k) {
      if (row.idx[k] != j) red.expr.push(row.idx[k], row.val[k]);
    }
    // Objective: c_j * (rhs - rest)/a.
    if (!w.m.obj[j].is_zero()) {
      const Rational f = w.m.obj[j] / a;
      w.m.obj_constant += f * w.m.rhs[i];
      for (size_t k = 0; k < red.expr.size(); ++k) {
        w.m.obj[red.expr.idx[k]] -= f * red.expr.val[k];
      }
      w.m.obj[j] = Rational();
    }
    w.col_alive[j] = 0;
    w.reds.push_back(std::move(red));
    ++w.stats.aggregated;
    ++w.round_changes;
    w.delete_row(i);
  }
}

void run_substitution(Work& w) {
  for (int i = 0; i < w.m.m && !w.infeasible(); ++i) {
    if (!w.row_alive[i] || w.m.sense[i] != RowSense::Equal) continue;
    if (w.m.rows[i].size() != 2) continue;
    const int j0 = w.m.rows[i].idx[0], j1 = w.m.rows[i].idx[1];
    const Rational a0 = w.m.rows[i].val[0], a1 = w.m.rows[i].val[1];
    const Rational& b = w.m.rhs[i];

    // Choose the eliminated column: a continuous one if present (prefer the
    // higher index), otherwise an integer column whose substitution formula
    // stays integral.
    int elim = -1, keep = -1;
    Rational ea, ka;
    const auto integral_ok = [&](int e, const Rational& ae, const Rational& ak) {
      const Rational coef = -(ak / ae);
      const Rational off = b / ae;
      (void)e;
      return coef.is_integer() && off.is_integer();
    };
    if (!w.m.integer[j1]) {
      elim = j1; keep = j0; ea = a1; ka = a0;
    } else if (!w.m.integer[j0]) {
      elim = j0; keep = j1; ea = a0; ka = a1;
    } else if (integral_ok(j1, a1, a0)) {
      elim = j1; keep = j0; ea = a1; ka = a0;
    } else if (integral_ok(j0, a0, a1)) {
      elim = j0; keep = j1; ea = a0; ka = a1;
    } else {
      continue;
    }
    // elim = offset + coef * keep
    const Rational coef = -(ka / ea);
    const Rational offset = b / ea;

    // Transfer the eliminated bounds onto the kept column.
    if (coef.sign() != 0) {
      const auto transfer = [&](const ExtendedRational& bound, bool is_lower) {
        if (!bound.is_finite() || w.infeasible()) return;
        // bound <= offset + coef*keep  (is_lower) and mirrored otherwise.
        Rational t = (bound.value() - offset) / coef;
        const bool tighten_lower = is_lower == (coef.sign() > 0);
        if (w.m.integer[keep]) t = tighten_lower ? t.ceil() : t.floor();
        w.change_bound(keep, tighten_lower, t);
      };
      transfer(w.m.lb[elim], true);
      transfer(w.m.ub[elim], false);
    }
    if (w.infeasible()) return;

    // Substitute into every other row and the objective.
    for (int r2 = 0; r2 < w.m.m; ++r2) {
      if (!w.row_alive[r2] || r2 == i) continue;
      const Rational ae2 = w.m.rows[r2].at(elim);
      if (ae2.is_zero()) continue;
      remove_entry(w.m.rows[r2], elim);
      w.m.rhs[r2] -= ae2 * offset;
      set_entry(w.m.rows[r2], keep, w.m.rows[r2].at(keep) + ae2 * coef);
    }
    if (!w.m.obj[elim].is_zero()) {
      w.m.obj_constant += w.m.obj[elim] * offset;
      w.m.obj[keep] += w.m.obj[elim] * coef;
      w.m.obj[elim] = Rational();
    }
    w.col_alive[elim] = 0;
    Reduction red;
    red.kind = ReductionKind::Substitute;
    red.col = elim;
    red.other_col = keep;
    red.coef = coef;
    red.offset = offset;
    red.row = i;
    w.reds.push_back(std::move(red));
    ++w.stats.aggregated;
    ++w.round_changes;
    w.delete_row(i);
    w.cleanup_fixed_cols();
  }
}

void run_inequality_simplification(Work& w) {
  for (int i = 0; i < w.m.m && !w.infeasible(); ++i) {
    if (!w.row_alive[i] || w.m.sense[i] == RowSense::Equal) continue;
    const SparseVec& row = w.m.rows[i];
    if (row.idx.empty()) continue;
    bool all_integer = true;
    for (const int j : row.idx) all_integer = all_integer && w.m.integer[j];
    if (!all_integer) continue;

    // Scale to coprime integer coefficients.
    mpz_class den_lcm = 1, num_gcd = 0;
    for (const Rational& a : row.val) {
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), a.den().get_mpz_t());
    }
    for (const Rational& a : row.val) {
      mpz_class scaled = a.num() * (den_lcm / a.den());
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    }
    if (num_gcd == 0) continue;
    const Rational scale = Rational(den_lcm, num_gcd);
    const Rational scaled_rhs = w.m.rhs[i] * scale;
    const Rational rounded_rhs = w.m.sense[i] == RowSense::LessEqual
                                     ? scaled_rhs.floor()
                                     : scaled_rhs.ceil();
    if (scale == Rational(1) && rounded_rhs == scaled_rhs) continue;

    for (size_t k = 0; k < w.m.rows[i].val.size(); ++k) {
      w.m.rows[i].val[k] *= scale;
    }
    w.m.rhs[i] = rounded_rhs;
    Reduction red;
    red.kind = ReductionKind::ScaleRow;
    red.row = i;
    red.value = scale;
    red.expr_rhs = rounded_rhs;
    w.reds.push_back(std::move(red));
    ++w.stats.rows_scaled;
    ++w.round_changes;
  }
}

void run_parallel_rows(Work& w) {
  // Exact-scale grouping: rows proportional by a nonzero rational factor
  // share the support and the vector normalized by the leading coefficient.
  std::map<std::pair<std::vector<int>, std::vector<std::pair<mpz_class, mpz_class>>>,
           std::vector<int>>
      groups;
  for (int i = 0; i < w.m.m; ++i) {
    if (!w.row_alive[i] || w.m.rows[i].idx.empty()) continue;
    std::vector<std::pair<mpz_class, mpz_class>> norm;
    const Rational& lead = w.m.rows[i].val[0];
    for (const Rational& a : w.m.rows[i].val) {
      const Rational q = a / lead;
      norm.emplace_back(q.num(), q.den());
    }
    groups[{w.m.rows[i].idx, std::move(norm)}].push_back(i);
  }
  for (auto& [key, rows] : groups) {
    if (rows.size() < 2 || w.infeasible()) continue;
    // Express every row of the group as an interval on the first row's lhs.
    const int base = rows[0];
    const Rational base_lead = w.m.rows[base].val[0];
    ExtendedRational lo = ExtendedRational::neg_infinity();
    ExtendedRational hi = ExtendedRational::infinity();
    int lo_provider = -1, hi_provider = -1;
    for (const int i : rows) {
      const Rational s = w.m.rows[i].val[0] / base_lead;  // row_i = s * base
      const Rational rhs_base = w.m.rhs[i] / s;
      RowSense sense = w.m.sense[i];
      if (s.sign() < 0 && sense != RowSense::Equal) {
        sense = sense == RowSense::LessEqual ? RowSense::GreaterEqual
                                             : RowSense::LessEqual;
      }
      const bool has_lo = sense != RowSense::LessEqual;
      const bool has_hi = sense != RowSense::GreaterEqual;
      if (has_lo && (lo.is_neg_inf() || Rational(rhs_base) > lo.value())) {
        lo = rhs_base;
        lo_provider = i;
      }
      if (has_hi && (hi.is_pos_inf() || Rational(rhs_base) < hi.value())) {
        hi = rhs_base;
        hi_provider = i;
      }
    }
    if (lo.is_finite() && hi.is_finite() && lo.value() > hi.value()) {
      w.witness = InfeasibilityWitness{
          InfeasibilityWitness::Kind::ParallelConflict, lo_provider,
          lo.value(), hi.value()};
      return;
    }
    // Keep the providers, drop the rest; collapse to an equality if pinched.
    for (const int i : rows) {
      if (i == lo_provider || i == hi_provider) continue;
      Reduction red;
      red.kind = ReductionKind::MergeParallel;
      red.row = lo_provider >= 0 ? lo_provider : hi_provider;
      red.row_dropped = i;
      red.value = w.m.rows[i].val[0] / base_lead;
      w.reds.push_back(std::move(red));
      w.row_alive[i] = 0;
      ++w.stats.rows_deleted;
      ++w.round_changes;
    }
    if (lo_provider >= 0 && hi_provider >= 0 && lo_provider != hi_provider &&
        lo.value() == hi.value()) {
      // The pair pins the lhs: rewrite the lower provider as an equality.
      w.m.sense[lo_provider] = RowSense::Equal;
      Reduction red;
      red.kind = ReductionKind::MergeParallel;
      red.row = lo_provider;
      red.row_dropped = hi_provider;
      red.value = w.m.rows[hi_provider].val[0] / w.m.rows[lo_provider].val[0];
      w.reds.push_back(std::move(red));
      w.row_alive[hi_provider] = 0;
      ++w.stats.rows_deleted;
      ++w.round_changes;
    }
  }
}

std::vector<Reduction> dual_fix_candidates(const RationalMIP& m,
                                           const std::vector<uint8_t>& col_alive,
                                           const std::vector<uint8_t>& row_alive) {
  std::vector<Reduction> out;
  std::vector<std::vector<std::pair<int, int>>> col_signs(
      static_cast<size_t>(m.n));  // (row, sign of coefficient)
  std::vector<uint8_t> in_equality(static_cast<size_t>(m.n), 0);
  std::vector<uint8_t> bad_down(static_cast<size_t>(m.n), 0);
  std::vector<uint8_t> bad_up(static_cast<size_t>(m.n), 0);
  for (int i = 0; i < m.m; ++i) {
    if (!row_alive[i]) continue;
    const SparseVec& r = m.rows[i];
    for (size_t k = 0; k < r.size(); ++k) {
      const int j = r.idx[k];
      const int sgn = r.val[k].sign();
      if (m.sense[i] == RowSense::Equal) {
        in_equality[j] = 1;
        continue;
      }
      // Moving x_j down relaxes a G-row iff coefficient <= 0 and an L-row
      // iff coefficient >= 0; mirrored for moving up.
      if (m.sense[i] == RowSense::GreaterEqual) {
        if (sgn > 0) bad_down[j] = 1;
        if (sgn < 0) bad_up[j] = 1;
      } else {
        if (sgn < 0) bad_down[j] = 1;
        if (sgn > 0) bad_up[j] = 1;
      }
    }
  }
  for (int j = 0; j < m.n; ++j) {
    if (!col_alive[j] || in_equality[j]) continue;
    const int csgn = m.obj[j].sign();
    Reduction red;
    red.kind = ReductionKind::Fix;
    red.col = j;
    if (csgn >= 0 && !bad_down[j] && m.lb[j].is_finite()) {
      red.value = m.integer[j] ? m.lb[j].value().ceil() : m.lb[j].value();
      if (m.ub[j].is_finite() && red.value > m.ub[j].value()) continue;
      out.push_back(std::move(red));
    } else if (csgn <= 0 && !bad_up[j] && m.ub[j].is_finite()) {
      red.value = m.integer[j] ? m.ub[j].value().floor() : m.ub[j].value();
      if (m.lb[j].is_finite() && red.value < m.lb[j].value()) continue;
      out.push_back(std::move(red));
    } else if (csgn == 0 && !bad_down[j] && !bad_up[j]) {
      // Unconstrained and objective-irrelevant.
      red.value = Rational();
      out.push_back(std::move(red));
    }
  }
  return out;
}

void run_dual_fix(Work& w) {
  const auto fixes = dual_fix_candidates(w.m, w.col_alive, w.row_alive);
  for (const Reduction& f : fixes) {
    if (w.infeasible()) return;
    if (w.col_alive[f.col]) w.fix_col(f.col, f.value);
  }
}

}  // namespace

PropagationResult propagate_bounds(const RationalMIP& model) {
  PropagationResult out;
  RationalMIP m = model;
  for (int i = 0; i < m.m && !out.infeasible; ++i) {
    propagate_row(m, i, [&](int col, bool lower, Rational v) {
      if (out.infeasible) return;
      bool changed = false;
      if (lower) {
        if (!m.lb[col].is_finite() || v > m.lb[col].value()) {
          m.lb[col] = v;
          changed = true;
        }
      } else {
        if (!m.ub[col].is_finite() || v < m.ub[col].value()) {
          m.ub[col] = v;
          changed = true;
        }
      }
      if (!changed) return;
      Reduction r;
      r.kind = ReductionKind::BoundChange;
      r.col = col;
      r.lower = lower;
      r.value = std::move(v);
      out.changes.push_back(std::move(r));
      if (m.lb[col].is_finite() && m.ub[col].is_finite() &&
          m.lb[col].value() > m.ub[col].value()) {
        out.infeasible = true;
        out.infeasible_col = col;
      }
    });
  }
  return out;
}

std::vector<Reduction> dual_fix(const RationalMIP& model) {
  const std::vector<uint8_t> cols(static_cast<size_t>(model.n), 1);
  const std::vector<uint8_t> rows(static_cast<size_t>(model.m), 1);
  return dual_fix_candidates(model, cols, rows);
}

std::vector<Rational> PostsolveStack::postsolve(
    const std::vector<Rational>& reduced_x) const {
  std::vector<Rational> x(static_cast<size_t>(original_n));
  for (size_t r = 0; r < reduced_col_to_original.size(); ++r) {
    x[reduced_col_to_original[r]] = reduced_x[r];
  }
  for (auto it = reductions.rbegin(); it != reductions.rend(); ++it) {
    switch (it->kind) {
      case ReductionKind::Fix:
        x[it->col] = it->value;
        break;
      case ReductionKind::Substitute:
        x[it->col] = it->offset + it->coef * x[it->other_col];
        break;
      case ReductionKind::SubstituteRow: {
        Rational rest;
        for (size_t k = 0; k < it->expr.size(); ++k) {
          rest += it->expr.val[k] * x[it->expr.idx[k]];
        }
        x[it->col] = (it->expr_rhs - rest) / it->self_coef;
        break;
      }
      default:
        break;
    }
  }
  return x;
}

PresolveResult presolve(const RationalMIP& model, int max_rounds,
                        bool parallel) {
  (void)parallel;  // detection may be parallelized; results are identical
  const auto start = std::chrono::steady_clock::now();
  Work w(model);
  PresolveResult result;

  if (const auto bad = model.inconsistent_bound_col()) {
    result.status = PresolveStatus::Infeasible;
    w.mark_col_infeasible(*bad);
    result.witness = w.witness;
    result.stack.original_n = model.n;
    return result;
  }

  // Fractional bounds on integer columns are tightened inward first; the
  // techniques below assume integral integer bounds.
  for (int j = 0; j < model.n && !w.infeasible(); ++j) {
    if (!model.integer[j]) continue;
    if (w.m.lb[j].is_finite() && !w.m.lb[j].value().is_integer()) {
      w.change_bound(j, true, w.m.lb[j].value().ceil());
    }
    if (!w.infeasible() && w.m.ub[j].is_finite() &&
        !w.m.ub[j].value().is_integer()) {
      w.change_bound(j, false, w.m.ub[j].value().floor());
    }
  }
  if (!w.infeasible()) w.cleanup_fixed_cols();

  for (int round = 0; round < max_rounds && !w.infeasible(); ++round) {
    w.round_changes = 0;
    run_propagation(w);
    if (!w.infeasible()) w.cleanup_fixed_cols();
    if (!w.infeasible()) run_coefficient_strengthening(w);
    if (!w.infeasible()) run_singleton_columns(w);
    if (!w.infeasible()) run_substitution(w);
    if (!w.infeasible()) run_inequality_simplification(w);
    if (!w.infeasible()) run_parallel_rows(w);
    if (!w.infeasible()) run_dual_fix(w);
    if (!w.infeasible()) w.cleanup_empty_rows();
    if (w.round_changes == 0) {
      w.stats.reached_fixpoint = true;
      break;
    }
    ++w.stats.rounds;
    long alive = 0;
    for (const uint8_t a : w.col_alive) alive += a;
    for (const uint8_t a : w.row_alive) alive += a;
    if (alive == 0) {
      w.stats.reached_fixpoint = true;
      break;
    }
    if (w.round_changes * 100 < alive) break;
  }

  w.stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  result.stats = w.stats;
  if (w.infeasible()) {
    result.status = PresolveStatus::Infeasible;
    result.witness = w.witness;
    result.stack.original_n = model.n;
    result.stack.reductions = std::move(w.reds);
    return result;
  }

  // Compact to the reduced model.
  RationalMIP reduced;
  reduced.name = model.name;
  reduced.maximize = model.maximize;
  reduced.obj_constant = w.m.obj_constant;
  std::vector<int> col_map(static_cast<size_t>(model.n), -1);
  for (int j = 0; j < model.n; ++j) {
    if (!w.col_alive[j]) continue;
    col_map[j] = reduced.add_col(model.col_name[j], w.m.lb[j], w.m.ub[j],
                                 w.m.integer[j] != 0, w.m.obj[j]);
    result.stack.reduced_col_to_original.push_back(j);
  }
  for (int i = 0; i < model.m; ++i) {
    if (!w.row_alive[i]) continue;
    const int r = reduced.add_row(model.row_name[i], w.m.sense[i], w.m.rhs[i]);
    for (size_t k = 0; k < w.m.rows[i].size(); ++k) {
      reduced.rows[r].push(col_map[w.m.rows[i].idx[k]], w.m.rows[i].val[k]);
    }
  }
  result.reduced = std::move(reduced);
  result.stack.original_n = model.n;
  result.stack.reductions = std::move(w.reds);
  return result;
}

}  // namespace exmip
