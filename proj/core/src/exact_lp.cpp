/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#include "exmip/exact_lp.hpp"

#include <cmath>

#include "exmip/simplex.hpp"

namespace exmip {

namespace {

DenseLp<Rational> build_exact_lp(const NodeView& node) {
  const RationalMIP& model = *node.model;
  DenseLp<Rational> lp;
  lp.resize(model.m, model.n);
  for (int i = 0; i < model.m; ++i) {
    const SparseVec& r = model.rows[i];
    for (size_t k = 0; k < r.size(); ++k) lp.a(i, r.idx[k]) = r.val[k];
  }
  lp.cost = model.obj;
  for (int j = 0; j < model.n; ++j) {
    lp.col_lb_finite[j] = node.lb[j].is_finite() ? 1 : 0;
    lp.col_ub_finite[j] = node.ub[j].is_finite() ? 1 : 0;
    if (lp.col_lb_finite[j]) lp.col_lb[j] = node.lb[j].value();
    if (lp.col_ub_finite[j]) lp.col_ub[j] = node.ub[j].value();
  }
  for (int i = 0; i < model.m; ++i) {
    switch (model.sense[i]) {
      case RowSense::GreaterEqual:
        lp.row_lb[i] = model.rhs[i];
        lp.row_lb_finite[i] = 1;
        break;
      case RowSense::LessEqual:
        lp.row_ub[i] = model.rhs[i];
        lp.row_ub_finite[i] = 1;
        break;
      case RowSense::Equal:
        lp.row_lb[i] = model.rhs[i];
        lp.row_ub[i] = model.rhs[i];
        lp.row_lb_finite[i] = 1;
        lp.row_ub_finite[i] = 1;
        break;
    }
  }
  return lp;
}

/// Exact solve of a dense rational system via Gaussian elimination with
/// column pivoting. Returns false when singular.
bool solve_dense(std::vector<Rational> a, int m, std::vector<Rational>& rhs) {
  std::vector<int> perm(m);
  for (int i = 0; i < m; ++i) perm[i] = i;
  for (int k = 0; k < m; ++k) {
    int piv = -1;
    for (int i = k; i < m; ++i) {
      if (!a[static_cast<size_t>(perm[i]) * m + k].is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) return false;
    std::swap(perm[k], perm[piv]);
    const size_t rk = static_cast<size_t>(perm[k]) * m;
    for (int i = k + 1; i < m; ++i) {
      const size_t ri = static_cast<size_t>(perm[i]) * m;
      if (a[ri + k].is_zero()) continue;
      const Rational f = a[ri + k] / a[rk + k];
      for (int j = k + 1; j < m; ++j) a[ri + j] -= f * a[rk + j];
      rhs[perm[i]] -= f * rhs[perm[k]];
    }
  }
  std::vector<Rational> x(m);
  for (int i = m - 1; i >= 0; --i) {
    const size_t ri = static_cast<size_t>(perm[i]) * m;
    Rational s = rhs[perm[i]];
    for (int j = i + 1; j < m; ++j) s -= a[ri + j] * x[j];
    x[i] = s / a[ri + i];
  }
  rhs = std::move(x);
  return true;
}

struct BasisEvaluation {
  bool valid = false;
  bool primal_feasible = false;
  bool dual_feasible = false;
  Rational max_primal_violation;
  Rational max_dual_violation;
  std::vector<Rational> x;         // structural values
  std::vector<Rational> activity;  // row activities
  std::vector<Rational> y;
  std::vector<Rational> d;
  Rational objective;
};

/// Computes the exact basic solution determined by a basis and checks
/// primal bounds and dual sign conditions in rational arithmetic.
BasisEvaluation evaluate_basis(const DenseLp<Rational>& lp,
                               const Basis& basis) {
  BasisEvaluation ev;
  const int n = lp.n, m = lp.m;
  if (static_cast<int>(basis.col.size()) != n ||
      static_cast<int>(basis.row.size()) != m || basis.basic_count() != m) {
    return ev;
  }
  std::vector<int> basic_cols;  // structural < n, logical n + i
  for (int j = 0; j < n; ++j) {
    if (basis.col[j] == ColStatus::Basic) basic_cols.push_back(j);
  }
  for (int i = 0; i < m; ++i) {
    if (basis.row[i] == RowStatus::BasicSlack) basic_cols.push_back(n + i);
  }

  // Nonbasic structural values.
  ev.x.assign(n, Rational());
  for (int j = 0; j < n; ++j) {
    if (basis.col[j] == ColStatus::Basic) continue;
    switch (basis.col[j]) {
      case ColStatus::AtLower:
        if (!lp.col_lb_finite[j]) return ev;
        ev.x[j] = lp.col_lb[j];
        break;
      case ColStatus::AtUpper:
        if (!lp.col_ub_finite[j]) return ev;
        ev.x[j] = lp.col_ub[j];
        break;
      default:
        ev.x[j] = Rational();
        break;
    }
  }
  // Nonbasic logical values: tight rows sit on their single finite side
  // (equality rows on the common value).
  std::vector<Rational> s(m);
  for (int i = 0; i < m; ++i) {
    if (basis.row[i] == RowStatus::BasicSlack) continue;
    if (lp.row_lb_finite[i]) {
      s[i] = lp.row_lb[i];
    } else if (lp.row_ub_finite[i]) {
      s[i] = lp.row_ub[i];
    } else {
      return ev;
    }
  }

  // Solve B x_B = -(nonbasic contribution), in the equation A x - s = 0.
  std::vector<Rational> rhs(m);
  for (int i = 0; i < m; ++i) {
    Rational acc;
    for (int j = 0; j < n; ++j) {
      if (basis.col[j] != ColStatus::Basic && !lp.a(i, j).is_zero()) {
        acc += lp.a(i, j) * ev.x[j];
      }
    }
    if (basis.row[i] != RowStatus::BasicSlack) acc -= s[i];
    rhs[i] = -acc;
  }
  std::vector<Rational> bmat(static_cast<size_t>(m) * m);
  for (int p = 0; p < m; ++p) {
    const int col = basic_cols[p];
    if (col < n) {
      for (int i = 0; i < m; ++i) bmat[static_cast<size_t>(i) * m + p] = lp.a(i, col);
    } else {
      bmat[static_cast<size_t>(col - n) * m + p] = Rational(-1);
    }
  }
  if (m > 0 && !solve_dense(bmat, m, rhs)) return ev;
  for (int p = 0; p < m; ++p) {
    const int col = basic_cols[p];
    if (col < n) {
      ev.x[col] = rhs[p];
    } else {
      s[col - n] = rhs[p];
    }
  }

  // Duals: B^T y = c_B.
  std::vector<Rational> cb(m);
  for (int p = 0; p < m; ++p) {
    cb[p] = basic_cols[p] < n ? lp.cost[basic_cols[p]] : Rational();
  }
  std::vector<Rational> bt(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int p = 0; p < m; ++p) {
      bt[static_cast<size_t>(p) * m + i] = bmat[static_cast<size_t>(i) * m + p];
    }
  }
  if (m > 0 && !solve_dense(bt, m, cb)) return ev;
  ev.y = std::move(cb);

  ev.d.assign(n, Rational());
  for (int j = 0; j < n; ++j) {
    Rational dv = lp.cost[j];
    for (int i = 0; i < m; ++i) {
      if (!lp.a(i, j).is_zero()) dv -= ev.y[i] * lp.a(i, j);
    }
    ev.d[j] = dv;
  }

  ev.activity = s;
  ev.objective = Rational();
  for (int j = 0; j < n; ++j) ev.objective += lp.cost[j] * ev.x[j];

  // Primal violations.
  Rational pviol;
  const auto bump = [](Rational& acc, const Rational& v) {
    if (v > acc) acc = v;
  };
  for (int j = 0; j < n; ++j) {
    if (lp.col_lb_finite[j]) bump(pviol, lp.col_lb[j] - ev.x[j]);
    if (lp.col_ub_finite[j]) bump(pviol, ev.x[j] - lp.col_ub[j]);
  }
  for (int i = 0; i < m; ++i) {
    if (lp.row_lb_finite[i]) bump(pviol, lp.row_lb[i] - s[i]);
    if (lp.row_ub_finite[i]) bump(pviol, s[i] - lp.row_ub[i]);
  }
  // Dual sign violations at nonbasic positions.
  Rational dviol;
  for (int j = 0; j < n; ++j) {
    switch (basis.col[j]) {
      case ColStatus::AtLower:
        bump(dviol, -ev.d[j]);
        break;
      case ColStatus::AtUpper:
        bump(dviol, ev.d[j]);
        break;
      case ColStatus::FreeNonbasic:
        bump(dviol, ev.d[j].abs());
        break;
      case ColStatus::Basic:
        break;
    }
  }
  for (int i = 0; i < m; ++i) {
    if (basis.row[i] == RowStatus::BasicSlack) continue;
    const bool fixed = lp.row_lb_finite[i] && lp.row_ub_finite[i] &&
                       lp.row_lb[i] == lp.row_ub[i];
    if (fixed) continue;
    if (lp.row_lb_finite[i]) {
      bump(dviol, -ev.y[i]);  // active at lower: y >= 0
    } else {
      bump(dviol, ev.y[i]);  // active at upper: y <= 0
    }
  }

  ev.valid = true;
  ev.max_primal_violation = pviol;
  ev.max_dual_violation = dviol;
  ev.primal_feasible = pviol.sign() <= 0;
  ev.dual_feasible = dviol.sign() <= 0;
  return ev;
}

/// 2^1024 as the refinement scaling cap.
const Rational& scaling_cap() {
  static const Rational cap = [] {
    mpz_class z;
    mpz_ui_pow_ui(z.get_mpz_t(), 2, 1024);
    return Rational(z);
  }();
  return cap;
}

Rational scale_for(const Rational& violation) {
  if (violation.sign() <= 0) return scaling_cap();
  return exmip::min(Rational(1) / violation, scaling_cap());
}

double to_nearest(const Rational& q) { return q.to_double_nearest(); }

ExactLpResult from_evaluation(BasisEvaluation&& ev, Basis basis) {
  ExactLpResult out;
  out.status = ExactLpStatus::Optimal;
  out.x = std::move(ev.x);
  out.y = std::move(ev.y);
  out.d = std::move(ev.d);
  out.objective = std::move(ev.objective);
  out.basis = std::move(basis);
  return out;
}

ExactLpResult rational_finish(const DenseLp<Rational>& lp, const Basis* warm,
                              const NodeView& node, ExactLpResult partial) {
  BoundedSimplex<Rational> simplex(lp);
  const SimplexResult<Rational> r = simplex.solve(warm);
  partial.used_rational_finish = true;
  switch (r.status) {
    case SimplexStatus::Optimal:
      partial.status = ExactLpStatus::Optimal;
      partial.x = r.x;
      partial.y = r.y;
      partial.d = r.d;
      partial.objective = r.objective;
      partial.basis = r.basis;
      break;
    case SimplexStatus::Infeasible:
      partial.status = ExactLpStatus::Infeasible;
      partial.farkas_y = r.farkas_y;
      partial.basis = r.basis;
      if (!verify_farkas(node, partial.farkas_y)) {
        throw std::logic_error("exact LP: unverifiable Farkas multipliers");
      }
      break;
    case SimplexStatus::Unbounded:
      partial.status = ExactLpStatus::Unbounded;
      partial.basis = r.basis;
      break;
    case SimplexStatus::IterationLimit:
      throw std::logic_error("exact LP: rational simplex hit iteration limit");
  }
  return partial;
}

}  // namespace

ExactLpResult solve_exact_lp(const NodeView& node, const Basis* warm) {
  const DenseLp<Rational> lp = build_exact_lp(node);
  ExactLpResult partial;

  // Round 0: plain float solve of the float image.
  const FpLpResult fp0 = solve_fp_lp(node, warm);
  if (fp0.status != FpLpStatus::Optimal) {
    const Basis* hint = fp0.basis.empty() ? nullptr : &fp0.basis;
    return rational_finish(lp, hint, node, std::move(partial));
  }

  Basis basis = fp0.basis;
  BasisEvaluation ev = evaluate_basis(lp, basis);
  if (ev.valid && ev.primal_feasible && ev.dual_feasible) {
    return from_evaluation(std::move(ev), std::move(basis));
  }

  // Refinement: solve scaled residual problems around the exact basic point
  // and adopt the bases they identify, until exact or stalled.
  constexpr int kMaxRounds = 8;
  Rational last_violation;
  bool have_last = false;
  for (int round = 1; ev.valid && round <= kMaxRounds; ++round) {
    const Rational violation =
        exmip::max(ev.max_primal_violation, ev.max_dual_violation);
    if (have_last && violation + violation > last_violation) break;  // stall
    have_last = true;
    last_violation = violation;

    const Rational primal_scale = scale_for(ev.max_primal_violation);
    const Rational dual_scale = scale_for(ev.max_dual_violation);

    DenseLp<double> residual;
    residual.resize(lp.m, lp.n);
    for (int i = 0; i < lp.m; ++i) {
      const SparseVec& r = node.model->rows[i];
      for (size_t k = 0; k < r.size(); ++k) {
        residual.a(i, r.idx[k]) = node.fmodel->row_val[i][k];
      }
    }
    for (int j = 0; j < lp.n; ++j) {
      residual.cost[j] = to_nearest(dual_scale * ev.d[j]);
      residual.col_lb_finite[j] = lp.col_lb_finite[j];
      residual.col_ub_finite[j] = lp.col_ub_finite[j];
      if (lp.col_lb_finite[j]) {
        residual.col_lb[j] = to_nearest(primal_scale * (lp.col_lb[j] - ev.x[j]));
      } else {
        residual.col_lb[j] = -std::numeric_limits<double>::infinity();
      }
      if (lp.col_ub_finite[j]) {
        residual.col_ub[j] = to_nearest(primal_scale * (lp.col_ub[j] - ev.x[j]));
      } else {
        residual.col_ub[j] = std::numeric_limits<double>::infinity();
      }
    }
    for (int i = 0; i < lp.m; ++i) {
      residual.row_lb_finite[i] = lp.row_lb_finite[i];
      residual.row_ub_finite[i] = lp.row_ub_finite[i];
      if (lp.row_lb_finite[i]) {
        residual.row_lb[i] =
            to_nearest(primal_scale * (lp.row_lb[i] - ev.activity[i]));
      }
      if (lp.row_ub_finite[i]) {
        residual.row_ub[i] =
            to_nearest(primal_scale * (lp.row_ub[i] - ev.activity[i]));
      }
    }

    BoundedSimplex<double> simplex(residual);
    const SimplexResult<double> rr = simplex.solve(&basis);
    partial.refinement_rounds = round;
    if (rr.status != SimplexStatus::Optimal) break;

    BasisEvaluation next = evaluate_basis(lp, rr.basis);
    if (!next.valid) break;
    basis = rr.basis;
    ev = std::move(next);
    if (ev.primal_feasible && ev.dual_feasible) {
      ExactLpResult out = from_evaluation(std::move(ev), std::move(basis));
      out.refinement_rounds = round;
      return out;
    }
  }

  const Basis* hint = basis.empty() ? nullptr : &basis;
  return rational_finish(lp, hint, node, std::move(partial));
}

bool verify_farkas(const NodeView& node,
                   const std::vector<Rational>& farkas_y) {
  const RationalMIP& model = *node.model;
  if (static_cast<int>(farkas_y.size()) != model.m) return false;
  Rational value;
  std::vector<Rational> g(static_cast<size_t>(model.n));
  for (int i = 0; i < model.m; ++i) {
    const Rational& yi = farkas_y[i];
    if (yi.is_zero()) continue;
    switch (model.sense[i]) {
      case RowSense::GreaterEqual:
        if (yi.sign() < 0) return false;
        break;
      case RowSense::LessEqual:
        if (yi.sign() > 0) return false;
        break;
      case RowSense::Equal:
        break;
    }
    value += yi * model.rhs[i];
    const SparseVec& r = model.rows[i];
    for (size_t k = 0; k < r.size(); ++k) g[r.idx[k]] -= yi * r.val[k];
  }
  for (int j = 0; j < model.n; ++j) {
    if (g[j].is_zero()) continue;
    if (g[j].sign() > 0) {
      if (!node.lb[j].is_finite()) return false;
      value += g[j] * node.lb[j].value();
    } else {
      if (!node.ub[j].is_finite()) return false;
      value += g[j] * node.ub[j].value();
    }
  }
  return value.sign() > 0;
}

std::optional<InteriorPoint> interior_point(const RationalMIP& model) {
  // Auxiliary LP over (y_1..y_m, delta): maximize delta subject to every
  // strict dual inequality having slack >= delta; equality conditions
  // (free columns, equality-row multipliers) stay equalities.
  RationalMIP aux;
  for (int i = 0; i < model.m; ++i) {
    aux.add_col("y" + std::to_string(i), ExtendedRational::neg_infinity(),
                ExtendedRational::infinity(), false);
  }
  const int delta_col = aux.add_col("delta", Rational(0), Rational(1), false,
                                    Rational(-1));
  for (int i = 0; i < model.m; ++i) {
    if (model.sense[i] == RowSense::Equal) continue;
    const bool ge = model.sense[i] == RowSense::GreaterEqual;
    const int row = aux.add_row("sign" + std::to_string(i),
                                ge ? RowSense::GreaterEqual : RowSense::LessEqual,
                                Rational(0));
    aux.rows[row].push(i, Rational(1));
    aux.rows[row].push(delta_col, ge ? Rational(-1) : Rational(1));
  }
  // Column conditions on d_j = c_j - a_j^T y.
  std::vector<SparseVec> cols(static_cast<size_t>(model.n));
  for (int i = 0; i < model.m; ++i) {
    const SparseVec& r = model.rows[i];
    for (size_t k = 0; k < r.size(); ++k) cols[r.idx[k]].push(i, r.val[k]);
  }
  for (int j = 0; j < model.n; ++j) {
    const bool lf = model.lb[j].is_finite();
    const bool uf = model.ub[j].is_finite();
    if (lf && uf) continue;
    RowSense sense;
    Rational delta_coef;
    if (lf) {
      sense = RowSense::LessEqual;  // a_j^T y + delta <= c_j
      delta_coef = Rational(1);
    } else if (uf) {
      sense = RowSense::GreaterEqual;  // a_j^T y - delta >= c_j
      delta_coef = Rational(-1);
    } else {
      sense = RowSense::Equal;  // a_j^T y = c_j
    }
    const int row = aux.add_row("col" + std::to_string(j), sense, model.obj[j]);
    for (size_t k = 0; k < cols[j].size(); ++k) {
      aux.rows[row].push(cols[j].idx[k], cols[j].val[k]);
    }
    if (sense != RowSense::Equal) aux.rows[row].push(delta_col, delta_coef);
    aux.rows[row].normalize();
  }

  const FloatMIP faux = approximate(aux);
  const NodeView view = NodeView::root(aux, faux);
  const ExactLpResult r = solve_exact_lp(view);
  if (r.status != ExactLpStatus::Optimal) return std::nullopt;
  const Rational delta = -r.objective;
  if (delta.sign() <= 0) return std::nullopt;
  InteriorPoint ip;
  ip.delta = delta;
  ip.y.assign(r.x.begin(), r.x.begin() + model.m);
  return ip;
}

}  // namespace exmip
