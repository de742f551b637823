/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#include "exmip/fp_lp.hpp"

#include <cmath>

namespace exmip {

DenseLp<double> build_float_lp(const NodeView& node) {
  const RationalMIP& model = *node.model;
  const FloatMIP& fm = *node.fmodel;
  DenseLp<double> lp;
  lp.resize(model.m, model.n);
  for (int i = 0; i < model.m; ++i) {
    const SparseVec& r = model.rows[i];
    for (size_t k = 0; k < r.size(); ++k) {
      lp.a(i, r.idx[k]) = fm.row_val[i][k];
    }
  }
  lp.cost = fm.obj;
  for (int j = 0; j < model.n; ++j) {
    lp.col_lb[j] = node.lbf[j];
    lp.col_ub[j] = node.ubf[j];
    lp.col_lb_finite[j] = std::isfinite(node.lbf[j]) ? 1 : 0;
    lp.col_ub_finite[j] = std::isfinite(node.ubf[j]) ? 1 : 0;
  }
  for (int i = 0; i < model.m; ++i) {
    switch (model.sense[i]) {
      case RowSense::GreaterEqual:
        lp.row_lb[i] = fm.rhs[i];
        lp.row_lb_finite[i] = 1;
        break;
      case RowSense::LessEqual:
        lp.row_ub[i] = fm.rhs[i];
        lp.row_ub_finite[i] = 1;
        break;
      case RowSense::Equal:
        lp.row_lb[i] = fm.rhs[i];
        lp.row_ub[i] = fm.rhs[i];
        lp.row_lb_finite[i] = 1;
        lp.row_ub_finite[i] = 1;
        break;
    }
  }
  return lp;
}

FpLpResult solve_fp_lp(const NodeView& node, const Basis* warm,
                       std::optional<double> obj_limit) {
  const DenseLp<double> lp = build_float_lp(node);
  BoundedSimplex<double> simplex(lp);
  const SimplexResult<double> r = simplex.solve(warm);

  FpLpResult out;
  out.x = r.x;
  out.y = r.y;
  out.d = r.d;
  out.objective = r.objective;
  out.basis = r.basis;
  out.iterations = r.iterations;
  out.pivots = r.pivots;
  switch (r.status) {
    case SimplexStatus::Optimal:
      out.status = FpLpStatus::Optimal;
      break;
    case SimplexStatus::Infeasible:
      out.status = FpLpStatus::InfeasibleClaimed;
      break;
    case SimplexStatus::Unbounded:
      out.status = FpLpStatus::UnboundedClaimed;
      break;
    case SimplexStatus::IterationLimit:
      out.status = FpLpStatus::IterationLimit;
      break;
  }
  // With a primal simplex the dual objective is only available at the final
  // (dual feasible) basis, so the limit is applied as a post-check.
  if (out.status == FpLpStatus::Optimal && obj_limit.has_value() &&
      out.objective >= *obj_limit) {
    out.status = FpLpStatus::ObjectiveLimit;
  }
  return out;
}

}  // namespace exmip
