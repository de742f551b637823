/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#include "exmip/heuristics.hpp"

#include <chrono>
#include <cmath>

#include "exmip/exact_lp.hpp"
#include "exmip/interval.hpp"

namespace exmip {

namespace {

constexpr double kIntegralityTol = 1e-6;
constexpr double kRepairFractionalityTol = 1e-4;
constexpr double kFloatFeasTol = 1e-6;
constexpr int kMaxDives = 10;

/// Smallest double known to be >= q.
double upper_double(const Rational& q) {
  bool overflow = false;
  double d = q.to_double_nearest(&overflow);
  if (overflow) return d > 0 ? d : -std::numeric_limits<double>::max();
  if (Rational::of_double(d) < q) {
    d = std::nextafter(d, std::numeric_limits<double>::infinity());
  }
  return d;
}

bool float_feasible(const NodeView& node, const std::vector<double>& x) {
  const RationalMIP& model = *node.model;
  const FloatMIP& fm = *node.fmodel;
  for (int j = 0; j < model.n; ++j) {
    if (x[j] < node.lbf[j] - kFloatFeasTol) return false;
    if (x[j] > node.ubf[j] + kFloatFeasTol) return false;
    if (model.integer[j] &&
        std::fabs(x[j] - std::round(x[j])) > kIntegralityTol) {
      return false;
    }
  }
  for (int i = 0; i < model.m; ++i) {
    double act = 0;
    const SparseVec& r = model.rows[i];
    for (size_t k = 0; k < r.size(); ++k) act += fm.row_val[i][k] * x[r.idx[k]];
    switch (model.sense[i]) {
      case RowSense::GreaterEqual:
        if (act < fm.rhs[i] - kFloatFeasTol) return false;
        break;
      case RowSense::LessEqual:
        if (act > fm.rhs[i] + kFloatFeasTol) return false;
        break;
      case RowSense::Equal:
        if (std::fabs(act - fm.rhs[i]) > kFloatFeasTol) return false;
        break;
    }
  }
  return true;
}

std::vector<double> rounded(const RationalMIP& model,
                            const std::vector<double>& x) {
  std::vector<double> out = x;
  for (int j = 0; j < model.n; ++j) {
    if (model.integer[j]) out[j] = std::round(out[j]);
  }
  return out;
}

}  // namespace

std::optional<std::vector<double>> fp_round_and_dive(const NodeView& node,
                                                     const FpLpResult& lp) {
  if (lp.status != FpLpStatus::Optimal &&
      lp.status != FpLpStatus::ObjectiveLimit) {
    return std::nullopt;
  }
  const RationalMIP& model = *node.model;

  std::vector<double> candidate = rounded(model, lp.x);
  if (float_feasible(node, candidate)) return candidate;

  // Fractional diving: repeatedly pin the most fractional integer column to
  // its nearest integer and re-solve.
  NodeView dive_node = node;
  std::vector<double> x = lp.x;
  Basis warm = lp.basis;
  for (int dive = 0; dive < kMaxDives; ++dive) {
    int pick = -1;
    double best_frac = kIntegralityTol;
    for (int j = 0; j < model.n; ++j) {
      if (!model.integer[j]) continue;
      const double frac = std::fabs(x[j] - std::round(x[j]));
      if (frac > best_frac) {
        best_frac = frac;
        pick = j;
      }
    }
    if (pick < 0) {
      candidate = rounded(model, x);
      if (float_feasible(dive_node, candidate) &&
          float_feasible(node, candidate)) {
        return candidate;
      }
      return std::nullopt;
    }
    const Rational target = Rational::of_double(std::round(x[pick]));
    dive_node.change_bound(pick, true, target);
    dive_node.change_bound(pick, false, target);
    const FpLpResult next = solve_fp_lp(dive_node, &warm);
    if (next.status != FpLpStatus::Optimal) return std::nullopt;
    x = next.x;
    warm = next.basis;
  }
  return std::nullopt;
}

RepairResult repair(const RationalMIP& model, const FloatMIP& fmodel,
                    std::span<const double> candidate, RepairBudget& budget,
                    long exact_lp_bound_calls) {
  if (!budget.permits(exact_lp_bound_calls)) {
    return {RepairOutcome::BudgetExhausted, std::nullopt};
  }
  // Reject genuinely fractional (or non-finite) candidates before any LP
  // work.
  for (int j = 0; j < model.n; ++j) {
    if (!model.integer[j]) continue;
    if (!std::isfinite(candidate[j]) ||
        std::fabs(candidate[j] - std::round(candidate[j])) >
            kRepairFractionalityTol) {
      return {RepairOutcome::RejectedFractional, std::nullopt};
    }
  }
  ++budget.repair_calls;
  const auto start = std::chrono::steady_clock::now();

  NodeView restriction = NodeView::root(model, fmodel);
  for (int j = 0; j < model.n; ++j) {
    if (!model.integer[j]) continue;
    const Rational v = Rational::of_double(std::round(candidate[j]));
    restriction.change_bound(j, true, v);
    restriction.change_bound(j, false, v);
  }

  const ExactLpResult lp = solve_exact_lp(restriction);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (lp.status != ExactLpStatus::Optimal) {
    budget.time_fail_seconds += elapsed;
    return {RepairOutcome::RestrictionInfeasible, std::nullopt};
  }
  budget.time_success_seconds += elapsed;
  ++budget.repair_successes;
  Solution sol = make_solution(model, lp.x, SolutionOrigin::HeuristicRepair);
  if (check_solution_exact(model, sol.x).has_value()) {
    throw std::logic_error("repair produced an infeasible solution");
  }
  return {RepairOutcome::Repaired, std::move(sol)};
}

SolutionChecker::SolutionChecker(const RationalMIP& model,
                                 const FloatMIP& fmodel)
    : model_(&model), fmodel_(&fmodel) {
  delta_a_.resize(static_cast<size_t>(model.m));
  for (int i = 0; i < model.m; ++i) {
    const SparseVec& r = model.rows[i];
    delta_a_[i].reserve(r.size());
    for (size_t k = 0; k < r.size(); ++k) {
      const double a_bar = fmodel.row_val[i][k];
      if (!std::isfinite(a_bar)) {
        delta_a_[i].push_back(std::numeric_limits<double>::max());
        continue;
      }
      delta_a_[i].push_back(
          upper_double((Rational::of_double(a_bar) - r.val[k]).abs()));
    }
  }
}

CheckVerdict SolutionChecker::check(const std::vector<Rational>& x_star) const {
  const RationalMIP& model = *model_;
  CheckVerdict verdict;

  // Bounds and integrality exactly; these are cheap.
  for (int j = 0; j < model.n; ++j) {
    if (model.lb[j].is_finite() && x_star[j] < model.lb[j].value()) {
      verdict.violation =
          Violation{Violation::Kind::LowerBound, j, x_star[j]};
      return verdict;
    }
    if (model.ub[j].is_finite() && x_star[j] > model.ub[j].value()) {
      verdict.violation =
          Violation{Violation::Kind::UpperBound, j, x_star[j]};
      return verdict;
    }
    if (model.integer[j] && !x_star[j].is_integer()) {
      verdict.violation =
          Violation{Violation::Kind::Integrality, j, x_star[j]};
      return verdict;
    }
  }

  std::vector<double> x_bar(static_cast<size_t>(model.n));
  std::vector<double> delta_x(static_cast<size_t>(model.n));
  bool x_representable = true;
  for (int j = 0; j < model.n; ++j) {
    x_bar[j] = x_star[j].to_double_nearest();
    if (!std::isfinite(x_bar[j])) {
      // Beyond the float range: the fast path is unusable, not a verdict.
      x_representable = false;
      continue;
    }
    delta_x[j] = upper_double((Rational::of_double(x_bar[j]) - x_star[j]).abs());
  }

  for (int i = 0; i < model.m; ++i) {
    const SparseVec& r = model.rows[i];
    const size_t nnz = r.size();
    std::vector<double> a_bar(nnz), xr(nnz), da(nnz), dx(nnz);
    for (size_t k = 0; k < nnz; ++k) {
      a_bar[k] = fmodel_->row_val[i][k];
      xr[k] = x_bar[r.idx[k]];
      da[k] = delta_a_[i][k];
      dx[k] = delta_x[r.idx[k]];
    }
    bool finite_row = x_representable;
    for (const double v : a_bar) finite_row = finite_row && std::isfinite(v);
    bool fast_ok = false, fast_violated = false;
    if (finite_row) {
      const RunningErrorDot red = running_error_dot(a_bar, xr, da, dx);
      const Rational s = Rational::of_double(red.s);
      const Rational mu = Rational::of_double(red.mu);
      const Rational& b = model.rhs[i];
      // Acceptance may include the boundary; a violation proof must be
      // strict (activity == rhs satisfies an inequality row).
      switch (model.sense[i]) {
        case RowSense::GreaterEqual:
          fast_ok = s - mu >= b;
          fast_violated = s + mu < b;
          break;
        case RowSense::LessEqual:
          fast_ok = s + mu <= b;
          fast_violated = s - mu > b;
          break;
        case RowSense::Equal:
          fast_violated = s - mu > b || s + mu < b;
          break;
      }
    }
    if (fast_ok) {
      ++verdict.rows_fast_accepted;
      continue;
    }
    if (fast_violated) {
      ++verdict.rows_fast_rejected;
      verdict.violation =
          Violation{Violation::Kind::Row, i, model.activity(i, x_star)};
      return verdict;
    }
    ++verdict.rows_exact_checked;
    const Rational act = model.activity(i, x_star);
    if (!model.row_satisfied(i, act)) {
      verdict.violation = Violation{Violation::Kind::Row, i, act};
      return verdict;
    }
  }
  verdict.accepted = true;
  return verdict;
}

}  // namespace exmip
