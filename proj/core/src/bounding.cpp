/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#include "exmip/bounding.hpp"

#include <chrono>
#include <cmath>

#include "exmip/interval.hpp"

namespace exmip {

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

const char* bound_method_name(BoundMethod m) {
  switch (m) {
    case BoundMethod::BShift:
      return "bshift";
    case BoundMethod::PShift:
      return "pshift";
    case BoundMethod::ExLp:
      break;
  }
  return "exlp";
}

MethodStats& BoundingStats::of(BoundMethod m) {
  switch (m) {
    case BoundMethod::BShift:
      return bshift;
    case BoundMethod::PShift:
      return pshift;
    case BoundMethod::ExLp:
      break;
  }
  return exlp;
}

const MethodStats& BoundingStats::of(BoundMethod m) const {
  return const_cast<BoundingStats*>(this)->of(m);
}

void BoundingStats::record_gap(double gap) {
  if (!(gap >= 0) || !std::isfinite(gap)) return;
  recent_gaps[gap_pos] = gap;
  gap_pos = (gap_pos + 1) % static_cast<int>(recent_gaps.size());
  if (gap_count < static_cast<int>(recent_gaps.size())) ++gap_count;
}

double BoundingStats::mean_recent_gap() const {
  if (gap_count == 0) return 0;
  double sum = 0;
  for (int i = 0; i < gap_count; ++i) sum += recent_gaps[i];
  return sum / gap_count;
}

void BoundingStats::update_bshift_disable(long min_calls, double threshold) {
  if (bshift_disabled || bshift.calls < min_calls) return;
  const double rate =
      static_cast<double>(bshift.successes) / static_cast<double>(bshift.calls);
  if (rate < threshold) bshift_disabled = true;
}

std::optional<std::pair<Rational, std::vector<Rational>>> exact_shifted_bound(
    const NodeView& node, const std::vector<Rational>& y) {
  const RationalMIP& model = *node.model;
  std::vector<Rational> d = model.obj;
  Rational bound;
  for (int i = 0; i < model.m; ++i) {
    if (y[i].is_zero()) continue;
    switch (model.sense[i]) {
      case RowSense::GreaterEqual:
        if (y[i].sign() < 0) return std::nullopt;
        break;
      case RowSense::LessEqual:
        if (y[i].sign() > 0) return std::nullopt;
        break;
      case RowSense::Equal:
        break;
    }
    bound += y[i] * model.rhs[i];
    const SparseVec& r = model.rows[i];
    for (size_t k = 0; k < r.size(); ++k) d[r.idx[k]] -= y[i] * r.val[k];
  }
  for (int j = 0; j < model.n; ++j) {
    if (d[j].is_zero()) continue;
    if (d[j].sign() > 0) {
      if (!node.lb[j].is_finite()) return std::nullopt;
      bound += d[j] * node.lb[j].value();
    } else {
      if (!node.ub[j].is_finite()) return std::nullopt;
      bound += d[j] * node.ub[j].value();
    }
  }
  return std::make_pair(std::move(bound), std::move(d));
}

DualBoundResult bound_shift(const NodeView& node,
                            const std::vector<double>& fp_dual) {
  Stopwatch watch;
  DualBoundResult out;
  out.method = BoundMethod::BShift;
  const RationalMIP& model = *node.model;

  // Round the approximate duals to a sign-feasible point.
  std::vector<double> clipped(static_cast<size_t>(model.m), 0.0);
  for (int i = 0; i < model.m; ++i) {
    double v = i < static_cast<int>(fp_dual.size()) ? fp_dual[i] : 0.0;
    if (!std::isfinite(v)) v = 0.0;
    switch (model.sense[i]) {
      case RowSense::GreaterEqual:
        v = std::max(0.0, v);
        break;
      case RowSense::LessEqual:
        v = std::min(0.0, v);
        break;
      case RowSense::Equal:
        break;
    }
    clipped[i] = v;
  }

  // Interval pass: reduced-cost enclosures decide applicability.
  std::vector<FloatInterval> r(static_cast<size_t>(model.n));
  for (int j = 0; j < model.n; ++j) r[j] = FloatInterval::enclose(model.obj[j]);
  for (int i = 0; i < model.m; ++i) {
    if (clipped[i] == 0.0) continue;
    const SparseVec& row = model.rows[i];
    const FloatInterval yi = FloatInterval::point(clipped[i]);
    for (size_t k = 0; k < row.size(); ++k) {
      r[row.idx[k]] =
          r[row.idx[k]] - FloatInterval::enclose(row.val[k]) * yi;
    }
  }
  for (int j = 0; j < model.n; ++j) {
    const bool lf = node.lb[j].is_finite();
    const bool uf = node.ub[j].is_finite();
    if (lf && uf) continue;
    if (lf && r[j].lo >= 0) continue;
    if (uf && r[j].hi <= 0) continue;
    if (!lf && !uf && r[j].lo == 0 && r[j].hi == 0) continue;
    out.time_seconds = watch.seconds();
    return out;  // infinite bound with nonzero reduced-cost interval
  }

  // Certify by one exact rational evaluation of the chosen multipliers.
  std::vector<Rational> y;
  y.reserve(clipped.size());
  for (const double v : clipped) y.push_back(Rational::of_double(v));
  auto exact = exact_shifted_bound(node, y);
  if (!exact) {
    out.time_seconds = watch.seconds();
    return out;
  }
  out.success = true;
  out.bound = exact->first;
  out.multipliers = DualMultipliers{std::move(y), std::move(exact->second)};
  out.time_seconds = watch.seconds();
  return out;
}

DualBoundResult project_and_shift(const NodeView& node,
                                  const std::vector<double>& fp_dual,
                                  const InteriorPoint* interior) {
  Stopwatch watch;
  DualBoundResult out;
  out.method = BoundMethod::PShift;
  if (interior == nullptr) {
    out.time_seconds = watch.seconds();
    return out;
  }
  const RationalMIP& model = *node.model;

  std::vector<Rational> approx(static_cast<size_t>(model.m));
  for (int i = 0; i < model.m; ++i) {
    const double v = i < static_cast<int>(fp_dual.size()) ? fp_dual[i] : 0.0;
    approx[i] = std::isfinite(v) ? Rational::of_double(v) : Rational();
  }

  // Exact crossing ratios violation / (violation + slack), maximized over
  // the violated dual constraints; lambda = 1 falls back to the interior
  // point itself.
  Rational lambda;
  const auto consider = [&lambda](const Rational& violation,
                                  const Rational& slack) {
    if (violation.sign() <= 0) return;
    if (slack.sign() <= 0) {
      lambda = Rational(1);
      return;
    }
    const Rational ratio = violation / (violation + slack);
    if (ratio > lambda) lambda = ratio;
  };

  for (int i = 0; i < model.m; ++i) {
    switch (model.sense[i]) {
      case RowSense::GreaterEqual:
        consider(-approx[i], interior->y[i]);
        break;
      case RowSense::LessEqual:
        consider(approx[i], -interior->y[i]);
        break;
      case RowSense::Equal:
        break;
    }
  }
  // Reduced-cost conditions, one pass per column over both dual points.
  std::vector<Rational> d_approx = model.obj;
  std::vector<Rational> d_interior = model.obj;
  for (int i = 0; i < model.m; ++i) {
    const SparseVec& row = model.rows[i];
    for (size_t k = 0; k < row.size(); ++k) {
      const int j = row.idx[k];
      if (!approx[i].is_zero()) d_approx[j] -= approx[i] * row.val[k];
      if (!interior->y[i].is_zero()) d_interior[j] -= interior->y[i] * row.val[k];
    }
  }
  for (int j = 0; j < model.n; ++j) {
    const bool lf = node.lb[j].is_finite();
    const bool uf = node.ub[j].is_finite();
    if (lf && uf) continue;
    if (lf && !uf) {
      consider(-d_approx[j], d_interior[j]);
    } else if (uf && !lf) {
      consider(d_approx[j], -d_interior[j]);
    } else if (!d_approx[j].is_zero()) {
      lambda = Rational(1);  // equality condition violated: take y° outright
    }
  }

  std::vector<Rational> blended(static_cast<size_t>(model.m));
  const Rational one_minus = Rational(1) - lambda;
  for (int i = 0; i < model.m; ++i) {
    blended[i] = lambda * interior->y[i] + one_minus * approx[i];
  }
  auto exact = exact_shifted_bound(node, blended);
  if (!exact) {
    out.time_seconds = watch.seconds();
    return out;
  }
  out.success = true;
  out.bound = exact->first;
  out.multipliers = DualMultipliers{std::move(blended), std::move(exact->second)};
  out.time_seconds = watch.seconds();
  return out;
}

DualBoundResult exact_lp_bound(const NodeView& node, const Basis* warm) {
  Stopwatch watch;
  DualBoundResult out;
  out.method = BoundMethod::ExLp;
  const ExactLpResult r = solve_exact_lp(node, warm);
  switch (r.status) {
    case ExactLpStatus::Optimal:
      out.success = true;
      out.bound = r.objective;
      out.multipliers = DualMultipliers{r.y, r.d};
      break;
    case ExactLpStatus::Infeasible:
      out.success = true;
      out.proves_infeasible = true;
      out.bound = ExtendedRational::infinity();
      out.farkas_y = r.farkas_y;
      break;
    case ExactLpStatus::Unbounded:
      out.success = true;
      out.bound = ExtendedRational::neg_infinity();
      break;
  }
  out.time_seconds = watch.seconds();
  return out;
}

MethodPlan select_bounding_method(int depth, FpLpStatus lp_status,
                                  const BoundingStats& stats,
                                  bool incumbent_present,
                                  const BoundingStrategy& strategy) {
  MethodPlan plan;
  if (strategy.override_method.has_value()) {
    plan.methods.push_back(*strategy.override_method);
    return plan;
  }
  if (strategy.exlp_depth_interval > 0 &&
      depth % strategy.exlp_depth_interval == 0) {
    plan.methods.push_back(BoundMethod::ExLp);
    return plan;
  }
  // Untrusted non-optimal claims need the exact LP to resolve the node.
  if (lp_status != FpLpStatus::Optimal &&
      lp_status != FpLpStatus::ObjectiveLimit) {
    plan.methods.push_back(BoundMethod::ExLp);
    return plan;
  }
  if (!stats.bshift_disabled) plan.methods.push_back(BoundMethod::BShift);
  plan.methods.push_back(BoundMethod::PShift);
  plan.escalate_exlp_on_near_cutoff = incumbent_present;
  return plan;
}

double inflate_objective_limit(const Rational& incumbent,
                               const BoundingStats& stats) {
  const double base = incumbent.to_double_nearest();
  const double floor_term = 1e-9 * (1 + std::fabs(base));
  const double gap_term = 2 * stats.mean_recent_gap();
  return round_up(base + std::max(floor_term, gap_term));
}

bool near_cutoff(double fp_objective, const Rational& incumbent) {
  const double inc = incumbent.to_double_nearest();
  return fp_objective >= inc - 1e-6 * (1 + std::fabs(inc));
}

}  // namespace exmip
