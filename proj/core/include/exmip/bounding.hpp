/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#ifndef EXMIP_BOUNDING_HPP
#define EXMIP_BOUNDING_HPP

#include <array>
#include <optional>
#include <vector>

#include "exmip/exact_lp.hpp"
#include "exmip/fp_lp.hpp"
#include "exmip/model.hpp"

namespace exmip {

enum class BoundMethod : uint8_t { BShift, PShift, ExLp };

const char* bound_method_name(BoundMethod m);

/// Exact dual multipliers justifying a safe bound: row duals y plus the
/// bound-side reduced costs d = obj - A^T y. Recomputing
///   y^T b + sum_j min(d_j l_j, d_j u_j)
/// in rational arithmetic reproduces the bound exactly.
struct DualMultipliers {
  std::vector<Rational> y;
  std::vector<Rational> d;
};

struct DualBoundResult {
  ExtendedRational bound = ExtendedRational::neg_infinity();
  BoundMethod method = BoundMethod::BShift;
  bool success = false;
  /// Bound = +infinity prune signal backed by a Farkas proof.
  bool proves_infeasible = false;
  std::optional<DualMultipliers> multipliers;
  std::vector<Rational> farkas_y;
  double time_seconds = 0;
};

struct MethodStats {
  long calls = 0;
  long successes = 0;
  double time_seconds = 0;
};

/// Per-method bounding statistics plus the recent absolute bounding gaps
/// that feed the objective-limit inflation.
struct BoundingStats {
  MethodStats bshift, pshift, exlp;
  std::array<double, 32> recent_gaps{};
  int gap_count = 0;
  int gap_pos = 0;
  bool bshift_disabled = false;
  long objlimit_fallbacks = 0;

  MethodStats& of(BoundMethod m);
  const MethodStats& of(BoundMethod m) const;
  void record_gap(double gap);
  double mean_recent_gap() const;
  /// Disables bound-shift once its success rate drops below the threshold
  /// after at least min_calls calls.
  void update_bshift_disable(long min_calls, double threshold);
};

/// Safe bound from an approximate dual vector using only interval
/// arithmetic over the rational data, then certified by one exact rational
/// evaluation of the chosen multipliers. Fails (inapplicable) as soon as a
/// variable with an infinite bound meets a nonzero reduced-cost interval.
DualBoundResult bound_shift(const NodeView& node,
                            const std::vector<double>& fp_dual);

/// Safe bound by blending the approximate dual point toward a precomputed
/// relative interior point of the dual region until exactly feasible.
DualBoundResult project_and_shift(const NodeView& node,
                                  const std::vector<double>& fp_dual,
                                  const InteriorPoint* interior);

/// Safe bound from a full exact LP solve; infeasible nodes yield a
/// +infinity prune signal with a verified Farkas ray.
DualBoundResult exact_lp_bound(const NodeView& node,
                               const Basis* warm = nullptr);

struct BoundingStrategy {
  int exlp_depth_interval = 5;
  long bshift_min_calls = 20;
  double bshift_disable_threshold = 0.2;
  std::optional<BoundMethod> override_method;
};

struct MethodPlan {
  std::vector<BoundMethod> methods;
  /// Append an exact LP solve when the float LP objective reaches the
  /// incumbent within tolerance but the safe bound does not prune.
  bool escalate_exlp_on_near_cutoff = false;
};

MethodPlan select_bounding_method(int depth, FpLpStatus lp_status,
                                  const BoundingStats& stats,
                                  bool incumbent_present,
                                  const BoundingStrategy& strategy);

/// Floating-point objective limit handed to the LP solver: the incumbent
/// inflated by the statistically observed bounding error, rounded upward.
double inflate_objective_limit(const Rational& incumbent,
                               const BoundingStats& stats);

/// Near-cutoff test for exact LP escalation:
/// fp_objective >= nearest_float(incumbent) - 1e-6 * (1 + |incumbent|).
bool near_cutoff(double fp_objective, const Rational& incumbent);

/// Exact rational evaluation of the shifted dual bound for sign-feasible
/// multipliers y. Returns nullopt when some nonzero reduced cost pairs with
/// an infinite bound.
std::optional<std::pair<Rational, std::vector<Rational>>> exact_shifted_bound(
    const NodeView& node, const std::vector<Rational>& y);

}  // namespace exmip

#endif  // EXMIP_BOUNDING_HPP
