/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#ifndef EXMIP_HEURISTICS_HPP
#define EXMIP_HEURISTICS_HPP

#include <optional>
#include <span>
#include <vector>

#include "exmip/bounding.hpp"
#include "exmip/fp_lp.hpp"
#include "exmip/model.hpp"

namespace exmip {

/// Working limits on the exact repair step: at most half as many calls as
/// exact LP bounding calls, and disabled on instances with more than 80%
/// continuous variables.
struct RepairBudget {
  long repair_calls = 0;
  long repair_successes = 0;
  double time_fail_seconds = 0;
  double time_success_seconds = 0;
  Rational continuous_fraction;
  Rational continuous_cutoff = Rational(4, 5);
  Rational budget_ratio = Rational(1, 2);

  bool permits(long exact_lp_bound_calls) const {
    if (continuous_fraction > continuous_cutoff) return false;
    return Rational(repair_calls) <= Rational(exact_lp_bound_calls) * budget_ratio;
  }
};

/// Simple rounding plus a bounded fractional-diving pass (at most 10 dives,
/// re-solving the float LP with tightened bounds). Returns a candidate that
/// is float-feasible within 1e-6, or nothing.
std::optional<std::vector<double>> fp_round_and_dive(const NodeView& node,
                                                     const FpLpResult& lp);

enum class RepairOutcome : uint8_t {
  Repaired,
  RejectedFractional,  // some integer candidate value off by more than 1e-4
  BudgetExhausted,
  RestrictionInfeasible,
};

struct RepairResult {
  RepairOutcome outcome;
  std::optional<Solution> solution;
};

/// Fixes integer variables to the nearest integers of the candidate and
/// solves the remaining continuous subproblem exactly; on optimality the
/// combined vector is exactly feasible.
RepairResult repair(const RationalMIP& model, const FloatMIP& fmodel,
                    std::span<const double> candidate, RepairBudget& budget,
                    long exact_lp_bound_calls);

struct CheckVerdict {
  bool accepted = false;
  std::optional<Violation> violation;
  int rows_fast_accepted = 0;
  int rows_fast_rejected = 0;
  int rows_exact_checked = 0;
};

/// Hybrid feasibility check: per row a running-error float evaluation
/// accepts or rejects when the error bound clears the rhs, and only
/// otherwise recomputes the activity exactly. Bounds and integrality are
/// checked exactly (cheap). Row perturbation radii |a_bar - a| are cached
/// per model.
class SolutionChecker {
 public:
  SolutionChecker(const RationalMIP& model, const FloatMIP& fmodel);

  CheckVerdict check(const std::vector<Rational>& x_star) const;

 private:
  const RationalMIP* model_;
  const FloatMIP* fmodel_;
  std::vector<std::vector<double>> delta_a_;  // per row, parallel to idx
};

}  // namespace exmip

#endif  // EXMIP_HEURISTICS_HPP
