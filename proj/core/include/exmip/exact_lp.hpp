/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#ifndef EXMIP_EXACT_LP_HPP
#define EXMIP_EXACT_LP_HPP

#include <optional>
#include <vector>

#include "exmip/basis.hpp"
#include "exmip/fp_lp.hpp"
#include "exmip/model.hpp"

namespace exmip {

enum class ExactLpStatus : uint8_t { Optimal, Infeasible, Unbounded };

struct ExactLpResult {
  ExactLpStatus status = ExactLpStatus::Infeasible;
  std::vector<Rational> x;
  std::vector<Rational> y;  // row duals, >= 0 on G-rows, <= 0 on L-rows
  std::vector<Rational> d;  // reduced costs obj - A^T y
  Rational objective;       // excludes the model's objective constant
  Basis basis;
  /// Row multipliers of a verified Farkas contradiction when infeasible.
  std::vector<Rational> farkas_y;
  int refinement_rounds = 0;
  bool used_rational_finish = false;
};

/// Exact LP solve by iterative refinement: float solves on scaled residual
/// problems propose bases that are verified in rational arithmetic; when the
/// residuals stall, a rational simplex finishes from the current basis.
ExactLpResult solve_exact_lp(const NodeView& node, const Basis* warm = nullptr);

/// Exact verification that the Farkas multipliers prove infeasibility of the
/// node relaxation (signs compatible with row senses, bound pairings finite,
/// combined rhs positive).
bool verify_farkas(const NodeView& node, const std::vector<Rational>& farkas_y);

struct InteriorPoint {
  std::vector<Rational> y;  // strictly interior dual point
  Rational delta;           // guaranteed slack, maximized and capped at 1
};

/// Relative interior point of the dual feasible region of the root LP,
/// computed once per solve by the auxiliary LP max delta s.t. every strict
/// dual inequality has slack >= delta, delta <= 1. Returns nullopt when the
/// optimum slack is zero or the dual region is empty.
std::optional<InteriorPoint> interior_point(const RationalMIP& model);

}  // namespace exmip

#endif  // EXMIP_EXACT_LP_HPP
