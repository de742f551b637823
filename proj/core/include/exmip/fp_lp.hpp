/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#ifndef EXMIP_FP_LP_HPP
#define EXMIP_FP_LP_HPP

#include <optional>
#include <vector>

#include "exmip/basis.hpp"
#include "exmip/model.hpp"
#include "exmip/simplex.hpp"

namespace exmip {

enum class FpLpStatus : uint8_t {
  Optimal,
  InfeasibleClaimed,
  UnboundedClaimed,
  ObjectiveLimit,
  IterationLimit,
};

/// Untrusted floating-point LP answer: advisory values only, never used for
/// exact decisions without safe postprocessing.
struct FpLpResult {
  FpLpStatus status = FpLpStatus::IterationLimit;
  std::vector<double> x;
  std::vector<double> y;  // one multiplier per row, >= 0 on G-rows at optimum
  std::vector<double> d;  // reduced costs
  double objective = 0;
  Basis basis;
  long iterations = 0;
  long pivots = 0;
};

DenseLp<double> build_float_lp(const NodeView& node);

/// Solves the node relaxation in floating-point arithmetic. With an
/// objective limit, the result reports ObjectiveLimit when the dual
/// objective at termination exceeded the limit.
FpLpResult solve_fp_lp(const NodeView& node, const Basis* warm = nullptr,
                       std::optional<double> obj_limit = std::nullopt);

}  // namespace exmip

#endif  // EXMIP_FP_LP_HPP
