/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#ifndef EXMIP_AGGREGATE_HPP
#define EXMIP_AGGREGATE_HPP

#include <span>

namespace exmip {

/// Shifted geometric mean (prod (v_i + s))^(1/k) - s, evaluated as
/// exp(mean(log(v_i + s))) - s. Throws on empty input or v_i + s <= 0.
double shifted_geomean(std::span<const double> values, double shift);

}  // namespace exmip

#endif  // EXMIP_AGGREGATE_HPP
