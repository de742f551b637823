/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#include "exmip/aggregate.hpp"

#include <cmath>
#include <stdexcept>

namespace exmip {

double shifted_geomean(std::span<const double> values, double shift) {
  if (values.empty()) {
    throw std::invalid_argument("shifted_geomean: empty input");
  }
  double log_sum = 0;
  for (const double v : values) {
    const double shifted = v + shift;
    if (!(shifted > 0)) {
      throw std::invalid_argument("shifted_geomean: nonpositive shifted value");
    }
    log_sum += std::log(shifted);
  }
  return std::exp(log_sum / static_cast<double>(values.size())) - shift;
}

}  // namespace exmip
