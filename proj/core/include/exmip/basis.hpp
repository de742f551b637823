/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#ifndef EXMIP_BASIS_HPP
#define EXMIP_BASIS_HPP

#include <cstdint>
#include <vector>

namespace exmip {

enum class ColStatus : uint8_t { Basic, AtLower, AtUpper, FreeNonbasic };
enum class RowStatus : uint8_t { BasicSlack, Tight };

/// Simplex basis snapshot used for warm starts between nodes and between
/// refinement rounds. The number of Basic column entries plus BasicSlack row
/// entries equals the row count.
struct Basis {
  std::vector<ColStatus> col;
  std::vector<RowStatus> row;

  bool empty() const { return col.empty() && row.empty(); }
  int basic_count() const {
    int k = 0;
    for (const ColStatus s : col) k += s == ColStatus::Basic ? 1 : 0;
    for (const RowStatus s : row) k += s == RowStatus::BasicSlack ? 1 : 0;
    return k;
  }
};

}  // namespace exmip

#endif  // EXMIP_BASIS_HPP
