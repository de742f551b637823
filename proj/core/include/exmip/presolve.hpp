/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#ifndef EXMIP_PRESOLVE_HPP
#define EXMIP_PRESOLVE_HPP

#include <optional>
#include <vector>

#include "exmip/model.hpp"

namespace exmip {

enum class ReductionKind : uint8_t {
  Fix,             // col := value
  Substitute,      // col := offset + coef * other_col
  SubstituteRow,   // col := (expr_rhs - expr^T x) / self_coef
  BoundChange,     // col bound tightened (no postsolve action)
  DeleteRow,
  MergeParallel,   // row_dropped = scale * row_kept
  ScaleRow,        // row scaled to coprime integers, rhs rounded
  StrengthenCoef,  // row coefficient and rhs reduced
};

/// One reversible presolve reduction. Only Fix, Substitute and SubstituteRow
/// act on solutions during postsolve; the rest preserve the column space.
struct Reduction {
  ReductionKind kind;
  int col = -1;
  int row = -1;
  Rational value;  // fix value, bound value, or row scale
  bool lower = false;
  int other_col = -1;
  Rational coef, offset;  // Substitute
  SparseVec expr;         // SubstituteRow: coefficients over remaining cols
  Rational self_coef, expr_rhs;
  int row_dropped = -1;  // MergeParallel
};

struct PresolveStats {
  int rounds = 0;
  /// True when the loop stopped because a full round found no reduction
  /// (as opposed to the round cap or the 1% threshold).
  bool reached_fixpoint = false;
  long fixed = 0;
  long aggregated = 0;
  long bound_changes = 0;
  long rows_deleted = 0;
  long coef_strengthened = 0;
  long rows_scaled = 0;
  double seconds = 0;

  long total() const {
    return fixed + aggregated + bound_changes + rows_deleted +
           coef_strengthened + rows_scaled;
  }
};

struct InfeasibilityWitness {
  enum class Kind : uint8_t { EmptyColumnDomain, UnsatisfiableRow, ParallelConflict };
  Kind kind;
  int index;  // column or row, original space
  Rational lo, hi;
};

/// Reversible record mapping reduced-space solutions back to original space
/// with identical objective value.
struct PostsolveStack {
  int original_n = 0;
  std::vector<Reduction> reductions;  // in application order
  std::vector<int> reduced_col_to_original;

  std::vector<Rational> postsolve(const std::vector<Rational>& reduced_x) const;
};

enum class PresolveStatus : uint8_t { Reduced, Infeasible };

struct PresolveResult {
  PresolveStatus status = PresolveStatus::Reduced;
  RationalMIP reduced;
  PostsolveStack stack;
  PresolveStats stats;
  std::optional<InfeasibilityWitness> witness;
};

/// Zero-tolerance rational presolve: rounds of constraint propagation,
/// coefficient strengthening, singleton columns, substitution, inequality
/// simplification, parallel rows and dual fixing, until a round changes
/// fewer than 1% of rows+columns or max_rounds is reached. The parallel
/// flag is a concurrency contract only: candidate detection may be split
/// over row ranges, application order is deterministic either way, and
/// results are identical.
PresolveResult presolve(const RationalMIP& model, int max_rounds = 10,
                        bool parallel = false);

struct PropagationResult {
  bool infeasible = false;
  int infeasible_col = -1;
  std::vector<Reduction> changes;  // BoundChange entries
};

/// Activity-based bound tightening in exact arithmetic; integer bounds are
/// rounded inward (ceil for lower, floor for upper).
PropagationResult propagate_bounds(const RationalMIP& model);

/// Columns whose objective and coefficient signs allow pinning to a finite
/// bound: c_j >= 0, coefficients <= 0 in G-rows and >= 0 in L-rows, no
/// equality rows, finite lower bound fixes to the lower bound (and the
/// symmetric rule to the upper bound).
std::vector<Reduction> dual_fix(const RationalMIP& model);

}  // namespace exmip

#endif  // EXMIP_PRESOLVE_HPP
