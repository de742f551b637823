/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#ifndef EXMIP_CERTIFICATE_HPP
#define EXMIP_CERTIFICATE_HPP

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "exmip/model.hpp"

namespace exmip {

/// Tree-less derivation log: a constraint index space of the model rows,
/// then the finite variable-bound constraints (x_j >= l_j as m + j,
/// -x_j >= -u_j as m + n + j), then the derivation entries in order. Each
/// derived inequality is justified as an assumption (asm), a sign-compatible
/// linear combination of earlier constraints (lin), a combination followed
/// by integer rounding (rnd), or the unsplitting of two entries proven under
/// complementary branching assumptions (uns).
enum class DerivationReason : uint8_t { Assumption, Linear, Rounded, Unsplit };

struct DerivationEntry {
  RowSense sense = RowSense::GreaterEqual;
  Rational rhs;
  SparseVec coefs;
  DerivationReason reason = DerivationReason::Assumption;
  std::vector<std::pair<int, Rational>> refs;  // lin/rnd: (index, multiplier)
  int uns_entry1 = -1, uns_asm1 = -1;
  int uns_entry2 = -1, uns_asm2 = -1;
};

class CertificateBuilder {
 public:
  explicit CertificateBuilder(const RationalMIP& model);

  /// Constraint-space index of a finite bound, -1 when infinite.
  int lower_bound_index(int col) const;
  int upper_bound_index(int col) const;
  int num_base_constraints() const { return base_; }

  /// Branching assumptions x_col <= value (upper) or x_col >= value.
  int add_assumption(int col, bool upper, const Rational& value);

  /// Objective bound obj^T x >= bound derived from dual multipliers y and
  /// reduced costs d = obj - A^T y. Positive d_j references the lower-bound
  /// justification lb_just[j], negative the upper ub_just[j] (global bound
  /// index or assumption entry). Returns the entry index.
  int add_bound_entry(const std::vector<Rational>& y,
                      const std::vector<Rational>& d, const Rational& bound,
                      const std::vector<int>& lb_just,
                      const std::vector<int>& ub_just);

  /// Falsehood 0 >= positive from Farkas row multipliers.
  int add_infeasibility_entry(const std::vector<Rational>& farkas_y,
                              const std::vector<int>& lb_just,
                              const std::vector<int>& ub_just);

  /// Bound-pair contradiction l_j > u_j at a node.
  int add_bound_conflict_entry(int col, const Rational& lo, const Rational& hi,
                               int lb_just, int ub_just);

  /// Combines two entries derived under complementary assumptions.
  int add_unsplit(int entry1, int asm1, int entry2, int asm2);

  void set_goal_infeasible() { infeasible_goal_ = true; }
  void set_goal_range(const Rational& lower, const Rational& upper) {
    range_ = {lower, upper};
  }
  void add_solution(const std::vector<Rational>& x) { solutions_.push_back(x); }

  void write(std::ostream& out) const;

  int entries() const { return static_cast<int>(derivations_.size()); }

 private:
  const RationalMIP* model_;
  int base_ = 0;  // m + 2n constraint indices precede derivations
  std::vector<DerivationEntry> derivations_;
  std::vector<std::vector<Rational>> solutions_;
  bool infeasible_goal_ = false;
  std::optional<std::pair<Rational, Rational>> range_;

  struct ConstraintView {
    RowSense sense = RowSense::GreaterEqual;
    Rational rhs;
    const SparseVec* coefs = nullptr;  // null for bound constraints
    int bound_col = -1;                // coefficient +-1 on this column
    Rational bound_coef;
  };
  ConstraintView view_of(int index) const;
  DerivationEntry combine(const std::vector<std::pair<int, Rational>>& refs) const;
};

enum class CheckCause : uint8_t {
  None,
  ModelMismatch,
  BadReference,
  SignCondition,
  CombinationMismatch,
  RoundingUnjustified,
  BadUnsplit,
  AssumptionsRemain,
  GoalNotProven,
  SolutionInfeasible,
  Malformed,
};

struct CheckResult {
  enum class Verdict : uint8_t { Accept, Reject, ParseError };
  Verdict verdict = Verdict::ParseError;
  int entry = -1;  // derivation index of the first failure, -1 for global
  CheckCause cause = CheckCause::None;
  std::string message;
};

/// Independent verification of a certificate against a model, in exact
/// rational arithmetic. Shares only the numerics and parsing layers with
/// the solver.
CheckResult check_certificate(const RationalMIP& model, std::istream& in);
CheckResult check_certificate_file(const RationalMIP& model,
                                   const std::string& path);

}  // namespace exmip

#endif  // EXMIP_CERTIFICATE_HPP
