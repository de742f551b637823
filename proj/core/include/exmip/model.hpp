/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#ifndef EXMIP_MODEL_HPP
#define EXMIP_MODEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "exmip/rational.hpp"

namespace exmip {

enum class RowSense : uint8_t { GreaterEqual, LessEqual, Equal };

inline char sense_char(RowSense s) {
  switch (s) {
    case RowSense::GreaterEqual:
      return 'G';
    case RowSense::LessEqual:
      return 'L';
    case RowSense::Equal:
      break;
  }
  return 'E';
}

/// Sparse row with strictly increasing column indices and nonzero values.
struct SparseVec {
  std::vector<int> idx;
  std::vector<Rational> val;

  size_t size() const { return idx.size(); }
  void push(int j, Rational v) {
    idx.push_back(j);
    val.push_back(std::move(v));
  }
  /// Coefficient at column j, zero when absent.
  Rational at(int j) const;
  /// Sorts by index and drops exact zeros; merges duplicates by addition.
  void normalize();
};

/// Mixed integer program over the rationals:
///   min obj^T x + obj_constant
///   s.t. rows[i] (sense[i]) rhs[i],  lb <= x <= ub,  x_j integer for j in I.
/// A maximization input is stored negated with `maximize` set for reporting.
struct RationalMIP {
  int n = 0;
  int m = 0;
  std::vector<SparseVec> rows;
  std::vector<RowSense> sense;
  std::vector<Rational> rhs;
  std::vector<Rational> obj;
  Rational obj_constant;
  bool maximize = false;
  std::vector<ExtendedRational> lb, ub;
  std::vector<uint8_t> integer;
  std::vector<std::string> col_name, row_name;
  std::string name;

  int add_col(const std::string& name, ExtendedRational lo, ExtendedRational hi,
              bool is_integer, Rational cost = Rational());
  int add_row(const std::string& name, RowSense s, Rational b);

  Rational activity(int row, const std::vector<Rational>& x) const;
  bool row_satisfied(int row, const Rational& act) const;

  /// Any column with lb > ub makes the instance trivially infeasible.
  std::optional<int> inconsistent_bound_col() const;

  int num_integer_cols() const;
  /// Fraction of continuous columns, exact.
  Rational continuous_fraction() const;

  /// Objective value in the original (possibly maximization) sense.
  Rational report_objective(const Rational& minimized) const {
    return maximize ? -minimized : minimized;
  }
};

/// Componentwise nearest binary64 shadow of a RationalMIP. Entries beyond
/// the finite range saturate to +-infinity and are flagged.
struct FloatMIP {
  std::vector<std::vector<double>> row_val;  // parallel to model.rows[i].idx
  std::vector<double> rhs;
  std::vector<double> obj;
  std::vector<double> lb, ub;
  bool any_overflow = false;
  std::vector<std::pair<int, int>> overflow_entries;  // (row, position)
};

FloatMIP approximate(const RationalMIP& model);

struct Violation {
  enum class Kind : uint8_t { Row, LowerBound, UpperBound, Integrality };
  Kind kind;
  int index;
  Rational witness;  // row activity or offending value
};

/// Exact rational feasibility check; returns the first violation found
/// (rows in order, then bounds, then integrality) or nullopt if feasible.
std::optional<Violation> check_solution_exact(const RationalMIP& model,
                                              const std::vector<Rational>& x);

enum class SolutionOrigin : uint8_t { HeuristicRepair, LpIntegral, Oracle, File };

struct Solution {
  std::vector<Rational> x;
  std::vector<double> x_float;  // componentwise nearest
  Rational objective;           // obj^T x + obj_constant, exact, minimize sense
  SolutionOrigin origin = SolutionOrigin::Oracle;
};

Solution make_solution(const RationalMIP& model, std::vector<Rational> x,
                       SolutionOrigin origin);

/// A node-local view of the relaxation: the shared model plus tightened
/// bounds, with float images kept consistent (componentwise nearest).
struct NodeView {
  const RationalMIP* model = nullptr;
  const FloatMIP* fmodel = nullptr;
  std::vector<ExtendedRational> lb, ub;
  std::vector<double> lbf, ubf;

  static NodeView root(const RationalMIP& m, const FloatMIP& f);
  void change_bound(int col, bool lower, const Rational& v);
};

}  // namespace exmip

#endif  // EXMIP_MODEL_HPP
