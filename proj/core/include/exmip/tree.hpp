/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#ifndef EXMIP_TREE_HPP
#define EXMIP_TREE_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "exmip/bounding.hpp"
#include "exmip/heuristics.hpp"
#include "exmip/model.hpp"
#include "exmip/presolve.hpp"

namespace exmip {

struct Config {
  double time_limit_seconds = 7200;
  long node_limit = -1;  // < 0: unlimited
  uint64_t seed = 0;
  bool presolve = true;
  bool heuristics = true;
  std::string certificate_path;  // enables certificates; forces presolve off
  BoundingStrategy bounding;
  int max_presolve_rounds = 10;
  Rational repair_budget_ratio = Rational(1, 2);
  Rational continuous_cutoff = Rational(4, 5);
  int heuristic_depth = 10;      // heuristics at every node up to this depth
  int heuristic_frequency = 10;  // and at every k-th node beyond
  int plunge_limit = 4;          // consecutive depth-first child selections

  /// Test hook observing each processed node.
  struct NodeTrace {
    const NodeView& view;
    int depth;
    const DualBoundResult& bounding;  // the result that decided the node
    double fp_objective;
    bool pruned_by_bound;
    bool pruned_infeasible;
    /// Incumbent objective (LP space, without the model constant) at the
    /// prune decision, when one existed.
    std::optional<Rational> incumbent_at_decision;
  };
  std::function<void(const NodeTrace&)> node_observer;

  bool certificates_enabled() const { return !certificate_path.empty(); }
};

enum class SolveStatus : uint8_t { Optimal, Infeasible, TimeLimit, NodeLimit };

const char* solve_status_name(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::TimeLimit;
  std::optional<Solution> incumbent;  // original space
  ExtendedRational primal_bound = ExtendedRational::infinity();
  ExtendedRational dual_bound = ExtendedRational::neg_infinity();
  ExtendedRational gap = ExtendedRational::infinity();
  long nodes = 0;
  double solve_seconds = 0;
  double heuristic_seconds = 0;
  double certificate_seconds = 0;
  BoundingStats bounding;
  RepairBudget repair;
  PresolveStats presolve_stats;
  bool certificate_written = false;

  /// `status objective nodes time dbtime[bshift,pshift,exlp]`
  std::string stats_line(const RationalMIP& model) const;
};

/// Pseudocost records per column and direction, initialized via strong
/// branching until a column has enough observations.
class Pseudocosts {
 public:
  explicit Pseudocosts(int n) : down_(n), up_(n) {}

  void record(int col, bool upward, double gain_per_unit);
  int observations(int col) const {
    return std::min(down_[col].count, up_[col].count);
  }
  double estimate(int col, bool upward) const;
  /// Product rule over the two fractional distances.
  double score(int col, double frac) const;

  static constexpr int kReliableObservations = 4;

 private:
  struct Dir {
    double gain_sum = 0;
    int count = 0;
  };
  std::vector<Dir> down_, up_;
};

struct BranchDecision {
  int col = -1;
  Rational floor_value;  // down child: x_col <= floor_value
  Rational ceil_value;   // up child:   x_col >= ceil_value
};

/// Picks the branching column by pseudocost product score with strong
/// branching until reliable; ties break toward the lowest (seed-permuted)
/// column index. Bound values come from the exact fractional value when
/// one is supplied, else from the float vector.
std::optional<BranchDecision> branch(const NodeView& node,
                                     const std::vector<double>& x,
                                     const std::vector<Rational>* exact_x,
                                     Pseudocosts& pseudocosts,
                                     const std::vector<int>& tie_order,
                                     const Basis* warm);

/// 0 when equal, infinity when unbounded or signs differ, else
/// |primal - dual| / max(|primal|, |dual|), exact.
ExtendedRational compute_gap(const ExtendedRational& primal,
                             const ExtendedRational& dual);

SolveResult solve(const RationalMIP& model, const Config& config = {});

/// Exhaustive testing oracle: enumerates all integer assignments and solves
/// each continuous restriction exactly. Refuses models with more than 20
/// integer columns, infinite integer bounds, or a lattice box larger than
/// 10^6 points.
SolveResult solve_oracle(const RationalMIP& model);

}  // namespace exmip

#endif  // EXMIP_TREE_HPP
