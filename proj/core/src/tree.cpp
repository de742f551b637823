/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#include "exmip/tree.hpp"

#include <algorithm>
#include <cstdio>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "exmip/certificate.hpp"
#include "exmip/exact_lp.hpp"

namespace exmip {

namespace {

constexpr double kBranchIntegralityTol = 1e-6;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

const char* solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::Infeasible:
      return "infeasible";
    case SolveStatus::TimeLimit:
      return "time-limit";
    case SolveStatus::NodeLimit:
      break;
  }
  return "node-limit";
}

std::string SolveResult::stats_line(const RationalMIP& model) const {
  std::ostringstream os;
  os << solve_status_name(status) << " ";
  if (incumbent.has_value()) {
    os << model.report_objective(incumbent->objective).to_string();
  } else {
    os << "-";
  }
  os << " " << nodes << " ";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", solve_seconds);
  os << buf << " dbtime[";
  std::snprintf(buf, sizeof buf, "%.3f,%.3f,%.3f", bounding.bshift.time_seconds,
                bounding.pshift.time_seconds, bounding.exlp.time_seconds);
  os << buf << "]";
  return os.str();
}

void Pseudocosts::record(int col, bool upward, double gain_per_unit) {
  Dir& d = upward ? up_[col] : down_[col];
  d.gain_sum += std::max(0.0, gain_per_unit);
  ++d.count;
}

double Pseudocosts::estimate(int col, bool upward) const {
  const Dir& d = upward ? up_[col] : down_[col];
  if (d.count == 0) return 0;
  return d.gain_sum / d.count;
}

double Pseudocosts::score(int col, double frac) const {
  constexpr double kEps = 1e-6;
  const double down = estimate(col, false) * frac;
  const double up = estimate(col, true) * (1 - frac);
  return std::max(down, kEps) * std::max(up, kEps);
}

ExtendedRational compute_gap(const ExtendedRational& primal,
                             const ExtendedRational& dual) {
  if (primal == dual) return ExtendedRational(Rational(0));
  if (!primal.is_finite() || !dual.is_finite()) {
    return ExtendedRational::infinity();
  }
  const Rational& p = primal.value();
  const Rational& d = dual.value();
  if (p.sign() * d.sign() < 0 || p.sign() == 0 || d.sign() == 0) {
    return ExtendedRational::infinity();
  }
  const Rational denom = max(p.abs(), d.abs());
  return ExtendedRational((p - d).abs() / denom);
}

std::optional<BranchDecision> branch(const NodeView& node,
                                     const std::vector<double>& x,
                                     const std::vector<Rational>* exact_x,
                                     Pseudocosts& pseudocosts,
                                     const std::vector<int>& tie_order,
                                     const Basis* warm) {
  const RationalMIP& model = *node.model;
  struct Candidate {
    int col;
    double frac;
  };
  std::vector<Candidate> candidates;
  for (int j = 0; j < model.n; ++j) {
    if (!model.integer[j]) continue;
    double frac;
    if (exact_x != nullptr) {
      if ((*exact_x)[j].is_integer()) continue;
      frac = ((*exact_x)[j] - (*exact_x)[j].floor()).to_double_nearest();
    } else {
      frac = x[j] - std::floor(x[j]);
      if (std::min(frac, 1 - frac) <= kBranchIntegralityTol) continue;
    }
    candidates.push_back({j, frac});
  }
  if (candidates.empty()) return std::nullopt;

  // Strong branching initializes pseudocosts until a column has enough
  // recorded observations.
  double parent_obj = 0;
  if (node.fmodel != nullptr) {
    for (int j = 0; j < model.n; ++j) parent_obj += node.fmodel->obj[j] * x[j];
  }
  for (const Candidate& c : candidates) {
    if (pseudocosts.observations(c.col) >= Pseudocosts::kReliableObservations) {
      continue;
    }
    const double value = exact_x != nullptr
                             ? (*exact_x)[c.col].to_double_nearest()
                             : x[c.col];
    const Rational down_target = Rational::of_double(std::floor(value));
    for (const bool upward : {false, true}) {
      NodeView child = node;
      if (upward) {
        child.change_bound(c.col, true, down_target + Rational(1));
      } else {
        child.change_bound(c.col, false, down_target);
      }
      const FpLpResult r = solve_fp_lp(child, warm);
      double gain;
      if (r.status == FpLpStatus::Optimal) {
        gain = std::max(0.0, r.objective - parent_obj);
      } else {
        gain = 1e10;  // infeasible or failed child: strongly attractive
      }
      const double dist = upward ? 1 - c.frac : c.frac;
      pseudocosts.record(c.col, upward, gain / std::max(dist, 1e-9));
    }
  }

  int best = -1;
  double best_score = -1;
  for (const Candidate& c : candidates) {
    const double s = pseudocosts.score(c.col, c.frac);
    const bool better =
        best < 0 || s > best_score ||
        (s == best_score && tie_order[c.col] < tie_order[best]);
    if (better) {
      best = c.col;
      best_score = s;
    }
  }

  BranchDecision d;
  d.col = best;
  if (exact_x != nullptr) {
    d.floor_value = (*exact_x)[best].floor();
  } else {
    d.floor_value = Rational::of_double(std::floor(x[best]));
  }
  d.ceil_value = d.floor_value + Rational(1);
  return d;
}

namespace {

struct NodeRecord {
  long id = 0;
  long parent = -1;
  bool is_up_child = false;
  int depth = 0;
  ExtendedRational inherited = ExtendedRational::neg_infinity();
  int just_entry = -1;  // certificate entry justifying the inherited bound
  std::shared_ptr<const Basis> warm;
  std::vector<ExtendedRational> lb, ub;
  std::vector<double> lbf, ubf;
  std::vector<int> lb_just, ub_just;  // certificate constraint indices
};

struct BranchRecord {
  int asm_down = -1, asm_up = -1;
  int down_entry = -1, up_entry = -1;
  bool down_set = false, up_set = false;
};

class TreeSolver {
 public:
  TreeSolver(const RationalMIP& model, const Config& config)
      : model_(model),
        config_(config),
        fmodel_(approximate(model)),
        checker_(model, fmodel_),
        pseudocosts_(model.n),
        tie_order_(static_cast<size_t>(model.n)) {
    std::iota(tie_order_.begin(), tie_order_.end(), 0);
    if (config_.seed != 0) {
      std::vector<int> perm(tie_order_);
      std::mt19937_64 rng(config_.seed);
      std::shuffle(perm.begin(), perm.end(), rng);
      for (int j = 0; j < model.n; ++j) tie_order_[perm[j]] = j;
    }
    budget_.continuous_fraction = model.continuous_fraction();
    budget_.budget_ratio = config_.repair_budget_ratio;
    budget_.continuous_cutoff = config_.continuous_cutoff;
    if (config_.certificates_enabled()) {
      cert_ = std::make_unique<CertificateBuilder>(model);
    }
  }

  SolveResult run() {
    start_ = Clock::now();
    SolveResult out;

    push_root();
    SolveStatus status = SolveStatus::Optimal;
    while (true) {
      if (queue_.empty()) {
        status = incumbent_.has_value() ? SolveStatus::Optimal
                                        : SolveStatus::Infeasible;
        break;
      }
      if (config_.time_limit_seconds > 0 &&
          seconds_since(start_) > config_.time_limit_seconds) {
        status = SolveStatus::TimeLimit;
        break;
      }
      if (config_.node_limit >= 0 && nodes_processed_ >= config_.node_limit) {
        status = SolveStatus::NodeLimit;
        break;
      }
      NodeRecord node = pop_node();
      if (incumbent_.has_value() && node.inherited >= inc_lp_obj()) {
        resolve(node.id, node.parent, node.is_up_child, node.just_entry);
        continue;
      }
      process(std::move(node));
    }

    out.status = status;
    out.nodes = nodes_processed_;
    out.bounding = stats_;
    out.repair = budget_;
    out.heuristic_seconds = heur_seconds_;
    if (incumbent_.has_value()) {
      out.incumbent = incumbent_;
      out.primal_bound = incumbent_->objective;
    }
    switch (status) {
      case SolveStatus::Optimal:
        out.dual_bound = out.primal_bound;
        break;
      case SolveStatus::Infeasible:
        out.primal_bound = ExtendedRational::infinity();
        out.dual_bound = ExtendedRational::infinity();
        break;
      default: {
        ExtendedRational open_min = ExtendedRational::infinity();
        for (const auto& [key, id] : queue_) {
          open_min = min(open_min, key.first);
        }
        if (open_min.is_finite()) {
          open_min = ExtendedRational(open_min.value() + model_.obj_constant);
        }
        out.dual_bound = min(open_min, out.primal_bound);
        break;
      }
    }
    out.gap = compute_gap(out.primal_bound, out.dual_bound);

    if (cert_ && (status == SolveStatus::Optimal ||
                  status == SolveStatus::Infeasible)) {
      const auto t0 = Clock::now();
      if (status == SolveStatus::Infeasible) {
        cert_->set_goal_infeasible();
      } else {
        const Rational z = incumbent_->objective - model_.obj_constant;
        cert_->set_goal_range(z, z);
        cert_->add_solution(incumbent_->x);
      }
      std::ofstream f(config_.certificate_path);
      if (f) {
        cert_->write(f);
        out.certificate_written = static_cast<bool>(f);
      }
      cert_seconds_ += seconds_since(t0);
    }
    out.certificate_seconds = cert_seconds_;
    out.solve_seconds = seconds_since(start_);
    return out;
  }

 private:
  const RationalMIP& model_;
  Config config_;
  FloatMIP fmodel_;
  SolutionChecker checker_;
  Pseudocosts pseudocosts_;
  std::vector<int> tie_order_;

  std::optional<Solution> incumbent_;
  BoundingStats stats_;
  RepairBudget budget_;
  std::optional<InteriorPoint> interior_;
  bool interior_attempted_ = false;
  std::unique_ptr<CertificateBuilder> cert_;

  long next_id_ = 0;
  long nodes_processed_ = 0;
  std::map<long, NodeRecord> open_;
  std::set<std::pair<std::pair<ExtendedRational, long>, long>> queue_;
  long plunge_target_ = -1;
  int plunge_count_ = 0;
  std::map<long, BranchRecord> branches_;  // keyed by branching node id
  std::map<long, std::pair<long, bool>> parent_of_;  // id -> (parent, is_up)

  Clock::time_point start_;
  double heur_seconds_ = 0;
  double cert_seconds_ = 0;

  Rational inc_lp_obj() const {
    return incumbent_->objective - model_.obj_constant;
  }

  void push_root() {
    NodeRecord root;
    root.id = next_id_++;
    root.depth = 0;
    root.lb = model_.lb;
    root.ub = model_.ub;
    root.lbf = fmodel_.lb;
    root.ubf = fmodel_.ub;
    if (cert_) {
      root.lb_just.resize(model_.n);
      root.ub_just.resize(model_.n);
      for (int j = 0; j < model_.n; ++j) {
        root.lb_just[j] = cert_->lower_bound_index(j);
        root.ub_just[j] = cert_->upper_bound_index(j);
      }
    }
    enqueue(std::move(root));
  }

  void enqueue(NodeRecord node) {
    queue_.insert({{node.inherited, node.id}, node.id});
    parent_of_[node.id] = {node.parent, node.is_up_child};
    open_.emplace(node.id, std::move(node));
  }

  NodeRecord pop_node() {
    long id;
    if (plunge_target_ >= 0 && open_.count(plunge_target_) != 0 &&
        plunge_count_ < config_.plunge_limit) {
      id = plunge_target_;
      ++plunge_count_;
    } else {
      id = queue_.begin()->second;
      plunge_count_ = 0;
    }
    plunge_target_ = -1;
    const auto it = open_.find(id);
    queue_.erase({{it->second.inherited, id}, id});
    NodeRecord node = std::move(it->second);
    open_.erase(it);
    return node;
  }

  NodeView make_view(const NodeRecord& node) const {
    NodeView v;
    v.model = &model_;
    v.fmodel = &fmodel_;
    v.lb = node.lb;
    v.ub = node.ub;
    v.lbf = node.lbf;
    v.ubf = node.ubf;
    return v;
  }

  /// Certificate unsplit propagation: a resolved node hands its entry to
  /// the parent's branch record; once both children are in, the parent
  /// resolves with the combined entry.
  void resolve(long id, long parent, bool is_up, int entry) {
    if (!cert_) return;
    if (entry < 0) {
      throw std::logic_error("certificate: node resolved without an entry");
    }
    long cur = id;
    long cur_parent = parent;
    bool cur_up = is_up;
    int cur_entry = entry;
    while (cur_parent >= 0) {
      BranchRecord& br = branches_.at(cur_parent);
      if (cur_up) {
        br.up_entry = cur_entry;
        br.up_set = true;
      } else {
        br.down_entry = cur_entry;
        br.down_set = true;
      }
      if (!br.down_set || !br.up_set) return;
      const auto t0 = Clock::now();
      cur_entry =
          cert_->add_unsplit(br.down_entry, br.asm_down, br.up_entry, br.asm_up);
      cert_seconds_ += seconds_since(t0);
      cur = cur_parent;
      const auto& [p, up] = parent_of_.at(cur);
      cur_parent = p;
      cur_up = up;
    }
    (void)cur;
  }

  void ensure_interior() {
    if (interior_attempted_) return;
    interior_attempted_ = true;
    interior_ = interior_point(model_);
  }

  DualBoundResult run_one(BoundMethod method, const NodeView& view,
                          const FpLpResult& fp) {
    DualBoundResult r;
    switch (method) {
      case BoundMethod::BShift:
        r = bound_shift(view, fp.y);
        break;
      case BoundMethod::PShift: {
        const auto t0 = Clock::now();
        ensure_interior();
        r = project_and_shift(view, fp.y,
                              interior_.has_value() ? &*interior_ : nullptr);
        r.time_seconds = seconds_since(t0);  // includes the one-time interior LP
        break;
      }
      case BoundMethod::ExLp:
        r = exact_lp_bound(view, fp.basis.empty() ? nullptr : &fp.basis);
        break;
    }
    MethodStats& ms = stats_.of(method);
    ++ms.calls;
    ms.time_seconds += r.time_seconds;
    if (r.success) ++ms.successes;
    if (method == BoundMethod::BShift) {
      stats_.update_bshift_disable(config_.bounding.bshift_min_calls,
                                   config_.bounding.bshift_disable_threshold);
    }
    return r;
  }

  DualBoundResult run_plan(const MethodPlan& plan, const NodeView& view,
                           const FpLpResult& fp) {
    DualBoundResult last;
    for (const BoundMethod m : plan.methods) {
      last = run_one(m, view, fp);
      if (last.success) return last;
    }
    // A forced method that cannot apply would stall the search; the exact
    // LP is the always-applicable fallback.
    if (!last.success && config_.bounding.override_method.has_value() &&
        *config_.bounding.override_method != BoundMethod::ExLp) {
      last = run_one(BoundMethod::ExLp, view, fp);
    }
    return last;
  }

  bool try_incumbent(Solution sol) {
    if (incumbent_.has_value() && !(sol.objective < incumbent_->objective)) {
      return false;
    }
    incumbent_ = std::move(sol);
    return true;
  }

  /// Exact candidate from a float vector (used when the repair budget is
  /// exhausted: the candidate goes through the hybrid check instead).
  void check_candidate(const std::vector<double>& cand) {
    std::vector<Rational> x;
    x.reserve(cand.size());
    for (int j = 0; j < model_.n; ++j) {
      if (model_.integer[j]) {
        x.push_back(Rational::of_double(std::round(cand[j])));
      } else {
        x.push_back(Rational::of_double(cand[j]));
      }
    }
    const CheckVerdict v = checker_.check(x);
    if (v.accepted) {
      try_incumbent(make_solution(model_, std::move(x),
                                  SolutionOrigin::LpIntegral));
    }
  }

  void run_heuristics(const NodeView& view, const FpLpResult& fp) {
    const auto t0 = Clock::now();
    const auto cand = fp_round_and_dive(view, fp);
    if (cand.has_value()) {
      const RepairResult rr =
          repair(model_, fmodel_, *cand, budget_, stats_.exlp.calls);
      if (rr.outcome == RepairOutcome::Repaired) {
        try_incumbent(*rr.solution);
      } else if (rr.outcome == RepairOutcome::BudgetExhausted) {
        check_candidate(*cand);
      }
    }
    heur_seconds_ += seconds_since(t0);
  }

  struct NodeBound {
    ExtendedRational bound = ExtendedRational::neg_infinity();
    int entry = -1;  // certificate entry for `bound`, -1 when none needed
  };

  /// Emits the certificate entry for a successful bounding result under the
  /// node's local bound justifications.
  int emit_bound_entry(const NodeRecord& node, const DualBoundResult& r) {
    if (!cert_ || !r.success) return -1;
    const auto t0 = Clock::now();
    int entry = -1;
    if (r.proves_infeasible) {
      entry = cert_->add_infeasibility_entry(r.farkas_y, node.lb_just,
                                             node.ub_just);
    } else if (r.multipliers.has_value() && r.bound.is_finite()) {
      entry = cert_->add_bound_entry(r.multipliers->y, r.multipliers->d,
                                     r.bound.value(), node.lb_just,
                                     node.ub_just);
    }
    cert_seconds_ += seconds_since(t0);
    return entry;
  }

  void process(NodeRecord node) {
    ++nodes_processed_;
    const NodeView view = make_view(node);

    // Conflicting local bounds prune immediately.
    for (int j = 0; j < model_.n; ++j) {
      if (node.lb[j].is_finite() && node.ub[j].is_finite() &&
          node.lb[j].value() > node.ub[j].value()) {
        int entry = -1;
        if (cert_) {
          entry = cert_->add_bound_conflict_entry(
              j, node.lb[j].value(), node.ub[j].value(), node.lb_just[j],
              node.ub_just[j]);
        }
        resolve(node.id, node.parent, node.is_up_child, entry);
        return;
      }
    }

    std::optional<double> limit;
    if (incumbent_.has_value()) {
      limit = inflate_objective_limit(inc_lp_obj(), stats_);
    }
    FpLpResult fp = solve_fp_lp(view, node.warm.get(), limit);
    MethodPlan plan =
        select_bounding_method(node.depth, fp.status, stats_,
                               incumbent_.has_value(), config_.bounding);
    DualBoundResult result = run_plan(plan, view, fp);

    // When the LP stopped on the inflated objective limit but safe bounding
    // does not confirm the cutoff, re-solve without a limit.
    if (fp.status == FpLpStatus::ObjectiveLimit) {
      const bool prunes =
          result.success &&
          (result.proves_infeasible ||
           (incumbent_.has_value() && result.bound >= inc_lp_obj()));
      if (!prunes) {
        ++stats_.objlimit_fallbacks;
        fp = solve_fp_lp(view, node.warm.get(), std::nullopt);
        plan = select_bounding_method(node.depth, fp.status, stats_,
                                      incumbent_.has_value(), config_.bounding);
        result = run_plan(plan, view, fp);
      }
    }

    // Exact LP escalation when the node looks prunable within tolerances
    // but the safe bound does not prove it.
    if (plan.escalate_exlp_on_near_cutoff && incumbent_.has_value() &&
        fp.status == FpLpStatus::Optimal &&
        near_cutoff(fp.objective, inc_lp_obj())) {
      const bool pruned_already =
          result.success &&
          (result.proves_infeasible || result.bound >= inc_lp_obj());
      if (!pruned_already) {
        const DualBoundResult escalated = run_one(BoundMethod::ExLp, view, fp);
        if (escalated.success) result = escalated;
      }
    }

    if (fp.status == FpLpStatus::Optimal && result.success &&
        result.bound.is_finite()) {
      stats_.record_gap(
          std::fabs(fp.objective - result.bound.value().to_double_nearest()));
    }
    const auto notify = [&](const DualBoundResult& decided, double fpobj,
                            bool by_bound, bool infeasible) {
      if (!config_.node_observer) return;
      Config::NodeTrace trace{view,
                              node.depth,
                              decided,
                              fpobj,
                              by_bound,
                              infeasible,
                              incumbent_.has_value()
                                  ? std::optional<Rational>(inc_lp_obj())
                                  : std::nullopt};
      config_.node_observer(trace);
    };

    if (node.depth == 0 && result.success && result.bound.is_neg_inf()) {
      throw std::runtime_error(
          "relaxation is unbounded; unbounded instances are not supported");
    }

    const int own_entry = emit_bound_entry(node, result);
    if (result.proves_infeasible) {
      notify(result, fp.objective, false, true);
      resolve(node.id, node.parent, node.is_up_child, own_entry);
      return;
    }

    NodeBound nb;
    nb.bound = node.inherited;
    nb.entry = node.just_entry;
    if (result.success && result.bound >= nb.bound) {
      nb.bound = result.bound;
      if (own_entry >= 0) nb.entry = own_entry;
    }

    const auto prune_by_bound = [&]() -> bool {
      if (!incumbent_.has_value()) return false;
      const Rational cutoff = inc_lp_obj();
      if (!(nb.bound >= ExtendedRational(cutoff))) return false;
      notify(result, fp.objective, true, false);
      int entry = -1;
      if (cert_) {
        if (own_entry >= 0 && result.success &&
            result.bound >= ExtendedRational(cutoff)) {
          entry = own_entry;
        } else if (node.just_entry >= 0 &&
                   node.inherited >= ExtendedRational(cutoff)) {
          entry = node.just_entry;
        } else {
          // A pruning bound without multipliers: re-derive it exactly
          // rather than emit an unjustified entry.
          const DualBoundResult redo = run_one(BoundMethod::ExLp, view, fp);
          entry = emit_bound_entry(node, redo);
        }
      }
      resolve(node.id, node.parent, node.is_up_child, entry);
      return true;
    };
    if (prune_by_bound()) return;

    // Heuristics on schedule.
    const bool heur_due =
        config_.heuristics &&
        (node.depth <= config_.heuristic_depth ||
         (config_.heuristic_frequency > 0 &&
          nodes_processed_ % config_.heuristic_frequency == 0));
    if (heur_due && (fp.status == FpLpStatus::Optimal ||
                     fp.status == FpLpStatus::ObjectiveLimit)) {
      run_heuristics(view, fp);
      if (prune_by_bound()) return;
    }

    // Integral float LP solutions are never accepted directly; they go
    // through repair / exact checking, and the node needs an exact LP to
    // either prune or expose an exactly fractional column.
    bool need_exact_fallback = false;
    std::optional<std::vector<Rational>> exact_x;
    if (fp.status == FpLpStatus::Optimal) {
      bool integral = true;
      for (int j = 0; j < model_.n && integral; ++j) {
        if (!model_.integer[j]) continue;
        const double frac = fp.x[j] - std::floor(fp.x[j]);
        integral = std::min(frac, 1 - frac) <= kBranchIntegralityTol;
      }
      if (integral) {
        std::vector<double> cand = fp.x;
        for (int j = 0; j < model_.n; ++j) {
          if (model_.integer[j]) cand[j] = std::round(cand[j]);
        }
        const RepairResult rr =
            repair(model_, fmodel_, cand, budget_, stats_.exlp.calls);
        if (rr.outcome == RepairOutcome::Repaired) {
          try_incumbent(*rr.solution);
        } else if (rr.outcome == RepairOutcome::BudgetExhausted) {
          check_candidate(cand);
        }
        if (prune_by_bound()) return;
        need_exact_fallback = true;
      }
    } else if (fp.status != FpLpStatus::ObjectiveLimit) {
      // Untrusted non-optimal float answer: its x is unusable for
      // branching, so fetch the exact relaxation solution.
      need_exact_fallback = true;
    }

    if (need_exact_fallback) {
      const auto t0 = Clock::now();
      const ExactLpResult ex =
          solve_exact_lp(view, fp.basis.empty() ? nullptr : &fp.basis);
      ++stats_.exlp.calls;
      ++stats_.exlp.successes;
      stats_.exlp.time_seconds += seconds_since(t0);
      if (ex.status == ExactLpStatus::Infeasible) {
        DualBoundResult dr;
        dr.method = BoundMethod::ExLp;
        dr.success = true;
        dr.proves_infeasible = true;
        dr.farkas_y = ex.farkas_y;
        notify(dr, fp.objective, false, true);
        const int entry = emit_bound_entry(node, dr);
        resolve(node.id, node.parent, node.is_up_child, entry);
        return;
      }
      if (ex.status == ExactLpStatus::Unbounded) {
        throw std::runtime_error(
            "relaxation is unbounded; unbounded instances are not supported");
      }
      DualBoundResult dr;
      dr.method = BoundMethod::ExLp;
      dr.success = true;
      dr.bound = ex.objective;
      dr.multipliers = DualMultipliers{ex.y, ex.d};
      const int entry = emit_bound_entry(node, dr);
      if (ExtendedRational(ex.objective) >= nb.bound) {
        nb.bound = ex.objective;
        if (entry >= 0) nb.entry = entry;
      }
      result = dr;
      bool integral = true;
      for (int j = 0; j < model_.n && integral; ++j) {
        integral = !model_.integer[j] || ex.x[j].is_integer();
      }
      if (integral) {
        // The node optimum is integer feasible: it becomes an incumbent
        // candidate and the node prunes at its own bound.
        if (!check_solution_exact(model_, ex.x).has_value()) {
          try_incumbent(make_solution(model_, ex.x, SolutionOrigin::LpIntegral));
        }
        notify(dr, fp.objective, true, false);
        resolve(node.id, node.parent, node.is_up_child,
                cert_ ? (entry >= 0 ? entry : nb.entry) : -1);
        return;
      }
      exact_x = ex.x;
    }

    notify(result, fp.objective, false, false);

    // Branch.
    const auto decision =
        branch(view, fp.x, exact_x.has_value() ? &*exact_x : nullptr,
               pseudocosts_, tie_order_,
               fp.basis.empty() ? nullptr : &fp.basis);
    if (!decision.has_value()) {
      throw std::logic_error("no branching candidate on a fractional node");
    }
    int asm_down = -1, asm_up = -1;
    if (cert_) {
      const auto t0 = Clock::now();
      asm_down = cert_->add_assumption(decision->col, true,
                                       decision->floor_value);
      asm_up = cert_->add_assumption(decision->col, false,
                                     decision->ceil_value);
      cert_seconds_ += seconds_since(t0);
      branches_[node.id] = BranchRecord{asm_down, asm_up, -1, -1, false, false};
    } else {
      branches_[node.id] = BranchRecord{};
    }

    auto warm = std::make_shared<const Basis>(fp.basis);
    for (const bool upward : {false, true}) {
      NodeRecord child;
      child.id = next_id_++;
      child.parent = node.id;
      child.is_up_child = upward;
      child.depth = node.depth + 1;
      child.inherited = nb.bound;
      child.just_entry = nb.entry;
      child.warm = warm;
      child.lb = node.lb;
      child.ub = node.ub;
      child.lbf = node.lbf;
      child.ubf = node.ubf;
      child.lb_just = node.lb_just;
      child.ub_just = node.ub_just;
      if (upward) {
        child.lb[decision->col] = decision->ceil_value;
        child.lbf[decision->col] = decision->ceil_value.to_double_nearest();
        if (cert_) child.lb_just[decision->col] = asm_up;
      } else {
        child.ub[decision->col] = decision->floor_value;
        child.ubf[decision->col] = decision->floor_value.to_double_nearest();
        if (cert_) child.ub_just[decision->col] = asm_down;
      }
      if (!upward) plunge_target_ = child.id;
      enqueue(std::move(child));
    }
  }
};

}  // namespace

SolveResult solve(const RationalMIP& model, const Config& config) {
  const auto t0 = Clock::now();
  Config cfg = config;
  if (cfg.certificates_enabled()) cfg.presolve = false;

  SolveResult out;

  if (model.inconsistent_bound_col().has_value()) {
    const int col = *model.inconsistent_bound_col();
    out.status = SolveStatus::Infeasible;
    out.primal_bound = ExtendedRational::infinity();
    out.dual_bound = ExtendedRational::infinity();
    out.gap = ExtendedRational(Rational(0));
    if (cfg.certificates_enabled() && model.lb[col].is_finite() &&
        model.ub[col].is_finite()) {
      CertificateBuilder cb(model);
      const int entry = cb.add_bound_conflict_entry(
          col, model.lb[col].value(), model.ub[col].value(),
          cb.lower_bound_index(col), cb.upper_bound_index(col));
      (void)entry;
      cb.set_goal_infeasible();
      std::ofstream f(cfg.certificate_path);
      if (f) {
        cb.write(f);
        out.certificate_written = true;
      }
    }
    out.solve_seconds = seconds_since(t0);
    return out;
  }

  const RationalMIP* solving = &model;
  PresolveResult pr;
  bool presolved = false;
  if (cfg.presolve) {
    pr = presolve(model, cfg.max_presolve_rounds);
    out.presolve_stats = pr.stats;
    if (pr.status == PresolveStatus::Infeasible) {
      out.status = SolveStatus::Infeasible;
      out.primal_bound = ExtendedRational::infinity();
      out.dual_bound = ExtendedRational::infinity();
      out.gap = ExtendedRational(Rational(0));
      out.solve_seconds = seconds_since(t0);
      return out;
    }
    solving = &pr.reduced;
    presolved = true;
  }

  TreeSolver solver(*solving, cfg);
  out = [&] {
    SolveResult r = solver.run();
    r.presolve_stats = presolved ? pr.stats : PresolveStats{};
    return r;
  }();

  if (presolved && out.incumbent.has_value()) {
    std::vector<Rational> x_orig = pr.stack.postsolve(out.incumbent->x);
    Solution orig =
        make_solution(model, std::move(x_orig), out.incumbent->origin);
    if (check_solution_exact(model, orig.x).has_value()) {
      throw std::logic_error("postsolve produced an infeasible solution");
    }
    if (!(orig.objective == out.incumbent->objective)) {
      throw std::logic_error("postsolve changed the objective value");
    }
    out.incumbent = std::move(orig);
  }
  out.solve_seconds = seconds_since(t0);
  return out;
}

SolveResult solve_oracle(const RationalMIP& model) {
  const auto t0 = Clock::now();
  std::vector<int> int_cols;
  for (int j = 0; j < model.n; ++j) {
    if (model.integer[j]) int_cols.push_back(j);
  }
  if (int_cols.size() > 20) {
    throw std::invalid_argument("solve_oracle: too many integer columns");
  }
  mpz_class volume = 1;
  for (const int j : int_cols) {
    if (!model.lb[j].is_finite() || !model.ub[j].is_finite()) {
      throw std::invalid_argument("solve_oracle: unbounded integer column");
    }
    const Rational width =
        model.ub[j].value().floor() - model.lb[j].value().ceil();
    if (width.sign() < 0) {
      volume = 0;
      break;
    }
    volume *= width.num() + 1;
    if (volume > 1000000) {
      throw std::invalid_argument("solve_oracle: lattice box too large");
    }
  }

  const FloatMIP fmodel = approximate(model);
  const bool has_continuous =
      static_cast<int>(int_cols.size()) < model.n;

  SolveResult out;
  out.status = SolveStatus::Infeasible;
  std::vector<Rational> assignment(int_cols.size());
  for (size_t k = 0; k < int_cols.size(); ++k) {
    assignment[k] = model.lb[int_cols[k]].value().ceil();
  }
  long count = 0;
  bool done = volume == 0;
  while (!done) {
    ++count;
    if (has_continuous) {
      NodeView view = NodeView::root(model, fmodel);
      for (size_t k = 0; k < int_cols.size(); ++k) {
        view.change_bound(int_cols[k], true, assignment[k]);
        view.change_bound(int_cols[k], false, assignment[k]);
      }
      const ExactLpResult lp = solve_exact_lp(view);
      if (lp.status == ExactLpStatus::Unbounded) {
        throw std::invalid_argument("solve_oracle: unbounded restriction");
      }
      if (lp.status == ExactLpStatus::Optimal) {
        Solution sol = make_solution(model, lp.x, SolutionOrigin::Oracle);
        if (!out.incumbent.has_value() ||
            sol.objective < out.incumbent->objective) {
          out.incumbent = std::move(sol);
        }
      }
    } else {
      std::vector<Rational> x(static_cast<size_t>(model.n));
      for (size_t k = 0; k < int_cols.size(); ++k) x[int_cols[k]] = assignment[k];
      if (!check_solution_exact(model, x).has_value()) {
        Solution sol = make_solution(model, std::move(x), SolutionOrigin::Oracle);
        if (!out.incumbent.has_value() ||
            sol.objective < out.incumbent->objective) {
          out.incumbent = std::move(sol);
        }
      }
    }
    // Odometer step.
    size_t k = 0;
    for (; k < int_cols.size(); ++k) {
      assignment[k] += Rational(1);
      if (assignment[k] <= model.ub[int_cols[k]].value().floor()) break;
      assignment[k] = model.lb[int_cols[k]].value().ceil();
    }
    done = k == int_cols.size();
    if (int_cols.empty()) done = true;
  }

  out.nodes = count;
  if (out.incumbent.has_value()) {
    out.status = SolveStatus::Optimal;
    out.primal_bound = out.incumbent->objective;
    out.dual_bound = out.primal_bound;
    out.gap = ExtendedRational(Rational(0));
  } else {
    out.primal_bound = ExtendedRational::infinity();
    out.dual_bound = ExtendedRational::infinity();
    out.gap = ExtendedRational(Rational(0));
  }
  out.solve_seconds = seconds_since(t0);
  return out;
}

}  // namespace exmip
