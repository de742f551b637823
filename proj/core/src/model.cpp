/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#include "exmip/model.hpp"

#include <algorithm>
#include <numeric>

namespace exmip {

Rational SparseVec::at(int j) const {
  const auto it = std::lower_bound(idx.begin(), idx.end(), j);
  if (it == idx.end() || *it != j) return Rational();
  return val[static_cast<size_t>(it - idx.begin())];
}

void SparseVec::normalize() {
  std::vector<size_t> order(idx.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return idx[a] < idx[b]; });
  std::vector<int> new_idx;
  std::vector<Rational> new_val;
  for (const size_t k : order) {
    if (!new_idx.empty() && new_idx.back() == idx[k]) {
      new_val.back() += val[k];
      if (new_val.back().is_zero()) {
        new_idx.pop_back();
        new_val.pop_back();
      }
    } else if (!val[k].is_zero()) {
      new_idx.push_back(idx[k]);
      new_val.push_back(val[k]);
    }
  }
  idx = std::move(new_idx);
  val = std::move(new_val);
}

int RationalMIP::add_col(const std::string& cname, ExtendedRational lo,
                         ExtendedRational hi, bool is_integer, Rational cost) {
  col_name.push_back(cname);
  lb.push_back(std::move(lo));
  ub.push_back(std::move(hi));
  integer.push_back(is_integer ? 1 : 0);
  obj.push_back(std::move(cost));
  return n++;
}

int RationalMIP::add_row(const std::string& rname, RowSense s, Rational b) {
  row_name.push_back(rname);
  sense.push_back(s);
  rhs.push_back(std::move(b));
  rows.emplace_back();
  return m++;
}

Rational RationalMIP::activity(int row, const std::vector<Rational>& x) const {
  Rational act;
  const SparseVec& r = rows[row];
  for (size_t k = 0; k < r.size(); ++k) act += r.val[k] * x[r.idx[k]];
  return act;
}

bool RationalMIP::row_satisfied(int row, const Rational& act) const {
  switch (sense[row]) {
    case RowSense::GreaterEqual:
      return act >= rhs[row];
    case RowSense::LessEqual:
      return act <= rhs[row];
    case RowSense::Equal:
      break;
  }
  return act == rhs[row];
}

std::optional<int> RationalMIP::inconsistent_bound_col() const {
  for (int j = 0; j < n; ++j) {
    if (lb[j].is_finite() && ub[j].is_finite() &&
        lb[j].value() > ub[j].value()) {
      return j;
    }
    if (lb[j].is_pos_inf() || ub[j].is_neg_inf()) return j;
  }
  return std::nullopt;
}

int RationalMIP::num_integer_cols() const {
  int k = 0;
  for (int j = 0; j < n; ++j) k += integer[j] ? 1 : 0;
  return k;
}

Rational RationalMIP::continuous_fraction() const {
  if (n == 0) return Rational();
  return Rational(n - num_integer_cols(), n);
}

FloatMIP approximate(const RationalMIP& model) {
  FloatMIP out;
  const auto convert = [&out](const Rational& q, int row, int pos) {
    bool overflow = false;
    const double d = q.to_double_nearest(&overflow);
    if (overflow) {
      out.any_overflow = true;
      out.overflow_entries.emplace_back(row, pos);
    }
    return d;
  };
  out.row_val.resize(static_cast<size_t>(model.m));
  for (int i = 0; i < model.m; ++i) {
    const SparseVec& r = model.rows[i];
    out.row_val[i].reserve(r.size());
    for (size_t k = 0; k < r.size(); ++k) {
      out.row_val[i].push_back(convert(r.val[k], i, static_cast<int>(k)));
    }
  }
  out.rhs.reserve(model.m);
  for (int i = 0; i < model.m; ++i) out.rhs.push_back(convert(model.rhs[i], -1, i));
  out.obj.reserve(model.n);
  for (int j = 0; j < model.n; ++j) out.obj.push_back(convert(model.obj[j], -2, j));
  out.lb.reserve(model.n);
  out.ub.reserve(model.n);
  for (int j = 0; j < model.n; ++j) {
    out.lb.push_back(model.lb[j].is_finite() ? convert(model.lb[j].value(), -3, j)
                                             : model.lb[j].to_double());
    out.ub.push_back(model.ub[j].is_finite() ? convert(model.ub[j].value(), -4, j)
                                             : model.ub[j].to_double());
  }
  return out;
}

std::optional<Violation> check_solution_exact(const RationalMIP& model,
                                              const std::vector<Rational>& x) {
  for (int i = 0; i < model.m; ++i) {
    const Rational act = model.activity(i, x);
    if (!model.row_satisfied(i, act)) {
      return Violation{Violation::Kind::Row, i, act};
    }
  }
  for (int j = 0; j < model.n; ++j) {
    if (model.lb[j].is_finite() && x[j] < model.lb[j].value()) {
      return Violation{Violation::Kind::LowerBound, j, x[j]};
    }
    if (model.ub[j].is_finite() && x[j] > model.ub[j].value()) {
      return Violation{Violation::Kind::UpperBound, j, x[j]};
    }
  }
  for (int j = 0; j < model.n; ++j) {
    if (model.integer[j] && !x[j].is_integer()) {
      return Violation{Violation::Kind::Integrality, j, x[j]};
    }
  }
  return std::nullopt;
}

NodeView NodeView::root(const RationalMIP& m, const FloatMIP& f) {
  NodeView v;
  v.model = &m;
  v.fmodel = &f;
  v.lb = m.lb;
  v.ub = m.ub;
  v.lbf = f.lb;
  v.ubf = f.ub;
  return v;
}

void NodeView::change_bound(int col, bool lower, const Rational& v) {
  if (lower) {
    lb[col] = v;
    lbf[col] = v.to_double_nearest();
  } else {
    ub[col] = v;
    ubf[col] = v.to_double_nearest();
  }
}

Solution make_solution(const RationalMIP& model, std::vector<Rational> x,
                       SolutionOrigin origin) {
  Solution s;
  s.objective = model.obj_constant;
  for (int j = 0; j < model.n; ++j) s.objective += model.obj[j] * x[j];
  s.x_float.reserve(x.size());
  for (const Rational& v : x) s.x_float.push_back(v.to_double_nearest());
  s.x = std::move(x);
  s.origin = origin;
  return s;
}

}  // namespace exmip
