/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#include "exmip/certificate.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace exmip {

namespace {

std::map<int, Rational> to_map(const SparseVec& v) {
  std::map<int, Rational> out;
  for (size_t k = 0; k < v.size(); ++k) out.emplace(v.idx[k], v.val[k]);
  return out;
}

SparseVec to_sparse(const std::map<int, Rational>& m) {
  SparseVec out;
  for (const auto& [j, v] : m) {
    if (!v.is_zero()) out.push(j, v);
  }
  return out;
}

bool is_falsehood(const DerivationEntry& e) {
  return e.sense == RowSense::GreaterEqual && e.coefs.idx.empty() &&
         e.rhs.sign() > 0;
}

}  // namespace

CertificateBuilder::CertificateBuilder(const RationalMIP& model)
    : model_(&model), base_(model.m + 2 * model.n) {}

int CertificateBuilder::lower_bound_index(int col) const {
  return model_->lb[col].is_finite() ? model_->m + col : -1;
}

int CertificateBuilder::upper_bound_index(int col) const {
  return model_->ub[col].is_finite() ? model_->m + model_->n + col : -1;
}

CertificateBuilder::ConstraintView CertificateBuilder::view_of(int index) const {
  ConstraintView v;
  if (index < model_->m) {
    v.sense = model_->sense[index];
    v.rhs = model_->rhs[index];
    v.coefs = &model_->rows[index];
    return v;
  }
  if (index < model_->m + model_->n) {
    const int col = index - model_->m;
    v.sense = RowSense::GreaterEqual;
    v.rhs = model_->lb[col].value();
    v.bound_col = col;
    v.bound_coef = Rational(1);
    return v;
  }
  if (index < base_) {
    const int col = index - model_->m - model_->n;
    v.sense = RowSense::GreaterEqual;
    v.rhs = -model_->ub[col].value();
    v.bound_col = col;
    v.bound_coef = Rational(-1);
    return v;
  }
  const DerivationEntry& e = derivations_[index - base_];
  v.sense = e.sense;
  v.rhs = e.rhs;
  v.coefs = &e.coefs;
  return v;
}

DerivationEntry CertificateBuilder::combine(
    const std::vector<std::pair<int, Rational>>& refs) const {
  std::map<int, Rational> coefs;
  Rational rhs;
  for (const auto& [index, mult] : refs) {
    if (mult.is_zero()) continue;
    const ConstraintView v = view_of(index);
    switch (v.sense) {
      case RowSense::GreaterEqual:
        if (mult.sign() < 0) {
          throw std::logic_error("certificate: negative multiplier on >=");
        }
        break;
      case RowSense::LessEqual:
        if (mult.sign() > 0) {
          throw std::logic_error("certificate: positive multiplier on <=");
        }
        break;
      case RowSense::Equal:
        break;
    }
    rhs += mult * v.rhs;
    if (v.coefs != nullptr) {
      for (size_t k = 0; k < v.coefs->size(); ++k) {
        coefs[v.coefs->idx[k]] += mult * v.coefs->val[k];
      }
    } else {
      coefs[v.bound_col] += mult * v.bound_coef;
    }
  }
  DerivationEntry e;
  e.sense = RowSense::GreaterEqual;
  e.rhs = std::move(rhs);
  e.coefs = to_sparse(coefs);
  e.reason = DerivationReason::Linear;
  e.refs = refs;
  return e;
}

int CertificateBuilder::add_assumption(int col, bool upper,
                                       const Rational& value) {
  DerivationEntry e;
  e.reason = DerivationReason::Assumption;
  e.sense = upper ? RowSense::LessEqual : RowSense::GreaterEqual;
  e.rhs = value;
  e.coefs.push(col, Rational(1));
  derivations_.push_back(std::move(e));
  return base_ + static_cast<int>(derivations_.size()) - 1;
}

int CertificateBuilder::add_bound_entry(const std::vector<Rational>& y,
                                        const std::vector<Rational>& d,
                                        const Rational& bound,
                                        const std::vector<int>& lb_just,
                                        const std::vector<int>& ub_just) {
  std::vector<std::pair<int, Rational>> refs;
  for (int i = 0; i < model_->m; ++i) {
    if (!y[i].is_zero()) refs.emplace_back(i, y[i]);
  }
  for (int j = 0; j < model_->n; ++j) {
    if (d[j].is_zero()) continue;
    const int just = d[j].sign() > 0 ? lb_just[j] : ub_just[j];
    if (just < 0) {
      throw std::logic_error("certificate: reduced cost on an infinite bound");
    }
    const ConstraintView v = view_of(just);
    Rational coef_on_col;
    if (v.coefs != nullptr) {
      coef_on_col = v.coefs->at(j);
    } else {
      coef_on_col = v.bound_coef;
    }
    refs.emplace_back(just, d[j] / coef_on_col);
  }
  DerivationEntry e = combine(refs);
  if (!(e.rhs == bound)) {
    throw std::logic_error("certificate: bound entry does not reproduce bound");
  }
  derivations_.push_back(std::move(e));
  return base_ + static_cast<int>(derivations_.size()) - 1;
}

int CertificateBuilder::add_infeasibility_entry(
    const std::vector<Rational>& farkas_y, const std::vector<int>& lb_just,
    const std::vector<int>& ub_just) {
  std::vector<Rational> g(static_cast<size_t>(model_->n));
  std::vector<std::pair<int, Rational>> refs;
  for (int i = 0; i < model_->m; ++i) {
    if (farkas_y[i].is_zero()) continue;
    refs.emplace_back(i, farkas_y[i]);
    const SparseVec& r = model_->rows[i];
    for (size_t k = 0; k < r.size(); ++k) {
      g[r.idx[k]] -= farkas_y[i] * r.val[k];
    }
  }
  for (int j = 0; j < model_->n; ++j) {
    if (g[j].is_zero()) continue;
    const int just = g[j].sign() > 0 ? lb_just[j] : ub_just[j];
    if (just < 0) {
      throw std::logic_error("certificate: Farkas term on an infinite bound");
    }
    const ConstraintView v = view_of(just);
    const Rational coef_on_col =
        v.coefs != nullptr ? v.coefs->at(j) : v.bound_coef;
    refs.emplace_back(just, g[j] / coef_on_col);
  }
  DerivationEntry e = combine(refs);
  if (!e.coefs.idx.empty() || e.rhs.sign() <= 0) {
    throw std::logic_error("certificate: Farkas entry is not a contradiction");
  }
  derivations_.push_back(std::move(e));
  return base_ + static_cast<int>(derivations_.size()) - 1;
}

int CertificateBuilder::add_bound_conflict_entry(int col, const Rational& lo,
                                                 const Rational& hi,
                                                 int lb_just, int ub_just) {
  if (!(lo > hi) || lb_just < 0 || ub_just < 0) {
    throw std::logic_error("certificate: not a bound conflict");
  }
  // 1 * (x >= lo) + mult * (upper form) gives 0 >= lo - hi > 0.
  const ConstraintView lower = view_of(lb_just);
  const ConstraintView upper = view_of(ub_just);
  const Rational lc = lower.coefs ? lower.coefs->at(col) : lower.bound_coef;
  const Rational uc = upper.coefs ? upper.coefs->at(col) : upper.bound_coef;
  std::vector<std::pair<int, Rational>> refs;
  refs.emplace_back(lb_just, Rational(1) / lc);
  refs.emplace_back(ub_just, Rational(-1) / uc);
  DerivationEntry e = combine(refs);
  if (!e.coefs.idx.empty() || e.rhs.sign() <= 0) {
    throw std::logic_error("certificate: conflict entry not a contradiction");
  }
  derivations_.push_back(std::move(e));
  return base_ + static_cast<int>(derivations_.size()) - 1;
}

int CertificateBuilder::add_unsplit(int entry1, int asm1, int entry2,
                                    int asm2) {
  const DerivationEntry& e1 = derivations_[entry1 - base_];
  const DerivationEntry& e2 = derivations_[entry2 - base_];
  DerivationEntry e;
  e.reason = DerivationReason::Unsplit;
  e.sense = RowSense::GreaterEqual;
  e.uns_entry1 = entry1;
  e.uns_asm1 = asm1;
  e.uns_entry2 = entry2;
  e.uns_asm2 = asm2;
  const bool f1 = is_falsehood(e1), f2 = is_falsehood(e2);
  if (f1 && f2) {
    e.rhs = min(e1.rhs, e2.rhs);
  } else if (f1) {
    e.coefs = e2.coefs;
    e.rhs = e2.rhs;
  } else if (f2) {
    e.coefs = e1.coefs;
    e.rhs = e1.rhs;
  } else {
    if (to_map(e1.coefs) != to_map(e2.coefs)) {
      throw std::logic_error("certificate: unsplit coefficient mismatch");
    }
    e.coefs = e1.coefs;
    e.rhs = min(e1.rhs, e2.rhs);
  }
  derivations_.push_back(std::move(e));
  return base_ + static_cast<int>(derivations_.size()) - 1;
}

void CertificateBuilder::write(std::ostream& out) const {
  const RationalMIP& m = *model_;
  out << "VER 1\n";
  out << "VAR " << m.n << "\n";
  for (int j = 0; j < m.n; ++j) out << m.col_name[j] << "\n";
  out << "INT " << m.num_integer_cols() << "\n";
  for (int j = 0; j < m.n; ++j) {
    if (m.integer[j]) out << j << " ";
  }
  out << "\n";
  out << "OBJ min\n";
  {
    SparseVec obj;
    for (int j = 0; j < m.n; ++j) {
      if (!m.obj[j].is_zero()) obj.push(j, m.obj[j]);
    }
    out << obj.size();
    for (size_t k = 0; k < obj.size(); ++k) {
      out << " " << obj.idx[k] << " " << obj.val[k].to_string();
    }
    out << "\n";
  }
  out << "CON " << m.m << "\n";
  for (int i = 0; i < m.m; ++i) {
    out << sense_char(m.sense[i]) << " " << m.rhs[i].to_string() << " "
        << m.rows[i].size();
    for (size_t k = 0; k < m.rows[i].size(); ++k) {
      out << " " << m.rows[i].idx[k] << " " << m.rows[i].val[k].to_string();
    }
    out << "\n";
  }
  if (infeasible_goal_) {
    out << "RTP infeas\n";
  } else if (range_.has_value()) {
    out << "RTP range " << range_->first.to_string() << " "
        << range_->second.to_string() << "\n";
  } else {
    out << "RTP range -inf inf\n";
  }
  out << "SOL " << solutions_.size() << "\n";
  for (const auto& x : solutions_) {
    SparseVec s;
    for (int j = 0; j < m.n; ++j) {
      if (!x[j].is_zero()) s.push(j, x[j]);
    }
    out << s.size();
    for (size_t k = 0; k < s.size(); ++k) {
      out << " " << s.idx[k] << " " << s.val[k].to_string();
    }
    out << "\n";
  }
  out << "DER " << derivations_.size() << "\n";
  for (const DerivationEntry& e : derivations_) {
    out << sense_char(e.sense) << " " << e.rhs.to_string() << " "
        << e.coefs.size();
    for (size_t k = 0; k < e.coefs.size(); ++k) {
      out << " " << e.coefs.idx[k] << " " << e.coefs.val[k].to_string();
    }
    switch (e.reason) {
      case DerivationReason::Assumption:
        out << " asm";
        break;
      case DerivationReason::Linear:
      case DerivationReason::Rounded:
        out << (e.reason == DerivationReason::Linear ? " lin " : " rnd ")
            << e.refs.size();
        for (const auto& [idx, mult] : e.refs) {
          out << " " << idx << " " << mult.to_string();
        }
        break;
      case DerivationReason::Unsplit:
        out << " uns " << e.uns_entry1 << " " << e.uns_asm1 << " "
            << e.uns_entry2 << " " << e.uns_asm2;
        break;
    }
    out << "\n";
  }
}

// ---------------------------------------------------------------------------
// Independent checker
// ---------------------------------------------------------------------------

namespace {

struct Tokens {
  std::vector<std::string> toks;
  size_t pos = 0;

  bool done() const { return pos >= toks.size(); }
  const std::string& next() {
    if (done()) throw std::out_of_range("unexpected end of certificate");
    return toks[pos++];
  }
  long next_long() {
    const std::string& t = next();
    size_t used = 0;
    const long v = std::stol(t, &used);
    if (used != t.size()) throw std::invalid_argument("bad integer " + t);
    return v;
  }
  Rational next_rational() {
    const auto q = Rational::parse(next());
    if (!q) throw std::invalid_argument("bad rational");
    return *q;
  }
};

struct CheckedConstraint {
  RowSense sense = RowSense::GreaterEqual;
  Rational rhs;
  std::map<int, Rational> coefs;
  std::set<int> assumptions;
  bool usable = true;  // false for infinite-bound placeholders
  bool is_assumption = false;

  bool falsehood() const {
    if (!coefs.empty()) return false;
    switch (sense) {
      case RowSense::GreaterEqual:
        return rhs.sign() > 0;
      case RowSense::LessEqual:
        return rhs.sign() < 0;
      case RowSense::Equal:
        return rhs.sign() != 0;
    }
    return false;
  }

  /// >=-normalized copy; equality stays as-is (handled separately).
  void normalize() {
    if (sense != RowSense::LessEqual) return;
    sense = RowSense::GreaterEqual;
    rhs = -rhs;
    for (auto& [j, v] : coefs) v = -v;
  }
};

struct Checker {
  const RationalMIP& model;
  std::vector<CheckedConstraint> cons;
  int base = 0;

  explicit Checker(const RationalMIP& m) : model(m) {}

  CheckResult reject(int entry, CheckCause cause, std::string msg) const {
    return CheckResult{CheckResult::Verdict::Reject, entry, cause,
                       std::move(msg)};
  }
};

}  // namespace

CheckResult check_certificate(const RationalMIP& model, std::istream& in) {
  Tokens tk;
  {
    std::string t;
    while (in >> t) tk.toks.push_back(t);
  }
  Checker ck(model);
  const auto parse_error = [](const std::string& msg) {
    return CheckResult{CheckResult::Verdict::ParseError, -1,
                       CheckCause::Malformed, msg};
  };

  try {
    if (tk.next() != "VER" || tk.next() != "1") {
      return parse_error("missing VER 1 header");
    }
    if (tk.next() != "VAR") return parse_error("missing VAR");
    const long nvar = tk.next_long();
    if (nvar != model.n) {
      return ck.reject(-1, CheckCause::ModelMismatch, "variable count differs");
    }
    for (long j = 0; j < nvar; ++j) {
      if (tk.next() != model.col_name[j]) {
        return ck.reject(-1, CheckCause::ModelMismatch, "variable name differs");
      }
    }
    if (tk.next() != "INT") return parse_error("missing INT");
    const long nint = tk.next_long();
    std::set<long> ints;
    for (long k = 0; k < nint; ++k) ints.insert(tk.next_long());
    for (int j = 0; j < model.n; ++j) {
      if ((ints.count(j) != 0) != (model.integer[j] != 0)) {
        return ck.reject(-1, CheckCause::ModelMismatch, "integer set differs");
      }
    }
    if (tk.next() != "OBJ" || tk.next() != "min") {
      return parse_error("missing OBJ min");
    }
    std::map<int, Rational> obj;
    {
      const long nnz = tk.next_long();
      for (long k = 0; k < nnz; ++k) {
        const long j = tk.next_long();
        obj[static_cast<int>(j)] = tk.next_rational();
      }
      std::map<int, Rational> model_obj;
      for (int j = 0; j < model.n; ++j) {
        if (!model.obj[j].is_zero()) model_obj[j] = model.obj[j];
      }
      if (obj != model_obj) {
        return ck.reject(-1, CheckCause::ModelMismatch, "objective differs");
      }
    }
    if (tk.next() != "CON") return parse_error("missing CON");
    const long ncon = tk.next_long();
    if (ncon != model.m) {
      return ck.reject(-1, CheckCause::ModelMismatch, "row count differs");
    }
    for (long i = 0; i < ncon; ++i) {
      CheckedConstraint c;
      const std::string& s = tk.next();
      if (s == "G") {
        c.sense = RowSense::GreaterEqual;
      } else if (s == "L") {
        c.sense = RowSense::LessEqual;
      } else if (s == "E") {
        c.sense = RowSense::Equal;
      } else {
        return parse_error("bad sense " + s);
      }
      c.rhs = tk.next_rational();
      const long nnz = tk.next_long();
      for (long k = 0; k < nnz; ++k) {
        const long j = tk.next_long();
        if (j < 0 || j >= model.n) return parse_error("column out of range");
        c.coefs[static_cast<int>(j)] = tk.next_rational();
      }
      if (c.sense != model.sense[i] || !(c.rhs == model.rhs[i]) ||
          c.coefs != to_map(model.rows[i])) {
        return ck.reject(static_cast<int>(i), CheckCause::ModelMismatch,
                         "constraint differs from model");
      }
      ck.cons.push_back(std::move(c));
    }
    // Bound constraints from the model.
    for (int j = 0; j < model.n; ++j) {
      CheckedConstraint c;
      c.sense = RowSense::GreaterEqual;
      if (model.lb[j].is_finite()) {
        c.rhs = model.lb[j].value();
        c.coefs[j] = Rational(1);
      } else {
        c.usable = false;
      }
      ck.cons.push_back(std::move(c));
    }
    for (int j = 0; j < model.n; ++j) {
      CheckedConstraint c;
      c.sense = RowSense::GreaterEqual;
      if (model.ub[j].is_finite()) {
        c.rhs = -model.ub[j].value();
        c.coefs[j] = Rational(-1);
      } else {
        c.usable = false;
      }
      ck.cons.push_back(std::move(c));
    }
    ck.base = static_cast<int>(ck.cons.size());

    if (tk.next() != "RTP") return parse_error("missing RTP");
    bool goal_infeasible = false;
    Rational goal_lower;
    bool has_lower = false;
    Rational goal_upper;
    bool has_upper = false;
    {
      const std::string& kind = tk.next();
      if (kind == "infeas") {
        goal_infeasible = true;
      } else if (kind == "range") {
        const std::string& lo = tk.next();
        if (lo != "-inf") {
          const auto q = Rational::parse(lo);
          if (!q) return parse_error("bad range lower bound");
          goal_lower = *q;
          has_lower = true;
        }
        const std::string& hi = tk.next();
        if (hi != "inf") {
          const auto q = Rational::parse(hi);
          if (!q) return parse_error("bad range upper bound");
          goal_upper = *q;
          has_upper = true;
        }
      } else {
        return parse_error("bad RTP kind " + kind);
      }
    }

    if (tk.next() != "SOL") return parse_error("missing SOL");
    const long nsol = tk.next_long();
    if (goal_infeasible && nsol != 0) {
      return ck.reject(-1, CheckCause::GoalNotProven,
                       "solutions listed for an infeasibility claim");
    }
    Rational best_obj;
    bool have_best = false;
    for (long s = 0; s < nsol; ++s) {
      std::vector<Rational> x(static_cast<size_t>(model.n));
      const long nnz = tk.next_long();
      for (long k = 0; k < nnz; ++k) {
        const long j = tk.next_long();
        if (j < 0 || j >= model.n) return parse_error("solution index range");
        x[j] = tk.next_rational();
      }
      if (check_solution_exact(model, x).has_value()) {
        return ck.reject(static_cast<int>(s), CheckCause::SolutionInfeasible,
                         "listed solution is not exactly feasible");
      }
      Rational z;
      for (int j = 0; j < model.n; ++j) z += model.obj[j] * x[j];
      if (!have_best || z < best_obj) {
        best_obj = z;
        have_best = true;
      }
    }

    if (tk.next() != "DER") return parse_error("missing DER");
    const long nder = tk.next_long();
    for (long e = 0; e < nder; ++e) {
      const int self = ck.base + static_cast<int>(e);
      CheckedConstraint c;
      const std::string& s = tk.next();
      if (s == "G") {
        c.sense = RowSense::GreaterEqual;
      } else if (s == "L") {
        c.sense = RowSense::LessEqual;
      } else if (s == "E") {
        c.sense = RowSense::Equal;
      } else {
        return parse_error("bad derivation sense");
      }
      c.rhs = tk.next_rational();
      const long nnz = tk.next_long();
      for (long k = 0; k < nnz; ++k) {
        const long j = tk.next_long();
        if (j < 0 || j >= model.n) return parse_error("derivation col range");
        c.coefs[static_cast<int>(j)] = tk.next_rational();
      }
      const std::string& reason = tk.next();
      const int eidx = static_cast<int>(e);
      if (reason == "asm") {
        c.is_assumption = true;
        c.assumptions.insert(self);
        ck.cons.push_back(std::move(c));
        continue;
      }
      if (reason == "lin" || reason == "rnd") {
        if (c.sense == RowSense::Equal) {
          return ck.reject(eidx, CheckCause::Malformed,
                           "derived equalities are not supported");
        }
        const long nrefs = tk.next_long();
        std::map<int, Rational> sum;
        Rational rhs_sum;
        std::set<int> asms;
        for (long k = 0; k < nrefs; ++k) {
          const long ref = tk.next_long();
          const Rational mult = tk.next_rational();
          if (ref < 0 || ref >= self) {
            return ck.reject(eidx, CheckCause::BadReference,
                             "reference outside earlier constraints");
          }
          if (mult.is_zero()) continue;
          const CheckedConstraint& rc = ck.cons[ref];
          if (!rc.usable) {
            return ck.reject(eidx, CheckCause::BadReference,
                             "reference to an infinite bound");
          }
          switch (rc.sense) {
            case RowSense::GreaterEqual:
              if (mult.sign() < 0) {
                return ck.reject(eidx, CheckCause::SignCondition,
                                 "negative multiplier on a >= constraint");
              }
              break;
            case RowSense::LessEqual:
              if (mult.sign() > 0) {
                return ck.reject(eidx, CheckCause::SignCondition,
                                 "positive multiplier on a <= constraint");
              }
              break;
            case RowSense::Equal:
              break;
          }
          rhs_sum += mult * rc.rhs;
          for (const auto& [j, v] : rc.coefs) sum[j] += mult * v;
          asms.insert(rc.assumptions.begin(), rc.assumptions.end());
        }
        std::erase_if(sum, [](const auto& kv) { return kv.second.is_zero(); });
        if (reason == "rnd") {
          for (const auto& [j, v] : sum) {
            if (!model.integer[j]) {
              return ck.reject(eidx, CheckCause::RoundingUnjustified,
                               "rounding over a continuous variable");
            }
            if (!v.is_integer()) {
              return ck.reject(eidx, CheckCause::RoundingUnjustified,
                               "rounding with fractional coefficients");
            }
          }
          rhs_sum = rhs_sum.ceil();
        }
        // Domination of the stated >=-normalized inequality.
        c.normalize();
        const bool derived_falsehood = sum.empty() && rhs_sum.sign() > 0;
        if (!derived_falsehood) {
          if (sum != c.coefs || rhs_sum < c.rhs) {
            return ck.reject(eidx, CheckCause::CombinationMismatch,
                             "combination does not dominate the statement");
          }
        }
        c.assumptions = std::move(asms);
        ck.cons.push_back(std::move(c));
        continue;
      }
      if (reason == "uns") {
        const long e1 = tk.next_long();
        const long a1 = tk.next_long();
        const long e2 = tk.next_long();
        const long a2 = tk.next_long();
        for (const long r : {e1, a1, e2, a2}) {
          if (r < ck.base || r >= self) {
            return ck.reject(eidx, CheckCause::BadReference,
                             "unsplit reference out of range");
          }
        }
        const CheckedConstraint& asm1 = ck.cons[a1];
        const CheckedConstraint& asm2 = ck.cons[a2];
        if (!asm1.is_assumption || !asm2.is_assumption) {
          return ck.reject(eidx, CheckCause::BadUnsplit,
                           "discharged indices are not assumptions");
        }
        // Complementarity: x_j <= k and x_j >= k+1 on an integer column.
        const auto single_col = [](const CheckedConstraint& a, int* col,
                                   Rational* rhs, bool* is_upper) {
          if (a.coefs.size() != 1) return false;
          const auto& [j, v] = *a.coefs.begin();
          if (v.is_zero() || a.sense == RowSense::Equal) return false;
          *col = j;
          *rhs = a.rhs / v;
          const bool upper_side = (a.sense == RowSense::LessEqual) ==
                                  (v.sign() > 0);
          *is_upper = upper_side;
          return true;
        };
        int col1 = 0, col2 = 0;
        Rational r1, r2;
        bool up1 = false, up2 = false;
        if (!single_col(asm1, &col1, &r1, &up1) ||
            !single_col(asm2, &col2, &r2, &up2) || col1 != col2 ||
            up1 == up2 || !model.integer[col1]) {
          return ck.reject(eidx, CheckCause::BadUnsplit,
                           "assumptions are not a complementary pair");
        }
        const Rational& upper_k = up1 ? r1 : r2;
        const Rational& lower_k = up1 ? r2 : r1;
        if (!upper_k.is_integer() || !(lower_k == upper_k + Rational(1))) {
          return ck.reject(eidx, CheckCause::BadUnsplit,
                           "assumptions do not split on k and k+1");
        }
        c.normalize();
        for (const long child : {e1, e2}) {
          CheckedConstraint cc = ck.cons[child];
          cc.normalize();
          if (cc.falsehood()) continue;
          if (cc.sense == RowSense::Equal || cc.coefs != c.coefs ||
              cc.rhs < c.rhs) {
            return ck.reject(eidx, CheckCause::BadUnsplit,
                             "child does not dominate the unsplit statement");
          }
        }
        std::set<int> asms;
        for (const int a : ck.cons[e1].assumptions) {
          if (a != a1) asms.insert(a);
        }
        for (const int a : ck.cons[e2].assumptions) {
          if (a != a2) asms.insert(a);
        }
        c.assumptions = std::move(asms);
        ck.cons.push_back(std::move(c));
        continue;
      }
      return parse_error("unknown reason " + reason);
    }

    // Goal.
    if (ck.cons.size() == static_cast<size_t>(ck.base)) {
      return ck.reject(-1, CheckCause::GoalNotProven, "no derivations");
    }
    CheckedConstraint last = ck.cons.back();
    last.normalize();
    if (!last.assumptions.empty()) {
      return ck.reject(static_cast<int>(nder) - 1,
                       CheckCause::AssumptionsRemain,
                       "final entry depends on assumptions");
    }
    if (goal_infeasible) {
      if (!last.falsehood()) {
        return ck.reject(static_cast<int>(nder) - 1, CheckCause::GoalNotProven,
                         "final entry is not a contradiction");
      }
    } else {
      if (has_lower) {
        std::map<int, Rational> model_obj;
        for (int j = 0; j < model.n; ++j) {
          if (!model.obj[j].is_zero()) model_obj[j] = model.obj[j];
        }
        const bool dominates =
            last.falsehood() ||
            (last.sense == RowSense::GreaterEqual && last.coefs == model_obj &&
             last.rhs >= goal_lower);
        if (!dominates) {
          return ck.reject(static_cast<int>(nder) - 1,
                           CheckCause::GoalNotProven,
                           "final entry does not prove the lower bound");
        }
      }
      if (has_upper) {
        if (!have_best || !(best_obj == goal_upper)) {
          return ck.reject(-1, CheckCause::GoalNotProven,
                           "no solution matches the claimed upper bound");
        }
      }
      if (has_lower && has_upper && goal_lower > goal_upper) {
        return ck.reject(-1, CheckCause::GoalNotProven, "empty range");
      }
    }
  } catch (const std::exception& ex) {
    return parse_error(ex.what());
  }
  if (!tk.done()) {
    return parse_error("trailing tokens");
  }
  return CheckResult{CheckResult::Verdict::Accept, -1, CheckCause::None, ""};
}

CheckResult check_certificate_file(const RationalMIP& model,
                                   const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return CheckResult{CheckResult::Verdict::ParseError, -1,
                       CheckCause::Malformed, "cannot open " + path};
  }
  return check_certificate(model, in);
}

}  // namespace exmip
