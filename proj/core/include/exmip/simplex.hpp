/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#ifndef EXMIP_SIMPLEX_HPP
#define EXMIP_SIMPLEX_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "exmip/basis.hpp"
#include "exmip/rational.hpp"

namespace exmip {

/// Dense LP in activity form:
///   min cost^T x   s.t.   row_lb <= A x <= row_ub,  col_lb <= x <= col_ub
/// with explicit finiteness masks so the same layout serves both double and
/// Rational instantiations.
template <class T>
struct DenseLp {
  int n = 0;
  int m = 0;
  std::vector<T> A;  // row-major, m * n
  std::vector<T> cost;
  std::vector<T> col_lb, col_ub;
  std::vector<uint8_t> col_lb_finite, col_ub_finite;
  std::vector<T> row_lb, row_ub;
  std::vector<uint8_t> row_lb_finite, row_ub_finite;

  void resize(int rows, int cols) {
    n = cols;
    m = rows;
    A.assign(static_cast<size_t>(rows) * cols, T(0));
    cost.assign(cols, T(0));
    col_lb.assign(cols, T(0));
    col_ub.assign(cols, T(0));
    col_lb_finite.assign(cols, 1);
    col_ub_finite.assign(cols, 0);
    row_lb.assign(rows, T(0));
    row_ub.assign(rows, T(0));
    row_lb_finite.assign(rows, 0);
    row_ub_finite.assign(rows, 0);
  }
  T& a(int i, int j) { return A[static_cast<size_t>(i) * n + j]; }
  const T& a(int i, int j) const { return A[static_cast<size_t>(i) * n + j]; }
};

enum class SimplexStatus : uint8_t {
  Optimal,
  Infeasible,
  Unbounded,
  IterationLimit,
};

template <class T>
struct SimplexResult {
  SimplexStatus status = SimplexStatus::IterationLimit;
  std::vector<T> x;  // structural values
  std::vector<T> y;  // row duals; >= 0 rows active at lower, <= 0 at upper
  std::vector<T> d;  // structural reduced costs cost - A^T y
  T objective = T(0);
  Basis basis;
  long iterations = 0;
  long pivots = 0;  // basis changes and bound flips
  int phase1_restarts = 0;
  /// Row multipliers proving infeasibility (set when status == Infeasible
  /// and the arithmetic is exact).
  std::vector<T> farkas_y;
};

namespace detail {

template <class T>
T t_abs(const T& v) {
  if constexpr (std::is_same_v<T, double>) {
    return std::fabs(v);
  } else {
    return v.abs();
  }
}

template <class T>
struct SimplexParams {
  T feas_tol;
  T zero_tol;
  T pivot_tol;
  int refactor_interval;
  long iteration_limit;
};

template <class T>
SimplexParams<T> default_params() {
  if constexpr (std::is_same_v<T, double>) {
    return {1e-9, 1e-9, 1e-11, 50, 50000};
  } else {
    return {T(0), T(0), T(0), 1, 2000000};
  }
}

}  // namespace detail

/// Primal simplex for bounded variables with Dantzig pricing, a switch to
/// Bland's rule after 3(n+m) degenerate pivots, a textbook auxiliary-variable
/// phase 1, and plain LU refactorized on a fixed pivot interval.
template <class T>
class BoundedSimplex {
 public:
  explicit BoundedSimplex(const DenseLp<T>& lp,
                          detail::SimplexParams<T> params =
                              detail::default_params<T>())
      : lp_(lp), params_(params) {}

  SimplexResult<T> solve(const Basis* warm = nullptr) {
    SimplexResult<T> result;
    setup();
    bool warm_ok = warm != nullptr && load_warm_basis(*warm);
    if (!warm_ok) load_cold_basis();
    if (!factorize()) {
      if (warm_ok) {
        load_cold_basis();
        warm_ok = false;
        if (!factorize()) return finish_breakdown(result);
      } else {
        return finish_breakdown(result);
      }
    }
    compute_basic_values();

    int restarts = 0;
    while (true) {
      if (primal_infeasible()) {
        if (warm_ok) {
          // Warm basis not primal feasible: restart from scratch.
          load_cold_basis();
          warm_ok = false;
          if (!factorize()) return finish_breakdown(result);
          compute_basic_values();
          continue;
        }
        if (restarts > 2) return finish_breakdown(result);
        if (!run_phase1(result)) return finish(result);
        ++restarts;
        result.phase1_restarts = restarts - 1;
        continue;
      }
      break;
    }

    phase1_ = false;
    const SimplexStatus st = iterate();
    result.status = st;
    return finish(result);
  }

 private:
  static constexpr int kStatusBasic = 0;
  static constexpr int kStatusLower = 1;
  static constexpr int kStatusUpper = 2;
  static constexpr int kStatusFree = 3;

  const DenseLp<T>& lp_;
  detail::SimplexParams<T> params_;

  int n_ = 0, m_ = 0, ncols_ = 0;
  std::vector<int> aux_sigma_;  // per aux column: +1 absorbs excess, -1 deficit
  std::vector<int> aux_row_;
  std::vector<T> aux_cost_;

  std::vector<int> status_;
  std::vector<T> value_;
  std::vector<int> basic_;         // basis position -> column
  std::vector<int> pos_in_basis_;  // column -> basis position or -1
  bool phase1_ = false;
  long iterations_ = 0;
  long pivots_ = 0;
  long degenerate_streak_ = 0;
  bool bland_ = false;
  bool breakdown_ = false;

  // Plain LU of the basis matrix with partial pivoting plus an eta chain.
  std::vector<T> lu_;
  std::vector<int> lu_perm_;
  struct Eta {
    int r;
    std::vector<T> w;
  };
  std::vector<Eta> etas_;

  bool is_aux(int col) const { return col >= n_ + m_; }
  bool is_logical(int col) const { return col >= n_ && col < n_ + m_; }

  T col_lb(int col, bool* finite) const {
    if (col < n_) {
      *finite = lp_.col_lb_finite[col] != 0;
      return lp_.col_lb[col];
    }
    if (is_logical(col)) {
      const int i = col - n_;
      *finite = lp_.row_lb_finite[i] != 0;
      return lp_.row_lb[i];
    }
    *finite = true;
    return T(0);
  }

  T col_ub(int col, bool* finite) const {
    if (col < n_) {
      *finite = lp_.col_ub_finite[col] != 0;
      return lp_.col_ub[col];
    }
    if (is_logical(col)) {
      const int i = col - n_;
      *finite = lp_.row_ub_finite[i] != 0;
      return lp_.row_ub[i];
    }
    // Aux columns live on [0, inf) during phase 1 and are pinned afterwards.
    *finite = !phase1_;
    return T(0);
  }

  T cost_of(int col) const {
    if (phase1_) return is_aux(col) ? T(1) : T(0);
    if (col < n_) return lp_.cost[col];
    return T(0);
  }

  /// Column col of the constraint matrix W = [A | -I | -sigma e].
  void fill_column(int col, std::vector<T>& out) const {
    out.assign(m_, T(0));
    if (col < n_) {
      for (int i = 0; i < m_; ++i) out[i] = lp_.a(i, col);
    } else if (is_logical(col)) {
      out[col - n_] = T(-1);
    } else {
      const int k = col - n_ - m_;
      out[aux_row_[k]] = T(-aux_sigma_[k]);
    }
  }

  void setup() {
    n_ = lp_.n;
    m_ = lp_.m;
    ncols_ = n_ + m_;
    aux_sigma_.clear();
    aux_row_.clear();
    status_.assign(ncols_, kStatusLower);
    value_.assign(ncols_, T(0));
    basic_.assign(m_, -1);
    pos_in_basis_.assign(ncols_, -1);
    iterations_ = 0;
    pivots_ = 0;
    degenerate_streak_ = 0;
    bland_ = false;
    breakdown_ = false;
    etas_.clear();
  }

  void set_nonbasic_at_preferred_bound(int col) {
    bool lf = false, uf = false;
    const T lo = col_lb(col, &lf);
    const T hi = col_ub(col, &uf);
    if (lf) {
      status_[col] = kStatusLower;
      value_[col] = lo;
    } else if (uf) {
      status_[col] = kStatusUpper;
      value_[col] = hi;
    } else {
      status_[col] = kStatusFree;
      value_[col] = T(0);
    }
  }

  void load_cold_basis() {
    status_.assign(ncols_, kStatusLower);
    value_.assign(ncols_, T(0));
    basic_.assign(m_, -1);
    pos_in_basis_.assign(ncols_, -1);
    for (int j = 0; j < n_; ++j) set_nonbasic_at_preferred_bound(j);
    for (int i = 0; i < m_; ++i) {
      const int col = n_ + i;
      basic_[i] = col;
      pos_in_basis_[col] = i;
      status_[col] = kStatusBasic;
    }
  }

  bool load_warm_basis(const Basis& warm) {
    if (static_cast<int>(warm.col.size()) != n_ ||
        static_cast<int>(warm.row.size()) != m_ ||
        warm.basic_count() != m_) {
      return false;
    }
    status_.assign(ncols_, kStatusLower);
    value_.assign(ncols_, T(0));
    basic_.assign(m_, -1);
    pos_in_basis_.assign(ncols_, -1);
    std::vector<int> basics;
    for (int j = 0; j < n_; ++j) {
      switch (warm.col[j]) {
        case ColStatus::Basic:
          basics.push_back(j);
          break;
        case ColStatus::AtLower: {
          bool lf = false;
          col_lb(j, &lf);
          if (!lf) return false;
          status_[j] = kStatusLower;
          value_[j] = lp_.col_lb[j];
          break;
        }
        case ColStatus::AtUpper: {
          bool uf = false;
          col_ub(j, &uf);
          if (!uf) return false;
          status_[j] = kStatusUpper;
          value_[j] = lp_.col_ub[j];
          break;
        }
        case ColStatus::FreeNonbasic:
          status_[j] = kStatusFree;
          value_[j] = T(0);
          break;
      }
    }
    for (int i = 0; i < m_; ++i) {
      const int col = n_ + i;
      if (warm.row[i] == RowStatus::BasicSlack) {
        basics.push_back(col);
      } else {
        set_nonbasic_at_preferred_bound(col);
      }
    }
    if (static_cast<int>(basics.size()) != m_) return false;
    for (int i = 0; i < m_; ++i) {
      basic_[i] = basics[i];
      pos_in_basis_[basics[i]] = i;
      status_[basics[i]] = kStatusBasic;
    }
    return true;
  }

  bool factorize() {
    etas_.clear();
    lu_.assign(static_cast<size_t>(m_) * m_, T(0));
    lu_perm_.resize(m_);
    std::vector<T> col(m_);
    for (int p = 0; p < m_; ++p) {
      fill_column(basic_[p], col);
      for (int i = 0; i < m_; ++i) lu_[static_cast<size_t>(i) * m_ + p] = col[i];
    }
    for (int i = 0; i < m_; ++i) lu_perm_[i] = i;
    for (int k = 0; k < m_; ++k) {
      int piv = -1;
      T best(0);
      for (int i = k; i < m_; ++i) {
        const T cand = detail::t_abs(lu_[static_cast<size_t>(lu_perm_[i]) * m_ + k]);
        if (piv < 0 || cand > best) {
          best = cand;
          piv = i;
        }
      }
      if (piv < 0 || !(best > params_.pivot_tol) || best == T(0)) return false;
      std::swap(lu_perm_[k], lu_perm_[piv]);
      const size_t rk = static_cast<size_t>(lu_perm_[k]) * m_;
      for (int i = k + 1; i < m_; ++i) {
        const size_t ri = static_cast<size_t>(lu_perm_[i]) * m_;
        if (lu_[ri + k] == T(0)) continue;
        const T f = lu_[ri + k] / lu_[rk + k];
        lu_[ri + k] = f;
        for (int j = k + 1; j < m_; ++j) lu_[ri + j] -= f * lu_[rk + j];
      }
    }
    return true;
  }

  /// Solves B z = v.
  void ftran(std::vector<T>& v) const {
    std::vector<T> z(m_);
    for (int i = 0; i < m_; ++i) {
      T s = v[lu_perm_[i]];
      const size_t ri = static_cast<size_t>(lu_perm_[i]) * m_;
      for (int j = 0; j < i; ++j) s -= lu_[ri + j] * z[j];
      z[i] = s;
    }
    for (int i = m_ - 1; i >= 0; --i) {
      const size_t ri = static_cast<size_t>(lu_perm_[i]) * m_;
      T s = z[i];
      for (int j = i + 1; j < m_; ++j) s -= lu_[ri + j] * z[j];
      z[i] = s / lu_[ri + i];
    }
    v = z;
    for (const Eta& e : etas_) {
      const T zr = v[e.r] / e.w[e.r];
      for (int i = 0; i < m_; ++i) {
        if (i != e.r && !(e.w[i] == T(0))) v[i] -= e.w[i] * zr;
      }
      v[e.r] = zr;
    }
  }

  /// Solves B^T z = v.
  void btran(std::vector<T>& v) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      const Eta& e = *it;
      T s = v[e.r];
      for (int i = 0; i < m_; ++i) {
        if (i != e.r && !(e.w[i] == T(0))) s -= e.w[i] * v[i];
      }
      v[e.r] = s / e.w[e.r];
    }
    // Solve U^T y = v, then L^T z = y (with the row permutation).
    std::vector<T> y(m_);
    for (int i = 0; i < m_; ++i) {
      T s = v[i];
      for (int j = 0; j < i; ++j) {
        s -= lu_[static_cast<size_t>(lu_perm_[j]) * m_ + i] * y[j];
      }
      y[i] = s / lu_[static_cast<size_t>(lu_perm_[i]) * m_ + i];
    }
    std::vector<T> z(m_);
    for (int i = m_ - 1; i >= 0; --i) {
      T s = y[i];
      for (int j = i + 1; j < m_; ++j) {
        s -= lu_[static_cast<size_t>(lu_perm_[j]) * m_ + i] * z[j];
      }
      z[i] = s;
    }
    for (int i = 0; i < m_; ++i) v[lu_perm_[i]] = z[i];
  }

  void compute_basic_values() {
    std::vector<T> rhs(m_, T(0));
    std::vector<T> col(m_);
    for (int j = 0; j < ncols_; ++j) {
      if (status_[j] == kStatusBasic || value_[j] == T(0)) continue;
      fill_column(j, col);
      for (int i = 0; i < m_; ++i) {
        if (!(col[i] == T(0))) rhs[i] -= col[i] * value_[j];
      }
    }
    ftran(rhs);
    for (int p = 0; p < m_; ++p) value_[basic_[p]] = rhs[p];
  }

  bool primal_infeasible() const {
    for (int p = 0; p < m_; ++p) {
      const int col = basic_[p];
      bool lf = false, uf = false;
      const T lo = col_lb(col, &lf);
      const T hi = col_ub(col, &uf);
      if (lf && value_[col] < lo - params_.feas_tol) return true;
      if (uf && value_[col] > hi + params_.feas_tol) return true;
    }
    return false;
  }

  /// Installs auxiliary columns absorbing the bound violations of the
  /// current (all-logical) basis and minimizes their sum. Returns true when
  /// a feasible basis was reached, false when the result is final
  /// (infeasible or breakdown).
  bool run_phase1(SimplexResult<T>& result) {
    // Phase 1 presumes the logical basis; restore it.
    load_cold_basis();
    if (!factorize()) {
      breakdown_ = true;
      return false;
    }
    compute_basic_values();

    aux_sigma_.clear();
    aux_row_.clear();
    phase1_ = true;
    for (int i = 0; i < m_; ++i) {
      const int scol = n_ + i;
      bool lf = false, uf = false;
      const T lo = col_lb(scol, &lf);
      const T hi = col_ub(scol, &uf);
      int sigma = 0;
      if (uf && value_[scol] > hi + params_.feas_tol) {
        sigma = 1;
        status_[scol] = kStatusUpper;
        value_[scol] = hi;
      } else if (lf && value_[scol] < lo - params_.feas_tol) {
        sigma = -1;
        status_[scol] = kStatusLower;
        value_[scol] = lo;
      }
      if (sigma == 0) continue;
      const int aux = ncols_ + static_cast<int>(aux_sigma_.size());
      aux_sigma_.push_back(sigma);
      aux_row_.push_back(i);
      basic_[i] = aux;
      status_.push_back(kStatusBasic);
      value_.push_back(T(0));
      pos_in_basis_.push_back(i);
      pos_in_basis_[scol] = -1;
    }
    const int num_aux = static_cast<int>(aux_sigma_.size());
    ncols_ += num_aux;
    if (num_aux == 0) {
      phase1_ = false;
      return true;
    }
    if (!factorize()) {
      breakdown_ = true;
      return false;
    }
    compute_basic_values();

    const SimplexStatus st = iterate();
    if (st == SimplexStatus::IterationLimit) {
      breakdown_ = true;
      return false;
    }
    // Infeasibility iff some violation remains at the phase-1 optimum.
    T total(0);
    for (int k = 0; k < num_aux; ++k) total += value_[n_ + m_ + k];
    const bool feasible = !(total > params_.feas_tol);
    if (!feasible) {
      result.status = SimplexStatus::Infeasible;
      extract_farkas(result);
      return false;
    }
    // Pin auxiliaries at zero and drive any basic ones out via the logical
    // column of their row (the two columns are parallel, so the swap keeps
    // the basis nonsingular).
    phase1_ = false;
    for (int k = 0; k < num_aux; ++k) {
      const int aux = n_ + m_ + k;
      if (status_[aux] == kStatusBasic) {
        const int p = pos_in_basis_[aux];
        const int scol = n_ + aux_row_[k];
        if (status_[scol] != kStatusBasic) {
          basic_[p] = scol;
          pos_in_basis_[scol] = p;
          pos_in_basis_[aux] = -1;
          status_[scol] = kStatusBasic;
        }
      }
      status_[aux] = kStatusLower;
      value_[aux] = T(0);
    }
    if (!factorize()) {
      breakdown_ = true;
      return false;
    }
    compute_basic_values();
    if (primal_infeasible()) {
      breakdown_ = true;
      return false;
    }
    return true;
  }

  void extract_farkas(SimplexResult<T>& result) {
    std::vector<T> cb(m_);
    for (int p = 0; p < m_; ++p) cb[p] = cost_of(basic_[p]);
    btran(cb);
    // Phase-1 duals: combining row i with multiplier y_i and the variable
    // bounds with the reduced costs -A^T y yields 0 >= (infeasibility) > 0.
    result.farkas_y = cb;
  }

  SimplexStatus iterate() {
    std::vector<T> cb(m_), w(m_), col(m_);
    long since_refactor = 0;
    while (true) {
      if (++iterations_ > params_.iteration_limit) {
        return SimplexStatus::IterationLimit;
      }
      // Pricing.
      cb.assign(m_, T(0));
      for (int p = 0; p < m_; ++p) cb[p] = cost_of(basic_[p]);
      btran(cb);
      int entering = -1;
      int direction = 0;
      T best_score(0);
      for (int j = 0; j < ncols_; ++j) {
        if (status_[j] == kStatusBasic) continue;
        if (!phase1_ && is_aux(j)) continue;
        bool lf = false, uf = false;
        const T lo = col_lb(j, &lf);
        const T hi = col_ub(j, &uf);
        if (lf && uf && lo == hi) continue;  // fixed
        fill_column(j, col);
        T d = cost_of(j);
        for (int i = 0; i < m_; ++i) {
          if (!(col[i] == T(0))) d -= cb[i] * col[i];
        }
        int dir = 0;
        T score(0);
        if (status_[j] == kStatusLower || status_[j] == kStatusFree) {
          if (d < -params_.zero_tol) {
            dir = 1;
            score = -d;
          }
        }
        if (dir == 0 &&
            (status_[j] == kStatusUpper || status_[j] == kStatusFree)) {
          if (d > params_.zero_tol) {
            dir = -1;
            score = d;
          }
        }
        if (dir == 0) continue;
        if (bland_) {
          entering = j;
          direction = dir;
          break;
        }
        if (entering < 0 || score > best_score) {
          entering = j;
          direction = dir;
          best_score = score;
        }
      }
      if (entering < 0) return SimplexStatus::Optimal;

      fill_column(entering, w);
      ftran(w);

      // Ratio test, including the entering variable's own opposite bound.
      bool elf = false, euf = false;
      const T elo = col_lb(entering, &elf);
      const T ehi = col_ub(entering, &euf);
      bool theta_bounded = false;
      T theta(0);
      int leaving_pos = -1;
      int leaving_to_upper = 0;
      if (elf && euf) {
        theta = ehi - elo;
        theta_bounded = true;
      }
      for (int p = 0; p < m_; ++p) {
        const int bcol = basic_[p];
        const T delta = (direction > 0) ? T(T(0) - w[p]) : w[p];
        if (detail::t_abs(w[p]) <= params_.pivot_tol) continue;
        bool lf = false, uf = false;
        const T lo = col_lb(bcol, &lf);
        const T hi = col_ub(bcol, &uf);
        if (delta > T(0) && uf) {
          T room = hi - value_[bcol];
          if (room < T(0)) room = T(0);
          const T t = room / delta;
          if (!theta_bounded || t < theta ||
              (t == theta && leaving_pos >= 0 &&
               tie_break(p, leaving_pos, w))) {
            theta = t;
            theta_bounded = true;
            leaving_pos = p;
            leaving_to_upper = 1;
          }
        } else if (delta < T(0) && lf) {
          T room = value_[bcol] - lo;
          if (room < T(0)) room = T(0);
          const T t = room / (T(0) - delta);
          if (!theta_bounded || t < theta ||
              (t == theta && leaving_pos >= 0 &&
               tie_break(p, leaving_pos, w))) {
            theta = t;
            theta_bounded = true;
            leaving_pos = p;
            leaving_to_upper = 0;
          }
        }
      }
      if (!theta_bounded) {
        return phase1_ ? SimplexStatus::IterationLimit
                       : SimplexStatus::Unbounded;
      }

      if (theta <= params_.zero_tol) {
        ++degenerate_streak_;
        if (degenerate_streak_ > 3 * (ncols_)) bland_ = true;
      } else {
        degenerate_streak_ = 0;
      }

      // Apply the step.
      if (!(theta == T(0))) {
        for (int p = 0; p < m_; ++p) {
          if (w[p] == T(0)) continue;
          value_[basic_[p]] -=
              (direction > 0 ? theta : T(T(0) - theta)) * w[p];
        }
        value_[entering] =
            value_[entering] + (direction > 0 ? theta : T(T(0) - theta));
      }

      ++pivots_;
      if (leaving_pos < 0) {
        // Bound flip: the entering variable reaches its opposite bound.
        status_[entering] =
            direction > 0 ? kStatusUpper : kStatusLower;
        value_[entering] = direction > 0 ? ehi : elo;
        continue;
      }

      const int leaving = basic_[leaving_pos];
      status_[leaving] = leaving_to_upper ? kStatusUpper : kStatusLower;
      {
        bool bf = false;
        const T b = leaving_to_upper ? col_ub(leaving, &bf)
                                     : col_lb(leaving, &bf);
        value_[leaving] = b;
      }
      basic_[leaving_pos] = entering;
      pos_in_basis_[entering] = leaving_pos;
      pos_in_basis_[leaving] = -1;
      status_[entering] = kStatusBasic;

      ++since_refactor;
      if (since_refactor >= params_.refactor_interval) {
        if (!factorize()) return SimplexStatus::IterationLimit;
        compute_basic_values();
        since_refactor = 0;
      } else {
        etas_.push_back(Eta{leaving_pos, w});
      }
    }
  }

  bool tie_break(int p, int current, const std::vector<T>& w) const {
    if (bland_) return basic_[p] < basic_[current];
    const T a = detail::t_abs(w[p]);
    const T b = detail::t_abs(w[current]);
    if (a > b) return true;
    if (b > a) return false;
    return basic_[p] < basic_[current];
  }

  SimplexResult<T> finish_breakdown(SimplexResult<T>& result) {
    result.status = SimplexStatus::IterationLimit;
    result.iterations = iterations_;
    result.pivots = pivots_;
    return result;
  }

  SimplexResult<T>& finish(SimplexResult<T>& result) {
    result.iterations = iterations_;
    result.pivots = pivots_;
    if (breakdown_) result.status = SimplexStatus::IterationLimit;
    result.x.assign(n_, T(0));
    for (int j = 0; j < n_; ++j) result.x[j] = value_[j];
    result.objective = T(0);
    for (int j = 0; j < n_; ++j) result.objective += lp_.cost[j] * result.x[j];
    // Duals of the original costs at the final basis.
    std::vector<T> cb(m_, T(0));
    const bool saved_phase = phase1_;
    phase1_ = false;
    for (int p = 0; p < m_; ++p) {
      if (basic_[p] >= 0 && !is_aux(basic_[p])) cb[p] = cost_of(basic_[p]);
    }
    phase1_ = saved_phase;
    btran(cb);
    result.y = cb;
    result.d.assign(n_, T(0));
    for (int j = 0; j < n_; ++j) {
      T d = lp_.cost[j];
      for (int i = 0; i < m_; ++i) {
        if (!(lp_.a(i, j) == T(0))) d -= cb[i] * lp_.a(i, j);
      }
      result.d[j] = d;
    }
    result.basis.col.assign(n_, ColStatus::AtLower);
    result.basis.row.assign(m_, RowStatus::Tight);
    for (int j = 0; j < n_; ++j) {
      switch (status_[j]) {
        case kStatusBasic:
          result.basis.col[j] = ColStatus::Basic;
          break;
        case kStatusLower:
          result.basis.col[j] = ColStatus::AtLower;
          break;
        case kStatusUpper:
          result.basis.col[j] = ColStatus::AtUpper;
          break;
        default:
          result.basis.col[j] = ColStatus::FreeNonbasic;
          break;
      }
    }
    for (int i = 0; i < m_; ++i) {
      if (status_[n_ + i] == kStatusBasic) {
        result.basis.row[i] = RowStatus::BasicSlack;
      }
    }
    return result;
  }
};

}  // namespace exmip

#endif  // EXMIP_SIMPLEX_HPP
