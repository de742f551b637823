/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#ifndef EXMIP_TESTS_TEST_UTIL_HPP
#define EXMIP_TESTS_TEST_UTIL_HPP

#include <random>
#include <vector>

#include "exmip/model.hpp"

namespace exmip::testing {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, long max_num = 100,
                                long max_den = 100) {
  std::uniform_int_distribution<long> num(-max_num, max_num);
  std::uniform_int_distribution<long> den(1, max_den);
  return Rational(num(rng), den(rng));
}

inline int random_int(Rng& rng, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(rng);
}

inline bool chance(Rng& rng, double p) {
  std::uniform_real_distribution<double> d(0.0, 1.0);
  return d(rng) < p;
}

inline void add_row(RationalMIP& m, RowSense sense, Rational rhs,
                    const std::vector<std::pair<int, Rational>>& coefs,
                    const std::string& name = "") {
  const int r = m.add_row(
      name.empty() ? "r" + std::to_string(m.m) : name, sense, std::move(rhs));
  for (const auto& [j, v] : coefs) m.rows[r].push(j, v);
  m.rows[r].normalize();
}

/// Activity range of a candidate row over the (finite) box.
inline std::pair<Rational, Rational> activity_range(
    const RationalMIP& m, const std::vector<std::pair<int, Rational>>& coefs) {
  Rational lo, hi;
  for (const auto& [j, a] : coefs) {
    const Rational& bl = m.lb[j].value();
    const Rational& bu = m.ub[j].value();
    lo += a * (a.sign() > 0 ? bl : bu);
    hi += a * (a.sign() > 0 ? bu : bl);
  }
  return {lo, hi};
}

/// Mostly-attainable rhs: interpolated into the activity range so that a
/// healthy share of instances is feasible, with a fully random minority
/// keeping infeasible cases in the mix.
inline Rational pick_rhs(Rng& rng, const RationalMIP& m,
                         const std::vector<std::pair<int, Rational>>& coefs,
                         RowSense sense) {
  if (chance(rng, 0.2)) return random_rational(rng, 8, 8);
  const auto [lo, hi] = activity_range(m, coefs);
  if (sense == RowSense::Equal) {
    // The exact activity of a random box point keeps equalities satisfiable.
    Rational act;
    for (const auto& [j, a] : coefs) {
      const Rational& bl = m.lb[j].value();
      const Rational& bu = m.ub[j].value();
      Rational v;
      if (m.integer[j]) {
        const long l = bl.ceil().num().get_si();
        const long u = bu.floor().num().get_si();
        v = Rational(l >= u ? l : random_int(rng, static_cast<int>(l),
                                             static_cast<int>(u)));
      } else {
        v = bl + (bu - bl) * Rational(random_int(rng, 0, 7), 7);
      }
      act += a * v;
    }
    return act;
  }
  return lo + (hi - lo) * Rational(random_int(rng, 1, 11), 12);
}

/// Random LP with all-finite bounds (so its feasible set, when nonempty, is
/// a polytope and vertex enumeration is a complete oracle).
inline RationalMIP random_boxed_lp(Rng& rng, int max_n = 8, int max_m = 8,
                                   int max_joint = 12) {
  RationalMIP m;
  int n = random_int(rng, 1, max_n);
  int rows = random_int(rng, 1, std::min(max_m, std::max(1, max_joint - n)));
  for (int j = 0; j < n; ++j) {
    Rational lo = random_rational(rng, 10, 10);
    Rational hi = lo + random_rational(rng, 10, 10).abs() + Rational(1, 7);
    m.add_col("x" + std::to_string(j), lo, hi, false, random_rational(rng));
  }
  for (int i = 0; i < rows; ++i) {
    std::vector<std::pair<int, Rational>> coefs;
    for (int j = 0; j < n; ++j) {
      if (chance(rng, 0.7)) {
        const Rational c = random_rational(rng, 20, 20);
        if (!c.is_zero()) coefs.emplace_back(j, c);
      }
    }
    if (coefs.empty()) coefs.emplace_back(random_int(rng, 0, n - 1), Rational(1));
    const int pick = random_int(rng, 0, 9);
    const RowSense sense = pick < 4   ? RowSense::GreaterEqual
                           : pick < 8 ? RowSense::LessEqual
                                      : RowSense::Equal;
    add_row(m, sense, pick_rhs(rng, m, coefs, sense), coefs);
  }
  return m;
}

/// Random MIP in the acceptance shape: up to 10 binaries plus up to 2
/// bounded continuous columns, up to 8 rows, denominators <= 100.
inline RationalMIP random_mip(Rng& rng, int max_bin = 10, int max_cont = 2,
                              int max_m = 8, int min_bin = 1) {
  RationalMIP m;
  const int nb = random_int(rng, min_bin, max_bin);
  const int nc = random_int(rng, 0, max_cont);
  for (int j = 0; j < nb; ++j) {
    m.add_col("b" + std::to_string(j), Rational(0), Rational(1), true,
              random_rational(rng));
  }
  for (int j = 0; j < nc; ++j) {
    const Rational lo = random_rational(rng, 5, 5);
    m.add_col("c" + std::to_string(j), lo,
              lo + random_rational(rng, 10, 10).abs() + Rational(1),
              false, random_rational(rng));
  }
  const int rows = random_int(rng, 1, max_m);
  for (int i = 0; i < rows; ++i) {
    std::vector<std::pair<int, Rational>> coefs;
    for (int j = 0; j < m.n; ++j) {
      if (chance(rng, 0.6)) {
        const Rational c = random_rational(rng, 10, 10);
        if (!c.is_zero()) coefs.emplace_back(j, c);
      }
    }
    if (coefs.empty()) coefs.emplace_back(random_int(rng, 0, m.n - 1), Rational(1));
    const int pick = random_int(rng, 0, 9);
    const RowSense sense = pick < 4   ? RowSense::GreaterEqual
                           : pick < 8 ? RowSense::LessEqual
                                      : RowSense::Equal;
    add_row(m, sense, pick_rhs(rng, m, coefs, sense), coefs);
  }
  return m;
}

/// The 2-variable knapsack fixture: min -5 x1 - 4 x2 s.t. 2 x1 + 3 x2 <= 4,
/// x binary. Optimum -5 at (1, 0).
inline RationalMIP knapsack_fixture() {
  RationalMIP m;
  m.name = "knapsack";
  m.add_col("x1", Rational(0), Rational(1), true, Rational(-5));
  m.add_col("x2", Rational(0), Rational(1), true, Rational(-4));
  add_row(m, RowSense::LessEqual, Rational(4),
          {{0, Rational(2)}, {1, Rational(3)}}, "cap");
  return m;
}

/// Infeasible by parity: 2x - 2y = 1 over integer x, y in [0, 10].
inline RationalMIP parity_fixture() {
  RationalMIP m;
  m.name = "parity";
  m.add_col("x", Rational(0), Rational(10), true, Rational(0));
  m.add_col("y", Rational(0), Rational(10), true, Rational(0));
  add_row(m, RowSense::Equal, Rational(1),
          {{0, Rational(2)}, {1, Rational(-2)}}, "par");
  return m;
}

}  // namespace exmip::testing

#endif  // EXMIP_TESTS_TEST_UTIL_HPP
