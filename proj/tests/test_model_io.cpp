/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#include <sstream>

#include "doctest.h"
#include "exmip/model.hpp"
#include "exmip/mps.hpp"
#include "support/test_util.hpp"

using namespace exmip;

namespace {

const char* kKnapsackMps = R"(NAME knapsack
ROWS
 N  COST
 L  CAP
COLUMNS
    MARKER0  'MARKER'  'INTORG'
    x1  COST  -5
    x1  CAP  2
    x2  COST  -4
    x2  CAP  3
    MARKER1  'MARKER'  'INTEND'
RHS
    RHS  CAP  4
BOUNDS
 UP  BND  x1  1
 UP  BND  x2  1
ENDATA
)";

RationalMIP parse_string(const std::string& text, bool maximize = false) {
  std::istringstream in(text);
  return parse_mps(in, maximize);
}

bool models_equal(const RationalMIP& a, const RationalMIP& b) {
  if (a.n != b.n || a.m != b.m) return false;
  for (int i = 0; i < a.m; ++i) {
    if (a.sense[i] != b.sense[i] || a.rhs[i] != b.rhs[i]) return false;
    if (a.rows[i].idx != b.rows[i].idx) return false;
    for (size_t k = 0; k < a.rows[i].size(); ++k) {
      if (a.rows[i].val[k] != b.rows[i].val[k]) return false;
    }
  }
  for (int j = 0; j < a.n; ++j) {
    if (a.obj[j] != b.obj[j] || a.integer[j] != b.integer[j]) return false;
    if (a.lb[j] != b.lb[j] || a.ub[j] != b.ub[j]) return false;
  }
  return a.obj_constant == b.obj_constant;
}

}  // namespace

TEST_CASE("knapsack fixture parses to the expected shape") {
  const RationalMIP m = parse_string(kKnapsackMps);
  CHECK(m.n == 2);
  CHECK(m.m == 1);
  CHECK(m.integer[0]);
  CHECK(m.integer[1]);
  CHECK(m.sense[0] == RowSense::LessEqual);
  CHECK(m.rhs[0] == Rational(4));
  CHECK(m.obj[0] == Rational(-5));
  CHECK(m.rows[0].at(0) == Rational(2));
  CHECK(m.rows[0].at(1) == Rational(3));
  CHECK(m.lb[0].value() == Rational(0));
  CHECK(m.ub[1].value() == Rational(1));
}

TEST_CASE("coefficient literal 0.1 is stored exactly") {
  const RationalMIP m = parse_string(
      "NAME t\nROWS\n N OBJ\n G R1\nCOLUMNS\n x OBJ 0.1\n x R1 0.1\n"
      "RHS\n RHS R1 0.3\nENDATA\n");
  CHECK(m.obj[0] == Rational(1, 10));
  CHECK(m.rows[0].at(0) == Rational(1, 10));
  CHECK(m.rhs[0] == Rational(3, 10));
}

TEST_CASE("ranges split a row into an equivalent pair") {
  const RationalMIP two_row = parse_string(
      "NAME t\nROWS\n N OBJ\n L R1\nCOLUMNS\n x OBJ 1\n x R1 1\n y R1 2\n"
      "RHS\n RHS R1 6\nRANGES\n RNG R1 2\nBOUNDS\n UP B x 5\n UP B y 5\n"
      "ENDATA\n");
  REQUIRE(two_row.m == 2);
  CHECK(two_row.sense[0] == RowSense::LessEqual);
  CHECK(two_row.rhs[0] == Rational(6));
  CHECK(two_row.sense[1] == RowSense::GreaterEqual);
  CHECK(two_row.rhs[1] == Rational(4));

  // Oracle: enumerate integer points of the box and compare feasibility
  // with the direct range 4 <= x + 2y <= 6.
  for (long xv = 0; xv <= 5; ++xv) {
    for (long yv = 0; yv <= 5; ++yv) {
      const std::vector<Rational> point{Rational(xv), Rational(yv)};
      const bool in_range = xv + 2 * yv >= 4 && xv + 2 * yv <= 6;
      CHECK(!check_solution_exact(two_row, point).has_value() == in_range);
    }
  }
}

TEST_CASE("equality ranges follow the sign convention") {
  const RationalMIP pos = parse_string(
      "NAME t\nROWS\n N OBJ\n E R1\nCOLUMNS\n x OBJ 1\n x R1 1\n"
      "RHS\n RHS R1 3\nRANGES\n RNG R1 2\nENDATA\n");
  REQUIRE(pos.m == 2);
  // r >= 0 on an equality: [b, b + r].
  CHECK(pos.sense[0] == RowSense::GreaterEqual);
  CHECK(pos.rhs[0] == Rational(3));
  CHECK(pos.sense[1] == RowSense::LessEqual);
  CHECK(pos.rhs[1] == Rational(5));
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_string("NAME t\nROWZ\n"),
                       doctest::Contains("unknown section"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_string("NAME t\nROWS\n N OBJ\n G R1\n G R1\nCOLUMNS\nENDATA\n"),
      doctest::Contains("duplicate row"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_string("NAME t\nROWS\n N OBJ\nCOLUMNS\n x NOPE 1\nENDATA\n"),
      doctest::Contains("undefined row"), ParseError);
  try {
    parse_string("NAME t\nROWS\n N OBJ\nCOLUMNS\n x NOPE 1\nENDATA\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
  }
}

TEST_CASE("maximize negates the stored objective") {
  const RationalMIP m = parse_string(
      "NAME t\nROWS\n N OBJ\n L R1\nCOLUMNS\n x OBJ 3\n x R1 1\n"
      "RHS\n RHS R1 5\nENDATA\n",
      /*maximize=*/true);
  CHECK(m.maximize);
  CHECK(m.obj[0] == Rational(-3));
  CHECK(m.report_objective(Rational(-6)) == Rational(6));
}

TEST_CASE("approximate matches nearest_float componentwise") {
  RationalMIP m;
  m.add_col("a", Rational(0), ExtendedRational::infinity(), false,
            Rational(1, 2));
  m.add_col("b", ExtendedRational::neg_infinity(), Rational(1, 10), false,
            Rational(1, 10));
  exmip::testing::add_row(m, RowSense::GreaterEqual, Rational(1, 3),
                          {{0, Rational(1, 2)}, {1, Rational(1, 10)}});
  const FloatMIP f = approximate(m);
  CHECK(f.obj[0] == 0.5);
  CHECK(f.obj[1] == Rational(1, 10).to_double_nearest());
  CHECK(f.row_val[0][0] == 0.5);
  CHECK(f.ub[0] == std::numeric_limits<double>::infinity());
  CHECK(f.lb[1] == -std::numeric_limits<double>::infinity());
  CHECK(!f.any_overflow);

  // Idempotence on representable data: the float copy equals the rational
  // data exactly.
  RationalMIP r;
  r.add_col("a", Rational(-3, 4), Rational(5, 2), true, Rational(7, 8));
  exmip::testing::add_row(r, RowSense::Equal, Rational(1, 4),
                          {{0, Rational(3, 16)}});
  const FloatMIP fr = approximate(r);
  CHECK(Rational::of_double(fr.obj[0]) == r.obj[0]);
  CHECK(Rational::of_double(fr.row_val[0][0]) == r.rows[0].val[0]);
  CHECK(Rational::of_double(fr.lb[0]) == r.lb[0].value());
  CHECK(Rational::of_double(fr.ub[0]) == r.ub[0].value());
}

TEST_CASE("approximate flags overflow-saturated entries") {
  mpz_class huge;
  mpz_ui_pow_ui(huge.get_mpz_t(), 2, 1100);
  RationalMIP m;
  m.add_col("a", Rational(0), Rational(1), false, Rational(huge));
  const FloatMIP f = approximate(m);
  CHECK(f.any_overflow);
  CHECK(f.obj[0] == std::numeric_limits<double>::infinity());
}

TEST_CASE("check_solution_exact examples") {
  const RationalMIP m = exmip::testing::knapsack_fixture();
  CHECK(!check_solution_exact(m, {Rational(1), Rational(0)}).has_value());

  const auto row_violation = check_solution_exact(m, {Rational(1), Rational(1)});
  REQUIRE(row_violation.has_value());
  CHECK(row_violation->kind == Violation::Kind::Row);
  CHECK(row_violation->index == 0);
  CHECK(row_violation->witness == Rational(5));

  const auto frac = check_solution_exact(m, {Rational(1, 2), Rational(0)});
  REQUIRE(frac.has_value());
  CHECK(frac->kind == Violation::Kind::Integrality);
  CHECK(frac->index == 0);
}

TEST_CASE("check_solution_exact agrees with a brute-force evaluator") {
  exmip::testing::Rng rng(9003);
  for (int t = 0; t < 1000; ++t) {
    const RationalMIP m = exmip::testing::random_mip(rng, 5, 2, 4);
    std::vector<Rational> x(m.n);
    for (int j = 0; j < m.n; ++j) {
      x[j] = exmip::testing::chance(rng, 0.5)
                 ? Rational(exmip::testing::random_int(rng, -1, 2))
                 : exmip::testing::random_rational(rng, 3, 3);
    }
    // Independent re-evaluation, loops written from the definition.
    bool ok = true;
    for (int i = 0; i < m.m && ok; ++i) {
      Rational act;
      for (size_t k = 0; k < m.rows[i].size(); ++k) {
        act += m.rows[i].val[k] * x[m.rows[i].idx[k]];
      }
      switch (m.sense[i]) {
        case RowSense::GreaterEqual:
          ok = act >= m.rhs[i];
          break;
        case RowSense::LessEqual:
          ok = act <= m.rhs[i];
          break;
        case RowSense::Equal:
          ok = act == m.rhs[i];
          break;
      }
    }
    for (int j = 0; j < m.n && ok; ++j) {
      if (m.lb[j].is_finite()) ok = x[j] >= m.lb[j].value();
      if (ok && m.ub[j].is_finite()) ok = x[j] <= m.ub[j].value();
      if (ok && m.integer[j]) ok = x[j].is_integer();
    }
    CHECK(!check_solution_exact(m, x).has_value() == ok);
  }
}

TEST_CASE("mps round trip reproduces the model exactly") {
  exmip::testing::Rng rng(9004);
  const RationalMIP knap = exmip::testing::knapsack_fixture();
  std::ostringstream out;
  write_mps(knap, out);
  CHECK(models_equal(parse_string(out.str()), knap));

  for (int t = 0; t < 50; ++t) {
    const RationalMIP m = exmip::testing::random_mip(rng);
    std::ostringstream os;
    write_mps(m, os);
    const RationalMIP back = parse_string(os.str());
    CHECK(models_equal(back, m));
  }

  // Non-decimal rationals round-trip through the p/q extension.
  RationalMIP thirds;
  thirds.add_col("x", Rational(-1, 3), Rational(7, 3), false, Rational(2, 3));
  exmip::testing::add_row(thirds, RowSense::GreaterEqual, Rational(1, 3),
                          {{0, Rational(5, 3)}});
  std::ostringstream os;
  write_mps(thirds, os);
  CHECK(models_equal(parse_string(os.str()), thirds));
}

TEST_CASE("solution file round trip") {
  const RationalMIP m = exmip::testing::knapsack_fixture();
  const Solution s =
      make_solution(m, {Rational(1), Rational(0)}, SolutionOrigin::Oracle);
  CHECK(s.objective == Rational(-5));
  std::ostringstream os;
  write_solution(m, s, os);
  CHECK(os.str().find("=obj= -5") == 0);
  std::istringstream is(os.str());
  const Solution back = read_solution(m, is);
  CHECK(back.x == s.x);
  CHECK(back.objective == Rational(-5));
  CHECK(back.origin == SolutionOrigin::File);
}

TEST_CASE("inconsistent bounds are detected at load") {
  RationalMIP m;
  m.add_col("x", Rational(2), Rational(1), false, Rational(0));
  CHECK(m.inconsistent_bound_col() == 0);
}
