/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#include "exmip/rational.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "support/test_util.hpp"

using exmip::ExtendedRational;
using exmip::Rational;

TEST_CASE("decimal parsing is exact") {
  CHECK(Rational::from_decimal("0.1") == Rational(1, 10));
  CHECK(Rational::from_decimal("-2.5e-2") == Rational(-1, 40));
  CHECK(Rational::from_decimal("3") == Rational(3));
  CHECK(Rational::from_decimal("+12.75") == Rational(51, 4));
  CHECK(Rational::from_decimal("5e3") == Rational(5000));
  CHECK(Rational::from_decimal("1E+2") == Rational(100));

  CHECK_THROWS_AS(Rational::from_decimal(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_decimal("."), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_decimal(".5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_decimal("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_decimal("1e"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_decimal("x"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_decimal("1 2"), std::invalid_argument);
}

TEST_CASE("fraction parsing") {
  CHECK(*Rational::parse("3/4") == Rational(3, 4));
  CHECK(*Rational::parse("-3/4") == Rational(-3, 4));
  CHECK(*Rational::parse("0.25") == Rational(1, 4));
  CHECK(!Rational::parse("3/0").has_value());
  CHECK(!Rational::parse("1.5/2").has_value());
  CHECK(!Rational::parse("a/b").has_value());
}

TEST_CASE("nearest_float on exactly representable values") {
  CHECK(Rational(1, 2).to_double_nearest() == 0.5);
  CHECK(Rational(-3, 4).to_double_nearest() == -0.75);
  CHECK(Rational(0).to_double_nearest() == 0.0);
  // 10^20 = 2^20 * 5^20 has a 47-bit odd part, representable in 53 bits.
  Rational big = Rational::from_decimal("1e20");
  bool overflow = true;
  const double d = big.to_double_nearest(&overflow);
  CHECK(!overflow);
  CHECK(Rational::of_double(d) == big);
}

TEST_CASE("nearest_float of 1/10 is the documented binary64 neighbor") {
  const double d = Rational(1, 10).to_double_nearest();
  // 3602879701896397 * 2^-55
  CHECK(Rational::of_double(d) ==
        Rational(mpz_class("3602879701896397"),
                 mpz_class(1) << 55));
}

TEST_CASE("nearest_float saturates with an overflow flag") {
  mpz_class huge;
  mpz_ui_pow_ui(huge.get_mpz_t(), 2, 2000);
  bool overflow = false;
  CHECK(Rational(huge).to_double_nearest(&overflow) ==
        std::numeric_limits<double>::infinity());
  CHECK(overflow);
  overflow = false;
  CHECK(Rational(mpz_class(-huge)).to_double_nearest(&overflow) ==
        -std::numeric_limits<double>::infinity());
  CHECK(overflow);
}

TEST_CASE("nearest_float optimality against neighbor comparison oracle") {
  exmip::testing::Rng rng(7001);
  for (int t = 0; t < 3000; ++t) {
    const Rational q = exmip::testing::random_rational(rng, 1000000, 999983);
    bool overflow = false;
    const double d = q.to_double_nearest(&overflow);
    REQUIRE(!overflow);
    const Rational dr = Rational::of_double(d);
    const Rational err = (dr - q).abs();
    const Rational lo = Rational::of_double(std::nextafter(d, -1e308));
    const Rational hi = Rational::of_double(std::nextafter(d, 1e308));
    CHECK((lo - q).abs() >= err);
    CHECK((hi - q).abs() >= err);
  }
}

TEST_CASE("canonical form closure under arithmetic") {
  exmip::testing::Rng rng(7002);
  for (int t = 0; t < 2000; ++t) {
    const Rational a = exmip::testing::random_rational(rng);
    Rational b = exmip::testing::random_rational(rng);
    Rational results[4] = {a + b, a - b, a * b,
                           b.is_zero() ? a : a / b};
    for (const Rational& r : results) {
      mpq_class re(r.num(), r.den());
      re.canonicalize();
      CHECK(re.get_num() == r.num());
      CHECK(re.get_den() == r.den());
      CHECK(r.den() > 0);
    }
  }
}

TEST_CASE("division by zero throws") {
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("floor and ceil") {
  CHECK(Rational(7, 2).floor() == Rational(3));
  CHECK(Rational(7, 2).ceil() == Rational(4));
  CHECK(Rational(-7, 2).floor() == Rational(-4));
  CHECK(Rational(-7, 2).ceil() == Rational(-3));
  CHECK(Rational(5).floor() == Rational(5));
  CHECK(Rational(5).ceil() == Rational(5));
}

TEST_CASE("to_string prints p/q") {
  CHECK(Rational(1, 3).to_string() == "1/3");
  CHECK(Rational(-6, 4).to_string() == "-3/2");
  CHECK(Rational(8).to_string() == "8");
}

TEST_CASE("extended rationals follow order semantics") {
  const ExtendedRational inf = ExtendedRational::infinity();
  const ExtendedRational ninf = ExtendedRational::neg_infinity();
  const ExtendedRational two(Rational(2));

  CHECK(ninf < two);
  CHECK(two < inf);
  CHECK(ninf < inf);
  CHECK(inf == ExtendedRational::infinity());
  CHECK((inf + two).is_pos_inf());
  CHECK((ninf + two).is_neg_inf());
  CHECK((two + two).value() == Rational(4));
  CHECK((-inf).is_neg_inf());
  CHECK_THROWS_AS(inf - inf, std::domain_error);
  CHECK_THROWS_AS(ninf.value(), std::domain_error);
}
