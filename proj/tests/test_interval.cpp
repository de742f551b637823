/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#include "exmip/interval.hpp"

#include <cmath>

#include "doctest.h"
#include "support/test_util.hpp"

using exmip::FloatInterval;
using exmip::Rational;
using exmip::running_error_dot;

TEST_CASE("interval enclosure contains the rational") {
  exmip::testing::Rng rng(8001);
  for (int t = 0; t < 5000; ++t) {
    const Rational q = exmip::testing::random_rational(rng, 100000, 99991);
    const FloatInterval iv = FloatInterval::enclose(q);
    CHECK(iv.contains(q));
    CHECK(iv.lo <= iv.hi);
  }
  CHECK(FloatInterval::enclose(Rational(1, 2)).is_point());
}

TEST_CASE("interval arithmetic soundness on random pairs") {
  exmip::testing::Rng rng(8002);
  int exercised = 0;
  for (int t = 0; t < 100000; ++t) {
    const Rational a = exmip::testing::random_rational(rng, 10000, 997);
    const Rational b = exmip::testing::random_rational(rng, 10000, 997);
    const FloatInterval ia = FloatInterval::enclose(a);
    const FloatInterval ib = FloatInterval::enclose(b);
    switch (t % 3) {
      case 0:
        CHECK((ia + ib).contains(a + b));
        break;
      case 1:
        CHECK((ia - ib).contains(a - b));
        break;
      default:
        CHECK((ia * ib).contains(a * b));
        break;
    }
    ++exercised;
  }
  CHECK(exercised == 100000);
}

TEST_CASE("running error dot on the empty sum") {
  const auto r = running_error_dot({}, {}, {}, {});
  CHECK(r.s == 0.0);
  CHECK(r.mu == 0.0);
}

TEST_CASE("running error dot with zero radii") {
  const double a[] = {1.0, 1.0};
  const double x[] = {0.5, 0.25};
  const double z[] = {0.0, 0.0};
  const auto r = running_error_dot(a, x, z, z);
  CHECK(r.s == 0.75);
  CHECK(r.mu <= 4 * exmip::kUnitRoundoff * 0.75);
  const Rational exact(3, 4);
  CHECK((Rational::of_double(r.s) - exact).abs() <=
        Rational::of_double(r.mu));
}

TEST_CASE("running error dot rejects bad input") {
  const double a[] = {1.0};
  const double nan[] = {std::nan("")};
  const double z[] = {0.0};
  const double neg[] = {-1.0};
  CHECK_THROWS_AS(running_error_dot(a, nan, z, z), std::invalid_argument);
  CHECK_THROWS_AS(running_error_dot(a, a, neg, z), std::invalid_argument);
  CHECK_THROWS_AS(running_error_dot(a, a, z, {}), std::invalid_argument);
}

TEST_CASE("running error soundness over perturbation radii") {
  exmip::testing::Rng rng(8003);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int t = 0; t < 10000; ++t) {
    const int n = exmip::testing::random_int(rng, 1, 50);
    std::vector<double> a_bar(n), x_bar(n), da(n), dx(n);
    std::vector<Rational> a_true(n), x_true(n);
    for (int i = 0; i < n; ++i) {
      // True rationals, then float carriers within the stated radii.
      a_true[i] = exmip::testing::random_rational(rng, 1000, 97);
      x_true[i] = exmip::testing::random_rational(rng, 1000, 97);
      const bool perturb = t % 2 == 1;
      if (!perturb) {
        a_bar[i] = a_true[i].to_double_nearest();
        x_bar[i] = x_true[i].to_double_nearest();
        da[i] = std::ldexp(std::fabs(a_bar[i]) + 1, -50);
        dx[i] = std::ldexp(std::fabs(x_bar[i]) + 1, -50);
      } else {
        const double pa = unit(rng) * 0.125;
        const double px = unit(rng) * 0.125;
        a_bar[i] = a_true[i].to_double_nearest() + pa;
        x_bar[i] = x_true[i].to_double_nearest() + px;
        da[i] = 0.25;
        dx[i] = 0.25;
      }
      CHECK((Rational::of_double(a_bar[i]) - a_true[i]).abs() <=
            Rational::of_double(da[i]));
      CHECK((Rational::of_double(x_bar[i]) - x_true[i]).abs() <=
            Rational::of_double(dx[i]));
    }
    const auto r = running_error_dot(a_bar, x_bar, da, dx);
    Rational exact;
    for (int i = 0; i < n; ++i) exact += a_true[i] * x_true[i];
    CHECK((Rational::of_double(r.s) - exact).abs() <=
          Rational::of_double(r.mu));
  }
}

TEST_CASE("one row, many true vectors inside the radii") {
  exmip::testing::Rng rng(8004);
  const int n = 50;
  std::vector<double> a_bar(n), x_bar(n), da(n), dx(n);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int i = 0; i < n; ++i) {
    a_bar[i] = unit(rng) * 8;
    x_bar[i] = unit(rng) * 8;
    da[i] = 1.0 / 16;
    dx[i] = 1.0 / 32;
  }
  const auto r = running_error_dot(a_bar, x_bar, da, dx);
  std::uniform_int_distribution<long> num(-64, 64);
  for (int t = 0; t < 10000; ++t) {
    Rational dot;
    for (int i = 0; i < n; ++i) {
      // True rationals sampled inside the stated radii.
      const Rational a = Rational::of_double(a_bar[i]) +
                         Rational(num(rng), 1024);  // |.| <= 1/16
      const Rational x = Rational::of_double(x_bar[i]) +
                         Rational(num(rng), 2048);  // |.| <= 1/32
      dot += a * x;
    }
    CHECK((Rational::of_double(r.s) - dot).abs() <= Rational::of_double(r.mu));
  }
}
