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

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace exmip {

FloatInterval FloatInterval::enclose(const Rational& q) {
  bool overflow = false;
  const double d = q.to_double_nearest(&overflow);
  if (!overflow && Rational::of_double(d) == q) return point(d);
  double lo = std::nextafter(d, -std::numeric_limits<double>::infinity());
  double hi = std::nextafter(d, std::numeric_limits<double>::infinity());
  if (std::isinf(d)) {
    if (d > 0) hi = d;
    if (d < 0) lo = d;
  }
  return {lo, hi};
}

bool FloatInterval::contains(const Rational& q) const {
  if (std::isfinite(lo) && q < Rational::of_double(lo)) return false;
  if (std::isfinite(hi) && q > Rational::of_double(hi)) return false;
  return !(lo == std::numeric_limits<double>::infinity() ||
           hi == -std::numeric_limits<double>::infinity());
}

FloatInterval operator*(const FloatInterval& a, const FloatInterval& b) {
  // Zero-width zero intervals annihilate, sidestepping 0 * inf.
  if (a.lo == 0 && a.hi == 0) return FloatInterval::point(0);
  if (b.lo == 0 && b.hi == 0) return FloatInterval::point(0);
  const auto mul = [](double x, double y) {
    if (x == 0 || y == 0) return 0.0;
    return x * y;
  };
  const double p1 = mul(a.lo, b.lo);
  const double p2 = mul(a.lo, b.hi);
  const double p3 = mul(a.hi, b.lo);
  const double p4 = mul(a.hi, b.hi);
  return {round_down(std::min({p1, p2, p3, p4})),
          round_up(std::max({p1, p2, p3, p4}))};
}

RunningErrorDot running_error_dot(std::span<const double> a_bar,
                                  std::span<const double> x_bar,
                                  std::span<const double> delta_a,
                                  std::span<const double> delta_x) {
  const size_t n = a_bar.size();
  if (x_bar.size() != n || delta_a.size() != n || delta_x.size() != n) {
    throw std::invalid_argument("running_error_dot: length mismatch");
  }
  for (size_t i = 0; i < n; ++i) {
    if (!std::isfinite(a_bar[i]) || !std::isfinite(x_bar[i]) ||
        !std::isfinite(delta_a[i]) || !std::isfinite(delta_x[i])) {
      throw std::invalid_argument("running_error_dot: non-finite component");
    }
    if (delta_a[i] < 0 || delta_x[i] < 0) {
      throw std::invalid_argument("running_error_dot: negative radius");
    }
  }

  if (n == 0) return {0.0, 0.0};

  double s = 0.0;
  double e = 0.0;           // running bound on accumulated |p_i| + |s_i|
  double correction = 0.0;  // perturbation terms from the input radii
  for (size_t i = 0; i < n; ++i) {
    const double p = a_bar[i] * x_bar[i];
    s += p;
    e = inflate_up(e + std::fabs(p));
    e = inflate_up(e + std::fabs(s));
    const double term = inflate_up((std::fabs(a_bar[i]) + delta_a[i]) *
                                       delta_x[i] +
                                   delta_a[i] * std::fabs(x_bar[i]));
    correction = inflate_up(correction + term);
  }
  const double mu =
      inflate_up(inflate_up(kUnitRoundoff * e) + correction) + kEta;
  return {s, mu};
}

}  // namespace exmip
