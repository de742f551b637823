/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#ifndef EXMIP_INTERVAL_HPP
#define EXMIP_INTERVAL_HPP

#include <limits>
#include <span>

#include "exmip/rational.hpp"

namespace exmip {

/// Unit roundoff of binary64 arithmetic.
inline constexpr double kUnitRoundoff = 0x1p-53;

/// Smallest positive subnormal; absorbs underflow in outward rounding.
inline constexpr double kEta = std::numeric_limits<double>::denorm_min();

/// Outward rounding by epsilon inflation: round_up(x) >= any real that
/// rounds to x under round-to-nearest, round_down(x) likewise below.
inline double round_up(double x) {
  if (x == std::numeric_limits<double>::infinity()) return x;
  return x + (2 * kUnitRoundoff * (x < 0 ? -x : x) + kEta);
}

inline double round_down(double x) {
  if (x == -std::numeric_limits<double>::infinity()) return x;
  return x - (2 * kUnitRoundoff * (x < 0 ? -x : x) + kEta);
}

/// Multiplies an upper-bound accumulator by (1+4u); one application absorbs
/// the rounding of up to two preceding float operations.
inline double inflate_up(double x) { return x * (1 + 4 * kUnitRoundoff); }

/// Closed binary64 interval [lo, hi] guaranteed to contain the true real
/// result of the operations that produced it.
struct FloatInterval {
  double lo = 0.0;
  double hi = 0.0;

  FloatInterval() = default;
  FloatInterval(double lo_, double hi_) : lo(lo_), hi(hi_) {}

  static FloatInterval point(double v) { return {v, v}; }

  /// Tightest representable enclosure of q; degenerate when q is
  /// exactly representable.
  static FloatInterval enclose(const Rational& q);

  bool contains(const Rational& q) const;
  bool is_point() const { return lo == hi; }

  FloatInterval operator-() const { return {-hi, -lo}; }

  friend FloatInterval operator+(const FloatInterval& a,
                                 const FloatInterval& b) {
    return {round_down(a.lo + b.lo), round_up(a.hi + b.hi)};
  }
  friend FloatInterval operator-(const FloatInterval& a,
                                 const FloatInterval& b) {
    return a + (-b);
  }
  friend FloatInterval operator*(const FloatInterval& a,
                                 const FloatInterval& b);
};

struct RunningErrorDot {
  double s = 0.0;   ///< float evaluation of the dot product, in index order
  double mu = 0.0;  ///< bound on |s - true dot| over the stated radii
};

/// Floating-point dot product of a_bar and x_bar together with a rounding
/// and perturbation error bound: for any true vectors a, x with
/// |a - a_bar| <= delta_a and |x - x_bar| <= delta_x componentwise,
/// |s - a^T x| <= mu. Throws std::invalid_argument on non-finite input or
/// mismatched lengths.
RunningErrorDot running_error_dot(std::span<const double> a_bar,
                                  std::span<const double> x_bar,
                                  std::span<const double> delta_a,
                                  std::span<const double> delta_x);

}  // namespace exmip

#endif  // EXMIP_INTERVAL_HPP
