/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#ifndef EXMIP_RATIONAL_HPP
#define EXMIP_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace exmip {

/// Arbitrary-precision rational scalar. Always kept in canonical form:
/// positive denominator, gcd(|num|, den) = 1.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}         // NOLINT: implicit by design
  Rational(int n) : v_(n) {}          // NOLINT
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  explicit Rational(const mpz_class& z) : v_(z) {}
  Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
  }
  /// The double d interpreted exactly (doubles are dyadic rationals).
  static Rational of_double(double d);

  /// Parses a decimal literal [+-]?digits[.digits][eE[+-]?digits] exactly.
  /// Throws std::invalid_argument on malformed input.
  static Rational from_decimal(std::string_view text);

  /// Accepts either a decimal literal or a "p/q" fraction.
  static std::optional<Rational> parse(std::string_view text);

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  /// Nearest binary64 value, ties to even; saturates to +-infinity beyond
  /// the finite range and reports that through *overflow.
  double to_double_nearest(bool* overflow = nullptr) const;

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational abs() const { return Rational(raw_tag{}, ::abs(v_)); }
  /// Largest integer <= *this.
  Rational floor() const;
  /// Smallest integer >= *this.
  Rational ceil() const;

  Rational operator-() const { return Rational(raw_tag{}, -v_); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return a.v_ != b.v_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.v_ < b.v_;
  }
  friend bool operator>(const Rational& a, const Rational& b) {
    return a.v_ > b.v_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.v_ <= b.v_;
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return a.v_ >= b.v_;
  }

  /// "p/q", or just "p" for integers.
  std::string to_string() const;

  const mpq_class& raw() const { return v_; }

 private:
  struct raw_tag {};
  Rational(raw_tag, mpq_class q) : v_(std::move(q)) {}

  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

inline Rational abs(const Rational& q) { return q.abs(); }
inline const Rational& min(const Rational& a, const Rational& b) {
  return b < a ? b : a;
}
inline const Rational& max(const Rational& a, const Rational& b) {
  return a < b ? b : a;
}

/// A rational extended with +infinity / -infinity, used for variable bounds
/// and dual bounds. Addition involving opposite infinities throws.
class ExtendedRational {
 public:
  ExtendedRational() : kind_(Kind::Finite) {}
  ExtendedRational(Rational q) : kind_(Kind::Finite), v_(std::move(q)) {}  // NOLINT
  ExtendedRational(long n) : kind_(Kind::Finite), v_(n) {}                 // NOLINT

  static ExtendedRational infinity() { return ExtendedRational(Kind::PosInf); }
  static ExtendedRational neg_infinity() {
    return ExtendedRational(Kind::NegInf);
  }

  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }

  /// Finite value; throws if infinite.
  const Rational& value() const {
    if (!is_finite()) throw std::domain_error("ExtendedRational: infinite");
    return v_;
  }

  double to_double() const;

  ExtendedRational operator-() const;
  ExtendedRational& operator+=(const ExtendedRational& o);
  ExtendedRational& operator-=(const ExtendedRational& o) {
    return *this += -o;
  }
  friend ExtendedRational operator+(ExtendedRational a,
                                    const ExtendedRational& b) {
    return a += b;
  }
  friend ExtendedRational operator-(ExtendedRational a,
                                    const ExtendedRational& b) {
    return a -= b;
  }

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b);
  friend bool operator!=(const ExtendedRational& a,
                         const ExtendedRational& b) {
    return !(a == b);
  }
  friend bool operator<(const ExtendedRational& a, const ExtendedRational& b);
  friend bool operator>(const ExtendedRational& a, const ExtendedRational& b) {
    return b < a;
  }
  friend bool operator<=(const ExtendedRational& a,
                         const ExtendedRational& b) {
    return !(b < a);
  }
  friend bool operator>=(const ExtendedRational& a,
                         const ExtendedRational& b) {
    return !(a < b);
  }

  std::string to_string() const;

 private:
  enum class Kind : uint8_t { Finite, PosInf, NegInf };
  explicit ExtendedRational(Kind k) : kind_(k) {}

  Kind kind_;
  Rational v_;
};

std::ostream& operator<<(std::ostream& os, const ExtendedRational& q);

inline const ExtendedRational& min(const ExtendedRational& a,
                                   const ExtendedRational& b) {
  return b < a ? b : a;
}
inline const ExtendedRational& max(const ExtendedRational& a,
                                   const ExtendedRational& b) {
  return a < b ? b : a;
}

}  // namespace exmip

#endif  // EXMIP_RATIONAL_HPP
