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

#include <mpfr.h>

#include <cctype>
#include <cmath>
#include <ostream>

namespace exmip {

Rational Rational::of_double(double d) {
  if (!std::isfinite(d)) throw std::domain_error("of_double: non-finite");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), d);
  return Rational(q);
}

Rational Rational::from_decimal(std::string_view text) {
  const auto fail = [&] {
    throw std::invalid_argument("malformed decimal literal: '" +
                                std::string(text) + "'");
  };
  size_t i = 0;
  const size_t len = text.size();
  bool negative = false;
  if (i < len && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  size_t int_digits = 0;
  while (i < len && std::isdigit(static_cast<unsigned char>(text[i]))) {
    digits += text[i++];
    ++int_digits;
  }
  if (int_digits == 0) fail();
  long frac_digits = 0;
  if (i < len && text[i] == '.') {
    ++i;
    while (i < len && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits += text[i++];
      ++frac_digits;
    }
  }
  long exponent = 0;
  if (i < len && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_neg = false;
    if (i < len && (text[i] == '+' || text[i] == '-')) {
      exp_neg = text[i] == '-';
      ++i;
    }
    size_t exp_digits = 0;
    while (i < len && std::isdigit(static_cast<unsigned char>(text[i]))) {
      if (exponent > 100000000) fail();
      exponent = exponent * 10 + (text[i] - '0');
      ++i;
      ++exp_digits;
    }
    if (exp_digits == 0) fail();
    if (exp_neg) exponent = -exponent;
  }
  if (i != len) fail();

  mpz_class mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  const long ten_power = exponent - frac_digits;
  mpz_class num = mantissa, den = 1;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10,
                static_cast<unsigned long>(std::labs(ten_power)));
  if (ten_power >= 0) {
    num *= scale;
  } else {
    den = scale;
  }
  return Rational(num, den);
}

std::optional<Rational> Rational::parse(std::string_view text) {
  const size_t slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return from_decimal(text);
    const Rational num = from_decimal(text.substr(0, slash));
    const Rational den = from_decimal(text.substr(slash + 1));
    if (!num.is_integer() || !den.is_integer() || den.is_zero()) return {};
    return num / den;
  } catch (const std::invalid_argument&) {
    return {};
  }
}

double Rational::to_double_nearest(bool* overflow) const {
  // MPFR at 53 bits with the binary64 exponent range gives the correctly
  // rounded (ties-to-even) conversion, including subnormals.
  const mpfr_exp_t saved_emin = mpfr_get_emin();
  const mpfr_exp_t saved_emax = mpfr_get_emax();
  mpfr_set_emin(-1073);
  mpfr_set_emax(1024);
  mpfr_t f;
  mpfr_init2(f, 53);
  int t = mpfr_set_q(f, v_.get_mpq_t(), MPFR_RNDN);
  t = mpfr_check_range(f, t, MPFR_RNDN);
  mpfr_subnormalize(f, t, MPFR_RNDN);
  const double d = mpfr_get_d(f, MPFR_RNDN);
  mpfr_clear(f);
  mpfr_set_emin(saved_emin);
  mpfr_set_emax(saved_emax);
  if (overflow != nullptr) *overflow = std::isinf(d);
  return d;
}

Rational Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(),
             v_.get_den().get_mpz_t());
  return Rational(q);
}

Rational Rational::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(),
             v_.get_den().get_mpz_t());
  return Rational(q);
}

std::string Rational::to_string() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& q) {
  return os << q.to_string();
}

double ExtendedRational::to_double() const {
  switch (kind_) {
    case Kind::PosInf:
      return std::numeric_limits<double>::infinity();
    case Kind::NegInf:
      return -std::numeric_limits<double>::infinity();
    case Kind::Finite:
      break;
  }
  return v_.to_double_nearest();
}

ExtendedRational ExtendedRational::operator-() const {
  switch (kind_) {
    case Kind::PosInf:
      return neg_infinity();
    case Kind::NegInf:
      return infinity();
    case Kind::Finite:
      break;
  }
  return ExtendedRational(-v_);
}

ExtendedRational& ExtendedRational::operator+=(const ExtendedRational& o) {
  if (kind_ == Kind::Finite && o.kind_ == Kind::Finite) {
    v_ += o.v_;
    return *this;
  }
  if ((is_pos_inf() && o.is_neg_inf()) || (is_neg_inf() && o.is_pos_inf())) {
    throw std::domain_error("ExtendedRational: infinity - infinity");
  }
  if (o.kind_ != Kind::Finite) kind_ = o.kind_;
  if (kind_ != Kind::Finite) v_ = Rational();
  return *this;
}

bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ != ExtendedRational::Kind::Finite) return true;
  return a.v_ == b.v_;
}

bool operator<(const ExtendedRational& a, const ExtendedRational& b) {
  using Kind = ExtendedRational::Kind;
  if (a.kind_ == Kind::NegInf) return b.kind_ != Kind::NegInf;
  if (a.kind_ == Kind::PosInf) return false;
  if (b.kind_ == Kind::PosInf) return true;
  if (b.kind_ == Kind::NegInf) return false;
  return a.v_ < b.v_;
}

std::string ExtendedRational::to_string() const {
  switch (kind_) {
    case Kind::PosInf:
      return "inf";
    case Kind::NegInf:
      return "-inf";
    case Kind::Finite:
      break;
  }
  return v_.to_string();
}

std::ostream& operator<<(std::ostream& os, const ExtendedRational& q) {
  return os << q.to_string();
}

}  // namespace exmip
