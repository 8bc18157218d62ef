#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <string>
#include <utility>

#include "kdelab/errors.hpp"
#include "kdelab/rational.hpp"

namespace kdelab {

// Arbitrary-precision binary float backed by MPFR, round-to-nearest.
// Precision is a property of each value; binary operations produce results at
// the larger operand precision, so a computation seeded at p bits stays at p
// bits throughout.
class BigFloat {
 public:
  static constexpr mpfr_prec_t kMinPrec = 64;

  explicit BigFloat(mpfr_prec_t prec = kMinPrec) {
    mpfr_init2(f_, clamp(prec));
    mpfr_set_zero(f_, 1);
  }
  BigFloat(long v, mpfr_prec_t prec) {
    mpfr_init2(f_, clamp(prec));
    mpfr_set_si(f_, v, MPFR_RNDN);
  }
  BigFloat(double v, mpfr_prec_t prec) {
    mpfr_init2(f_, clamp(prec));
    mpfr_set_d(f_, v, MPFR_RNDN);
  }
  BigFloat(const Rational& r, mpfr_prec_t prec) {
    mpfr_init2(f_, clamp(prec));
    mpfr_set_q(f_, r.raw(), MPFR_RNDN);
  }

  BigFloat(const BigFloat& o) {
    mpfr_init2(f_, mpfr_get_prec(o.f_));
    mpfr_set(f_, o.f_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(f_, kMinPrec);
    mpfr_swap(f_, o.f_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(f_, mpfr_get_prec(o.f_));
      mpfr_set(f_, o.f_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(f_, o.f_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(f_); }

  mpfr_prec_t prec() const { return mpfr_get_prec(f_); }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.prec(), b.prec()));
    mpfr_add(r.f_, a.f_, b.f_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.f_, a.f_, b.f_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.prec(), b.prec()));
    mpfr_mul(r.f_, a.f_, b.f_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    if (b.is_zero()) throw DomainError("BigFloat: division by zero");
    BigFloat r(std::max(a.prec(), b.prec()));
    mpfr_div(r.f_, a.f_, b.f_, MPFR_RNDN);
    return r;
  }
  BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
  BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
  BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
  BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }
  BigFloat operator-() const {
    BigFloat r(*this);
    mpfr_neg(r.f_, r.f_, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.f_, b.f_) != 0; }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.f_, b.f_) != 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.f_, b.f_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.f_, b.f_) != 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.f_, b.f_) != 0; }

  // Exact comparison against a rational, no rounding of the rational.
  int cmp(const Rational& r) const { return mpfr_cmp_q(f_, r.raw()); }

  int sgn() const { return mpfr_sgn(f_); }
  bool is_zero() const { return mpfr_zero_p(f_) != 0; }
  bool is_nan() const { return mpfr_nan_p(f_) != 0; }

  BigFloat abs() const {
    BigFloat r(*this);
    mpfr_abs(r.f_, r.f_, MPFR_RNDN);
    return r;
  }
  BigFloat exp() const {
    BigFloat r(prec());
    mpfr_exp(r.f_, f_, MPFR_RNDN);
    return r;
  }
  BigFloat log() const {
    BigFloat r(prec());
    mpfr_log(r.f_, f_, MPFR_RNDN);
    return r;
  }
  BigFloat log2() const {
    BigFloat r(prec());
    mpfr_log2(r.f_, f_, MPFR_RNDN);
    return r;
  }
  BigFloat sqrt() const {
    BigFloat r(prec());
    mpfr_sqrt(r.f_, f_, MPFR_RNDN);
    return r;
  }
  BigFloat pow(long e) const {
    BigFloat r(prec());
    mpfr_pow_si(r.f_, f_, e, MPFR_RNDN);
    return r;
  }
  BigFloat pow(const BigFloat& e) const {
    BigFloat r(std::max(prec(), e.prec()));
    mpfr_pow(r.f_, f_, e.f_, MPFR_RNDN);
    return r;
  }

  // Nearest integer as a BigFloat (exact: integers of this size fit the mantissa).
  BigFloat round_nearest() const {
    BigFloat r(prec());
    mpfr_rint(r.f_, f_, MPFR_RNDN);
    return r;
  }
  long round_to_long() const {
    if (!mpfr_fits_slong_p(f_, MPFR_RNDN)) throw DomainError("BigFloat: rounds outside long range");
    return mpfr_get_si(f_, MPFR_RNDN);
  }

  double to_double() const { return mpfr_get_d(f_, MPFR_RNDN); }

  std::string str(int digits = 20) const {
    char buf[128];
    if (digits > 90) digits = 90;
    mpfr_snprintf(buf, sizeof buf, "%.*Re", digits, f_);
    return std::string(buf);
  }

  friend std::ostream& operator<<(std::ostream& os, const BigFloat& v) { return os << v.str(); }

  mpfr_ptr raw() { return f_; }
  mpfr_srcptr raw() const { return f_; }

  static BigFloat e(mpfr_prec_t prec) {
    BigFloat one(1L, prec);
    return one.exp();
  }
  static BigFloat pow2(long e, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_ui_2exp(r.f_, 1, e, MPFR_RNDN);
    return r;
  }

 private:
  static mpfr_prec_t clamp(mpfr_prec_t p) { return p < kMinPrec ? kMinPrec : p; }
  mpfr_t f_;
};

inline BigFloat abs(const BigFloat& v) { return v.abs(); }

}  // namespace kdelab
