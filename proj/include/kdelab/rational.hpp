#pragma once

#include <gmp.h>

#include <cstdlib>
#include <iostream>
#include <string>
#include <utility>

#include "kdelab/errors.hpp"

namespace kdelab {

// Exact rational scalar backed by GMP's mpq_t. Values are always canonical:
// lowest terms, positive denominator (GMP maintains this through every
// arithmetic operation).
class Rational {
 public:
  Rational() { mpq_init(q_); }

  Rational(long n) {  // NOLINT(google-explicit-constructor): numeric literal convenience
    mpq_init(q_);
    mpq_set_si(q_, n, 1);
  }

  Rational(long num, unsigned long den) {
    if (den == 0) throw DomainError("Rational: zero denominator");
    mpq_init(q_);
    mpq_set_si(q_, num, den);
    mpq_canonicalize(q_);
  }

  // Accepts "n", "n/d", or a plain decimal like "-1.25".
  explicit Rational(const std::string& s) {
    mpq_init(q_);
    auto fail = [&]() {
      mpq_clear(q_);  // the destructor will not run for a half-built object
      throw DomainError("Rational: cannot parse '" + s + "'");
    };
    auto dot = s.find('.');
    if (dot == std::string::npos) {
      if (mpq_set_str(q_, s.c_str(), 10) != 0 || mpz_sgn(mpq_denref(q_)) == 0) fail();
      if (mpz_sgn(mpq_denref(q_)) < 0) mpq_neg(q_, q_);
      mpq_canonicalize(q_);
    } else {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      std::size_t frac_len = s.size() - dot - 1;
      if (mpq_set_str(q_, digits.c_str(), 10) != 0) fail();
      mpz_ui_pow_ui(mpq_denref(q_), 10, frac_len);
      mpq_canonicalize(q_);
    }
  }

  Rational(const Rational& o) {
    mpq_init(q_);
    mpq_set(q_, o.q_);
  }
  Rational(Rational&& o) noexcept {
    mpq_init(q_);
    mpq_swap(q_, o.q_);
  }
  Rational& operator=(const Rational& o) {
    if (this != &o) mpq_set(q_, o.q_);
    return *this;
  }
  Rational& operator=(Rational&& o) noexcept {
    mpq_swap(q_, o.q_);
    return *this;
  }
  ~Rational() { mpq_clear(q_); }

  Rational& operator+=(const Rational& o) {
    mpq_add(q_, q_, o.q_);
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    mpq_sub(q_, q_, o.q_);
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    mpq_mul(q_, q_, o.q_);
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("Rational: division by zero");
    mpq_div(q_, q_, o.q_);
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const {
    Rational r(*this);
    mpq_neg(r.q_, r.q_);
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_, b.q_) != 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) >= 0; }

  int sgn() const { return mpq_sgn(q_); }
  bool is_zero() const { return mpq_sgn(q_) == 0; }
  bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }

  Rational abs() const {
    Rational r(*this);
    mpq_abs(r.q_, r.q_);
    return r;
  }

  Rational inv() const {
    if (is_zero()) throw DomainError("Rational: inverse of zero");
    Rational r(*this);
    mpq_inv(r.q_, r.q_);
    return r;
  }

  Rational pow(unsigned long e) const {
    Rational r(1);
    Rational base(*this);
    while (e > 0) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

  // Nearest integer (ties cannot occur in our callers, but round half up).
  Rational round_nearest() const {
    Rational r;
    mpz_t num2;
    mpz_init(num2);
    mpz_mul_2exp(num2, mpq_numref(q_), 1);            // 2*num
    mpz_add(num2, num2, mpq_denref(q_));              // 2*num + den
    mpz_t den2;
    mpz_init(den2);
    mpz_mul_2exp(den2, mpq_denref(q_), 1);            // 2*den
    mpz_fdiv_q(mpq_numref(r.q_), num2, den2);         // floor((2n+d)/(2d)) = round(n/d)
    mpz_set_ui(mpq_denref(r.q_), 1);
    mpz_clear(num2);
    mpz_clear(den2);
    return r;
  }

  long to_long() const {
    if (!is_integer() || !mpz_fits_slong_p(mpq_numref(q_)))
      throw DomainError("Rational: not a machine integer: " + str());
    return mpz_get_si(mpq_numref(q_));
  }

  double to_double() const { return mpq_get_d(q_); }

  // The exact rational value of the double (binary expansion, no decimal
  // round-trip).
  static Rational from_double(double v) {
    Rational r;
    mpq_set_d(r.q_, v);
    return r;
  }

  std::string str() const {
    char* c = mpq_get_str(nullptr, 10, q_);
    std::string s(c);
    std::free(c);
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  mpq_srcptr raw() const { return q_; }

 private:
  mpq_t q_;
};

inline Rational abs(const Rational& r) { return r.abs(); }

}  // namespace kdelab
