#pragma once

#include "kdelab/bigfloat.hpp"
#include "kdelab/rational.hpp"

namespace kdelab {

// Shared construction hooks for code generic over the two arithmetic modes.
// BigFloat values must inherit their precision from an existing value, so
// every factory takes a prototype; Rational ignores it.
template <class S>
struct num_traits;

template <>
struct num_traits<Rational> {
  static constexpr bool exact = true;
  static Rational zero(const Rational&) { return Rational(0); }
  static Rational one(const Rational&) { return Rational(1); }
  static Rational from_long(long v, const Rational&) { return Rational(v); }
  static Rational from_ratio(long n, unsigned long d, const Rational&) { return Rational(n, d); }
  static Rational from_rational(const Rational& r, const Rational&) { return r; }
};

template <>
struct num_traits<BigFloat> {
  static constexpr bool exact = false;
  static BigFloat zero(const BigFloat& proto) { return BigFloat(proto.prec()); }
  static BigFloat one(const BigFloat& proto) { return BigFloat(1L, proto.prec()); }
  static BigFloat from_long(long v, const BigFloat& proto) { return BigFloat(v, proto.prec()); }
  static BigFloat from_ratio(long n, unsigned long d, const BigFloat& proto) {
    return BigFloat(Rational(n, d), proto.prec());
  }
  static BigFloat from_rational(const Rational& r, const BigFloat& proto) {
    return BigFloat(r, proto.prec());
  }
};

inline Rational pow_long(const Rational& b, long e) {
  return e >= 0 ? b.pow(static_cast<unsigned long>(e)) : b.inv().pow(static_cast<unsigned long>(-e));
}
inline BigFloat pow_long(const BigFloat& b, long e) { return b.pow(e); }

}  // namespace kdelab
