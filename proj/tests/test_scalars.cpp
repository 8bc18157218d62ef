#include <doctest.h>

#include "kdelab/bigfloat.hpp"
#include "kdelab/rational.hpp"

using namespace kdelab;

TEST_CASE("rational canonical form and arithmetic") {
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(-2, 4).str() == "-1/2");
  CHECK(Rational("6/4").str() == "3/2");
  CHECK(Rational("-1.25").str() == "-5/4");
  CHECK(Rational("7").str() == "7");
  CHECK((Rational(1, 2) + Rational(1, 3)).str() == "5/6");
  CHECK((Rational(1, 2) * Rational(2, 3)).str() == "1/3");
  CHECK((Rational(1, 2) / Rational(1, 4)) == Rational(2));
  CHECK(Rational(3, 7).inv() == Rational(7, 3));
  CHECK(Rational(-3, 7).abs() == Rational(3, 7));
  CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
  CHECK_THROWS_AS(Rational(1, 0ul), DomainError);
  CHECK_THROWS_AS(Rational(1) / Rational(0), DomainError);
  CHECK_THROWS_AS(Rational("abc"), DomainError);
}

TEST_CASE("rational rounding and conversions") {
  CHECK(Rational(7, 3).round_nearest() == Rational(2));
  CHECK(Rational(8, 3).round_nearest() == Rational(3));
  CHECK(Rational(-7, 3).round_nearest() == Rational(-2));
  CHECK(Rational(5).round_nearest() == Rational(5));
  CHECK(Rational(5).to_long() == 5);
  CHECK_THROWS_AS(Rational(1, 2).to_long(), DomainError);
  CHECK(Rational::from_double(0.5) == Rational(1, 2));
  CHECK(Rational::from_double(0.1) != Rational(1, 10));  // binary double is not 1/10
  CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("bigfloat precision is carried through operations") {
  BigFloat a(1L, 200);
  BigFloat b(3L, 80);
  CHECK((a / b).prec() == 200);
  CHECK((a + b).prec() == 200);
  CHECK((-a).prec() == 200);
  CHECK(BigFloat(Rational(1, 3), 150).prec() == 150);
  BigFloat copy = a;
  CHECK(copy.prec() == 200);
  CHECK(BigFloat(1L, 8).prec() == BigFloat::kMinPrec);  // floor at 64 bits
}

TEST_CASE("bigfloat arithmetic and special functions") {
  BigFloat one(1L, 128);
  CHECK(one.exp().cmp(Rational(271828182845904523ll, 100000000000000000ul)) > 0);
  CHECK(one.exp().cmp(Rational(271828182845904524ll, 100000000000000000ul)) < 0);
  CHECK((one + one).log() == BigFloat(2L, 128).log());
  CHECK(BigFloat(4L, 128).sqrt() == BigFloat(2L, 128));
  CHECK(BigFloat(2L, 128).pow(10) == BigFloat(1024L, 128));
  CHECK(BigFloat::pow2(-3, 128) == BigFloat(Rational(1, 8), 128));
  CHECK(BigFloat(Rational(7, 3), 128).round_nearest() == BigFloat(2L, 128));
  CHECK(BigFloat(Rational(7, 3), 128).round_to_long() == 2);
  CHECK(BigFloat(Rational(1, 2), 128).cmp(Rational(1, 2)) == 0);
  CHECK_THROWS_AS(one / BigFloat(128), DomainError);
}
