#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mvc/rational.hpp"

using mvc::Rational;

TEST_CASE("construction reduces and normalizes sign") {
  CHECK(Rational(6, 9) == Rational(2, 3));
  CHECK(Rational(-6, 9) == Rational(-2, 3));
  CHECK(Rational(6, -9) == Rational(-2, 3));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(5, 9).to_string() == "5/9");
  CHECK(Rational(1).to_string() == "1/1");
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("exact comparisons") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(7, 9) > Rational(3, 4));
  CHECK(Rational(5, 6) <= Rational(5, 6));
  CHECK(Rational(-1, 2) < Rational(0));
}

TEST_CASE("arithmetic agrees with cross-multiplication on random operands") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<long long> num(-1000000, 1000000);
  std::uniform_int_distribution<long long> den(1, 1000000);
  for (int t = 0; t < 2000; ++t) {
    const long long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    const Rational sum = Rational(a, b) + Rational(c, d);
    // Oracle: a/b + c/d == (ad + cb) / (bd), compared exactly.
    CHECK(sum == Rational(a * d + c * b, b * d));
    const Rational prod = Rational(a, b) * Rational(c, d);
    CHECK(prod == Rational(a * c, b * d));
    const Rational diff = Rational(a, b) - Rational(c, d);
    CHECK(diff == Rational(a * d - c * b, b * d));
  }
}

TEST_CASE("pow") {
  CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
  CHECK(Rational(5, 7).pow(0) == Rational(1));
  CHECK(Rational(1, 2).pow(20) == Rational(1, 1048576));
}

TEST_CASE("overflow is detected, never silent") {
  const Rational big(1000000000000000000LL);  // 10^18
  const Rational big2 = big * big;            // 10^36, still in range
  CHECK_THROWS_AS(big2 * big, mvc::RationalOverflow);
  const Rational tiny = Rational(1) / big2;
  CHECK_THROWS_AS(tiny * tiny, mvc::RationalOverflow);
}

TEST_CASE("decimal rendering is fixed six places, round to nearest") {
  CHECK(Rational(1, 2).to_decimal6() == "0.500000");
  CHECK(Rational(5, 9).to_decimal6() == "0.555556");
  CHECK(Rational(1, 3).to_decimal6() == "0.333333");
  CHECK(Rational(2, 3).to_decimal6() == "0.666667");
  CHECK(Rational(1).to_decimal6() == "1.000000");
  CHECK(Rational(7, 16).to_decimal6() == "0.437500");
  CHECK(Rational(-1, 8).to_decimal6() == "-0.125000");
}
