#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "pslab/rational.hpp"

using namespace pslab;

namespace {

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-1000, 1000);
  std::uniform_int_distribution<long> den(1, 1000);
  return Rational(num(rng), den(rng));
}

}  // namespace

TEST_CASE("rational arithmetic goldens") {
  CHECK(Rational(443, 55) - Rational(173, 22) == Rational(21, 110));
  CHECK(Rational(13, 84) + Rational(55, 84) == Rational(17, 21));
  Rational x(7, 3);
  CHECK(x + 0 == x);
}

TEST_CASE("rationals stay canonical") {
  Rational r(6, 4);
  CHECK(numerator(r) == 3);
  CHECK(denominator(r) == 2);
  Rational s = Rational(1, 3) * Rational(3, 5);
  CHECK(numerator(s) == 1);
  CHECK(denominator(s) == 5);
  Rational neg = Rational(1, 2) - Rational(3, 4);
  CHECK(denominator(neg) == 4);
  CHECK(numerator(neg) == -1);
}

TEST_CASE("checked_div") {
  CHECK(checked_div(Rational(3, 4), Rational(3, 2)) == Rational(1, 2));
  CHECK_THROWS_AS(checked_div(Rational(1), Rational(0)), std::domain_error);
}

TEST_CASE("add/mul round-trip identities") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 500; ++i) {
    Rational x = random_rational(rng);
    Rational y = random_rational(rng);
    CHECK((x + y) - y == x);
    if (y != 0) CHECK(checked_div(x * y, y) == x);
  }
}

TEST_CASE("parse_rational and rational_to_string") {
  CHECK(parse_rational("21/110") == Rational(21, 110));
  CHECK(parse_rational("-7/3") == Rational(-7, 3));
  CHECK(parse_rational("5") == Rational(5));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(rational_to_string(Rational(3, 2)) == "3/2");
  CHECK(rational_to_string(Rational(-5)) == "-5");
  CHECK(rational_to_string(Rational(0)) == "0");
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Rational r = random_rational(rng);
    CHECK(parse_rational(rational_to_string(r)) == r);
  }
}

TEST_CASE("int_nth_root_ceil goldens") {
  CHECK(int_nth_root_ceil(8, 3) == 2);
  CHECK(int_nth_root_ceil(9, 3) == 3);
  CHECK(int_nth_root_ceil(0, 5) == 0);
  CHECK(int_nth_root_ceil(1, 7) == 1);

  BigInt n = pow(BigInt(1025), 9);
  CHECK(int_nth_root_ceil(n, 10) == 513);
  // the defining comparison behind that value
  CHECK(pow(BigInt(512), 10) < n);
  CHECK(n <= pow(BigInt(513), 10));
}

TEST_CASE("int_nth_root_ceil bracket property") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::uint64_t> base(1, 1u << 30);
  std::uniform_int_distribution<unsigned> vdist(1, 12);
  for (int i = 0; i < 500; ++i) {
    BigInt n = BigInt(base(rng)) * base(rng) + 1;
    unsigned v = vdist(rng);
    BigInt m = int_nth_root_ceil(n, v);
    CHECK(pow(m, v) >= n);
    if (m > 0) CHECK(pow(m - 1, v) < n);
  }
  CHECK_THROWS_AS(int_nth_root_ceil(BigInt(4), 0), std::invalid_argument);
  CHECK_THROWS_AS(int_nth_root_ceil(BigInt(-1), 2), std::invalid_argument);
}

TEST_CASE("LinearForm evaluation goldens") {
  LinearForm zero{0, 0, 0, 0};
  CHECK(zero.eval(Rational(1, 3), Rational(2, 7), Rational(5)) == 0);

  LinearForm level{Rational(-173, 22), Rational(443, 55), 0, 0};
  CHECK(level.eval(Rational(99, 100), 0, 0) == Rational(607, 5500));
  CHECK(level.eval(1, 0, 0) == Rational(21, 110));

  LinearForm three_minus_2g{3, -2, 0, 0};
  CHECK(three_minus_2g.eval(Rational(49, 50), 0, 0) == Rational(26, 25));
}

TEST_CASE("LinearForm is affine: midpoint = average") {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 200; ++i) {
    LinearForm f{random_rational(rng), random_rational(rng),
                 random_rational(rng), random_rational(rng)};
    Rational g1 = random_rational(rng), t1 = random_rational(rng),
             m1 = random_rational(rng);
    Rational g2 = random_rational(rng), t2 = random_rational(rng),
             m2 = random_rational(rng);
    Rational mid = f.eval((g1 + g2) / 2, (t1 + t2) / 2, (m1 + m2) / 2);
    CHECK(mid == (f.eval(g1, t1, m1) + f.eval(g2, t2, m2)) / 2);
  }
}
