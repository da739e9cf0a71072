#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bmlab/rat.hpp"

using namespace bmlab;

TEST_CASE("parse and print rationals") {
  CHECK(to_string(parse_rat("3/4")) == "3/4");
  CHECK(to_string(parse_rat("-6/8")) == "-3/4");
  CHECK(to_string(parse_rat("5")) == "5");
  CHECK(to_string(parse_rat("0.25")) == "1/4");
  CHECK(to_string(parse_rat("-3.5")) == "-7/2");
  CHECK_THROWS_AS(parse_rat("1/0"), BadParams);
  CHECK_THROWS_AS(parse_rat("abc"), BadParams);
}

TEST_CASE("perfect squares") {
  Rat root;
  CHECK(rat_is_square(rat(9, 4), &root));
  CHECK(root == rat(3, 2));
  CHECK(!rat_is_square(rat(2)));
  CHECK(rat_is_square(rat(0), &root));
  CHECK(root == 0);
}

TEST_CASE("sqrt brackets enclose") {
  for (long n : {2L, 3L, 5L, 7L, 12L, 97L}) {
    Rat q = rat(n, 3);
    Rat lo = sqrt_lower(q, 80), hi = sqrt_upper(q, 80);
    CHECK(lo * lo <= q);
    CHECK(hi * hi >= q);
    CHECK(hi - lo <= rat(1, 1) / Rat(Int(1) << 62));
  }
  CHECK(sqrt_lower(rat(9, 16), 10) == rat(3, 4));
  CHECK(sqrt_upper(rat(9, 16), 10) == rat(3, 4));
}

TEST_CASE("decimal rendering") {
  CHECK(decimal(rat(1, 2), 3) == "0.5");
  CHECK(decimal(rat(1, 3), 4) == "0.3333");
  CHECK(decimal(rat(-1, 3), 4) == "-0.3333");
  CHECK(decimal(rat(1000), 4) == "1000");
  CHECK(decimal(rat(12345), 3) == "1.23e4");
  CHECK(decimal(rat(1, 20), 3) == "0.05");
  CHECK(decimal(rat(2), 5) == "2");
  CHECK(decimal(rat(999, 1000), 2) == "1");
  CHECK(decimal(rat(1, 1000000), 3) == "1e-6");
}

TEST_CASE("interval arithmetic") {
  RatInterval a(rat(1, 2), rat(3, 4));
  RatInterval b(rat(-2), rat(-1));
  RatInterval prod = a * b;
  CHECK(prod.lo == rat(-3, 2));
  CHECK(prod.hi == rat(-1, 2));
  RatInterval quot = interval_div(a, b);
  CHECK(quot.lo == rat(-3, 4));
  CHECK(quot.hi == rat(-1, 4));
  RatInterval root = interval_sqrt(RatInterval(rat(4), rat(9)), 40);
  CHECK(root.lo == 2);
  CHECK(root.hi == 3);
}
