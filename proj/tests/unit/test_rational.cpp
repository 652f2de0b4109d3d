#include <doctest.h>

#include "helpers.hpp"

using namespace stoplat;
using testutil::q;

TEST_CASE("rational text is canonical") {
  CHECK(format_rational(q(6, 4)) == "3/2");
  CHECK(format_rational(q(-4, 2)) == "-2");
  CHECK(format_rational(q(0)) == "0");
  CHECK(parse_rational("3/2") == q(3, 2));
  CHECK(parse_rational("-7") == q(-7));
  CHECK(parse_rational("+2/4") == q(1, 2));
  CHECK(parse_rational("-2/4") == q(-1, 2));
}

TEST_CASE("malformed rationals are rejected") {
  for (const char* bad : {"", "/", "1/", "/2", "1/0", "1/-2", "1.5", "abc", "2/3/4", "- 1", "1/+2"}) {
    CAPTURE(bad);
    CHECK_THROWS_WITH_AS(parse_rational(bad), doctest::Contains("malformed rational"), std::invalid_argument);
  }
}

TEST_CASE("time values and infinity") {
  CHECK(format_time(Time::infinity()) == "inf");
  CHECK(parse_time("inf").is_infinite());
  CHECK(parse_time("5/10") == Time(q(1, 2)));
  CHECK_THROWS_AS(parse_time("-1"), std::invalid_argument);
  CHECK_THROWS_AS(Time(q(-1, 3)), std::domain_error);
  CHECK_THROWS_AS(Time::infinity().value(), std::domain_error);

  CHECK(Time(1) < Time(q(3, 2)));
  CHECK(Time(100) < Time::infinity());
  CHECK(Time::infinity() == Time::infinity());
  CHECK(Time(1) + Time::infinity() == Time::infinity());
  CHECK(Time(q(1, 2)) + Time(q(1, 3)) == Time(q(5, 6)));
}

TEST_CASE("time subtraction and scaling edge cases") {
  CHECK(Time(3).minus(Time(1)) == Time(2));
  CHECK(Time::infinity().minus(Time(4)) == Time::infinity());
  CHECK_THROWS_AS(Time::infinity().minus(Time::infinity()), std::domain_error);
  CHECK_THROWS_AS(Time(1).minus(Time::infinity()), std::domain_error);
  CHECK_THROWS_AS(Time(1).minus(Time(2)), std::domain_error);

  CHECK(Time(2).scaled(q(3, 2)) == Time(3));
  CHECK(Time::infinity().scaled(q(1, 5)) == Time::infinity());
  CHECK(Time(7).scaled(q(0)) == Time(0));
  CHECK_THROWS_AS(Time::infinity().scaled(q(0)), std::domain_error);
  CHECK_THROWS_AS(Time(1).scaled(q(-1)), std::domain_error);
}

TEST_CASE("midpoint") { CHECK(midpoint(q(1), q(2)) == q(3, 2)); }
