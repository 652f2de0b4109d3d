#include <doctest.h>

#include "helpers.hpp"
#include "stoplat/rieszcore.hpp"

using namespace stoplat;
using testutil::rv;

TEST_CASE("greedy decomposition examples") {
  auto d = rv_decompose(rv("1 1"), {rv("1 0"), rv("0 1")});
  CHECK(d.parts == std::vector<RealRV>{rv("1 0"), rv("0 1")});

  d = rv_decompose(rv("3"), {rv("2"), rv("2")});
  CHECK(d.parts == std::vector<RealRV>{rv("2"), rv("1")});

  // Valid for plain random variables, though no stopping-time split exists on E1.
  d = rv_decompose(rv("1 2"), {rv("1 1"), rv("1 1")});
  CHECK(d.parts == std::vector<RealRV>{rv("1 1"), rv("0 1")});
  CHECK(d.target == rv("1 2"));
  CHECK(d.bounds.size() == 2);
}

TEST_CASE("decomposition preconditions name the outcome") {
  CHECK_THROWS_WITH_AS(rv_decompose(rv("1 3"), {rv("1 1"), rv("1 1")}), doctest::Contains("outcome #1"),
                       PreconditionError);
  CHECK_THROWS_WITH_AS(rv_decompose(rv("-1 0"), {rv("1 1")}), doctest::Contains("outcome #0"), PreconditionError);
  CHECK_THROWS_WITH_AS(rv_decompose(rv("0 0"), {rv("1 -1")}), doctest::Contains("outcome #1"), PreconditionError);
  CHECK_THROWS_AS(rv_decompose(rv("0 0"), {}), PreconditionError);
  CHECK_THROWS_AS(rv_decompose(rv("0 0"), {rv("1")}), PreconditionError);
}

TEST_CASE("least interpolant") {
  CHECK(rv_interpolate({rv("0 1"), rv("1 0")}, {rv("2 2")}) == rv("1 1"));
  CHECK(rv_interpolate({rv("3/2 -1")}, {rv("3/2 -1")}) == rv("3/2 -1"));
  CHECK(rv_interpolate({rv("0 0")}, {rv("1 0"), rv("0 1")}) == rv("0 0"));
  CHECK_THROWS_WITH_AS(rv_interpolate({rv("2 2")}, {rv("1 1")}), doctest::Contains("A[0] > B[0]"), PreconditionError);
  CHECK_THROWS_AS(rv_interpolate({}, {rv("1")}), PreconditionError);
}
