#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "stoplat/rieszcore.hpp"
#include "stoplat/search.hpp"
#include "support/sweep.hpp"

using namespace stoplat;
using testutil::q;
using testutil::rt;

namespace {

const Grid kIntegers{1, Rational(2), false};

Filtration trivial_forever(std::size_t m) { return Filtration::constant(Partition::trivial(m)); }
Filtration discrete_from_zero(std::size_t m) { return Filtration::constant(Partition::discrete(m)); }

}  // namespace

TEST_CASE("grids") {
  const Grid g{2, q(3, 2), true};
  CHECK(g.value_count() == 5);
  CHECK(g.values() == std::vector<Time>{Time(0), Time(q(1, 2)), Time(1), Time(q(3, 2)), Time::infinity()});
  CHECK(g.contains(Time(q(1, 2))));
  CHECK_FALSE(g.contains(Time(q(1, 3))));
  CHECK_FALSE(g.contains(Time(2)));
  CHECK(g.contains(rt("0 inf")));
  CHECK(describe(g) == "denominator 2 max 3/2 infinity true");
  const auto c = Grid::covering(4, {rt("1 5/2"), rt("inf 0")});
  CHECK(c == Grid{4, q(5, 2), true});
}

TEST_CASE("enumeration examples") {
  CHECK(enumerate_stopping_times(testutil::e1(), kIntegers, TimeClass::stopping) ==
        std::vector<RandomTime>{rt("0 0"), rt("1 1"), rt("1 2"), rt("2 1"), rt("2 2")});
  const Grid bits{1, q(1), false};
  CHECK(enumerate_stopping_times(trivial_forever(2), bits, TimeClass::stopping) ==
        std::vector<RandomTime>{rt("0 0"), rt("1 1")});
  CHECK(enumerate_stopping_times(discrete_from_zero(2), bits, TimeClass::stopping).size() == 4);
}

TEST_CASE("enumeration caps") {
  CHECK_THROWS_AS(enumerate_stopping_times(testutil::e1(), Grid{8, q(2), false}, TimeClass::stopping),
                  CapExceeded);
  CHECK_THROWS_AS(enumerate_stopping_times(trivial_forever(7), kIntegers, TimeClass::stopping), CapExceeded);
  CHECK(enumerate_stopping_times(testutil::e1(), Grid{8, q(2), false}, TimeClass::stopping, SearchCaps{6, 17})
            .size() > 5);
}

TEST_CASE("maximal stopping minorant examples") {
  const auto f = testutil::e1();
  CHECK(max_stopping_minorant(rt("1 2"), f) == rt("1 2"));
  CHECK(max_stopping_minorant(rt("0 1"), f) == rt("0 0"));
  CHECK(max_stopping_minorant(rt("1/2 2"), f) == rt("1/2 1/2"));
  CHECK(max_stopping_minorant(rt("inf 1/2"), f) == rt("1/2 1/2"));
  // Optional times may wait for F_{c+}: at the exclusive boundary nothing needs lowering.
  CHECK(max_stopping_minorant(rt("1 2"), testutil::e1ex(), TimeClass::optional) == rt("1 2"));
  CHECK(max_stopping_minorant(rt("1 2"), testutil::e1ex()) == rt("1 1"));
}

TEST_CASE("minorant dominates every enumerated time below U") {
  const Grid g{2, q(1), true};
  for (std::size_t m = 1; m <= 3; ++m) {
    for (const auto& f : sweep::all_filtrations(m, 1)) {
      for (auto cls : {TimeClass::stopping, TimeClass::optional}) {
        const auto all = enumerate_stopping_times(f, g, cls);
        for (const auto& u : sweep::all_times(m, g.values())) {
          const auto t = max_stopping_minorant(u, f, cls);
          CHECK(std::binary_search(all.begin(), all.end(), t));
          for (const auto& e : all) {
            if (pointwise_leq(e, u)) CHECK(pointwise_leq(e, t));
          }
        }
      }
    }
  }
}

TEST_CASE("decomposition examples") {
  const Grid g64{64, q(2), false};
  auto out = decompose_stopping(rt("1 2"), {rt("1 1"), rt("1 1")}, testutil::e1(), g64);
  REQUIRE(std::holds_alternative<NotFoundOnGrid>(out));
  CHECK(std::get<NotFoundOnGrid>(out).grid == g64);
  CHECK(std::get<NotFoundOnGrid>(out).states_explored > 0);

  out = decompose_stopping(rt("3"), {rt("2"), rt("2")}, trivial_forever(1), Grid{1, q(3), false});
  REQUIRE(std::holds_alternative<StDecomposition>(out));
  CHECK(std::get<StDecomposition>(out).parts == std::vector<RandomTime>{rt("2"), rt("1")});

  out = decompose_stopping(rt("1 2"), {rt("1 1"), rt("1 1")}, discrete_from_zero(2), kIntegers);
  REQUIRE(std::holds_alternative<StDecomposition>(out));
  const auto& d = std::get<StDecomposition>(out);
  CHECK(d.parts == std::vector<RandomTime>{rt("1 1"), rt("0 1")});
  CHECK(d.certificates.size() == 2);
  for (const auto& cert : d.certificates) {
    for (const auto& rec : cert) CHECK(rec.measurable);
  }
}

TEST_CASE("decomposition handles infinite targets") {
  const auto f = testutil::e1();
  const Grid g{1, q(2), true};
  auto out = decompose_stopping(rt("inf 2"), {rt("inf 1"), rt("1 1")}, f, g);
  REQUIRE(std::holds_alternative<StDecomposition>(out));
  CHECK(std::get<StDecomposition>(out).parts == std::vector<RandomTime>{rt("inf 1"), rt("1 1")});
  // An infinite outcome of S needs some part that is infinite there.
  out = decompose_stopping(rt("inf inf"), {rt("2 2"), rt("inf inf")}, f, g);
  REQUIRE(std::holds_alternative<StDecomposition>(out));
  CHECK(std::get<StDecomposition>(out).parts == std::vector<RandomTime>{rt("2 2"), rt("inf inf")});
}

TEST_CASE("decomposition preconditions") {
  const auto f = testutil::e1();
  auto code = [&](const RandomTime& s, const std::vector<RandomTime>& ts, const Grid& g) {
    const auto out = decompose_stopping(s, ts, f, g);
    REQUIRE(std::holds_alternative<PreconditionFailed>(out));
    return std::get<PreconditionFailed>(out).code;
  };
  CHECK(code(rt("0 1"), {rt("1 1")}, kIntegers) == FailureCode::not_adapted);
  CHECK(code(rt("1 1"), {rt("0 1")}, kIntegers) == FailureCode::not_adapted);
  CHECK(code(rt("2 2"), {rt("1 1")}, kIntegers) == FailureCode::order_violated);
  CHECK(code(rt("1/2 1/2"), {rt("1 1")}, kIntegers) == FailureCode::off_grid);
  CHECK(code(rt("1 1"), {}, kIntegers) == FailureCode::invalid_input);
  CHECK(code(rt("1"), {rt("1")}, kIntegers) == FailureCode::invalid_input);
  CHECK(std::string(to_string(FailureCode::cone_order_violated)) == "cone-order-violated");
}

TEST_CASE("decomposition search equals oracle with three parts") {
  const Grid g{1, q(2), false};
  for (std::size_t m = 1; m <= 2; ++m) {
    for (const auto& f : sweep::all_filtrations(m, 2)) {
      const auto all = enumerate_stopping_times(f, g, TimeClass::stopping);
      for (const auto& t1 : all) {
        for (const auto& t2 : all) {
          const auto t3 = RandomTime::constant(m, Time(1));
          for (const auto& s : all) {
            if (!pointwise_leq(s, time_add(time_add(t1, t2), t3))) continue;
            const auto out = decompose_stopping(s, {t1, t2, t3}, f, g);
            const auto oracle = oracle_decompositions(s, {t1, t2, t3}, f, g, TimeClass::stopping);
            const auto* d = std::get_if<StDecomposition>(&out);
            CHECK((d != nullptr) == !oracle.solutions.empty());
            if (d && !oracle.solutions.empty()) {
              CHECK(d->parts == *std::max_element(oracle.solutions.begin(), oracle.solutions.end()));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("oracle digests are deterministic and order sensitive") {
  const auto a = oracle_decompositions(rt("1 2"), {rt("1 1"), rt("1 1")}, discrete_from_zero(2), kIntegers,
                                       TimeClass::stopping);
  const auto b = oracle_decompositions(rt("1 2"), {rt("1 1"), rt("1 1")}, discrete_from_zero(2), kIntegers,
                                       TimeClass::stopping);
  CHECK(a.digest == b.digest);
  CHECK(a.solutions.size() == 2);
  Digest x, y;
  x.add(rt("1 2"));
  x.add(rt("2 1"));
  y.add(rt("2 1"));
  y.add(rt("1 2"));
  CHECK(x.value() != y.value());
  CHECK(hex_digest(0xabcULL) == "0000000000000abc");
}

TEST_CASE("pointwise interpolation examples") {
  const auto f = testutil::e1();
  CHECK(interpolate_pointwise({rt("1 1"), rt("1 2")}, {rt("2 2")}, f) == rt("1 2"));
  CHECK(interpolate_pointwise({rt("1 2")}, {rt("1 2")}, f) == rt("1 2"));
  CHECK_THROWS_WITH_AS(interpolate_pointwise({rt("2 2")}, {rt("1 1")}, f), doctest::Contains("A[0] > B[0]"),
                       PreconditionError);
  CHECK_THROWS_AS(interpolate_pointwise({rt("0 1")}, {rt("2 2")}, f), PreconditionError);
  CHECK_THROWS_AS(interpolate_pointwise({}, {rt("2 2")}, f), PreconditionError);
}

TEST_CASE("cone interpolation examples") {
  const auto f = testutil::e1();
  auto out = interpolate_cone({rt("0 0")}, {rt("2 2")}, f, kIntegers);
  REQUIRE(std::holds_alternative<RandomTime>(out));
  CHECK(std::get<RandomTime>(out) == rt("0 0"));

  out = interpolate_cone({rt("1 1")}, {rt("1 2")}, f, kIntegers);
  REQUIRE(std::holds_alternative<PreconditionFailed>(out));
  CHECK(std::get<PreconditionFailed>(out).code == FailureCode::cone_order_violated);

  out = interpolate_cone({rt("1 2")}, {rt("1 2")}, f, kIntegers);
  REQUIRE(std::holds_alternative<RandomTime>(out));
  CHECK(std::get<RandomTime>(out) == rt("1 2"));

  out = interpolate_cone({rt("1 inf")}, {rt("2 2")}, f, kIntegers);
  CHECK(std::get<PreconditionFailed>(out).code == FailureCode::invalid_input);
}

TEST_CASE("the least cone interpolant depends on the grid") {
  // Discrete from 1/2: (1/2, 1/2) is the least interpolant, but a grid without
  // 1/2 can only offer (1, 1).
  const Filtration f({{q(0), Partition::trivial(2), Boundary::inclusive},
                      {q(1, 2), Partition::discrete(2), Boundary::inclusive}});
  const std::vector<RandomTime> a{rt("0 0"), rt("1/2 1/2")};
  const std::vector<RandomTime> b{rt("1 1")};
  auto coarse = interpolate_cone(a, b, f, Grid{1, q(1), false});
  auto fine = interpolate_cone(a, b, f, Grid{2, q(1), false});
  REQUIRE(std::holds_alternative<RandomTime>(fine));
  CHECK(std::get<RandomTime>(fine) == rt("1/2 1/2"));
  REQUIRE(std::holds_alternative<RandomTime>(coarse));
  CHECK(std::get<RandomTime>(coarse) == rt("1 1"));
  auto tight = interpolate_cone(a, {rt("3/4 3/4")}, f, Grid{1, q(1), false});
  CHECK(std::holds_alternative<NotFoundOnGrid>(tight));
}

TEST_CASE("separation oracle matches the predicates") {
  const Grid g{2, q(3, 2), true};
  for (std::size_t m = 1; m <= 3; ++m) {
    for (const auto& f : sweep::all_filtrations(m, 2)) {
      for (const auto& t : sweep::all_times(m, g.values())) {
        for (auto cls : {TimeClass::stopping, TimeClass::optional}) {
          if (adapted_by_separation(t, f, cls) != satisfies(t, f, cls)) FAIL_CHECK("separation disagrees");
        }
      }
    }
  }
}
