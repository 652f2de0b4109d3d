#include <doctest.h>

#include "helpers.hpp"
#include "support/sweep.hpp"

using namespace stoplat;
using testutil::q;
using testutil::rt;
using testutil::rv;

TEST_CASE("stopping predicate on E1") {
  const auto f = testutil::e1();
  CHECK(is_stopping_time(rt("1 2"), f));
  CHECK_FALSE(is_stopping_time(rt("0 1"), f));
  CHECK(is_stopping_time(rt("3/2 3/2"), f));
  CHECK(is_stopping_time(rt("inf 1"), f));
  CHECK_FALSE(is_stopping_time(rt("1/2 inf"), f));
}

TEST_CASE("optional differs from stopping at an exclusive boundary") {
  const auto f = testutil::e1ex();
  CHECK(is_optional_time(rt("1 2"), f));
  CHECK_FALSE(is_stopping_time(rt("1 2"), f));
  CHECK(satisfies(rt("1 2"), f, TimeClass::optional));
}

TEST_CASE("optional needs interior checks even without exclusive boundaries") {
  // [T < t] = {a} for t in (1, 2], but F stays trivial until 2.
  const Filtration f({{q(0), Partition::trivial(2), Boundary::inclusive},
                      {q(2), Partition::discrete(2), Boundary::inclusive}});
  CHECK_FALSE(is_optional_time(rt("1 2"), f));
  CHECK_FALSE(is_stopping_time(rt("1 2"), f));
}

TEST_CASE("constant times are adapted everywhere") {
  for (std::size_t m = 1; m <= 3; ++m) {
    for (const auto& f : sweep::all_filtrations(m, 2)) {
      for (const char* v : {"0", "1/2", "1", "7/3", "inf"}) {
        const auto t = RandomTime::constant(m, parse_time(v));
        CHECK(is_stopping_time(t, f));
        CHECK(is_optional_time(t, f));
      }
    }
  }
}

TEST_CASE("check-point predicates agree with a dense-mesh oracle") {
  std::vector<Time> values;
  for (std::int64_t k = 0; k <= 5; ++k) values.emplace_back(Rational(k, 2));
  values.push_back(Time::infinity());
  for (std::size_t m = 1; m <= 3; ++m) {
    for (const auto& f : sweep::all_filtrations(m, 2)) {
      for (const auto& t : sweep::all_times(m, values)) {
        for (auto cls : {TimeClass::stopping, TimeClass::optional}) {
          const bool fast = satisfies(t, f, cls);
          if (fast != sweep::dense_adapted(t, f, cls)) {
            FAIL_CHECK(to_string(cls) << " disagrees on (" << format_time(t[0]) << ", ...)");
          }
        }
      }
    }
  }
}

TEST_CASE("check transcript records every evaluated level set") {
  const auto tr = check_transcript(rt("0 1"), testutil::e1(), TimeClass::stopping);
  REQUIRE_FALSE(tr.empty());
  CHECK(tr.front().at == Time(0));
  CHECK(tr.front().level_set == testutil::set("a"));
  CHECK_FALSE(tr.front().measurable);
  CHECK(check_points(rt("0 1"), testutil::e1()) == std::vector<Rational>{q(0), q(1)});
}

TEST_CASE("lattice and cone operations") {
  CHECK(time_meet(rt("1 2"), rt("2 1")) == rt("1 1"));
  CHECK(time_join(rt("1 2"), rt("2 1")) == rt("2 2"));
  CHECK(time_add(rt("1 inf"), rt("1 1")) == rt("2 inf"));
  CHECK(time_scale(q(3, 2), rt("2 4")) == rt("3 6"));
  CHECK(time_scale(q(2), rt("1 inf")) == rt("2 inf"));
  CHECK(time_scale(q(0), rt("1 4")) == rt("0 0"));
  CHECK_THROWS_AS(time_scale(q(0), rt("1 inf")), std::invalid_argument);
  CHECK_THROWS_AS(time_scale(q(-1), rt("1 1")), std::invalid_argument);
  CHECK_THROWS_AS(time_meet(rt("1"), rt("1 1")), std::invalid_argument);
}

TEST_CASE("shrinking a stopping time can break adaptedness") {
  // (1, 2) waits for the information revealed at 1; half of it would need it at 1/2.
  const auto f = testutil::e1();
  CHECK(is_stopping_time(rt("1 2"), f));
  CHECK_FALSE(is_stopping_time(time_scale(q(1, 2), rt("1 2")), f));
  CHECK(is_stopping_time(time_scale(q(3), rt("1 2")), f));
}

TEST_CASE("truncation") {
  CHECK(truncate(rt("1 2"), 1) == rt("1 1"));
  CHECK(truncate(rt("inf 3"), 2) == rt("2 2"));
  CHECK(truncate(rt("1/2 2"), 3) == rt("1/2 2"));
  CHECK_THROWS_AS(truncate(rt("1"), 0), std::invalid_argument);
}

TEST_CASE("positive and negative parts") {
  CHECK(pos_part(rv("-1 2")) == rv("0 2"));
  CHECK(neg_part(rv("-1 2")) == rv("1 0"));
  CHECK(pos_part(rv("1 3")) == rv("1 3"));
  CHECK(neg_part(rv("1 3")) == rv("0 0"));
  CHECK(pos_part(rv("0 0")) == rv("0 0"));
  CHECK(neg_part(rv("0 0")) == rv("0 0"));
}

TEST_CASE("real random variable operations") {
  CHECK(rv_meet(rv("1 2"), rv("2 1")) == rv("1 1"));
  CHECK(rv_sub(rv("1 2"), rv("1 1")) == rv("0 1"));
  const auto s = rv("-3/2 2");
  CHECK(rv_join(s, rv_scale(q(-1), s)) == rv_abs(s));
  CHECK(rv_abs(s) == rv("3/2 2"));
  CHECK(to_rv(rt("1 1/2")) == rv("1 1/2"));
  CHECK_THROWS_AS(to_rv(rt("1 inf")), std::domain_error);
  CHECK_THROWS_AS(to_time(rv("-1 0")), std::domain_error);
}

TEST_CASE("membership in X") {
  const auto f = testutil::e1();
  CHECK(is_member_x(to_rv(rt("1 2")), f));
  CHECK_FALSE(is_member_x(rv_sub(rv("1 2"), rv("1 1")), f));
  CHECK(is_member_x(rv("-1 -1"), f));
  CHECK(is_member_x(rv("-1 -2"), f));
  CHECK_FALSE(is_member_x(rv("-2 -1/2"), f));
}

TEST_CASE("pointwise and cone orders") {
  const auto f = testutil::e1();
  CHECK(leq(rt("1 1"), rt("2 2"), OrderKind::cone, f));
  CHECK_FALSE(leq(rt("1 1"), rt("1 2"), OrderKind::cone, f));
  CHECK(leq(rt("1 1"), rt("1 2"), OrderKind::pointwise, f));
  CHECK_FALSE(leq(rt("2 1"), rt("1 2"), OrderKind::pointwise, f));
  CHECK(leq(rt("1 inf"), rt("1 inf"), OrderKind::pointwise, f));
  CHECK_THROWS_AS(leq(rt("1 inf"), rt("2 inf"), OrderKind::cone, f), std::invalid_argument);
  CHECK(leq(rt("0 0"), rt("1 2"), OrderKind::cone, testutil::e1ex(), TimeClass::optional));
  CHECK_FALSE(leq(rt("0 0"), rt("1 2"), OrderKind::cone, testutil::e1ex()));
}

TEST_CASE("lattice identities for parts hold pointwise") {
  const std::vector<std::int64_t> vals{-2, -1, 0, 1, 2};
  for (auto a : vals) {
    for (auto b : vals) {
      for (auto c : vals) {
        for (auto d : vals) {
          const RealRV s1{q(a), q(b)};
          const RealRV s2{q(c), q(d)};
          CHECK(pos_part(rv_meet(s1, s2)) == rv_meet(pos_part(s1), pos_part(s2)));
          CHECK(neg_part(rv_meet(s1, s2)) == rv_join(neg_part(s1), neg_part(s2)));
          CHECK(pos_part(rv_join(s1, s2)) == rv_join(pos_part(s1), pos_part(s2)));
          CHECK(neg_part(rv_join(s1, s2)) == rv_meet(neg_part(s1), neg_part(s2)));
        }
      }
    }
  }
}

TEST_CASE("X is closed under meet and join on every small filtration") {
  const auto values = sweep::integer_grid(2, false);
  for (std::size_t m = 1; m <= 2; ++m) {
    for (const auto& f : sweep::all_filtrations(m, 2)) {
      const auto adapted = sweep::adapted_times(f, values, TimeClass::stopping);
      std::vector<RealRV> members;
      for (const auto& a : adapted) {
        for (const auto& b : adapted) {
          auto x = rv_sub(to_rv(a), to_rv(b));
          if (is_member_x(x, f)) members.push_back(x);
        }
      }
      for (const auto& x : members) {
        for (const auto& y : members) {
          CHECK(is_member_x(rv_meet(x, y), f));
          CHECK(is_member_x(rv_join(x, y), f));
        }
      }
    }
  }
}
