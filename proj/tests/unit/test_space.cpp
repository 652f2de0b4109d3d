#include <doctest.h>

#include "helpers.hpp"
#include "support/sweep.hpp"

using namespace stoplat;
using testutil::part;
using testutil::q;
using testutil::set;

TEST_CASE("outcome sets") {
  auto s = set("ac");
  CHECK(s.size() == 2);
  CHECK(s.contains(0));
  CHECK_FALSE(s.contains(1));
  CHECK(s.lowest() == 0);
  CHECK(s.members() == std::vector<std::size_t>{0, 2});
  CHECK((s | set("b")) == OutcomeSet::all(3));
  CHECK((OutcomeSet::all(3) - s) == set("b"));
  CHECK(set("a").subset_of(s));
  CHECK(OutcomeSet::all(64).size() == 64);
}

TEST_CASE("sample space labels") {
  SampleSpace omega({"x", "y"});
  CHECK(omega.index_of("y") == 1u);
  CHECK_FALSE(omega.index_of("z"));
  CHECK_THROWS_AS(SampleSpace({"x", "x"}), std::invalid_argument);
  CHECK_THROWS_AS(SampleSpace({""}), std::invalid_argument);
  CHECK_THROWS_AS(SampleSpace(std::vector<std::string>{}), std::invalid_argument);
}

TEST_CASE("partition validation and canonical order") {
  CHECK(part(3, "c|ab") == part(3, "ab|c"));
  CHECK(part(3, "c|ab").blocks().front() == set("ab"));
  CHECK_THROWS_AS(part(3, "ab"), std::invalid_argument);      // c uncovered
  CHECK_THROWS_AS(part(3, "ab|bc"), std::invalid_argument);   // overlap
  CHECK_THROWS_AS(Partition(2, {set("ab"), OutcomeSet()}), std::invalid_argument);
}

TEST_CASE("refinement") {
  CHECK(partition_refines(part(2, "a|b"), part(2, "ab")));
  CHECK_FALSE(partition_refines(part(2, "ab"), part(2, "a|b")));
  CHECK(partition_refines(part(2, "ab"), part(2, "ab")));
}

TEST_CASE("measurability and hulls") {
  CHECK_FALSE(measurable(part(2, "ab"), set("a")));
  CHECK(measurable(part(2, "a|b"), set("a")));
  CHECK_FALSE(measurable(part(3, "ab|c"), set("ac")));
  CHECK(measurable(part(3, "ab|c"), OutcomeSet()));
  CHECK(part(3, "ab|c").hull(set("a")) == set("ab"));
  CHECK(part(3, "ab|c").hull(set("bc")) == set("abc"));
}

TEST_CASE("generated sigma-algebras") {
  SampleSpace omega({"a", "b", "c"});
  CHECK(generated_partition(omega, {}) == part(3, "abc"));
  CHECK(generated_partition(omega, {set("ab")}) == part(3, "ab|c"));
  CHECK(generated_partition(omega, {set("ab"), set("bc")}) == part(3, "a|b|c"));
}

TEST_CASE("join and meet") {
  CHECK(join_partitions(part(2, "ab"), part(2, "a|b")) == part(2, "a|b"));
  CHECK(meet_partitions(part(3, "a|bc"), part(3, "ab|c")) == part(3, "abc"));
  CHECK(join_partitions(part(3, "a|bc"), part(3, "a|bc")) == part(3, "a|bc"));
}

TEST_CASE("meet is the finest common coarsening among all partitions") {
  for (std::size_t m = 1; m <= 4; ++m) {
    const auto all = sweep::all_partitions(m);
    for (const auto& p : all) {
      for (const auto& r : all) {
        std::vector<Partition> common;
        for (const auto& c : all) {
          if (partition_refines(p, c) && partition_refines(r, c)) common.push_back(c);
        }
        const auto mt = meet_partitions(p, r);
        for (const auto& c : common) CHECK(partition_refines(mt, c));
        CHECK(std::find(common.begin(), common.end(), mt) != common.end());

        std::vector<Partition> finer;
        for (const auto& c : all) {
          if (partition_refines(c, p) && partition_refines(c, r)) finer.push_back(c);
        }
        const auto jn = join_partitions(p, r);
        for (const auto& c : finer) CHECK(partition_refines(c, jn));
      }
    }
  }
}

TEST_CASE("partition counts follow the Bell numbers") {
  const std::size_t bell[] = {1, 1, 2, 5, 15, 52};
  for (std::size_t m = 1; m <= 5; ++m) CHECK(sweep::all_partitions(m).size() == bell[m]);
}

TEST_CASE("filtration lookup honours boundary flags") {
  const auto f = testutil::e1();
  CHECK(f.sigma_at(Time(q(1, 2))) == Partition::trivial(2));
  CHECK(f.sigma_at(Time(1)) == Partition::discrete(2));
  CHECK(f.sigma_at(Time::infinity()) == Partition::discrete(2));
  const auto g = testutil::e1ex();
  CHECK(g.sigma_at(Time(1)) == Partition::trivial(2));
  CHECK(g.sigma_at(Time(q(101, 100))) == Partition::discrete(2));
  CHECK(g.sigma_after(q(1)) == Partition::discrete(2));
  CHECK(g.sigma_after(q(1, 2)) == Partition::trivial(2));
  CHECK(g.has_exclusive());
  CHECK_FALSE(g.all_inclusive().has_exclusive());
  CHECK(g.all_inclusive() == f);
}

TEST_CASE("filtration validation") {
  const auto t = Partition::trivial(2);
  const auto d = Partition::discrete(2);
  CHECK_THROWS_WITH(Filtration({{q(1), t, Boundary::inclusive}}), doctest::Contains("first breakpoint must be 0 inclusive"));
  CHECK_THROWS_WITH(Filtration({{q(0), t, Boundary::exclusive}}), doctest::Contains("first breakpoint must be 0 inclusive"));
  CHECK_THROWS_WITH(Filtration({{q(0), t, Boundary::inclusive}, {q(0), d, Boundary::inclusive}}),
                    doctest::Contains("breakpoints not increasing"));
  CHECK_THROWS_WITH(Filtration({{q(0), d, Boundary::inclusive}, {q(1), t, Boundary::inclusive}}),
                    doctest::Contains("non-refining partition chain"));
  CHECK_THROWS_AS(Filtration({}), std::invalid_argument);
}

TEST_CASE("sigma_at matches a direct scan of the steps") {
  for (std::size_t m = 1; m <= 3; ++m) {
    for (const auto& f : sweep::all_filtrations(m, 2)) {
      for (std::int64_t k = 0; k <= 10; ++k) {
        const Rational t(k, 4);
        CHECK(f.sigma_at(Time(t)) == sweep::naive_sigma(f, t));
        // Right limit: the partition just after t.
        CHECK(f.sigma_after(t) == sweep::naive_sigma(f, t + Rational(1, 1000)));
      }
    }
  }
}
