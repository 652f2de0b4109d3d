#include "stoplat/selftest.hpp"

#include <algorithm>
#include <functional>

#include "stoplat/format.hpp"
#include "stoplat/generator.hpp"
#include "stoplat/hunt.hpp"
#include "stoplat/rieszcore.hpp"
#include "stoplat/search.hpp"

namespace stoplat {

namespace {

constexpr std::size_t kMaxOmega = 4;
const Grid kGrid{2, Rational(2), true};
const Grid kFiniteGrid{2, Rational(2), false};
const FiltrationShape kShape{3, 4, Rational(2), true};

class Suite {
 public:
  explicit Suite(std::string name) { result_.name = std::move(name); }

  void check(bool ok, const std::function<std::string()>& detail) {
    ++result_.cases;
    if (!ok && result_.passed) {
      result_.passed = false;
      result_.detail = detail();
    }
  }

  SelftestResult done() { return std::move(result_); }

 private:
  SelftestResult result_;
};

std::string show(const RandomTime& t) { return "(" + cli::emit_time_values(t) + ")"; }

std::string show(const RealRV& r) {
  std::string out = "(";
  for (std::size_t w = 0; w < r.size(); ++w) out += (w ? " " : "") + format_rational(r[w]);
  return out + ")";
}

std::string show(const Filtration& f) {
  std::string out;
  for (const auto& s : f.steps()) {
    out += "[" + format_rational(s.time) + (s.boundary == Boundary::inclusive ? " inc " : " exc ");
    for (auto b : s.partition.blocks()) out += std::to_string(b.bits()) + ",";
    out += "]";
  }
  return out;
}

struct Context {
  Rng rng;
  std::size_t m;
  Filtration f;
};

Context make_context(const SelftestConfig& cfg, std::size_t suite, std::size_t i, bool exclusive = true) {
  auto rng = Rng::stream(cfg.seed, i, 1000 + suite);
  auto m = static_cast<std::size_t>(1 + rng.below(kMaxOmega));
  auto shape = kShape;
  shape.exclusive = exclusive;
  auto f = random_filtration(rng, m, shape);
  return {std::move(rng), m, std::move(f)};
}

OutcomeSet random_set(Rng& rng, std::size_t m) { return OutcomeSet(rng.next() & OutcomeSet::all(m).bits()); }

SelftestResult partition_suite(const SelftestConfig& cfg) {
  Suite s("space: partition order and lattice laws");
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    auto rng = Rng::stream(cfg.seed, i, 1);
    const auto m = static_cast<std::size_t>(1 + rng.below(6));
    auto p = random_partition(rng, m);
    auto q = random_partition(rng, m);
    auto r = random_partition(rng, m);
    s.check(partition_refines(p, p), [] { return "refinement not reflexive"; });
    s.check(!(partition_refines(p, q) && partition_refines(q, p)) || p == q, [] { return "refinement not antisymmetric"; });
    s.check(!(partition_refines(p, q) && partition_refines(q, r)) || partition_refines(p, r),
            [] { return "refinement not transitive"; });
    auto j = join_partitions(p, q);
    auto mt = meet_partitions(p, q);
    s.check(partition_refines(j, p) && partition_refines(j, q), [] { return "join is not a common refinement"; });
    s.check(partition_refines(p, mt) && partition_refines(q, mt), [] { return "meet is not a common coarsening"; });
    s.check(join_partitions(p, meet_partitions(p, q)) == p, [] { return "absorption p v (p ^ q) = p fails"; });
    s.check(meet_partitions(p, join_partitions(p, q)) == p, [] { return "absorption p ^ (p v q) = p fails"; });
    s.check(join_partitions(p, p) == p && meet_partitions(p, p) == p, [] { return "idempotence fails"; });

    std::vector<OutcomeSet> sets;
    for (auto k = rng.below(4); k > 0; --k) sets.push_back(random_set(rng, m));
    auto gen = generated_partition(m, sets);
    auto acc = Partition::trivial(m);
    for (auto a : sets) {
      std::vector<OutcomeSet> two;
      if (!a.empty()) two.push_back(a);
      if (auto rest = OutcomeSet::all(m) - a; !rest.empty()) two.push_back(rest);
      acc = join_partitions(acc, Partition(m, two));
    }
    s.check(gen == acc, [] { return "generated partition differs from join of two-block partitions"; });

    auto a = random_set(rng, m);
    auto b = random_set(rng, m);
    auto comp = OutcomeSet::all(m) - a;
    s.check(p.measurable(a) == p.measurable(comp), [] { return "measurability not closed under complement"; });
    if (p.measurable(a) && p.measurable(b)) {
      s.check(p.measurable(a | b) && p.measurable(a & b), [] { return "measurable sets not closed under union/intersection"; });
    }
    s.check(p.measurable(p.hull(a)) && a.subset_of(p.hull(a)), [] { return "hull is not a measurable superset"; });
  }
  return s.done();
}

SelftestResult filtration_suite(const SelftestConfig& cfg) {
  Suite s("space: filtration is increasing");
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    auto ctx = make_context(cfg, 2, i);
    std::vector<Time> probes{Time(0)};
    for (const auto& st : ctx.f.steps()) {
      probes.emplace_back(st.time);
      probes.emplace_back(st.time + Rational(1, 8));
    }
    probes.push_back(Time::infinity());
    std::sort(probes.begin(), probes.end());
    for (std::size_t k = 1; k < probes.size(); ++k) {
      s.check(partition_refines(ctx.f.sigma_at(probes[k]), ctx.f.sigma_at(probes[k - 1])),
              [&] { return "F_t does not refine F_s on " + show(ctx.f); });
    }
    s.check(ctx.f.sigma_at(Time::infinity()) == ctx.f.final_partition(), [] { return "F_inf is not the last partition"; });
  }
  return s.done();
}

SelftestResult predicate_suite(const SelftestConfig& cfg) {
  Suite s("times: check-point predicate matches separation oracle");
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    auto ctx = make_context(cfg, 3, i);
    for (int k = 0; k < 4; ++k) {
      auto t = random_grid_time(ctx.rng, ctx.m, kGrid);
      for (auto cls : {TimeClass::stopping, TimeClass::optional}) {
        s.check(satisfies(t, ctx.f, cls) == adapted_by_separation(t, ctx.f, cls),
                [&] { return std::string(to_string(cls)) + " predicate disagrees on " + show(t) + " over " + show(ctx.f); });
      }
      s.check(!is_stopping_time(t, ctx.f) || is_optional_time(t, ctx.f),
              [&] { return "stopping time " + show(t) + " is not optional"; });
    }
  }
  return s.done();
}

SelftestResult cone_suite(const SelftestConfig& cfg) {
  Suite s("times: adapted times closed under meet, join, sum and scaling by lambda >= 1");
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    auto ctx = make_context(cfg, 4, i);
    for (auto cls : {TimeClass::stopping, TimeClass::optional}) {
      auto a = random_stopping_time(ctx.rng, ctx.f, kGrid, cls);
      auto b = random_stopping_time(ctx.rng, ctx.f, kGrid, cls);
      // lambda >= 1 only: shrinking a time can make it look ahead, e.g. (1/2)(1, 2) on a filtration
      // that stays trivial until 1.
      const auto den = static_cast<std::int64_t>(1 + ctx.rng.below(3));
      const Rational lambda(den + static_cast<std::int64_t>(ctx.rng.below(5)), den);
      const char* ops[] = {"meet", "join", "sum", "scale"};
      int k = 0;
      for (const auto& r : {time_meet(a, b), time_join(a, b), time_add(a, b), time_scale(lambda, a)}) {
        s.check(satisfies(r, ctx.f, cls), [&] {
          return std::string(to_string(cls)) + " " + ops[k] + " closure fails for " + show(a) + ", " + show(b) +
                 " over " + show(ctx.f);
        });
        ++k;
      }
      if (a.is_finite()) {
        auto neg = rv_scale(Rational(-1), to_rv(a));
        s.check(!neg.nonnegative() || a == RandomTime::constant(ctx.m, Time(0)),
                [] { return "cone meets its negation away from zero"; });
      }
    }
  }
  return s.done();
}

SelftestResult truncation_suite(const SelftestConfig& cfg) {
  Suite s("times: truncation bounds, monotonicity, recovery and sum inequality");
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    auto ctx = make_context(cfg, 5, i);
    auto t1 = random_stopping_time(ctx.rng, ctx.f, kGrid, TimeClass::stopping);
    auto t2 = random_stopping_time(ctx.rng, ctx.f, kGrid, TimeClass::stopping);
    auto sv = max_stopping_minorant(time_meet(random_grid_time(ctx.rng, ctx.m, kGrid), time_add(t1, t2)), ctx.f);
    for (std::int64_t n = 1; n <= 5; ++n) {
      auto tn = truncate(t1, n);
      s.check(pointwise_leq(tn, RandomTime::constant(ctx.m, Time(n))), [] { return "T^n exceeds n"; });
      s.check(pointwise_leq(tn, truncate(t1, n + 1)), [] { return "T^n not increasing in n"; });
      s.check(is_stopping_time(tn, ctx.f), [&] { return "truncation of " + show(t1) + " is not a stopping time"; });
      s.check(pointwise_leq(truncate(sv, n), time_add(truncate(t1, n), truncate(t2, n))),
              [&] { return "S^n > T1^n + T2^n for S=" + show(sv); });
    }
    // Every finite value is at most 2, so level 3 recovers finite values and caps inf.
    auto t3 = truncate(t1, 3);
    for (std::size_t w = 0; w < ctx.m; ++w) {
      s.check(t1[w].is_infinite() ? t3[w] == Time(3) : t3[w] == t1[w], [] { return "sup of truncations misses T"; });
    }
    // sup_n (A_n + B_n) = sup A_n + sup B_n for nondecreasing sequences
    RandomTime sup_sum = RandomTime::constant(ctx.m, Time(0));
    for (std::int64_t n = 1; n <= 3; ++n) sup_sum = time_join(sup_sum, time_add(truncate(t1, n), truncate(t2, n)));
    s.check(sup_sum == time_add(truncate(t1, 3), truncate(t2, 3)), [] { return "sup recombination fails"; });
  }
  return s.done();
}

SelftestResult x_suite(const SelftestConfig& cfg) {
  Suite s("times: X is a lattice; positive/negative part identities");
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    auto ctx = make_context(cfg, 6, i);
    auto rv = [&] {
      auto a = to_rv(random_stopping_time(ctx.rng, ctx.f, kFiniteGrid, TimeClass::stopping));
      auto b = to_rv(random_stopping_time(ctx.rng, ctx.f, kFiniteGrid, TimeClass::stopping));
      return ctx.rng.coin() ? a : rv_scale(Rational(-1), b);
    };
    auto s1 = rv();
    auto s2 = rv_sub(rv(), ctx.rng.coin() ? RealRV::zero(ctx.m) : rv());
    s.check(rv_sub(pos_part(s1), neg_part(s1)) == s1, [] { return "S != S+ - S-"; });
    s.check(pos_part(rv_meet(s1, s2)) == rv_meet(pos_part(s1), pos_part(s2)), [] { return "(S1 ^ S2)+ != S1+ ^ S2+"; });
    s.check(neg_part(rv_meet(s1, s2)) == rv_join(neg_part(s1), neg_part(s2)), [] { return "(S1 ^ S2)- != S1- v S2-"; });
    s.check(rv_abs(s1) == rv_add(pos_part(s1), neg_part(s1)), [] { return "|S| != S+ + S-"; });
    if (is_member_x(s1, ctx.f) && is_member_x(s2, ctx.f)) {
      s.check(is_member_x(rv_meet(s1, s2), ctx.f) && is_member_x(rv_join(s1, s2), ctx.f),
              [&] { return "X not closed under meet/join for " + show(s1) + ", " + show(s2); });
    }
  }
  return s.done();
}

SelftestResult order_suite(const SelftestConfig& cfg) {
  Suite s("times: cone order implies pointwise order");
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    auto ctx = make_context(cfg, 7, i);
    auto a = random_stopping_time(ctx.rng, ctx.f, kFiniteGrid, TimeClass::stopping);
    auto b = random_stopping_time(ctx.rng, ctx.f, kFiniteGrid, TimeClass::stopping);
    for (auto cls : {TimeClass::stopping, TimeClass::optional}) {
      s.check(!leq(a, b, OrderKind::cone, ctx.f, cls) || leq(a, b, OrderKind::pointwise, ctx.f, cls),
              [] { return "cone order without pointwise order"; });
    }
    s.check(leq(a, time_add(a, b), OrderKind::cone, ctx.f), [] { return "a <=_cone a + b fails"; });
  }
  return s.done();
}

SelftestResult agreement_suite(const SelftestConfig& cfg) {
  Suite s("times: optional = stopping on right-continuous filtrations");
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    auto ctx = make_context(cfg, 8, i, false);
    for (int k = 0; k < 4; ++k) {
      auto t = random_grid_time(ctx.rng, ctx.m, kGrid);
      s.check(is_stopping_time(t, ctx.f) == is_optional_time(t, ctx.f),
              [&] { return "disagreement on " + show(t) + " over " + show(ctx.f); });
    }
  }
  return s.done();
}

SelftestResult rieszcore_suite(const SelftestConfig& cfg) {
  Suite s("rieszcore: greedy decomposition and least interpolant");
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    auto rng = Rng::stream(cfg.seed, i, 9);
    const auto m = static_cast<std::size_t>(1 + rng.below(5));
    const auto n = static_cast<std::size_t>(1 + rng.below(3));
    auto draw = [&] {
      RealRV r = RealRV::zero(m);
      for (std::size_t w = 0; w < m; ++w) r[w] = Rational(static_cast<std::int64_t>(rng.below(9)), 2);
      return r;
    };
    std::vector<RealRV> ys;
    RealRV total = RealRV::zero(m);
    for (std::size_t k = 0; k < n; ++k) {
      ys.push_back(draw());
      total = rv_add(total, ys.back());
    }
    auto x = rv_meet(draw(), total);
    for (int pass = 0; pass < 2; ++pass) {
      auto d = rv_decompose(x, ys);
      RealRV sum = RealRV::zero(m);
      for (std::size_t k = 0; k < n; ++k) {
        s.check(RealRV::zero(m) == rv_meet(RealRV::zero(m), d.parts[k]) && pointwise_leq(d.parts[k], ys[k]),
                [&] { return "part out of [0, y] for x=" + show(x); });
        sum = rv_add(sum, d.parts[k]);
      }
      s.check(sum == x, [&] { return "parts do not sum to x=" + show(x); });
      std::reverse(ys.begin(), ys.end());
    }
    std::vector<RealRV> a{rv_meet(x, draw()), rv_meet(x, draw())};
    std::vector<RealRV> b{rv_join(x, draw())};
    auto z = rv_interpolate(a, b);
    s.check(pointwise_leq(a[0], z) && pointwise_leq(a[1], z) && pointwise_leq(z, b[0]), [] { return "A <= z <= B fails"; });
    s.check(pointwise_leq(z, x), [] { return "interpolant is not least"; });
  }
  return s.done();
}

SelftestResult minorant_suite(const SelftestConfig& cfg) {
  Suite s("search: maximal stopping minorant");
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    auto ctx = make_context(cfg, 10, i);
    auto u = random_grid_time(ctx.rng, ctx.m, kGrid);
    for (auto cls : {TimeClass::stopping, TimeClass::optional}) {
      auto t = max_stopping_minorant(u, ctx.f, cls);
      s.check(satisfies(t, ctx.f, cls), [&] { return "minorant of " + show(u) + " is not adapted"; });
      s.check(pointwise_leq(t, u), [&] { return "minorant exceeds " + show(u); });
      s.check(max_stopping_minorant(t, ctx.f, cls) == t, [] { return "minorant not idempotent"; });
      for (const auto& e : enumerate_stopping_times(ctx.f, kGrid, cls)) {
        if (pointwise_leq(e, u)) {
          s.check(pointwise_leq(e, t), [&] { return "minorant of " + show(u) + " misses " + show(e); });
        }
      }
    }
  }
  return s.done();
}

SelftestResult decomposition_suite(const SelftestConfig& cfg) {
  Suite s("search: decomposition matches oracle; solutions form a lattice");
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    auto ctx = make_context(cfg, 11, i);
    const auto cls = ctx.rng.coin() ? TimeClass::stopping : TimeClass::optional;
    auto t1 = random_stopping_time(ctx.rng, ctx.f, kGrid, cls);
    auto t2 = random_stopping_time(ctx.rng, ctx.f, kGrid, cls);
    auto sv = max_stopping_minorant(time_meet(random_grid_time(ctx.rng, ctx.m, kGrid), time_add(t1, t2)), ctx.f, cls);
    const std::vector<RandomTime> ts{t1, t2};
    auto grid = Grid::covering(2, {sv, t1, t2});
    grid.max_value = std::max(grid.max_value, Rational(1));
    auto outcome = decompose_stopping(sv, ts, ctx.f, grid, cls);
    auto oracle = oracle_decompositions(sv, ts, ctx.f, grid, cls, SearchCaps{6, 16});
    const bool found = std::holds_alternative<StDecomposition>(outcome);
    s.check(!std::holds_alternative<PreconditionFailed>(outcome), [&] {
      return "valid input rejected: " + std::get<PreconditionFailed>(outcome).reason + " S=" + show(sv) + " T1=" +
             show(t1) + " T2=" + show(t2) + " over " + show(ctx.f);
    });
    s.check(found == !oracle.solutions.empty(), [&] { return "verdict differs from oracle for S=" + show(sv); });
    if (found && !oracle.solutions.empty()) {
      auto best = *std::max_element(oracle.solutions.begin(), oracle.solutions.end());
      s.check(std::get<StDecomposition>(outcome).parts == best, [] { return "result is not the S1-maximal solution"; });
      // Valid first parts are closed under meet and join.
      std::vector<RandomTime> firsts;
      for (const auto& sol : oracle.solutions) firsts.push_back(sol[0]);
      for (const auto& x : firsts) {
        for (const auto& y : firsts) {
          for (const auto& z : {time_meet(x, y), time_join(x, y)}) {
            s.check(std::find(firsts.begin(), firsts.end(), z) != firsts.end(),
                    [] { return "valid S1 set not closed under meet/join"; });
          }
        }
      }
      // Grid refinement keeps the solution.
      auto finer = grid;
      finer.denominator *= 2;
      s.check(std::holds_alternative<StDecomposition>(decompose_stopping(sv, ts, ctx.f, finer, cls)),
              [] { return "refining the grid lost a decomposition"; });
    }
  }
  return s.done();
}

SelftestResult interpolation_suite(const SelftestConfig& cfg) {
  Suite s("search: pointwise interpolation always succeeds; cone search matches oracle");
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    auto ctx = make_context(cfg, 12, i);
    const auto cls = ctx.rng.coin() ? TimeClass::stopping : TimeClass::optional;
    std::vector<RandomTime> b{random_stopping_time(ctx.rng, ctx.f, kGrid, cls),
                              random_stopping_time(ctx.rng, ctx.f, kGrid, cls)};
    auto floor = time_meet(b[0], b[1]);
    std::vector<RandomTime> a{max_stopping_minorant(time_meet(random_grid_time(ctx.rng, ctx.m, kGrid), floor), ctx.f, cls),
                              max_stopping_minorant(time_meet(random_grid_time(ctx.rng, ctx.m, kGrid), floor), ctx.f, cls)};
    auto t = interpolate_pointwise(a, b, ctx.f, cls);
    s.check(satisfies(t, ctx.f, cls) && pointwise_leq(a[0], t) && pointwise_leq(a[1], t) && pointwise_leq(t, b[0]) &&
                pointwise_leq(t, b[1]),
            [] { return "pointwise interpolant fails re-check"; });

    std::vector<RandomTime> ca{random_stopping_time(ctx.rng, ctx.f, kFiniteGrid, cls)};
    std::vector<RandomTime> cb{time_add(ca[0], random_stopping_time(ctx.rng, ctx.f, kFiniteGrid, cls)),
                               random_stopping_time(ctx.rng, ctx.f, kFiniteGrid, cls)};
    auto grid = Grid::covering(2, cb);
    auto outcome = interpolate_cone(ca, cb, ctx.f, grid, cls);
    if (std::holds_alternative<PreconditionFailed>(outcome)) continue;
    auto oracle = oracle_cone_interpolants(ca, cb, ctx.f, grid, cls, SearchCaps{6, 16});
    const bool found = std::holds_alternative<RandomTime>(outcome);
    s.check(found == !oracle.solutions.empty(), [] { return "cone verdict differs from oracle"; });
    if (found && !oracle.solutions.empty()) {
      s.check(std::get<RandomTime>(outcome) == oracle.solutions.front(), [] { return "cone result is not least"; });
    }
  }
  return s.done();
}

SelftestResult format_suite(const SelftestConfig& cfg) {
  Suite s("cli: instance text round-trips");
  HuntConfig hc;
  hc.seed = cfg.seed;
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    for (auto p : kAllProperties) {
      auto inst = generate_case(p, i, hc);
      auto text = cli::emit_instance(inst);
      auto back = cli::parse_instance(text);
      s.check(back == inst && cli::emit_instance(back) == text, [&] { return "round-trip fails for\n" + text; });
    }
  }
  return s.done();
}

}  // namespace

std::vector<SelftestResult> run_selftest(const SelftestConfig& config) {
  std::vector<SelftestResult> out;
  for (auto suite : {partition_suite, filtration_suite, predicate_suite, cone_suite, truncation_suite, x_suite,
                     order_suite, agreement_suite, rieszcore_suite, minorant_suite, decomposition_suite,
                     interpolation_suite, format_suite}) {
    try {
      out.push_back(suite(config));
    } catch (const std::exception& e) {
      out.push_back({"suite aborted", false, 0, e.what()});
    }
  }
  return out;
}

}  // namespace stoplat
