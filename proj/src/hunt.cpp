#include "stoplat/hunt.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "stoplat/generator.hpp"

namespace stoplat {

namespace {

// Oracle limits while hunting: cone cases can reach 4 * grid_max.
constexpr SearchCaps kHuntCaps{6, 64};

const std::array<std::int64_t, 4> kTruncationLevels = {1, 2, 3, 5};

std::vector<std::string> default_labels(std::size_t m) {
  std::vector<std::string> out;
  for (std::size_t w = 0; w < m; ++w) out.emplace_back(1, static_cast<char>('a' + w));
  return out;
}

Grid hunt_grid(const HuntConfig& config, const std::vector<RandomTime>& inputs) {
  auto g = Grid::covering(config.grid_denominator, inputs);
  g.max_value = std::max(g.max_value, config.grid_max);
  g.allow_infinity = g.allow_infinity || config.allow_infinity;
  return g;
}

CaseResult evaluate_decomposition(const Instance& inst, const HuntConfig& config) {
  CaseResult r;
  auto s_name = inst.role("S");
  auto bounds = inst.part_bounds();
  if (!s_name || bounds.empty()) return {Verdict::skipped, 0, 0, 0, "instance has no S/T roles"};
  const auto& s = inst.time(*s_name);
  auto inputs = bounds;
  inputs.push_back(s);
  const auto grid = hunt_grid(config, inputs);
  const auto outcome = decompose_stopping(s, bounds, inst.filtration, grid, config.time_class);
  if (std::holds_alternative<StDecomposition>(outcome)) return r;
  if (const auto* bad = std::get_if<PreconditionFailed>(&outcome)) return {Verdict::skipped, 0, 0, 0, bad->reason};

  r.explored = std::get<NotFoundOnGrid>(outcome).states_explored;
  const auto oracle = oracle_decompositions(s, bounds, inst.filtration, grid, config.time_class, kHuntCaps);
  r.oracle_candidates = oracle.candidates;
  r.digest = oracle.digest;
  if (oracle.solutions.empty()) {
    r.verdict = Verdict::not_found;
    r.detail = "no decomposition on grid " + describe(grid);
  } else {
    r.verdict = Verdict::fail;
    r.detail = "search missed an oracle decomposition";
  }
  return r;
}

CaseResult evaluate_cone(const Instance& inst, const HuntConfig& config) {
  CaseResult r;
  if (inst.set_a.empty() || inst.set_b.empty()) return {Verdict::skipped, 0, 0, 0, "instance has no A/B sets"};
  const auto a = inst.times_of(inst.set_a);
  const auto b = inst.times_of(inst.set_b);
  auto grid = Grid::covering(config.grid_denominator, b);
  grid.allow_infinity = false;
  const auto outcome = interpolate_cone(a, b, inst.filtration, grid, config.time_class);
  if (std::holds_alternative<RandomTime>(outcome)) return r;
  if (const auto* bad = std::get_if<PreconditionFailed>(&outcome)) return {Verdict::skipped, 0, 0, 0, bad->reason};

  r.explored = std::get<NotFoundOnGrid>(outcome).states_explored;
  const auto oracle = oracle_cone_interpolants(a, b, inst.filtration, grid, config.time_class, kHuntCaps);
  r.oracle_candidates = oracle.candidates;
  r.digest = oracle.digest;
  if (oracle.solutions.empty()) {
    r.verdict = Verdict::not_found;
    r.detail = "no cone interpolant on grid " + describe(grid);
  } else {
    r.verdict = Verdict::fail;
    r.detail = "search missed an oracle interpolant";
  }
  return r;
}

CaseResult evaluate_x_difference(const Instance& inst, const HuntConfig& config) {
  auto s_name = inst.role("S");
  auto t_name = inst.role("T1");
  if (!s_name || !t_name) return {Verdict::skipped, 0, 0, 0, "instance has no S/T1 roles"};
  const auto& s = inst.time(*s_name);
  const auto& t = inst.time(*t_name);
  if (!s.is_finite() || !t.is_finite()) return {Verdict::skipped, 0, 0, 0, "X holds finite values only"};
  const auto d = rv_sub(to_rv(s), to_rv(t));
  const bool member = is_member_x(d, inst.filtration, config.time_class);
  const auto plus = to_time(pos_part(d));
  const auto minus = to_time(neg_part(d));
  const bool oracle = adapted_by_separation(plus, inst.filtration, config.time_class) &&
                      adapted_by_separation(minus, inst.filtration, config.time_class);
  if (member && oracle) return {};
  Digest digest;
  digest.add(plus);
  digest.add(minus);
  CaseResult r{Verdict::fail, 0, 2, digest.value(), ""};
  r.detail = member != oracle ? "membership predicate and separation oracle disagree"
                              : "S - T1 is not in X: a part is not a " + std::string(to_string(config.time_class)) +
                                    " time";
  return r;
}

CaseResult evaluate_truncation(const Instance& inst, const HuntConfig& config) {
  auto s_name = inst.role("S");
  auto bounds = inst.part_bounds();
  if (!s_name || bounds.size() != 2) return {Verdict::skipped, 0, 0, 0, "instance needs roles S, T1, T2"};
  const auto& s = inst.time(*s_name);
  const auto& f = inst.filtration;
  const auto cls = config.time_class;
  if (!pointwise_leq(s, time_add(bounds[0], bounds[1]))) return {Verdict::skipped, 0, 0, 0, "S > T1 + T2"};

  auto check = [&](auto&& adapted) -> std::string {
    for (auto n : kTruncationLevels) {
      const auto sn = truncate(s, n);
      const auto sum = time_add(truncate(bounds[0], n), truncate(bounds[1], n));
      if (!pointwise_leq(sn, sum)) return "S^" + std::to_string(n) + " exceeds T1^n + T2^n";
      for (const RandomTime* t : std::initializer_list<const RandomTime*>{&s, &bounds[0], &bounds[1]}) {
        const auto tn = truncate(*t, n);
        if (!adapted(tn)) return "a truncation at level " + std::to_string(n) + " is not adapted";
        if (!pointwise_leq(tn, truncate(*t, n + 1))) return "truncation not monotone at level " + std::to_string(n);
        if (!pointwise_leq(tn, RandomTime::constant(t->size(), Time(n)))) return "truncation exceeds its level";
      }
    }
    return {};
  };
  auto detail = check([&](const RandomTime& t) { return satisfies(t, f, cls); });
  if (detail.empty()) return {};
  auto oracle = check([&](const RandomTime& t) { return adapted_by_separation(t, f, cls); });
  return {Verdict::fail, 0, 1, 0, oracle.empty() ? "predicate and separation oracle disagree" : detail};
}

CaseResult evaluate_agreement(const Instance& inst, const HuntConfig&) {
  const auto& f = inst.filtration;
  if (f.has_exclusive()) return {Verdict::skipped, 0, 0, 0, "filtration has an exclusive boundary"};
  for (const auto& nt : inst.times) {
    const bool stopping = is_stopping_time(nt.value, f);
    const bool optional = is_optional_time(nt.value, f);
    if (stopping == optional) continue;
    const bool oracle_agrees = adapted_by_separation(nt.value, f, TimeClass::stopping) ==
                               adapted_by_separation(nt.value, f, TimeClass::optional);
    return {Verdict::fail, 0, 2, 0,
            nt.name + (oracle_agrees ? ": predicates disagree but the separation oracle agrees"
                                     : ": optional and stopping differ on a right-continuous filtration")};
  }
  return {};
}

}  // namespace

const char* to_string(HuntProperty p) {
  switch (p) {
    case HuntProperty::decomposition: return "decomposition";
    case HuntProperty::cone_interpolation: return "cone-interpolation";
    case HuntProperty::x_difference: return "x-difference";
    case HuntProperty::truncation: return "truncation";
    case HuntProperty::optional_agreement: return "optional-agreement";
  }
  return "unknown";
}

std::optional<HuntProperty> parse_property(const std::string& text) {
  for (std::size_t i = 0; i < kAllProperties.size(); ++i) {
    const auto p = kAllProperties[i];
    if (text == to_string(p) || (text.size() == 1 && text[0] == static_cast<char>('a' + i))) return p;
  }
  return std::nullopt;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_found: return "not-found";
    case Verdict::skipped: return "skipped";
  }
  return "unknown";
}

std::optional<Verdict> parse_verdict(const std::string& text) {
  for (auto v : {Verdict::pass, Verdict::fail, Verdict::not_found, Verdict::skipped}) {
    if (text == to_string(v)) return v;
  }
  return std::nullopt;
}

void Tally::add(Verdict v) {
  switch (v) {
    case Verdict::pass: ++pass; break;
    case Verdict::fail: ++fail; break;
    case Verdict::not_found: ++not_found; break;
    case Verdict::skipped: ++skipped; break;
  }
}

void validate(const HuntConfig& config) {
  if (config.max_omega < 1 || config.max_omega > 6) throw CapExceeded("max-omega must be in 1..6");
  if (config.max_breakpoints > 5) throw CapExceeded("max-breakpoints must be at most 5");
  if (config.grid_denominator < 1) throw std::invalid_argument("grid denominator must be positive");
  if (config.grid_max <= 0) throw std::invalid_argument("grid max must be positive");
  if (Grid{config.grid_denominator, config.grid_max, config.allow_infinity}.value_count() > 16) {
    throw CapExceeded("hunt grid exceeds 16 values");
  }
  if (config.properties.empty()) throw std::invalid_argument("no properties selected");
}

Instance generate_case(HuntProperty property, std::size_t index, const HuntConfig& config) {
  auto rng = Rng::stream(config.seed, index, static_cast<std::uint64_t>(property) + 1);
  const auto m = static_cast<std::size_t>(1 + rng.below(config.max_omega));
  const FiltrationShape shape{config.max_breakpoints, 2 * config.grid_denominator, config.grid_max, true};
  auto f = random_filtration(rng, m, shape);
  const Grid grid{config.grid_denominator, config.grid_max, config.allow_infinity};
  const Grid finite{config.grid_denominator, config.grid_max, false};
  const auto cls = config.time_class;

  if (property == HuntProperty::optional_agreement) {
    Instance inst{SampleSpace(default_labels(m)), f.all_inclusive(), {}, {}, {}, {}, {}};
    for (int k = 1; k <= 3; ++k) inst.add_time("U" + std::to_string(k), random_grid_time(rng, m, grid));
    return inst;
  }

  Instance inst{SampleSpace(default_labels(m)), f, {}, {}, {}, {}, {}};
  switch (property) {
    case HuntProperty::decomposition:
    case HuntProperty::truncation: {
      auto t1 = random_stopping_time(rng, f, grid, cls);
      auto t2 = random_stopping_time(rng, f, grid, cls);
      auto s = max_stopping_minorant(time_meet(random_grid_time(rng, m, grid), time_add(t1, t2)), f, cls);
      inst.add_time("S", s);
      inst.add_time("T1", t1);
      inst.add_time("T2", t2);
      inst.set_role("S", "S");
      inst.set_role("T1", "T1");
      inst.set_role("T2", "T2");
      break;
    }
    case HuntProperty::cone_interpolation: {
      // A = {c + d1, c + d2}, B = {c + d1 + d2 + e}: every pair is cone-ordered.
      Grid half = finite;
      half.max_value = std::max(Rational(1, config.grid_denominator), config.grid_max / 2);
      auto c = random_stopping_time(rng, f, half, cls);
      auto d1 = random_stopping_time(rng, f, half, cls);
      auto d2 = random_stopping_time(rng, f, half, cls);
      auto e = random_stopping_time(rng, f, half, cls);
      inst.add_time("A1", time_add(c, d1));
      inst.add_time("A2", time_add(c, d2));
      inst.add_time("B1", time_add(time_add(c, d1), time_add(d2, e)));
      inst.set_a = {"A1", "A2"};
      inst.set_b = {"B1"};
      break;
    }
    case HuntProperty::x_difference: {
      auto s = random_stopping_time(rng, f, finite, cls);
      auto t = random_stopping_time(rng, f, finite, cls);
      inst.add_time("S", s);
      inst.add_time("T1", t);
      inst.set_role("S", "S");
      inst.set_role("T1", "T1");
      inst.rvs.push_back({"D", rv_sub(to_rv(s), to_rv(t))});
      break;
    }
    case HuntProperty::optional_agreement:
      break;
  }
  return inst;
}

CaseResult evaluate_case(HuntProperty property, const Instance& instance, const HuntConfig& config) {
  switch (property) {
    case HuntProperty::decomposition: return evaluate_decomposition(instance, config);
    case HuntProperty::cone_interpolation: return evaluate_cone(instance, config);
    case HuntProperty::x_difference: return evaluate_x_difference(instance, config);
    case HuntProperty::truncation: return evaluate_truncation(instance, config);
    case HuntProperty::optional_agreement: return evaluate_agreement(instance, config);
  }
  throw std::logic_error("unknown hunt property");
}

HuntReport hunt(const HuntConfig& config) {
  validate(config);
  HuntReport report;
  report.config = config;
  report.corpus_count = config.corpus.size();

  struct Slot {
    std::vector<FlaggedCase> flagged;
    std::array<Verdict, kAllProperties.size()> verdicts{};
    std::array<bool, kAllProperties.size()> ran{};
  };
  const auto corpus = config.corpus.size();
  const auto total = corpus + config.instances;
  std::vector<Slot> slots(total);

  auto work = [&](std::size_t index) {
    auto& slot = slots[index];
    auto record = [&](HuntProperty p, Instance inst, CaseResult r) {
      const auto k = static_cast<std::size_t>(p);
      slot.ran[k] = true;
      slot.verdicts[k] = r.verdict;
      if (r.verdict == Verdict::fail || r.verdict == Verdict::not_found) {
        slot.flagged.push_back(FlaggedCase{index, p, std::move(r), std::move(inst)});
      }
    };
    if (index < corpus) {
      const auto& inst = config.corpus[index];
      record(HuntProperty::decomposition, inst, evaluate_case(HuntProperty::decomposition, inst, config));
      return;
    }
    for (auto p : config.properties) {
      auto inst = generate_case(p, index - corpus, config);
      auto r = evaluate_case(p, inst, config);
      record(p, std::move(inst), std::move(r));
    }
  };

  auto threads = config.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : config.threads;
  threads = std::min<std::size_t>(threads, std::max<std::size_t>(total, 1));
  if (threads <= 1) {
    for (std::size_t i = 0; i < total; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i; (i = next.fetch_add(1)) < total;) work(i);
        } catch (...) {
          errors[t] = std::current_exception();
          next = total;
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  for (auto& slot : slots) {
    for (std::size_t k = 0; k < kAllProperties.size(); ++k) {
      if (slot.ran[k]) report.tallies[k].add(slot.verdicts[k]);
    }
    for (auto& fc : slot.flagged) report.flagged.push_back(std::move(fc));
  }
  return report;
}

}  // namespace stoplat
