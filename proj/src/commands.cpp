#include "stoplat/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "stoplat/format.hpp"
#include "stoplat/hunt.hpp"
#include "stoplat/rieszcore.hpp"
#include "stoplat/search.hpp"
#include "stoplat/selftest.hpp"

namespace stoplat::cli {

namespace {

// Raised for bad flags or instances; mapped to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write '" + path + "'");
}

Instance load_instance(const std::string& path) {
  const auto text = read_file(path);
  try {
    return parse_instance(text);
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Rational parse_flag_rational(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

const RandomTime& named_time(const Instance& inst, const std::string& name) {
  const auto* t = inst.find_time(name);
  if (!t) throw UsageError("unknown time '" + name + "'");
  return *t;
}

// Shared option values; each subcommand registers the subset it uses.
struct Options {
  std::string file;
  std::string report;
  bool optional = false;
  bool oracle = false;
  std::int64_t grid_denominator = 4;
  std::string grid_max;
  std::string mode = "pointwise";
  std::string target;
  std::vector<std::string> parts;
  std::vector<std::string> names;
  std::uint64_t seed = 0;
  std::size_t instances = 100;
  std::size_t max_omega = 4;
  std::size_t max_breakpoints = 3;
  std::size_t threads = 1;
  bool no_infinity = false;
  std::vector<std::string> properties;
  std::vector<std::string> corpus;
  std::string replay;

  TimeClass cls() const { return optional ? TimeClass::optional : TimeClass::stopping; }

  Grid grid(const std::vector<RandomTime>& inputs, bool finite_only) const {
    if (grid_denominator < 1) throw UsageError("--grid-denominator must be positive");
    auto g = Grid::covering(grid_denominator, inputs);
    if (!grid_max.empty()) {
      g.max_value = parse_flag_rational("--grid-max", grid_max);
      if (g.max_value <= 0) throw UsageError("--grid-max must be positive");
    }
    if (finite_only) g.allow_infinity = false;
    return g;
  }
};

// Accumulates "result ..." lines for the machine-readable report.
class Report {
 public:
  Report(const Options& o, std::string header) : path_(o.report), text_(std::move(header)) {}
  void line(const std::string& l) { text_ += "result " + l + "\n"; }
  void flush() const {
    if (!path_.empty()) write_file(path_, text_);
  }

 private:
  std::string path_;
  std::string text_;
};

// Oracle enumeration visits up to v^m grid-valued times; keep that near a million.
SearchCaps oracle_caps(const Grid& g, std::size_t m) {
  std::size_t v = 1;
  while (std::pow(static_cast<double>(v + 1), static_cast<double>(m)) <= 1 << 20) ++v;
  return {6, std::max(v, g.value_count() <= 6 ? g.value_count() : std::size_t{6})};
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

int report_failure(const PreconditionFailed& p, std::ostream& out, Report& rep) {
  out << "precondition failed (" << to_string(p.code) << "): " << p.reason << "\n";
  rep.line(std::string("precondition-failed ") + to_string(p.code));
  rep.flush();
  return kExitPrecondition;
}

int cmd_check(const Options& o, std::ostream& out) {
  const auto inst = load_instance(o.file);
  Report rep(o, emit_instance(inst));
  std::vector<std::string> names = o.names;
  if (names.empty()) {
    for (const auto& nt : inst.times) names.push_back(nt.name);
  }
  for (const auto& name : names) {
    const auto& t = named_time(inst, name);
    const bool st = is_stopping_time(t, inst.filtration);
    const bool op = is_optional_time(t, inst.filtration);
    out << name << ": stopping=" << bool_text(st) << " optional=" << bool_text(op) << "\n";
    rep.line("check " + name + " stopping " + bool_text(st) + " optional " + bool_text(op));
    if (o.oracle) {
      const bool ok = adapted_by_separation(t, inst.filtration, TimeClass::stopping) == st &&
                      adapted_by_separation(t, inst.filtration, TimeClass::optional) == op;
      out << "  oracle: " << (ok ? "agrees" : "DISAGREES") << "\n";
      if (!ok) {
        rep.flush();
        return kExitMismatch;
      }
    }
  }
  rep.flush();
  return kExitOk;
}

std::string default_target(const Instance& inst, const Options& o) {
  if (!o.target.empty()) return o.target;
  if (auto s = inst.role("S")) return *s;
  throw UsageError("no --target given and the instance has no S role");
}

int cmd_minorant(const Options& o, std::ostream& out) {
  const auto inst = load_instance(o.file);
  Report rep(o, emit_instance(inst));
  const auto name = default_target(inst, o);
  const auto& u = named_time(inst, name);
  const auto t = max_stopping_minorant(u, inst.filtration, o.cls());
  out << "maximal " << to_string(o.cls()) << " minorant of " << name << ": " << emit_time_values(t) << "\n";
  rep.line("minorant " + name + " " + emit_time_values(t));
  if (o.oracle) {
    const auto grid = Grid::covering(o.grid_denominator, {u});
    RandomTime best = RandomTime::constant(u.size(), Time(0));
    for (const auto& e : enumerate_stopping_times(inst.filtration, grid, o.cls(), oracle_caps(grid, u.size()))) {
      if (pointwise_leq(e, u)) best = time_join(best, e);
    }
    const bool ok = best == t || !grid.contains(t);
    out << "  oracle on grid " << describe(grid) << ": " << emit_time_values(best) << (ok ? "" : " DISAGREES")
        << "\n";
    if (!ok) {
      rep.flush();
      return kExitMismatch;
    }
  }
  rep.flush();
  return kExitOk;
}

int cmd_decompose(const Options& o, std::ostream& out) {
  const auto inst = load_instance(o.file);
  Report rep(o, emit_instance(inst));
  const auto s_name = default_target(inst, o);
  const auto& s = named_time(inst, s_name);
  std::vector<std::string> part_names = o.parts;
  if (part_names.empty()) {
    for (std::size_t k = 1;; ++k) {
      auto n = inst.role("T" + std::to_string(k));
      if (!n) break;
      part_names.push_back(*n);
    }
  }
  if (part_names.empty()) throw UsageError("no --parts given and the instance has no T1 role");
  std::vector<RandomTime> ts;
  for (const auto& n : part_names) ts.push_back(named_time(inst, n));
  auto inputs = ts;
  inputs.push_back(s);
  const auto grid = o.grid(inputs, false);

  const auto outcome = decompose_stopping(s, ts, inst.filtration, grid, o.cls());
  std::optional<OracleDecompositions> oracle;
  if (o.oracle) oracle = oracle_decompositions(s, ts, inst.filtration, grid, o.cls(), oracle_caps(grid, s.size()));
  int code = kExitOk;
  if (const auto* d = std::get_if<StDecomposition>(&outcome)) {
    out << "found on grid " << describe(grid) << "\n";
    for (std::size_t k = 0; k < d->parts.size(); ++k) {
      out << "  S" << k + 1 << " <= " << part_names[k] << ": " << emit_time_values(d->parts[k]) << "\n";
      rep.line("part S" + std::to_string(k + 1) + " " + emit_time_values(d->parts[k]));
    }
  } else if (const auto* nf = std::get_if<NotFoundOnGrid>(&outcome)) {
    code = kExitNotFound;
    out << "not found on grid " << describe(nf->grid) << " (" << nf->states_explored << " states explored)\n";
    rep.line("not-found-on-grid " + describe(nf->grid) + " explored " + std::to_string(nf->states_explored));
  } else {
    return report_failure(std::get<PreconditionFailed>(outcome), out, rep);
  }
  if (oracle) {
    out << "oracle: " << oracle->solutions.size() << " decompositions among " << oracle->candidates
        << " candidates, digest " << hex_digest(oracle->digest) << "\n";
    rep.line("oracle solutions " + std::to_string(oracle->solutions.size()) + " candidates " +
             std::to_string(oracle->candidates) + " digest " + hex_digest(oracle->digest));
    bool agrees = oracle->solutions.empty() == (code == kExitNotFound);
    if (agrees && !oracle->solutions.empty()) {
      agrees = std::get<StDecomposition>(outcome).parts ==
               *std::max_element(oracle->solutions.begin(), oracle->solutions.end());
    }
    if (!agrees) {
      out << "oracle DISAGREES with the search\n";
      code = kExitMismatch;
    }
  }
  rep.flush();
  return code;
}

int cmd_interpolate(const Options& o, std::ostream& out) {
  const auto inst = load_instance(o.file);
  Report rep(o, emit_instance(inst));
  if (inst.set_a.empty() || inst.set_b.empty()) throw UsageError("interpolate needs 'set A' and 'set B'");
  const auto a = inst.times_of(inst.set_a);
  const auto b = inst.times_of(inst.set_b);

  if (o.mode == "pointwise") {
    RandomTime t;
    try {
      t = interpolate_pointwise(a, b, inst.filtration, o.cls());
    } catch (const PreconditionError& e) {
      return report_failure({FailureCode::order_violated, e.what()}, out, rep);
    }
    out << "pointwise interpolant: " << emit_time_values(t) << "\n";
    rep.line("interpolant pointwise " + emit_time_values(t));
    rep.flush();
    return kExitOk;
  }

  const auto grid = o.grid(b, true);
  const auto outcome = interpolate_cone(a, b, inst.filtration, grid, o.cls());
  std::optional<OracleInterpolants> oracle;
  if (o.oracle && !std::holds_alternative<PreconditionFailed>(outcome)) {
    oracle = oracle_cone_interpolants(a, b, inst.filtration, grid, o.cls(), oracle_caps(grid, b[0].size()));
  }
  int code = kExitOk;
  if (const auto* t = std::get_if<RandomTime>(&outcome)) {
    out << "least cone interpolant on grid " << describe(grid) << ": " << emit_time_values(*t) << "\n";
    rep.line("interpolant cone " + emit_time_values(*t));
  } else if (const auto* nf = std::get_if<NotFoundOnGrid>(&outcome)) {
    code = kExitNotFound;
    out << "not found on grid " << describe(nf->grid) << " (" << nf->states_explored << " states explored)\n";
    rep.line("not-found-on-grid " + describe(nf->grid) + " explored " + std::to_string(nf->states_explored));
  } else {
    return report_failure(std::get<PreconditionFailed>(outcome), out, rep);
  }
  if (oracle) {
    out << "oracle: " << oracle->solutions.size() << " interpolants among " << oracle->candidates
        << " candidates, digest " << hex_digest(oracle->digest) << "\n";
    rep.line("oracle solutions " + std::to_string(oracle->solutions.size()) + " candidates " +
             std::to_string(oracle->candidates) + " digest " + hex_digest(oracle->digest));
    bool agrees = oracle->solutions.empty() == (code == kExitNotFound);
    if (agrees && code == kExitOk) agrees = std::get<RandomTime>(outcome) == oracle->solutions.front();
    if (!agrees) {
      out << "oracle DISAGREES with the search\n";
      code = kExitMismatch;
    }
  }
  rep.flush();
  return code;
}

int cmd_hunt(const Options& o, std::ostream& out) {
  HuntConfig config;
  config.seed = o.seed;
  config.instances = o.instances;
  config.max_omega = o.max_omega;
  config.max_breakpoints = o.max_breakpoints;
  config.grid_denominator = o.grid_denominator;
  if (!o.grid_max.empty()) config.grid_max = parse_flag_rational("--grid-max", o.grid_max);
  config.allow_infinity = !o.no_infinity;
  config.time_class = o.cls();
  config.threads = o.threads;
  if (!o.properties.empty()) {
    config.properties.clear();
    for (const auto& p : o.properties) {
      auto prop = parse_property(p);
      if (!prop) throw UsageError("unknown property '" + p + "'");
      config.properties.push_back(*prop);
    }
  }
  for (const auto& path : o.corpus) config.corpus.push_back(load_instance(path));
  try {
    validate(config);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const auto report = hunt(config);
  out << summarize_report(report);
  if (!o.report.empty()) write_file(o.report, emit_report(report));
  return kExitOk;
}

int cmd_replay(const Options& o, std::ostream& out) {
  HuntReport report;
  try {
    report = parse_report(read_file(o.replay));
  } catch (const ParseError& e) {
    throw UsageError(o.replay + ": " + e.what());
  }
  std::size_t mismatches = 0;
  for (const auto& f : report.flagged) {
    const auto r = evaluate_case(f.property, f.instance, report.config);
    const bool same = r.verdict == f.result.verdict && r.digest == f.result.digest;
    if (!same) ++mismatches;
    out << "#" << f.index << " " << to_string(f.property) << ": recorded " << to_string(f.result.verdict)
        << ", replayed " << to_string(r.verdict) << (same ? "" : " MISMATCH") << "\n";
  }
  out << "replayed " << report.flagged.size() << " flagged cases, " << mismatches << " mismatches\n";
  return mismatches ? kExitMismatch : kExitOk;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  if (!o.replay.empty()) return cmd_replay(o, out);
  if (o.file.empty()) throw UsageError("oracle needs an instance file or --replay");
  const auto inst = load_instance(o.file);
  Report rep(o, emit_instance(inst));
  std::vector<RandomTime> all;
  for (const auto& nt : inst.times) all.push_back(nt.value);
  const auto grid = o.grid(all, false);
  try {
    const auto caps = oracle_caps(grid, inst.space.size());
    const auto times = enumerate_stopping_times(inst.filtration, grid, o.cls(), caps);
    Digest d;
    for (const auto& t : times) d.add(t);
    out << times.size() << " " << to_string(o.cls()) << " times on grid " << describe(grid) << ", digest "
        << hex_digest(d.value()) << "\n";
    rep.line("enumerated " + std::to_string(times.size()) + " digest " + hex_digest(d.value()));

    if (auto s = inst.role("S"); s && !inst.part_bounds().empty()) {
      const auto dec = oracle_decompositions(inst.time(*s), inst.part_bounds(), inst.filtration, grid, o.cls(), caps);
      out << "decompositions of " << *s << ": " << dec.solutions.size() << " among " << dec.candidates
          << " candidates, digest " << hex_digest(dec.digest) << "\n";
      for (const auto& sol : dec.solutions) {
        std::string row;
        for (const auto& part : sol) row += (row.empty() ? "" : " | ") + emit_time_values(part);
        out << "  " << row << "\n";
      }
      rep.line("decompositions " + std::to_string(dec.solutions.size()) + " digest " + hex_digest(dec.digest));
    }
    if (!inst.set_a.empty() && !inst.set_b.empty()) {
      const auto b = inst.times_of(inst.set_b);
      const auto cg = o.grid(b, true);
      const auto cone = oracle_cone_interpolants(inst.times_of(inst.set_a), b, inst.filtration, cg, o.cls(), caps);
      out << "cone interpolants on grid " << describe(cg) << ": " << cone.solutions.size() << " among "
          << cone.candidates << " candidates, digest " << hex_digest(cone.digest) << "\n";
      rep.line("cone-interpolants " + std::to_string(cone.solutions.size()) + " digest " +
               hex_digest(cone.digest));
    }
  } catch (const CapExceeded& e) {
    throw UsageError(std::string("oracle cap exceeded: ") + e.what());
  }
  rep.flush();
  return kExitOk;
}

int cmd_selftest(const Options& o, std::ostream& out) {
  SelftestConfig config{o.seed, o.instances};
  bool ok = true;
  for (const auto& r : run_selftest(config)) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " checks)\n";
    if (!r.passed) out << "  " << r.detail << "\n";
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitMismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Order theory of stopping times on finite filtered spaces", "stoplat"};
  app.require_subcommand(1);
  Options o;

  auto grid_opts = [&](CLI::App* c) {
    c->add_option("--grid-denominator", o.grid_denominator, "Grid step 1/N")->check(CLI::PositiveNumber);
    c->add_option("--grid-max", o.grid_max, "Largest finite grid value (default: largest input value)");
  };
  auto common = [&](CLI::App* c, bool needs_file) {
    auto* f = c->add_option("file", o.file, "Instance file");
    if (needs_file) f->required();
    c->add_flag("--optional", o.optional, "Use optional-time predicates");
    c->add_option("--report", o.report, "Write the machine-readable report here");
  };

  std::vector<std::pair<CLI::App*, std::function<int(const Options&, std::ostream&)>>> commands;
  auto add = [&](const char* name, const char* help, auto fn) {
    auto* c = app.add_subcommand(name, help);
    commands.emplace_back(c, fn);
    return c;
  };

  auto* check = add("check", "Evaluate the stopping and optional predicates", cmd_check);
  common(check, true);
  check->add_option("--time", o.names, "Times to check (default: all)");
  check->add_flag("--oracle", o.oracle, "Cross-check with the separation oracle");

  auto* minorant = add("minorant", "Maximal stopping minorant of a time", cmd_minorant);
  common(minorant, true);
  minorant->add_option("--target", o.target, "Time to project (default: role S)");
  minorant->add_flag("--oracle", o.oracle, "Cross-check against enumeration");

  auto* decompose = add("decompose", "Split S into adapted parts below T1..Tn", cmd_decompose);
  common(decompose, true);
  decompose->add_option("--target", o.target, "Time to decompose (default: role S)");
  decompose->add_option("--parts", o.parts, "Upper bounds (default: roles T1..Tn)")->delimiter(',');
  decompose->add_flag("--oracle", o.oracle, "Cross-check against enumeration");

  auto* interpolate = add("interpolate", "Find T between the sets A and B", cmd_interpolate);
  common(interpolate, true);
  interpolate->add_option("--mode", o.mode, "Order reading")->check(CLI::IsMember({"pointwise", "cone"}));
  interpolate->add_flag("--oracle", o.oracle, "Cross-check against enumeration (cone mode)");

  auto* hunter = add("hunt", "Search random instances for counterexamples", cmd_hunt);
  hunter->add_flag("--optional", o.optional, "Use optional-time predicates");
  hunter->add_option("--report", o.report, "Write the machine-readable report here");
  hunter->add_option("--seed", o.seed, "Random seed");
  hunter->add_option("--instances", o.instances, "Random instances per property");
  hunter->add_option("--max-omega", o.max_omega, "Largest sample space (1..6)");
  hunter->add_option("--max-breakpoints", o.max_breakpoints, "Breakpoints after 0 (<= 5)");
  hunter->add_option("--threads", o.threads, "Worker threads, 0 = all cores; output is unaffected");
  hunter->add_flag("--no-infinity", o.no_infinity, "Keep generated times finite");
  hunter->add_option("--properties", o.properties, "Subset of properties (names or a-e)")->delimiter(',');
  hunter->add_option("--corpus", o.corpus, "Extra decomposition instances evaluated first");
  hunter->add_flag("--oracle", o.oracle, "Accepted for symmetry; flagged cases are always oracle-checked");

  auto* selftest = add("selftest", "Run the invariant suites of every module", cmd_selftest);
  selftest->add_option("--seed", o.seed, "Random seed");
  selftest->add_option("--instances", o.instances, "Instances per suite");

  auto* oracle = add("oracle", "Brute-force enumeration, or replay of a hunt report", cmd_oracle);
  common(oracle, false);
  oracle->add_option("--replay", o.replay, "Re-evaluate every flagged case of a hunt report");

  for (auto* c : {decompose, interpolate, oracle, minorant, hunter}) grid_opts(c);
  // hunt defaults to a coarser grid than the single-instance commands
  if (!args.empty() && args.front() == "hunt") o.grid_denominator = 2;

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  for (const auto& [cmd, fn] : commands) {
    if (!cmd->parsed()) continue;
    try {
      return fn(o, out);
    } catch (const UsageError& e) {
      err << "error: " << e.what() << "\n";
      return kExitInvalid;
    } catch (const PreconditionError& e) {
      err << "precondition failed: " << e.what() << "\n";
      return kExitPrecondition;
    } catch (const CapExceeded& e) {
      err << "error: " << e.what() << "\n";
      return kExitInvalid;
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << "\n";
      return kExitInvalid;
    }
  }
  return kExitInvalid;
}

}  // namespace stoplat::cli
