#include "stoplat/format.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <vector>

namespace stoplat::cli {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::vector<std::string> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto pos = text.find('\n', start);
    if (pos == std::string_view::npos) {
      if (start < text.size()) out.push_back(text.substr(start));
      break;
    }
    auto line = text.substr(start, pos - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    start = pos + 1;
  }
  return out;
}

template <class F>
auto at_line(std::size_t line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(line, e.what());
  }
}

class InstanceParser {
 public:
  Instance parse(std::string_view text, std::size_t line_offset) {
    const auto lines = lines_of(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      line_ = line_offset + i + 1;
      auto toks = tokenize(lines[i]);
      if (toks.empty()) continue;
      at_line(line_, [&] { directive(toks); });
    }
    line_ = line_offset + lines.size();
    if (!space_) throw ParseError(line_, "missing omega directive");
    if (steps_.empty()) throw ParseError(line_, "missing breakpoint directive");
    Instance inst{*space_, Filtration(std::move(steps_)), {}, {}, {}, {}, {}};
    for (auto& [name, value] : times_) inst.add_time(std::move(name), std::move(value));
    inst.rvs = std::move(rvs_);
    inst.set_a = std::move(set_a_);
    inst.set_b = std::move(set_b_);
    for (auto& [role, name] : roles_) inst.set_role(std::move(role), std::move(name));
    return inst;
  }

 private:
  void fail(const std::string& message) const { throw ParseError(line_, message); }

  std::size_t outcome(const std::string& name) const {
    auto idx = space_->index_of(name);
    if (!idx) fail("unknown outcome '" + name + "'");
    return *idx;
  }

  void require(std::size_t count, const std::vector<std::string>& toks, const char* usage) const {
    if (toks.size() < count) fail(std::string("expected ") + usage);
  }

  void check_new_name(const std::string& name) const {
    auto taken = [&](const auto& list) {
      return std::any_of(list.begin(), list.end(), [&](const auto& e) { return e.first == name; });
    };
    if (taken(times_) || std::any_of(rvs_.begin(), rvs_.end(), [&](const NamedRV& r) { return r.name == name; })) {
      fail("duplicate name '" + name + "'");
    }
  }

  bool is_time(const std::string& name) const {
    return std::any_of(times_.begin(), times_.end(), [&](const auto& e) { return e.first == name; });
  }

  void directive(const std::vector<std::string>& toks) {
    const auto& d = toks[0];
    if (d == "omega") {
      if (space_) fail("omega declared twice");
      require(2, toks, "omega <name>+");
      space_.emplace(std::vector<std::string>(toks.begin() + 1, toks.end()));
      return;
    }
    if (!space_) fail("'" + d + "' before omega");
    const auto m = space_->size();

    if (d == "breakpoint") {
      require(3, toks, "breakpoint <rational> [inclusive|exclusive] <blocks>");
      const auto u = parse_rational(toks[1]);
      std::size_t next = 2;
      auto boundary = Boundary::inclusive;
      if (toks[2] == "inclusive" || toks[2] == "exclusive") {
        boundary = toks[2] == "inclusive" ? Boundary::inclusive : Boundary::exclusive;
        next = 3;
      }
      if (next >= toks.size()) fail("breakpoint without blocks");
      std::string spec;
      for (auto i = next; i < toks.size(); ++i) spec += toks[i];
      std::vector<OutcomeSet> blocks;
      OutcomeSet seen;
      for (const auto& block_text : split(spec, ';')) {
        OutcomeSet block;
        for (const auto& name : split(block_text, ',')) {
          if (name.empty()) fail("empty outcome name in block list");
          auto w = outcome(name);
          if (seen.contains(w)) fail("outcome '" + name + "' listed twice");
          seen.insert(w);
          block.insert(w);
        }
        blocks.push_back(block);
      }
      Partition p(m, std::move(blocks));
      if (steps_.empty()) {
        if (u != Rational(0) || boundary != Boundary::inclusive) fail("first breakpoint must be 0 inclusive");
      } else {
        if (!(steps_.back().time < u)) fail("breakpoints not increasing");
        if (!partition_refines(p, steps_.back().partition)) fail("non-refining partition chain");
      }
      steps_.push_back({u, std::move(p), boundary});
      return;
    }
    if (d == "time") {
      require(2, toks, "time <name> <value>+");
      check_new_name(toks[1]);
      if (toks.size() - 2 != m) fail("time '" + toks[1] + "' needs " + std::to_string(m) + " values");
      std::vector<Time> values;
      for (auto i = 2U; i < toks.size(); ++i) values.push_back(parse_time(toks[i]));
      times_.emplace_back(toks[1], RandomTime(std::move(values)));
      return;
    }
    if (d == "rv") {
      require(2, toks, "rv <name> <value>+");
      check_new_name(toks[1]);
      if (toks.size() - 2 != m) fail("rv '" + toks[1] + "' needs " + std::to_string(m) + " values");
      std::vector<Rational> values;
      for (auto i = 2U; i < toks.size(); ++i) values.push_back(parse_rational(toks[i]));
      rvs_.push_back({toks[1], RealRV(std::move(values))});
      return;
    }
    if (d == "set") {
      require(3, toks, "set <A|B> <time-name>+");
      if (toks[1] != "A" && toks[1] != "B") fail("unknown set '" + toks[1] + "'");
      auto& target = toks[1] == "A" ? set_a_ : set_b_;
      if (!target.empty()) fail("set " + toks[1] + " declared twice");
      for (auto i = 2U; i < toks.size(); ++i) {
        if (!is_time(toks[i])) fail("unknown time '" + toks[i] + "'");
        target.push_back(toks[i]);
      }
      return;
    }
    if (d == "role") {
      if (toks.size() != 3) fail("expected role <S|Tk> <time-name>");
      if (!is_time(toks[2])) fail("unknown time '" + toks[2] + "'");
      roles_.emplace_back(toks[1], toks[2]);
      return;
    }
    fail("unknown directive '" + d + "'");
  }

  std::size_t line_ = 0;
  std::optional<SampleSpace> space_;
  std::vector<FiltrationStep> steps_;
  std::vector<std::pair<std::string, RandomTime>> times_;
  std::vector<NamedRV> rvs_;
  std::vector<std::string> set_a_, set_b_;
  std::vector<std::pair<std::string, std::string>> roles_;
};

Instance parse_instance_at(std::string_view text, std::size_t line_offset) {
  InstanceParser parser;
  try {
    return parser.parse(text, line_offset);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(line_offset + lines_of(text).size(), e.what());
  }
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += " " + p;
  return out;
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

Instance parse_instance(std::string_view text) { return parse_instance_at(text, 0); }

std::string emit_time_values(const RandomTime& t) {
  std::string out;
  for (std::size_t w = 0; w < t.size(); ++w) out += (w ? " " : "") + format_time(t[w]);
  return out;
}

std::string emit_partition(const SampleSpace& space, const Partition& p) {
  std::string out;
  for (std::size_t b = 0; b < p.block_count(); ++b) {
    if (b) out += ';';
    bool first = true;
    for (auto w : p.blocks()[b].members()) {
      if (!first) out += ',';
      out += space.label(w);
      first = false;
    }
  }
  return out;
}

std::string emit_instance(const Instance& inst) {
  std::string out = "omega" + join(inst.space.labels()) + "\n";
  for (const auto& s : inst.filtration.steps()) {
    out += "breakpoint " + format_rational(s.time) + (s.boundary == Boundary::inclusive ? " inclusive " : " exclusive ") +
           emit_partition(inst.space, s.partition) + "\n";
  }
  for (const auto& t : inst.times) out += "time " + t.name + " " + emit_time_values(t.value) + "\n";
  for (const auto& r : inst.rvs) {
    out += "rv " + r.name;
    for (const auto& v : r.value.values()) out += " " + format_rational(v);
    out += "\n";
  }
  if (!inst.set_a.empty()) out += "set A" + join(inst.set_a) + "\n";
  if (!inst.set_b.empty()) out += "set B" + join(inst.set_b) + "\n";
  for (const auto& [role, name] : inst.roles) out += "role " + role + " " + name + "\n";
  return out;
}

std::string emit_report(const HuntReport& report) {
  const auto& c = report.config;
  std::ostringstream out;
  out << "report hunt\n";
  out << "version " << report.version << "\n";
  out << "seed " << c.seed << "\n";
  out << "instances " << c.instances << "\n";
  out << "corpus " << report.corpus_count << "\n";
  out << "max-omega " << c.max_omega << "\n";
  out << "max-breakpoints " << c.max_breakpoints << "\n";
  out << "grid-denominator " << c.grid_denominator << "\n";
  out << "grid-max " << format_rational(c.grid_max) << "\n";
  out << "infinity " << bool_text(c.allow_infinity) << "\n";
  out << "class " << to_string(c.time_class) << "\n";
  out << "properties";
  for (auto p : c.properties) out << " " << to_string(p);
  out << "\n";
  for (auto p : kAllProperties) {
    const auto& t = report.tally(p);
    out << "tally " << to_string(p) << " pass " << t.pass << " fail " << t.fail << " not-found " << t.not_found
        << " skipped " << t.skipped << "\n";
  }
  for (const auto& f : report.flagged) {
    out << "flagged " << f.index << " " << to_string(f.property) << " " << to_string(f.result.verdict) << " explored "
        << f.result.explored << " oracle " << f.result.oracle_candidates << " digest " << hex_digest(f.result.digest)
        << "\n";
    out << "detail " << f.result.detail << "\n";
    out << emit_instance(f.instance);
    out << "end\n";
  }
  return out.str();
}

HuntReport parse_report(std::string_view text) {
  const auto lines = lines_of(text);
  HuntReport report;
  auto& c = report.config;
  c.properties.clear();
  std::size_t i = 0;
  auto fail = [&](const std::string& m) { throw ParseError(i + 1, m); };
  auto number = [&](const std::string& s) -> std::uint64_t {
    try {
      std::size_t used = 0;
      auto v = std::stoull(s, &used);
      if (used != s.size()) fail("malformed number '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      fail("malformed number '" + s + "'");
    }
    return 0;
  };
  bool header = false;
  for (; i < lines.size(); ++i) {
    auto toks = tokenize(lines[i]);
    if (toks.empty()) continue;
    const auto& d = toks[0];
    auto arg = [&](std::size_t k) -> const std::string& {
      if (toks.size() <= k) fail("missing argument to '" + d + "'");
      return toks[k];
    };
    if (d == "report") {
      if (arg(1) != "hunt") fail("unsupported report kind");
      header = true;
    } else if (!header) {
      fail("expected 'report hunt'");
    } else if (d == "version") {
      report.version = arg(1);
    } else if (d == "seed") {
      c.seed = number(arg(1));
    } else if (d == "instances") {
      c.instances = number(arg(1));
    } else if (d == "corpus") {
      report.corpus_count = number(arg(1));
    } else if (d == "max-omega") {
      c.max_omega = number(arg(1));
    } else if (d == "max-breakpoints") {
      c.max_breakpoints = number(arg(1));
    } else if (d == "grid-denominator") {
      c.grid_denominator = static_cast<std::int64_t>(number(arg(1)));
    } else if (d == "grid-max") {
      c.grid_max = at_line(i + 1, [&] { return parse_rational(arg(1)); });
    } else if (d == "infinity") {
      c.allow_infinity = arg(1) == "true";
    } else if (d == "class") {
      c.time_class = arg(1) == "optional" ? TimeClass::optional : TimeClass::stopping;
    } else if (d == "properties") {
      for (std::size_t k = 1; k < toks.size(); ++k) {
        auto p = parse_property(toks[k]);
        if (!p) fail("unknown property '" + toks[k] + "'");
        c.properties.push_back(*p);
      }
    } else if (d == "tally") {
      auto p = parse_property(arg(1));
      if (!p || toks.size() != 10) fail("malformed tally");
      auto& t = report.tallies[static_cast<std::size_t>(*p)];
      t = {number(toks[3]), number(toks[5]), number(toks[7]), number(toks[9])};
    } else if (d == "flagged") {
      auto p = parse_property(arg(2));
      auto v = parse_verdict(arg(3));
      if (!p || !v || toks.size() != 10) fail("malformed flagged line");
      CaseResult r;
      r.verdict = *v;
      r.explored = number(toks[5]);
      r.oracle_candidates = number(toks[7]);
      try {
        r.digest = std::stoull(toks[9], nullptr, 16);
      } catch (const std::logic_error&) {
        fail("malformed digest");
      }
      const auto index = number(arg(1));
      ++i;
      if (i < lines.size() && lines[i].starts_with("detail")) {
        auto rest = lines[i].substr(6);
        if (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
        r.detail = std::string(rest);
        ++i;
      }
      const auto start = i;
      while (i < lines.size() && tokenize(lines[i]) != std::vector<std::string>{"end"}) ++i;
      if (i == lines.size()) fail("flagged case without 'end'");
      std::string body;
      for (auto k = start; k < i; ++k) body += std::string(lines[k]) + "\n";
      report.flagged.push_back(FlaggedCase{index, *p, std::move(r), parse_instance_at(body, start)});
    } else {
      fail("unknown report directive '" + d + "'");
    }
  }
  if (!header) throw ParseError(1, "empty report");
  return report;
}

std::string summarize_report(const HuntReport& report) {
  const auto& c = report.config;
  std::ostringstream out;
  out << "hunt seed " << c.seed << ": " << c.instances << " instances";
  if (report.corpus_count) out << " + " << report.corpus_count << " corpus";
  out << " (" << to_string(c.time_class) << " times, version " << report.version << ")\n";
  for (auto p : c.properties) {
    const auto& t = report.tally(p);
    out << "  " << to_string(p) << ": pass " << t.pass << ", fail " << t.fail << ", not-found " << t.not_found
        << ", skipped " << t.skipped << "\n";
  }
  out << "flagged " << report.flagged.size() << "\n";
  for (const auto& f : report.flagged) {
    out << "  #" << f.index << " " << to_string(f.property) << " " << to_string(f.result.verdict) << ": "
        << f.result.detail << "\n";
  }
  return out.str();
}

}  // namespace stoplat::cli
