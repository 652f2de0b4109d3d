#include "stoplat/search.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <optional>

#include "stoplat/rieszcore.hpp"

namespace stoplat {

namespace {

// First step at which two outcomes fall into different atoms.
class Separation {
 public:
  explicit Separation(const Filtration& f)
      : f_(f), m_(f.omega_size()), first_(m_ * m_, kNever) {
    for (std::size_t a = 0; a < m_; ++a) {
      for (std::size_t b = a + 1; b < m_; ++b) {
        for (std::size_t k = 0; k < f.steps().size(); ++k) {
          if (!f.steps()[k].partition.same_block(a, b)) {
            first_[a * m_ + b] = first_[b * m_ + a] = k;
            break;
          }
        }
      }
    }
  }

  /// a and b lie in different atoms of F_lower (F_{lower+} for optional times).
  bool separated(std::size_t a, std::size_t b, const Time& lower, TimeClass cls) const {
    const auto k = first_[a * m_ + b];
    if (k == kNever) return false;
    if (lower.is_infinite()) return true;
    const auto& step = f_.steps()[k];
    const auto& v = lower.value();
    if (cls == TimeClass::optional) return !(v < step.time);
    return step.time < v || (step.time == v && step.boundary == Boundary::inclusive);
  }

  bool compatible(std::size_t a, const Time& x, std::size_t b, const Time& y, TimeClass cls) const {
    return x == y || separated(a, b, std::min(x, y), cls);
  }

 private:
  static constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();
  const Filtration& f_;
  std::size_t m_;
  std::vector<std::size_t> first_;
};

std::string outcome_ref(std::size_t w) { return "outcome #" + std::to_string(w); }

class DecompositionSearch {
 public:
  DecompositionSearch(const RandomTime& s, const std::vector<RandomTime>& ts, const Filtration& f,
                      std::vector<Time> grid_values, TimeClass cls)
      : s_(s), ts_(ts), sep_(f), cls_(cls), values_(std::move(grid_values)),
        m_(s.size()), n_(ts.size()), parts_(n_, RandomTime::constant(m_, Time(0))), tail_(n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      tail_[i] = RandomTime::constant(m_, Time(0));
      for (std::size_t j = i + 1; j < n_; ++j) tail_[i] = time_add(tail_[i], ts_[j]);
    }
  }

  bool run() { return visit(0, 0); }
  const std::vector<RandomTime>& parts() const { return parts_; }
  std::uint64_t explored() const { return explored_; }

 private:
  bool visit(std::size_t i, std::size_t w) {
    if (i == n_) return true;
    if (w == m_) return visit(i + 1, 0);

    Time lo(0);
    Time hi = ts_[i][w];
    if (s_[w].is_infinite()) {
      bool covered = false;
      for (std::size_t j = 0; j < i; ++j) covered = covered || parts_[j][w].is_infinite();
      if (!covered && tail_[i][w].is_finite()) lo = Time::infinity();
    } else {
      Rational rest = s_[w].value();
      for (std::size_t j = 0; j < i; ++j) rest -= parts_[j][w].value();
      hi = std::min(hi, Time(rest));
      if (tail_[i][w].is_finite() && tail_[i][w].value() < rest) lo = Time(rest - tail_[i][w].value());
    }

    for (auto it = values_.rbegin(); it != values_.rend(); ++it) {
      const Time& v = *it;
      if (hi < v) continue;
      if (v < lo) break;
      ++explored_;
      bool ok = true;
      for (std::size_t u = 0; u < w && ok; ++u) ok = sep_.compatible(u, parts_[i][u], w, v, cls_);
      if (!ok) continue;
      parts_[i][w] = v;
      if (visit(i, w + 1)) return true;
    }
    return false;
  }

  const RandomTime& s_;
  const std::vector<RandomTime>& ts_;
  Separation sep_;
  TimeClass cls_;
  std::vector<Time> values_;
  std::size_t m_;
  std::size_t n_;
  std::vector<RandomTime> parts_;
  std::vector<RandomTime> tail_;
  std::uint64_t explored_ = 0;
};

class ConeSearch {
 public:
  ConeSearch(const std::vector<RandomTime>& a, const std::vector<RandomTime>& b, const Filtration& f,
             std::vector<Time> grid_values, TimeClass cls)
      : a_(a), b_(b), sep_(f), cls_(cls), values_(std::move(grid_values)), m_(f.omega_size()),
        chosen_(RandomTime::constant(m_, Time(0))) {}

  bool run() { return visit(0); }
  const RandomTime& result() const { return chosen_; }
  std::uint64_t explored() const { return explored_; }

 private:
  bool fits(std::size_t w, const Time& v) const {
    for (std::size_t u = 0; u < w; ++u) {
      const auto& t = chosen_[u];
      for (const auto& x : a_) {
        if (!sep_.compatible(u, t.minus(x[u]), w, v.minus(x[w]), cls_)) return false;
      }
      for (const auto& y : b_) {
        if (!sep_.compatible(u, y[u].minus(t), w, y[w].minus(v), cls_)) return false;
      }
    }
    return true;
  }

  bool visit(std::size_t w) {
    if (w == m_) return true;
    Time lo = a_.front()[w];
    Time hi = b_.front()[w];
    for (const auto& x : a_) lo = std::max(lo, x[w]);
    for (const auto& y : b_) hi = std::min(hi, y[w]);
    for (const auto& v : values_) {
      if (v < lo) continue;
      if (hi < v) break;
      ++explored_;
      if (!fits(w, v)) continue;
      chosen_[w] = v;
      if (visit(w + 1)) return true;
    }
    return false;
  }

  const std::vector<RandomTime>& a_;
  const std::vector<RandomTime>& b_;
  Separation sep_;
  TimeClass cls_;
  std::vector<Time> values_;
  std::size_t m_;
  RandomTime chosen_;
  std::uint64_t explored_ = 0;
};

Grid finite_only(Grid g) {
  g.allow_infinity = false;
  return g;
}

}  // namespace

std::vector<Time> Grid::values() const {
  if (denominator < 1) throw std::invalid_argument("grid denominator must be positive");
  std::vector<Time> out;
  if (max_value >= 0) {
    const auto top = max_value * denominator;
    const auto kmax = top.numerator() / top.denominator();
    for (std::int64_t k = 0; k <= kmax; ++k) out.emplace_back(Rational(k, denominator));
  }
  if (allow_infinity) out.push_back(Time::infinity());
  return out;
}

std::size_t Grid::value_count() const {
  if (max_value < 0) return allow_infinity ? 1 : 0;
  const auto top = max_value * denominator;
  return static_cast<std::size_t>(top.numerator() / top.denominator()) + 1 + (allow_infinity ? 1 : 0);
}

bool Grid::contains(const Time& t) const {
  if (t.is_infinite()) return allow_infinity;
  return (t.value() * denominator).denominator() == 1 && t.value() <= max_value;
}

bool Grid::contains(const RandomTime& t) const {
  return std::all_of(t.values().begin(), t.values().end(), [&](const Time& v) { return contains(v); });
}

Grid Grid::covering(std::int64_t q, const std::vector<RandomTime>& times) {
  Grid g{q, Rational(0), false};
  for (const auto& t : times) {
    for (const auto& v : t.values()) {
      if (v.is_infinite()) {
        g.allow_infinity = true;
      } else {
        g.max_value = std::max(g.max_value, v.value());
      }
    }
  }
  return g;
}

std::string describe(const Grid& g) {
  return "denominator " + std::to_string(g.denominator) + " max " + format_rational(g.max_value) + " infinity " +
         (g.allow_infinity ? "true" : "false");
}

const char* to_string(FailureCode c) {
  switch (c) {
    case FailureCode::invalid_input: return "invalid-input";
    case FailureCode::not_adapted: return "not-adapted";
    case FailureCode::order_violated: return "order-violated";
    case FailureCode::off_grid: return "off-grid";
    case FailureCode::cone_order_violated: return "cone-order-violated";
  }
  return "unknown";
}

std::vector<RandomTime> enumerate_stopping_times(const Filtration& f, const Grid& grid, TimeClass cls,
                                                 const SearchCaps& caps) {
  const auto m = f.omega_size();
  if (m > caps.max_omega) {
    throw CapExceeded("enumeration cap exceeded: " + std::to_string(m) + " outcomes > " +
                      std::to_string(caps.max_omega));
  }
  if (grid.value_count() > caps.max_grid_values) {
    throw CapExceeded("enumeration cap exceeded: " + std::to_string(grid.value_count()) + " grid values > " +
                      std::to_string(caps.max_grid_values));
  }
  const auto values = grid.values();
  std::vector<RandomTime> out;
  if (values.empty()) return out;
  std::vector<std::size_t> idx(m, 0);
  RandomTime t = RandomTime::constant(m, values.front());
  while (true) {
    if (satisfies(t, f, cls)) out.push_back(t);
    std::size_t pos = m;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < values.size()) {
        t[pos] = values[idx[pos]];
        break;
      }
      idx[pos] = 0;
      t[pos] = values.front();
      if (pos == 0) return out;
    }
  }
}

RandomTime max_stopping_minorant(const RandomTime& u, const Filtration& f, TimeClass cls) {
  if (u.size() != f.omega_size()) throw std::invalid_argument("time and filtration over different sample spaces");
  RandomTime t = u;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& c : check_points(t, f)) {
      const auto level = t.at_most(Time(c));
      const auto& p = cls == TimeClass::stopping ? f.sigma_at(Time(c)) : f.sigma_after(c);
      if (p.measurable(level)) continue;
      for (auto w : (p.hull(level) - level).members()) t[w] = Time(c);
      changed = true;
    }
  }
  return t;
}

SearchOutcome<StDecomposition> decompose_stopping(const RandomTime& s, const std::vector<RandomTime>& ts,
                                                  const Filtration& f, const Grid& grid, TimeClass cls) {
  using Outcome = SearchOutcome<StDecomposition>;
  auto fail = [](FailureCode code, std::string reason) { return Outcome(PreconditionFailed{code, std::move(reason)}); };
  const auto m = f.omega_size();
  if (ts.empty()) return fail(FailureCode::invalid_input, "no part bounds given");
  if (grid.denominator < 1) return fail(FailureCode::invalid_input, "grid denominator must be positive");
  if (s.size() != m) return fail(FailureCode::invalid_input, "target over a different sample space");
  for (const auto& t : ts) {
    if (t.size() != m) return fail(FailureCode::invalid_input, "part bound over a different sample space");
  }
  const std::string kind = to_string(cls);
  if (!satisfies(s, f, cls)) return fail(FailureCode::not_adapted, "target is not a " + kind + " time");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!satisfies(ts[i], f, cls)) {
      return fail(FailureCode::not_adapted, "bound T" + std::to_string(i + 1) + " is not a " + kind + " time");
    }
  }
  RandomTime total = ts.front();
  for (std::size_t i = 1; i < ts.size(); ++i) total = time_add(total, ts[i]);
  for (std::size_t w = 0; w < m; ++w) {
    if (total[w] < s[w]) return fail(FailureCode::order_violated, "target exceeds the sum of bounds at " + outcome_ref(w));
  }
  if (!grid.contains(s)) return fail(FailureCode::off_grid, "target has values off the grid");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!grid.contains(ts[i])) return fail(FailureCode::off_grid, "bound T" + std::to_string(i + 1) + " has values off the grid");
  }

  DecompositionSearch search(s, ts, f, grid.values(), cls);
  if (!search.run()) return NotFoundOnGrid{grid, search.explored()};

  StDecomposition out;
  out.parts = search.parts();
  RandomTime sum = RandomTime::constant(m, Time(0));
  for (std::size_t i = 0; i < out.parts.size(); ++i) {
    const auto& p = out.parts[i];
    if (!satisfies(p, f, cls) || !pointwise_leq(p, ts[i])) throw std::logic_error("decomposition part failed re-check");
    out.certificates.push_back(check_transcript(p, f, cls));
    sum = time_add(sum, p);
  }
  if (sum != s) throw std::logic_error("decomposition parts do not sum to the target");
  return out;
}

RandomTime interpolate_pointwise(const std::vector<RandomTime>& a, const std::vector<RandomTime>& b,
                                 const Filtration& f, TimeClass cls) {
  if (a.empty() || b.empty()) throw PreconditionError("interpolation needs nonempty A and B");
  const auto m = f.omega_size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != m) throw PreconditionError("A[" + std::to_string(i) + "] over a different sample space");
    if (!satisfies(a[i], f, cls)) {
      throw PreconditionError("A[" + std::to_string(i) + "] is not a " + std::string(to_string(cls)) + " time");
    }
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (b[j].size() != m) throw PreconditionError("B[" + std::to_string(j) + "] over a different sample space");
    if (!satisfies(b[j], f, cls)) {
      throw PreconditionError("B[" + std::to_string(j) + "] is not a " + std::string(to_string(cls)) + " time");
    }
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      for (std::size_t w = 0; w < m; ++w) {
        if (b[j][w] < a[i][w]) {
          throw PreconditionError("A <= B fails: A[" + std::to_string(i) + "] > B[" + std::to_string(j) + "] at " +
                                  outcome_ref(w));
        }
      }
    }
  }
  RandomTime out = a.front();
  for (const auto& x : a) out = time_join(out, x);
  if (!satisfies(out, f, cls)) throw std::logic_error("join of adapted times failed the predicate");
  return out;
}

SearchOutcome<RandomTime> interpolate_cone(const std::vector<RandomTime>& a, const std::vector<RandomTime>& b,
                                           const Filtration& f, const Grid& grid, TimeClass cls) {
  using Outcome = SearchOutcome<RandomTime>;
  auto fail = [](FailureCode code, std::string reason) { return Outcome(PreconditionFailed{code, std::move(reason)}); };
  if (a.empty() || b.empty()) return fail(FailureCode::invalid_input, "interpolation needs nonempty A and B");
  if (grid.denominator < 1) return fail(FailureCode::invalid_input, "grid denominator must be positive");
  const auto m = f.omega_size();
  const std::string kind = to_string(cls);
  auto check_members = [&](const std::vector<RandomTime>& xs, const char* name) -> std::optional<Outcome> {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto label = std::string(name) + "[" + std::to_string(i) + "]";
      if (xs[i].size() != m) return fail(FailureCode::invalid_input, label + " over a different sample space");
      if (!xs[i].is_finite()) return fail(FailureCode::invalid_input, label + " is not finite-valued");
      if (!satisfies(xs[i], f, cls)) return fail(FailureCode::not_adapted, label + " is not a " + kind + " time");
    }
    return std::nullopt;
  };
  if (auto bad = check_members(a, "A")) return *bad;
  if (auto bad = check_members(b, "B")) return *bad;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!leq(a[i], b[j], OrderKind::cone, f, cls)) {
        return fail(FailureCode::cone_order_violated,
                    "A[" + std::to_string(i) + "] <= B[" + std::to_string(j) + "] fails in the cone order");
      }
    }
  }

  const auto g = finite_only(grid);
  ConeSearch search(a, b, f, g.values(), cls);
  if (!search.run()) return NotFoundOnGrid{g, search.explored()};
  const auto& t = search.result();
  for (const auto& x : a) {
    if (!leq(x, t, OrderKind::cone, f, cls)) throw std::logic_error("cone interpolant failed re-check");
  }
  for (const auto& y : b) {
    if (!leq(t, y, OrderKind::cone, f, cls)) throw std::logic_error("cone interpolant failed re-check");
  }
  return t;
}

bool adapted_by_separation(const RandomTime& t, const Filtration& f, TimeClass cls) {
  if (t.size() != f.omega_size()) throw std::invalid_argument("time and filtration over different sample spaces");
  Separation sep(f);
  for (std::size_t a = 0; a < t.size(); ++a) {
    for (std::size_t b = a + 1; b < t.size(); ++b) {
      if (!sep.compatible(a, t[a], b, t[b], cls)) return false;
    }
  }
  return true;
}

OracleDecompositions oracle_decompositions(const RandomTime& s, const std::vector<RandomTime>& ts,
                                           const Filtration& f, const Grid& grid, TimeClass cls,
                                           const SearchCaps& caps) {
  if (ts.empty()) throw std::invalid_argument("oracle needs at least one part bound");
  const auto all = enumerate_stopping_times(f, grid, cls, caps);
  OracleDecompositions out;
  Digest digest;
  for (const auto& t : all) digest.add(t);

  const auto n = ts.size();
  std::vector<std::vector<RandomTime>> pools(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& t : all) {
      if (pointwise_leq(t, ts[i])) pools[i].push_back(t);
    }
  }
  std::vector<RandomTime> chosen(n);
  auto record = [&]() {
    out.solutions.push_back(chosen);
    for (const auto& p : chosen) digest.add(p);
    digest.add("|");
  };
  // Sum of chosen[0..k) starting from zero.
  auto choose = [&](auto&& self, std::size_t k, const RandomTime& sum) -> void {
    if (k + 1 == n && s.is_finite()) {
      ++out.candidates;
      auto rest = rv_sub(to_rv(s), to_rv(sum));
      if (!rest.nonnegative()) return;
      auto last = to_time(rest);
      if (std::binary_search(pools[k].begin(), pools[k].end(), last)) {
        chosen[k] = last;
        record();
      }
      return;
    }
    for (const auto& p : pools[k]) {
      auto next = time_add(sum, p);
      if (!pointwise_leq(next, s)) continue;
      chosen[k] = p;
      if (k + 1 == n) {
        ++out.candidates;
        if (next == s) record();
      } else {
        self(self, k + 1, next);
      }
    }
  };
  choose(choose, 0, RandomTime::constant(s.size(), Time(0)));
  out.digest = digest.value();
  return out;
}

OracleInterpolants oracle_cone_interpolants(const std::vector<RandomTime>& a, const std::vector<RandomTime>& b,
                                            const Filtration& f, const Grid& grid, TimeClass cls,
                                            const SearchCaps& caps) {
  const auto all = enumerate_stopping_times(f, finite_only(grid), cls, caps);
  OracleInterpolants out;
  Digest digest;
  for (const auto& t : all) {
    digest.add(t);
    ++out.candidates;
    bool ok = true;
    for (const auto& x : a) ok = ok && leq(x, t, OrderKind::cone, f, cls);
    for (const auto& y : b) ok = ok && leq(t, y, OrderKind::cone, f, cls);
    if (ok) {
      out.solutions.push_back(t);
      digest.add("*");
    }
  }
  out.digest = digest.value();
  return out;
}

void Digest::add(std::string_view bytes) {
  for (unsigned char c : bytes) {
    h_ ^= c;
    h_ *= 1099511628211ULL;
  }
}

void Digest::add(const RandomTime& t) {
  for (const auto& v : t.values()) {
    add(format_time(v));
    add(",");
  }
  add(";");
}

std::string hex_digest(std::uint64_t d) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(d));
  return buf;
}

}  // namespace stoplat
