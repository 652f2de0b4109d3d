#include "stoplat/times.hpp"

#include <algorithm>
#include <stdexcept>

namespace stoplat {

namespace {

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("random variables over different sample spaces");
}

void require_filtration(const RandomTime& t, const Filtration& f) {
  if (t.size() != f.omega_size()) throw std::invalid_argument("time and filtration over different sample spaces");
}

// Level sets and F_t are step functions whose jumps lie in check_points, so
// one evaluation per check point and one interior witness per gap decide
// the condition for every real t >= 0.
//
// Stopping: on the open gap (c, c') the level set is [T <= c] and F_t
// refines F_c, so the check at c implies the gap. The gap witness is still
// evaluated when an exclusive boundary makes F_c differ from the step active
// after c, which keeps the transcript explicit about both sides.
//
// Optional: [T < t] is left-continuous, equal to [T <= c] on (c, c'], and
// the coarsest partition on that range is the one just right of c. That
// partition is only visible at an interior point, so the witness is always
// evaluated.
template <class Visit>
bool visit_checks(const RandomTime& t, const Filtration& f, TimeClass cls, Visit&& visit) {
  require_filtration(t, f);
  const auto points = check_points(t, f);
  auto check = [&](const Time& at) {
    auto level = cls == TimeClass::stopping ? t.at_most(at) : t.below(at);
    return visit(at, level, f.sigma_at(at));
  };
  const bool gaps = cls == TimeClass::optional || f.has_exclusive();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!check(Time(points[i]))) return false;
    if (!gaps) continue;
    auto witness = i + 1 < points.size() ? midpoint(points[i], points[i + 1]) : points[i] + 1;
    if (!check(Time(witness))) return false;
  }
  return true;
}

}  // namespace

const char* to_string(TimeClass c) { return c == TimeClass::stopping ? "stopping" : "optional"; }

bool RandomTime::is_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](const Time& v) { return v.is_finite(); });
}

OutcomeSet RandomTime::at_most(const Time& c) const {
  OutcomeSet s;
  for (std::size_t w = 0; w < values_.size(); ++w) {
    if (values_[w] <= c) s.insert(w);
  }
  return s;
}

OutcomeSet RandomTime::below(const Time& c) const {
  OutcomeSet s;
  for (std::size_t w = 0; w < values_.size(); ++w) {
    if (values_[w] < c) s.insert(w);
  }
  return s;
}

bool RealRV::nonnegative() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v >= 0; });
}

std::vector<Rational> check_points(const RandomTime& t, const Filtration& f) {
  std::vector<Rational> points;
  points.reserve(t.size() + f.steps().size());
  for (const auto& v : t.values()) {
    if (v.is_finite()) points.push_back(v.value());
  }
  for (const auto& s : f.steps()) points.push_back(s.time);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

bool satisfies(const RandomTime& t, const Filtration& f, TimeClass cls) {
  return visit_checks(t, f, cls, [](const Time&, OutcomeSet level, const Partition& p) { return p.measurable(level); });
}

bool is_stopping_time(const RandomTime& t, const Filtration& f) { return satisfies(t, f, TimeClass::stopping); }

bool is_optional_time(const RandomTime& t, const Filtration& f) { return satisfies(t, f, TimeClass::optional); }

std::vector<CheckRecord> check_transcript(const RandomTime& t, const Filtration& f, TimeClass cls) {
  std::vector<CheckRecord> out;
  visit_checks(t, f, cls, [&](const Time& at, OutcomeSet level, const Partition& p) {
    out.push_back({at, level, p.measurable(level)});
    return true;
  });
  return out;
}

RandomTime time_meet(const RandomTime& s, const RandomTime& t) {
  require_same_size(s.size(), t.size());
  RandomTime out = s;
  for (std::size_t w = 0; w < s.size(); ++w) out[w] = std::min(s[w], t[w]);
  return out;
}

RandomTime time_join(const RandomTime& s, const RandomTime& t) {
  require_same_size(s.size(), t.size());
  RandomTime out = s;
  for (std::size_t w = 0; w < s.size(); ++w) out[w] = std::max(s[w], t[w]);
  return out;
}

RandomTime time_add(const RandomTime& s, const RandomTime& t) {
  require_same_size(s.size(), t.size());
  RandomTime out = s;
  for (std::size_t w = 0; w < s.size(); ++w) out[w] = s[w] + t[w];
  return out;
}

RandomTime time_scale(const Rational& lambda, const RandomTime& t) {
  if (lambda < 0) throw std::invalid_argument("scale factor must be positive");
  if (lambda == Rational(0) && !t.is_finite()) throw std::invalid_argument("zero scale on an infinite-valued time");
  RandomTime out = t;
  for (std::size_t w = 0; w < t.size(); ++w) out[w] = t[w].scaled(lambda);
  return out;
}

RandomTime truncate(const RandomTime& t, std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("truncation level must be a positive integer");
  RandomTime out = t;
  const Time cap(n);
  for (std::size_t w = 0; w < t.size(); ++w) out[w] = std::min(t[w], cap);
  return out;
}

bool pointwise_leq(const RandomTime& s, const RandomTime& t) {
  require_same_size(s.size(), t.size());
  for (std::size_t w = 0; w < s.size(); ++w) {
    if (t[w] < s[w]) return false;
  }
  return true;
}

bool pointwise_leq(const RealRV& s, const RealRV& t) {
  require_same_size(s.size(), t.size());
  for (std::size_t w = 0; w < s.size(); ++w) {
    if (t[w] < s[w]) return false;
  }
  return true;
}

RealRV pos_part(const RealRV& s) {
  RealRV out = s;
  for (std::size_t w = 0; w < s.size(); ++w) out[w] = std::max(s[w], Rational(0));
  return out;
}

RealRV neg_part(const RealRV& s) {
  RealRV out = s;
  for (std::size_t w = 0; w < s.size(); ++w) out[w] = std::max(-s[w], Rational(0));
  return out;
}

RealRV rv_meet(const RealRV& s, const RealRV& t) {
  require_same_size(s.size(), t.size());
  RealRV out = s;
  for (std::size_t w = 0; w < s.size(); ++w) out[w] = std::min(s[w], t[w]);
  return out;
}

RealRV rv_join(const RealRV& s, const RealRV& t) {
  require_same_size(s.size(), t.size());
  RealRV out = s;
  for (std::size_t w = 0; w < s.size(); ++w) out[w] = std::max(s[w], t[w]);
  return out;
}

RealRV rv_add(const RealRV& s, const RealRV& t) {
  require_same_size(s.size(), t.size());
  RealRV out = s;
  for (std::size_t w = 0; w < s.size(); ++w) out[w] += t[w];
  return out;
}

RealRV rv_sub(const RealRV& s, const RealRV& t) {
  require_same_size(s.size(), t.size());
  RealRV out = s;
  for (std::size_t w = 0; w < s.size(); ++w) out[w] -= t[w];
  return out;
}

RealRV rv_scale(const Rational& alpha, const RealRV& s) {
  RealRV out = s;
  for (std::size_t w = 0; w < s.size(); ++w) out[w] *= alpha;
  return out;
}

RealRV rv_abs(const RealRV& s) { return rv_join(s, rv_scale(Rational(-1), s)); }

RealRV to_rv(const RandomTime& t) {
  std::vector<Rational> v;
  v.reserve(t.size());
  for (const auto& x : t.values()) v.push_back(x.value());
  return RealRV(std::move(v));
}

RandomTime to_time(const RealRV& s) {
  std::vector<Time> v;
  v.reserve(s.size());
  for (const auto& x : s.values()) v.emplace_back(x);
  return RandomTime(std::move(v));
}

bool is_member_x(const RealRV& s, const Filtration& f, TimeClass cls) {
  if (s.size() != f.omega_size()) throw std::invalid_argument("variable and filtration over different sample spaces");
  return satisfies(to_time(pos_part(s)), f, cls) && satisfies(to_time(neg_part(s)), f, cls);
}

bool leq(const RandomTime& s, const RandomTime& t, OrderKind kind, const Filtration& f, TimeClass cls) {
  if (kind == OrderKind::pointwise) return pointwise_leq(s, t);
  if (!s.is_finite() || !t.is_finite()) throw std::invalid_argument("cone order needs finite-valued times");
  auto diff = rv_sub(to_rv(t), to_rv(s));
  return diff.nonnegative() && satisfies(to_time(diff), f, cls);
}

}  // namespace stoplat
