// Random times Omega -> [0, inf], real random variables Omega -> Q, the
// stopping/optional predicates, cone and lattice operations, truncation,
// and the space X of differences of finite stopping times.
#pragma once

#include <initializer_list>
#include <vector>

#include "stoplat/rational.hpp"
#include "stoplat/space.hpp"

namespace stoplat {

class RandomTime {
 public:
  RandomTime() = default;
  explicit RandomTime(std::vector<Time> values) : values_(std::move(values)) {}
  RandomTime(std::initializer_list<Time> values) : values_(values) {}

  static RandomTime constant(std::size_t omega_size, const Time& v) {
    return RandomTime(std::vector<Time>(omega_size, v));
  }

  std::size_t size() const { return values_.size(); }
  const Time& operator[](std::size_t w) const { return values_[w]; }
  Time& operator[](std::size_t w) { return values_[w]; }
  const std::vector<Time>& values() const { return values_; }
  bool is_finite() const;

  /// [T <= c] and [T < c].
  OutcomeSet at_most(const Time& c) const;
  OutcomeSet below(const Time& c) const;

  friend bool operator==(const RandomTime&, const RandomTime&) = default;
  /// Lexicographic in outcome order; inf sorts last.
  friend auto operator<=>(const RandomTime& a, const RandomTime& b) { return a.values_ <=> b.values_; }

 private:
  std::vector<Time> values_;
};

class RealRV {
 public:
  RealRV() = default;
  explicit RealRV(std::vector<Rational> values) : values_(std::move(values)) {}
  RealRV(std::initializer_list<Rational> values) : values_(values) {}

  static RealRV zero(std::size_t omega_size) { return RealRV(std::vector<Rational>(omega_size)); }

  std::size_t size() const { return values_.size(); }
  const Rational& operator[](std::size_t w) const { return values_[w]; }
  Rational& operator[](std::size_t w) { return values_[w]; }
  const std::vector<Rational>& values() const { return values_; }
  bool nonnegative() const;

  friend bool operator==(const RealRV&, const RealRV&) = default;

 private:
  std::vector<Rational> values_;
};

/// Stopping: [T <= t] in F_t. Optional ("wide sense"): [T < t] in F_t.
enum class TimeClass { stopping, optional };
enum class OrderKind { pointwise, cone };

const char* to_string(TimeClass c);

/// Finite values of T together with the filtration breakpoints, ascending.
std::vector<Rational> check_points(const RandomTime& t, const Filtration& f);

bool is_stopping_time(const RandomTime& t, const Filtration& f);
bool is_optional_time(const RandomTime& t, const Filtration& f);
bool satisfies(const RandomTime& t, const Filtration& f, TimeClass cls);

/// One evaluated level-set condition.
struct CheckRecord {
  Time at;
  OutcomeSet level_set;
  bool measurable;
};

/// Every condition the predicate for `cls` evaluates, in order.
std::vector<CheckRecord> check_transcript(const RandomTime& t, const Filtration& f, TimeClass cls);

RandomTime time_meet(const RandomTime& s, const RandomTime& t);
RandomTime time_join(const RandomTime& s, const RandomTime& t);
RandomTime time_add(const RandomTime& s, const RandomTime& t);
/// lambda > 0, or lambda == 0 on a finite-valued time (giving zero).
RandomTime time_scale(const Rational& lambda, const RandomTime& t);

/// T^n = T on [T <= n], n on [T > n]; n >= 1.
RandomTime truncate(const RandomTime& t, std::int64_t n);

bool pointwise_leq(const RandomTime& s, const RandomTime& t);
bool pointwise_leq(const RealRV& s, const RealRV& t);

RealRV pos_part(const RealRV& s);
RealRV neg_part(const RealRV& s);

RealRV rv_meet(const RealRV& s, const RealRV& t);
RealRV rv_join(const RealRV& s, const RealRV& t);
RealRV rv_add(const RealRV& s, const RealRV& t);
RealRV rv_sub(const RealRV& s, const RealRV& t);
RealRV rv_scale(const Rational& alpha, const RealRV& s);
/// |S| = S v (-S)
RealRV rv_abs(const RealRV& s);

/// Finite RandomTime as a RealRV; throws on inf.
RealRV to_rv(const RandomTime& t);
/// Nonnegative RealRV as a RandomTime; throws on a negative value.
RandomTime to_time(const RealRV& s);

/// S in X iff both S+ and S- satisfy the time predicate.
bool is_member_x(const RealRV& s, const Filtration& f, TimeClass cls = TimeClass::stopping);

/// Pointwise: S(w) <= T(w) for all w. Cone: T - S >= 0 and T - S is a
/// stopping (optional) time. The cone order is only defined on finite times.
bool leq(const RandomTime& s, const RandomTime& t, OrderKind kind, const Filtration& f,
         TimeClass cls = TimeClass::stopping);

}  // namespace stoplat
