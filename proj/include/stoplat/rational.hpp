// Exact rational numbers and extended nonnegative times [0, inf].
#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace stoplat {

// Compare against Rational(k), not a bare integer: under C++20 rewritten
// comparisons boost's mixed rational == int overload recurses forever.
using Rational = boost::rational<std::int64_t>;

/// Canonical text: "p/q" in lowest terms, or "p" when q == 1.
std::string format_rational(const Rational& r);

/// Accepts "p", "-p", "p/q" (q > 0). Throws std::invalid_argument("malformed rational ...").
Rational parse_rational(std::string_view text);

Rational midpoint(const Rational& a, const Rational& b);

/// A value in [0, inf]: exact nonnegative rational or +infinity.
///
/// Arithmetic follows inf + x = inf and lambda * inf = inf for lambda > 0.
/// inf - inf and 0 * inf are rejected with std::domain_error.
class Time {
 public:
  Time() = default;
  Time(std::int64_t v) : Time(Rational(v)) {}
  Time(const Rational& v) : value_(v) {
    if (v < 0) throw std::domain_error("time must be nonnegative, got " + format_rational(v));
  }

  static Time infinity() {
    Time t;
    t.infinite_ = true;
    return t;
  }

  bool is_finite() const { return !infinite_; }
  bool is_infinite() const { return infinite_; }

  /// Finite value; throws std::domain_error on inf.
  const Rational& value() const {
    if (infinite_) throw std::domain_error("infinite time has no finite value");
    return value_;
  }

  friend bool operator==(const Time& a, const Time& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

  friend std::strong_ordering operator<=>(const Time& a, const Time& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend Time operator+(const Time& a, const Time& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Time(a.value_ + b.value_);
  }

  /// this - other; requires other <= this and not (inf - inf).
  Time minus(const Time& other) const;

  /// lambda * this for lambda >= 0; 0 * inf throws.
  Time scaled(const Rational& lambda) const;

 private:
  Rational value_{0};
  bool infinite_ = false;
};

/// "inf" or canonical rational text.
std::string format_time(const Time& t);

/// Accepts "inf" or a nonnegative rational.
Time parse_time(std::string_view text);

}  // namespace stoplat
