#include "stoplat/rational.hpp"

#include <charconv>

namespace stoplat {

namespace {

std::int64_t parse_integer(std::string_view text, std::string_view whole) {
  std::int64_t v = 0;
  if (text.empty()) throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  const char* first = text.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || first == text.data() + text.size()) {
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  auto num = parse_integer(text.substr(0, slash), text);
  auto den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  auto den = parse_integer(den_text, text);
  if (den <= 0) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  return Rational(num, den);
}

Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / 2; }

Time Time::minus(const Time& other) const {
  if (other.infinite_) {
    throw std::domain_error(infinite_ ? "inf - inf is undefined" : "cannot subtract inf from a finite time");
  }
  if (infinite_) return infinity();
  if (value_ < other.value_) throw std::domain_error("time difference would be negative");
  return Time(value_ - other.value_);
}

Time Time::scaled(const Rational& lambda) const {
  if (lambda < 0) throw std::domain_error("negative scale " + format_rational(lambda));
  if (infinite_) {
    if (lambda == Rational(0)) throw std::domain_error("0 * inf is undefined");
    return infinity();
  }
  return Time(value_ * lambda);
}

std::string format_time(const Time& t) { return t.is_infinite() ? "inf" : format_rational(t.value()); }

Time parse_time(std::string_view text) {
  if (text == "inf") return Time::infinity();
  auto r = parse_rational(text);
  if (r < 0) throw std::invalid_argument("negative time '" + std::string(text) + "'");
  return Time(r);
}

}  // namespace stoplat
