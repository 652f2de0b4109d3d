#pragma once

#include <sstream>
#include <string>

#include "stoplat/space.hpp"
#include "stoplat/times.hpp"

namespace testutil {

using namespace stoplat;

/// "1 2 inf" -> RandomTime
inline RandomTime rt(const std::string& text) {
  std::istringstream in(text);
  std::vector<Time> v;
  for (std::string tok; in >> tok;) v.push_back(parse_time(tok));
  return RandomTime(std::move(v));
}

/// "-1 2/3" -> RealRV
inline RealRV rv(const std::string& text) {
  std::istringstream in(text);
  std::vector<Rational> v;
  for (std::string tok; in >> tok;) v.push_back(parse_rational(tok));
  return RealRV(std::move(v));
}

inline Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

/// "ab|c" -> {{0,1},{2}}; outcome letters start at 'a'.
inline Partition part(std::size_t m, const std::string& text) {
  std::vector<OutcomeSet> blocks(1);
  for (char c : text) {
    if (c == '|') {
      blocks.emplace_back();
    } else {
      blocks.back().insert(static_cast<std::size_t>(c - 'a'));
    }
  }
  return Partition(m, blocks);
}

inline OutcomeSet set(const std::string& letters) {
  OutcomeSet s;
  for (char c : letters) s.insert(static_cast<std::size_t>(c - 'a'));
  return s;
}

/// Trivial on [0, 1), discrete from 1.
inline Filtration e1() {
  return Filtration({{q(0), Partition::trivial(2), Boundary::inclusive}, {q(1), Partition::discrete(2), Boundary::inclusive}});
}

/// Trivial on [0, 1], discrete after.
inline Filtration e1ex() {
  return Filtration({{q(0), Partition::trivial(2), Boundary::inclusive}, {q(1), Partition::discrete(2), Boundary::exclusive}});
}

inline const char* kE1Text =
    "omega a b\n"
    "breakpoint 0 inclusive a,b\n"
    "breakpoint 1 inclusive a;b\n"
    "time S 1 2\n"
    "time T1 1 1\n"
    "time T2 1 1\n"
    "role S S\n"
    "role T1 T1\n"
    "role T2 T2\n";

}  // namespace testutil
