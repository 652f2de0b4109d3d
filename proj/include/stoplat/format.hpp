// Line-oriented text format for instances and reports.
//
//   omega <name>+
//   breakpoint <rational> [inclusive|exclusive] <block>(;<block>)*
//   time <name> <value>+          values are rationals or "inf", one per outcome
//   rv <name> <signed-rational>+
//   set <A|B> <time-name>+
//   role <S|T1|T2|...> <time-name>
//
// '#' starts a comment. A block is a comma-separated outcome list. The
// boundary flag defaults to inclusive. Reports extend this with result,
// tally and flagged directives.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "stoplat/hunt.hpp"
#include "stoplat/instance.hpp"

namespace stoplat::cli {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

Instance parse_instance(std::string_view text);
/// Canonical text; parse_instance(emit_instance(x)) == x.
std::string emit_instance(const Instance& instance);

std::string emit_time_values(const RandomTime& t);
std::string emit_partition(const SampleSpace& space, const Partition& p);

/// Machine-readable hunt report.
std::string emit_report(const HuntReport& report);
HuntReport parse_report(std::string_view text);

/// Human-readable summary (tallies and one line per flagged case).
std::string summarize_report(const HuntReport& report);

}  // namespace stoplat::cli
