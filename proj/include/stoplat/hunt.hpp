// Counterexample hunter: evaluates the decomposition, interpolation and
// closure claims on seeded random instances and certifies every failure
// with a brute-force oracle.
//
// The report is a pure function of (seed, config, version). Instance i
// draws from its own counter-derived stream, so the thread count has no
// effect on the output.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stoplat/instance.hpp"
#include "stoplat/search.hpp"

namespace stoplat {

inline constexpr const char* kVersion = "1.0.0";

enum class HuntProperty {
  decomposition,       // (a) S <= T1 + T2 splits into adapted parts on the grid
  cone_interpolation,  // (b) A <=_cone B admits a cone interpolant on the grid
  x_difference,        // (c) S - T lies in X for finite adapted S, T
  truncation,          // (d) S^n <= T1^n + T2^n and truncations stay adapted
  optional_agreement,  // (e) optional <=> stopping on right-continuous filtrations
};

inline constexpr std::array<HuntProperty, 5> kAllProperties = {
    HuntProperty::decomposition, HuntProperty::cone_interpolation, HuntProperty::x_difference,
    HuntProperty::truncation, HuntProperty::optional_agreement};

const char* to_string(HuntProperty p);
/// Accepts the names produced by to_string, or the letters a-e.
std::optional<HuntProperty> parse_property(const std::string& text);

enum class Verdict { pass, fail, not_found, skipped };
const char* to_string(Verdict v);
std::optional<Verdict> parse_verdict(const std::string& text);

struct HuntConfig {
  std::uint64_t seed = 0;
  std::size_t instances = 100;
  std::size_t max_omega = 4;
  std::size_t max_breakpoints = 3;
  std::int64_t grid_denominator = 2;
  Rational grid_max{2};
  bool allow_infinity = true;
  std::vector<HuntProperty> properties{kAllProperties.begin(), kAllProperties.end()};
  TimeClass time_class = TimeClass::stopping;
  /// 0 = hardware concurrency. Does not affect the report.
  std::size_t threads = 1;
  /// Extra decomposition instances evaluated before the random ones.
  std::vector<Instance> corpus;
};

/// Checks caps: max_omega <= 6, max_breakpoints <= 5, grid denominator >= 1.
void validate(const HuntConfig& config);

struct Tally {
  std::uint64_t pass = 0;
  std::uint64_t fail = 0;
  std::uint64_t not_found = 0;
  std::uint64_t skipped = 0;
  void add(Verdict v);
  friend bool operator==(const Tally&, const Tally&) = default;
};

struct CaseResult {
  Verdict verdict = Verdict::pass;
  /// Search states visited before a miss.
  std::uint64_t explored = 0;
  /// Oracle certificate: candidates checked and digest of the candidate list.
  std::uint64_t oracle_candidates = 0;
  std::uint64_t digest = 0;
  std::string detail;
};

struct FlaggedCase {
  std::size_t index = 0;
  HuntProperty property = HuntProperty::decomposition;
  CaseResult result;
  Instance instance;
};

struct HuntReport {
  std::string version = kVersion;
  HuntConfig config;
  std::size_t corpus_count = 0;
  std::array<Tally, kAllProperties.size()> tallies{};
  std::vector<FlaggedCase> flagged;

  const Tally& tally(HuntProperty p) const { return tallies[static_cast<std::size_t>(p)]; }
};

HuntReport hunt(const HuntConfig& config);

/// Evaluates one property on a case instance. Failures and grid misses are
/// re-checked by the oracle, which fills explored/digest. Used both while
/// hunting and when replaying a flagged case from its serialized form.
CaseResult evaluate_case(HuntProperty property, const Instance& instance, const HuntConfig& config);

/// The random instance the hunter builds for (index, property).
Instance generate_case(HuntProperty property, std::size_t index, const HuntConfig& config);

}  // namespace stoplat
