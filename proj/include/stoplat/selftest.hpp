// Invariant suites for every module, run on seeded random instances.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stoplat {

struct SelftestResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  /// First violation, if any.
  std::string detail;
};

struct SelftestConfig {
  std::uint64_t seed = 0;
  std::size_t instances = 200;
};

std::vector<SelftestResult> run_selftest(const SelftestConfig& config);

}  // namespace stoplat
