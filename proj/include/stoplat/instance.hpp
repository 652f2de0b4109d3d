// A filtered space together with named times, variables, the interpolation
// sets A and B, and decomposition roles (S, T1, ..., Tn).
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stoplat/space.hpp"
#include "stoplat/times.hpp"

namespace stoplat {

struct NamedTime {
  std::string name;
  RandomTime value;
  friend bool operator==(const NamedTime&, const NamedTime&) = default;
};

struct NamedRV {
  std::string name;
  RealRV value;
  friend bool operator==(const NamedRV&, const NamedRV&) = default;
};

struct Instance {
  SampleSpace space;
  Filtration filtration;
  std::vector<NamedTime> times;
  std::vector<NamedRV> rvs;
  std::vector<std::string> set_a;
  std::vector<std::string> set_b;
  /// (role, time name); roles are "S" or "T<k>", kept in canonical order.
  std::vector<std::pair<std::string, std::string>> roles;

  const RandomTime* find_time(const std::string& name) const;
  const RealRV* find_rv(const std::string& name) const;
  /// Throws std::invalid_argument if missing.
  const RandomTime& time(const std::string& name) const;
  std::optional<std::string> role(const std::string& role) const;

  /// Times bound to T1, T2, ... in order (stops at the first gap).
  std::vector<RandomTime> part_bounds() const;
  std::vector<RandomTime> times_of(const std::vector<std::string>& names) const;

  void add_time(std::string name, RandomTime value);
  void set_role(std::string role, std::string name);

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Canonical role order: S first, then T1, T2, ... numerically.
bool role_less(const std::string& a, const std::string& b);

}  // namespace stoplat
