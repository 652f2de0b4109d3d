#include "stoplat/instance.hpp"

#include <algorithm>
#include <stdexcept>

namespace stoplat {

namespace {

// S -> 0, Tk -> k; anything else sorts after by name.
long role_rank(const std::string& r) {
  if (r == "S") return 0;
  if (r.size() < 2 || r.size() > 6 || r[0] != 'T' || r[1] == '0') return -1;
  if (!std::all_of(r.begin() + 1, r.end(), [](char c) { return c >= '0' && c <= '9'; })) return -1;
  return std::stol(r.substr(1));
}

}  // namespace

bool role_less(const std::string& a, const std::string& b) {
  auto ra = role_rank(a);
  auto rb = role_rank(b);
  if (ra < 0 || rb < 0) return ra == rb ? a < b : ra > rb;
  return ra < rb;
}

const RandomTime* Instance::find_time(const std::string& name) const {
  for (const auto& t : times) {
    if (t.name == name) return &t.value;
  }
  return nullptr;
}

const RealRV* Instance::find_rv(const std::string& name) const {
  for (const auto& r : rvs) {
    if (r.name == name) return &r.value;
  }
  return nullptr;
}

const RandomTime& Instance::time(const std::string& name) const {
  if (const auto* t = find_time(name)) return *t;
  throw std::invalid_argument("unknown time '" + name + "'");
}

std::optional<std::string> Instance::role(const std::string& r) const {
  for (const auto& [role_name, time_name] : roles) {
    if (role_name == r) return time_name;
  }
  return std::nullopt;
}

std::vector<RandomTime> Instance::part_bounds() const {
  std::vector<RandomTime> out;
  for (int k = 1;; ++k) {
    auto name = role("T" + std::to_string(k));
    if (!name) break;
    out.push_back(time(*name));
  }
  return out;
}

std::vector<RandomTime> Instance::times_of(const std::vector<std::string>& names) const {
  std::vector<RandomTime> out;
  for (const auto& n : names) out.push_back(time(n));
  return out;
}

void Instance::add_time(std::string name, RandomTime value) {
  if (value.size() != space.size()) throw std::invalid_argument("time '" + name + "' has the wrong number of values");
  if (find_time(name) || find_rv(name)) throw std::invalid_argument("duplicate name '" + name + "'");
  times.push_back({std::move(name), std::move(value)});
}

void Instance::set_role(std::string r, std::string name) {
  if (role_rank(r) < 0) throw std::invalid_argument("unknown role '" + r + "'");
  if (!find_time(name)) throw std::invalid_argument("role '" + r + "' names unknown time '" + name + "'");
  if (role(r)) throw std::invalid_argument("role '" + r + "' assigned twice");
  roles.emplace_back(std::move(r), std::move(name));
  std::stable_sort(roles.begin(), roles.end(), [](const auto& x, const auto& y) { return role_less(x.first, y.first); });
}

}  // namespace stoplat
