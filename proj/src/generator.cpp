#include "stoplat/generator.hpp"

#include <algorithm>
#include <stdexcept>

namespace stoplat {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return Rng(splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b));
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below(0)");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % n;
}

Partition random_partition(Rng& rng, std::size_t omega_size) {
  const auto k = 1 + rng.below(omega_size);
  std::vector<OutcomeSet> groups(k);
  for (std::size_t w = 0; w < omega_size; ++w) groups[rng.below(k)].insert(w);
  std::erase_if(groups, [](OutcomeSet s) { return s.empty(); });
  return Partition(omega_size, std::move(groups));
}

Partition random_refinement(Rng& rng, const Partition& p) {
  std::vector<OutcomeSet> blocks;
  for (auto b : p.blocks()) {
    if (b.size() < 2 || !rng.coin()) {
      blocks.push_back(b);
      continue;
    }
    OutcomeSet left, right;
    for (auto w : b.members()) (rng.coin() ? left : right).insert(w);
    if (left.empty() || right.empty()) {
      blocks.push_back(b);
    } else {
      blocks.push_back(left);
      blocks.push_back(right);
    }
  }
  return Partition(p.omega_size(), std::move(blocks));
}

Filtration random_filtration(Rng& rng, std::size_t omega_size, const FiltrationShape& shape) {
  std::vector<FiltrationStep> steps;
  steps.push_back({Rational(0), random_partition(rng, omega_size), Boundary::inclusive});

  const auto top = shape.max_time * shape.denominator;
  const auto slots = static_cast<std::uint64_t>(top.numerator() / top.denominator());
  auto count = std::min<std::uint64_t>(rng.below(shape.max_breakpoints + 1), slots);
  // Partial Fisher-Yates over 1..slots.
  std::vector<std::int64_t> ks(slots);
  for (std::uint64_t i = 0; i < slots; ++i) ks[i] = static_cast<std::int64_t>(i + 1);
  for (std::uint64_t i = 0; i < count; ++i) std::swap(ks[i], ks[i + rng.below(slots - i)]);
  ks.resize(count);
  std::sort(ks.begin(), ks.end());

  for (auto k : ks) {
    auto boundary = shape.exclusive && rng.coin() ? Boundary::exclusive : Boundary::inclusive;
    steps.push_back({Rational(k, shape.denominator), random_refinement(rng, steps.back().partition), boundary});
  }
  return Filtration(std::move(steps));
}

RandomTime random_grid_time(Rng& rng, std::size_t omega_size, const Grid& grid) {
  const auto values = grid.values();
  std::vector<Time> out(omega_size);
  for (auto& v : out) v = values[rng.below(values.size())];
  return RandomTime(std::move(out));
}

RandomTime random_stopping_time(Rng& rng, const Filtration& f, const Grid& grid, TimeClass cls) {
  return max_stopping_minorant(random_grid_time(rng, f.omega_size(), grid), f, cls);
}

}  // namespace stoplat
