// Seeded random instances: partitions, refining filtrations, grid times,
// and stopping times obtained by projecting random times through the
// maximal stopping minorant.
#pragma once

#include <cstdint>
#include <random>

#include "stoplat/search.hpp"
#include "stoplat/space.hpp"
#include "stoplat/times.hpp"

namespace stoplat {

/// mt19937_64 with a portable bounded draw, so streams are identical across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for (seed, a, b) via splitmix64 mixing.
  static Rng stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n); n >= 1.
  std::uint64_t below(std::uint64_t n);
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

Partition random_partition(Rng& rng, std::size_t omega_size);
/// Each block of size >= 2 is split in two with probability 1/2.
Partition random_refinement(Rng& rng, const Partition& p);

struct FiltrationShape {
  std::size_t max_breakpoints = 3;
  /// Breakpoints are drawn from {k / denominator : 1 <= k <= max_time * denominator}.
  std::int64_t denominator = 4;
  Rational max_time{2};
  bool exclusive = true;
};

/// Up to max_breakpoints steps after the initial one at 0.
Filtration random_filtration(Rng& rng, std::size_t omega_size, const FiltrationShape& shape);

RandomTime random_grid_time(Rng& rng, std::size_t omega_size, const Grid& grid);
RandomTime random_stopping_time(Rng& rng, const Filtration& f, const Grid& grid, TimeClass cls);

}  // namespace stoplat
