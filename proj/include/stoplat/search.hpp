// Decomposition and interpolation of stopping times as finite searches on
// a rational grid, the maximal stopping minorant, and brute-force oracles.
//
// NotFoundOnGrid is always relative to the grid it names: a search that
// finds nothing with values in {k/q} says nothing about off-grid solutions.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "stoplat/times.hpp"

namespace stoplat {

/// Values {k/q : 0 <= k/q <= max_value}, plus inf when allowed.
struct Grid {
  std::int64_t denominator = 4;
  Rational max_value{0};
  bool allow_infinity = false;

  /// Ascending; inf last.
  std::vector<Time> values() const;
  std::size_t value_count() const;
  bool contains(const Time& t) const;
  bool contains(const RandomTime& t) const;

  /// Grid with denominator q whose max is the largest finite value among
  /// `times` and which admits inf iff some time takes it.
  static Grid covering(std::int64_t q, const std::vector<RandomTime>& times);

  friend bool operator==(const Grid&, const Grid&) = default;
};

std::string describe(const Grid& g);

/// Limits for exhaustive enumeration.
struct SearchCaps {
  std::size_t max_omega = 6;
  std::size_t max_grid_values = 6;
};

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StDecomposition {
  std::vector<RandomTime> parts;
  /// Predicate transcript per part.
  std::vector<std::vector<CheckRecord>> certificates;
};

struct NotFoundOnGrid {
  Grid grid;
  std::uint64_t states_explored = 0;
};

enum class FailureCode { invalid_input, not_adapted, order_violated, off_grid, cone_order_violated };

const char* to_string(FailureCode c);

struct PreconditionFailed {
  FailureCode code = FailureCode::invalid_input;
  std::string reason;
};

template <class Found>
using SearchOutcome = std::variant<Found, NotFoundOnGrid, PreconditionFailed>;

/// All grid-valued times passing the predicate, lexicographic in outcome order.
/// Throws CapExceeded past `caps`.
std::vector<RandomTime> enumerate_stopping_times(const Filtration& f, const Grid& grid, TimeClass cls,
                                                 const SearchCaps& caps = {});

/// Pointwise-largest stopping (optional) time below U.
///
/// Sweeps check points upward; wherever [T <= c] is not measurable at c
/// (at c+ for optional times) its hull is lowered to c. Every stopping time
/// below U stays below T through each step, so the fixpoint is the maximum.
RandomTime max_stopping_minorant(const RandomTime& u, const Filtration& f, TimeClass cls = TimeClass::stopping);

/// Search for S = S_1 + ... + S_n with S_i <= T_i and each S_i adapted.
///
/// Parts are assigned one at a time, outcome by outcome, from the grid in
/// descending order, so the first hit maximizes S_1 lexicographically, then
/// S_2, and so on. Branches are cut by the interval bounds
/// max(0, rest - sum of later T) <= S_i <= min(rest, T_i) and by pairwise
/// separation: two outcomes with different values v < v' must lie in
/// different atoms of F_v (F_{v+} for optional times).
SearchOutcome<StDecomposition> decompose_stopping(const RandomTime& s, const std::vector<RandomTime>& ts,
                                                  const Filtration& f, const Grid& grid,
                                                  TimeClass cls = TimeClass::stopping);

/// Pointwise join of A, checked to be adapted and to lie below every b.
/// Throws PreconditionError (with a witnessing pair) when some a > b.
RandomTime interpolate_pointwise(const std::vector<RandomTime>& a, const std::vector<RandomTime>& b,
                                 const Filtration& f, TimeClass cls = TimeClass::stopping);

/// Least grid-valued T with a <=_cone T <=_cone b for all a in A, b in B.
/// Valid interpolants are closed under pointwise min, so the least one is
/// also the lexicographically first.
SearchOutcome<RandomTime> interpolate_cone(const std::vector<RandomTime>& a, const std::vector<RandomTime>& b,
                                           const Filtration& f, const Grid& grid,
                                           TimeClass cls = TimeClass::stopping);

/// Independent predicate: T is adapted iff any two outcomes with
/// T(w) < T(w') are in different atoms of F_{T(w)} (F_{T(w)+} for optional).
bool adapted_by_separation(const RandomTime& t, const Filtration& f, TimeClass cls);

struct OracleDecompositions {
  /// Every valid (S_1, ..., S_n) on the grid, in enumeration order.
  std::vector<std::vector<RandomTime>> solutions;
  std::uint64_t candidates = 0;
  std::uint64_t digest = 0;
};

/// Brute force over enumerate_stopping_times.
OracleDecompositions oracle_decompositions(const RandomTime& s, const std::vector<RandomTime>& ts,
                                           const Filtration& f, const Grid& grid, TimeClass cls,
                                           const SearchCaps& caps = {});

struct OracleInterpolants {
  std::vector<RandomTime> solutions;
  std::uint64_t candidates = 0;
  std::uint64_t digest = 0;
};

/// Every finite grid-valued T with A <=_cone T <=_cone B.
OracleInterpolants oracle_cone_interpolants(const std::vector<RandomTime>& a, const std::vector<RandomTime>& b,
                                            const Filtration& f, const Grid& grid, TimeClass cls,
                                            const SearchCaps& caps = {});

/// FNV-1a over canonical value text; used for oracle certificates.
class Digest {
 public:
  void add(std::string_view bytes);
  void add(const RandomTime& t);
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 14695981039346656037ULL;
};

std::string hex_digest(std::uint64_t d);

}  // namespace stoplat
