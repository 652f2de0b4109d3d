// Finite sample spaces, sigma-algebras as partitions into atoms, and
// filtrations as step functions of partitions.
//
// Every sigma-algebra on a finite set is determined by its atoms, so a
// Partition stands in for (Omega, F_t). A set is measurable iff it is a
// union of blocks. The ambient sigma-algebra F is the discrete partition.
#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stoplat/rational.hpp"

namespace stoplat {

/// Upper bound on |Omega|; outcome sets are 64-bit masks.
inline constexpr std::size_t kMaxOutcomes = 64;

/// A subset of Omega = {0, ..., m-1}, stored as a bit mask.
class OutcomeSet {
 public:
  constexpr OutcomeSet() = default;
  constexpr explicit OutcomeSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr OutcomeSet single(std::size_t w) { return OutcomeSet(std::uint64_t{1} << w); }
  static constexpr OutcomeSet all(std::size_t m) {
    return OutcomeSet(m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(std::size_t w) const { return (bits_ >> w) & 1U; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  /// Least outcome index; undefined on the empty set.
  constexpr std::size_t lowest() const { return static_cast<std::size_t>(std::countr_zero(bits_)); }
  constexpr void insert(std::size_t w) { bits_ |= std::uint64_t{1} << w; }
  constexpr bool subset_of(OutcomeSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool intersects(OutcomeSet o) const { return (bits_ & o.bits_) != 0; }

  friend constexpr OutcomeSet operator&(OutcomeSet a, OutcomeSet b) { return OutcomeSet(a.bits_ & b.bits_); }
  friend constexpr OutcomeSet operator|(OutcomeSet a, OutcomeSet b) { return OutcomeSet(a.bits_ | b.bits_); }
  /// a \ b
  friend constexpr OutcomeSet operator-(OutcomeSet a, OutcomeSet b) { return OutcomeSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(OutcomeSet, OutcomeSet) = default;

  std::vector<std::size_t> members() const;

 private:
  std::uint64_t bits_ = 0;
};

class SampleSpace {
 public:
  /// Labels must be distinct and nonempty; 1 <= count <= kMaxOutcomes.
  explicit SampleSpace(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t w) const { return labels_.at(w); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> index_of(const std::string& label) const;
  OutcomeSet full() const { return OutcomeSet::all(size()); }

  friend bool operator==(const SampleSpace&, const SampleSpace&) = default;

 private:
  std::vector<std::string> labels_;
};

/// A partition of {0..m-1}; blocks are kept sorted by least member.
class Partition {
 public:
  /// Validates cover/disjointness/nonempty and canonicalizes block order.
  Partition(std::size_t omega_size, std::vector<OutcomeSet> blocks);

  static Partition discrete(std::size_t omega_size);
  static Partition trivial(std::size_t omega_size);

  std::size_t omega_size() const { return omega_size_; }
  const std::vector<OutcomeSet>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }
  std::size_t block_of(std::size_t w) const { return block_of_[w]; }
  bool same_block(std::size_t a, std::size_t b) const { return block_of_[a] == block_of_[b]; }

  /// True iff no block meets both `set` and its complement.
  bool measurable(OutcomeSet set) const;
  /// Smallest measurable superset: union of blocks meeting `set`.
  OutcomeSet hull(OutcomeSet set) const;

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.omega_size_ == b.omega_size_ && a.blocks_ == b.blocks_;
  }

 private:
  std::size_t omega_size_;
  std::vector<OutcomeSet> blocks_;
  std::vector<std::uint8_t> block_of_;
};

/// True iff every block of `finer` lies inside a block of `coarser`.
bool partition_refines(const Partition& finer, const Partition& coarser);

bool measurable(const Partition& p, OutcomeSet set);

/// Atoms of the sigma-algebra generated by `sets`: outcomes are equivalent
/// iff they lie in exactly the same input sets.
Partition generated_partition(const SampleSpace& space, const std::vector<OutcomeSet>& sets);
Partition generated_partition(std::size_t omega_size, const std::vector<OutcomeSet>& sets);

/// Common refinement.
Partition join_partitions(const Partition& p, const Partition& q);
/// Finest common coarsening (components of the block-overlap graph).
Partition meet_partitions(const Partition& p, const Partition& q);

enum class Boundary { inclusive, exclusive };

struct FiltrationStep {
  Rational time;
  Partition partition;
  Boundary boundary = Boundary::inclusive;

  friend bool operator==(const FiltrationStep&, const FiltrationStep&) = default;
};

/// Step function t -> F_t.
///
/// A step (u, P, inclusive) makes P active on [u, next); an exclusive step
/// makes it active on (u, next) and leaves the previous partition in force
/// at t = u. The first step is always (0, P0, inclusive). F_inf is the last
/// partition.
class Filtration {
 public:
  /// Throws std::invalid_argument on an empty list, a first step other than
  /// "0 inclusive", non-increasing times, size mismatch, or a non-refining chain.
  explicit Filtration(std::vector<FiltrationStep> steps);

  /// Single partition for all t.
  static Filtration constant(const Partition& p);

  std::size_t omega_size() const { return steps_.front().partition.omega_size(); }
  const std::vector<FiltrationStep>& steps() const { return steps_; }
  const Partition& final_partition() const { return steps_.back().partition; }
  bool has_exclusive() const;

  /// F_t: partition of the last step with u < t, or u == t and inclusive.
  const Partition& sigma_at(const Time& t) const;
  /// Right limit F_{c+}: partition of the last step with u <= c.
  const Partition& sigma_after(const Rational& c) const;

  /// Same partitions and times with every boundary made inclusive.
  Filtration all_inclusive() const;

  friend bool operator==(const Filtration&, const Filtration&) = default;

 private:
  std::vector<FiltrationStep> steps_;
};

const Partition& sigma_at(const Filtration& f, const Time& t);

}  // namespace stoplat
