#include "stoplat/space.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace stoplat {

std::vector<std::size_t> OutcomeSet::members() const {
  std::vector<std::size_t> out;
  for (auto b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  return out;
}

SampleSpace::SampleSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw std::invalid_argument("sample space needs at least one outcome");
  if (labels_.size() > kMaxOutcomes) throw std::invalid_argument("sample space exceeds 64 outcomes");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw std::invalid_argument("empty outcome label");
    if (!seen.insert(l).second) throw std::invalid_argument("duplicate outcome '" + l + "'");
  }
}

std::optional<std::size_t> SampleSpace::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

Partition::Partition(std::size_t omega_size, std::vector<OutcomeSet> blocks)
    : omega_size_(omega_size), blocks_(std::move(blocks)), block_of_(omega_size) {
  if (omega_size_ == 0 || omega_size_ > kMaxOutcomes) throw std::invalid_argument("partition size out of range");
  OutcomeSet seen;
  for (auto b : blocks_) {
    if (b.empty()) throw std::invalid_argument("partition has an empty block");
    if (!b.subset_of(OutcomeSet::all(omega_size_))) throw std::invalid_argument("partition block outside omega");
    if (b.intersects(seen)) throw std::invalid_argument("partition blocks overlap");
    seen = seen | b;
  }
  if (seen != OutcomeSet::all(omega_size_)) throw std::invalid_argument("partition does not cover omega");
  std::sort(blocks_.begin(), blocks_.end(), [](OutcomeSet a, OutcomeSet b) { return a.lowest() < b.lowest(); });
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    for (auto w : blocks_[i].members()) block_of_[w] = static_cast<std::uint8_t>(i);
  }
}

Partition Partition::discrete(std::size_t omega_size) {
  std::vector<OutcomeSet> blocks;
  for (std::size_t w = 0; w < omega_size; ++w) blocks.push_back(OutcomeSet::single(w));
  return Partition(omega_size, std::move(blocks));
}

Partition Partition::trivial(std::size_t omega_size) { return Partition(omega_size, {OutcomeSet::all(omega_size)}); }

bool Partition::measurable(OutcomeSet set) const {
  for (auto b : blocks_) {
    auto inside = b & set;
    if (!inside.empty() && inside != b) return false;
  }
  return true;
}

OutcomeSet Partition::hull(OutcomeSet set) const {
  OutcomeSet out;
  for (auto b : blocks_) {
    if (b.intersects(set)) out = out | b;
  }
  return out;
}

namespace {

void require_same_size(const Partition& p, const Partition& q) {
  if (p.omega_size() != q.omega_size()) throw std::invalid_argument("partitions over different sample spaces");
}

}  // namespace

bool partition_refines(const Partition& finer, const Partition& coarser) {
  require_same_size(finer, coarser);
  for (auto b : finer.blocks()) {
    if (!b.subset_of(coarser.blocks()[coarser.block_of(b.lowest())])) return false;
  }
  return true;
}

bool measurable(const Partition& p, OutcomeSet set) { return p.measurable(set); }

Partition generated_partition(std::size_t omega_size, const std::vector<OutcomeSet>& sets) {
  std::map<std::vector<bool>, OutcomeSet> classes;
  for (std::size_t w = 0; w < omega_size; ++w) {
    std::vector<bool> fingerprint;
    fingerprint.reserve(sets.size());
    for (auto s : sets) fingerprint.push_back(s.contains(w));
    classes[fingerprint].insert(w);
  }
  std::vector<OutcomeSet> blocks;
  for (auto& [_, b] : classes) blocks.push_back(b);
  return Partition(omega_size, std::move(blocks));
}

Partition generated_partition(const SampleSpace& space, const std::vector<OutcomeSet>& sets) {
  for (auto s : sets) {
    if (!s.subset_of(space.full())) throw std::invalid_argument("generating set outside omega");
  }
  return generated_partition(space.size(), sets);
}

Partition join_partitions(const Partition& p, const Partition& q) {
  require_same_size(p, q);
  std::vector<OutcomeSet> blocks;
  for (auto a : p.blocks()) {
    for (auto b : q.blocks()) {
      if (auto c = a & b; !c.empty()) blocks.push_back(c);
    }
  }
  return Partition(p.omega_size(), std::move(blocks));
}

Partition meet_partitions(const Partition& p, const Partition& q) {
  require_same_size(p, q);
  // Grow each component by absorbing every block of either partition it touches.
  std::vector<OutcomeSet> blocks;
  OutcomeSet done;
  for (std::size_t w = 0; w < p.omega_size(); ++w) {
    if (done.contains(w)) continue;
    OutcomeSet comp = OutcomeSet::single(w);
    for (OutcomeSet prev; prev != comp;) {
      prev = comp;
      comp = p.hull(comp) | q.hull(comp);
    }
    blocks.push_back(comp);
    done = done | comp;
  }
  return Partition(p.omega_size(), std::move(blocks));
}

Filtration::Filtration(std::vector<FiltrationStep> steps) : steps_(std::move(steps)) {
  if (steps_.empty()) throw std::invalid_argument("filtration needs at least one step");
  if (steps_.front().time != Rational(0) || steps_.front().boundary != Boundary::inclusive) {
    throw std::invalid_argument("first breakpoint must be 0 inclusive");
  }
  for (std::size_t i = 1; i < steps_.size(); ++i) {
    if (!(steps_[i - 1].time < steps_[i].time)) throw std::invalid_argument("breakpoints not increasing");
    if (steps_[i].partition.omega_size() != steps_[0].partition.omega_size()) {
      throw std::invalid_argument("filtration partitions over different sample spaces");
    }
    if (!partition_refines(steps_[i].partition, steps_[i - 1].partition)) {
      throw std::invalid_argument("non-refining partition chain");
    }
  }
}

Filtration Filtration::constant(const Partition& p) { return Filtration({FiltrationStep{Rational(0), p}}); }

bool Filtration::has_exclusive() const {
  return std::any_of(steps_.begin(), steps_.end(), [](const auto& s) { return s.boundary == Boundary::exclusive; });
}

const Partition& Filtration::sigma_at(const Time& t) const {
  if (t.is_infinite()) return final_partition();
  const auto& v = t.value();
  // Steps are few; linear scan from the end.
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    if (it->time < v || (it->time == v && it->boundary == Boundary::inclusive)) return it->partition;
  }
  return steps_.front().partition;
}

const Partition& Filtration::sigma_after(const Rational& c) const {
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    if (!(c < it->time)) return it->partition;
  }
  return steps_.front().partition;
}

Filtration Filtration::all_inclusive() const {
  auto steps = steps_;
  for (auto& s : steps) s.boundary = Boundary::inclusive;
  return Filtration(std::move(steps));
}

const Partition& sigma_at(const Filtration& f, const Time& t) { return f.sigma_at(t); }

}  // namespace stoplat
