#pragma once

#include <cstddef>
#include <vector>

#include "combs/comb.hpp"
#include "combs/interval_partition.hpp"
#include "combs/matrix.hpp"
#include "combs/rng.hpp"

namespace combs {

// Partition of {0, ..., n-1}. Block labels are canonical: block 0 holds
// index 0, and labels increase with the least element of the block.
class Partition {
 public:
  Partition() = default;
  // Any labelling; it is relabelled canonically.
  explicit Partition(const std::vector<std::size_t>& labels);

  static auto singletons(std::size_t n) -> Partition;
  static auto single_block(std::size_t n) -> Partition;

  auto size() const -> std::size_t { return block_of_.size(); }
  auto block_count() const -> std::size_t { return block_count_; }
  auto block_of(std::size_t i) const -> std::size_t { return block_of_.at(i); }
  auto labels() const -> const std::vector<std::size_t>& { return block_of_; }
  // Blocks in label order, members ascending.
  auto blocks() const -> std::vector<std::vector<std::size_t>>;

  friend auto operator==(const Partition&, const Partition&) -> bool = default;

 private:
  std::vector<std::size_t> block_of_;
  std::size_t block_count_ = 0;
};

auto is_coarsening(const Partition& fine, const Partition& coarse) -> bool;

// Partition of {0, ..., n-1} with a total order on its blocks.
class Composition {
 public:
  Composition() = default;
  // Blocks nonempty, disjoint, covering 0..n-1. Members are sorted.
  explicit Composition(std::vector<std::vector<std::size_t>> blocks);

  auto size() const -> std::size_t { return n_; }
  auto block_count() const -> std::size_t { return blocks_.size(); }
  auto blocks() const -> const std::vector<std::vector<std::size_t>>& { return blocks_; }
  auto partition() const -> Partition;

  friend auto operator==(const Composition&, const Composition&) -> bool = default;

 private:
  std::vector<std::vector<std::size_t>> blocks_;
  std::size_t n_ = 0;
};

// True when every block of `after` is the union of a run of consecutive
// blocks of `before`, in the same order.
auto merges_adjacent(const Composition& before, const Composition& after) -> bool;

struct Partition_event {
  double time = 0.0;
  Partition value;

  friend auto operator==(const Partition_event&, const Partition_event&) -> bool = default;
};

// Right-continuous step process of coarsening partitions.
class Coalescent_trajectory {
 public:
  // First time 0, times strictly increasing, each value a coarsening of the
  // previous one. Throws otherwise.
  explicit Coalescent_trajectory(std::vector<Partition_event> events);

  auto size() const -> std::size_t { return events_.front().value.size(); }
  auto events() const -> const std::vector<Partition_event>& { return events_; }
  auto eval(double t) const -> const Partition&;

  friend auto operator==(const Coalescent_trajectory&, const Coalescent_trajectory&) -> bool = default;

 private:
  std::vector<Partition_event> events_;
};

struct Composition_event {
  double time = 0.0;
  Composition value;

  friend auto operator==(const Composition_event&, const Composition_event&) -> bool = default;
};

// Right-continuous step process of compositions where only adjacent blocks merge.
class Composition_trajectory {
 public:
  explicit Composition_trajectory(std::vector<Composition_event> events);

  auto size() const -> std::size_t { return events_.front().value.size(); }
  auto events() const -> const std::vector<Composition_event>& { return events_; }
  auto eval(double t) const -> const Composition&;
  // Forget the block order.
  auto partitions() const -> Coalescent_trajectory;

  friend auto operator==(const Composition_trajectory&, const Composition_trajectory&) -> bool = default;

 private:
  std::vector<Composition_event> events_;
};

struct Paintbox_sample {
  std::vector<double> positions;
  Coalescent_trajectory trajectory;
};

struct Ordered_paintbox_sample {
  std::vector<double> positions;
  Composition_trajectory trajectory;
};

// Coalescent of the given points under the comb: i ~ j at time t iff
// comb_distance <= t. Pairs that never merge stay apart.
auto paintbox_from_positions(const Comb& c, const std::vector<double>& positions) -> Coalescent_trajectory;
auto ordered_paintbox_from_positions(const Comb& c, const std::vector<double>& positions) -> Composition_trajectory;

// Draws n distinct uniforms on (0,1) and applies the above.
auto paintbox_sample(const Comb& c, std::size_t n, Rng& rng) -> Paintbox_sample;
auto ordered_paintbox(const Comb& c, std::size_t n, Rng& rng) -> Ordered_paintbox_sample;

// Consecutive open intervals with lengths |block|/n in composition order.
auto empirical_interval_partition(const Composition& comp) -> Interval_partition;

// A uniform random nested composition whose partition process is `traj`.
auto uniform_consistent_ordering(const Coalescent_trajectory& traj, Rng& rng) -> Composition_trajectory;

// Pairwise comb distances; +inf marks pairs that never merge.
auto distance_matrix(const std::vector<double>& positions, const Comb& c) -> Square_matrix<double>;

// Coalescent obtained by single linkage on a distance matrix: i ~ j at time t
// iff they are joined by a chain of steps of length <= t. +inf entries never
// link. Exact for ultrametrics.
auto single_linkage(const Square_matrix<double>& dist) -> Coalescent_trajectory;

// Merge-time matrix of a trajectory (+inf if never merged).
auto cophenetic_matrix(const Coalescent_trajectory& traj) -> Square_matrix<double>;

namespace serial {
auto distance_matrix(const std::vector<double>& positions, const Comb& c) -> Square_matrix<double>;
}

}  // namespace combs
