#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace combs {

// Open interval (left, right) with 0 <= left < right <= 1.
struct Interval {
  double left = 0.0;
  double right = 1.0;

  auto length() const -> double { return right - left; }
  auto contains(double x) const -> bool { return left < x and x < right; }

  friend auto operator==(const Interval&, const Interval&) -> bool = default;
};

// A finite set of disjoint open subintervals of (0, 1), sorted left to right.
// Neighbours may share an endpoint; that endpoint belongs to neither.
class Interval_partition {
 public:
  // The empty partition (pure dust).
  Interval_partition() = default;

  // Throws std::invalid_argument unless components are sorted, disjoint and
  // inside [0, 1] with left < right.
  explicit Interval_partition(std::vector<Interval> components);

  // (0, 1)
  static auto full() -> Interval_partition;

  // Components between consecutive points of {0, cuts..., 1}. Cuts must be
  // strictly increasing and inside (0, 1).
  static auto from_cut_points(const std::vector<double>& cuts) -> Interval_partition;

  auto components() const -> const std::vector<Interval>& { return components_; }
  auto size() const -> std::size_t { return components_.size(); }
  auto empty() const -> bool { return components_.empty(); }
  auto operator[](std::size_t i) const -> const Interval& { return components_[i]; }

  // Index of the component strictly containing x. x outside [0, 1] throws.
  auto component_of(double x) const -> std::optional<std::size_t>;
  auto contains(double x) const -> bool { return component_of(x).has_value(); }

  friend auto operator==(const Interval_partition&, const Interval_partition&) -> bool = default;

 private:
  std::vector<Interval> components_;
};

// Component lengths, nonincreasing.
auto mass_partition(const Interval_partition& p) -> std::vector<double>;

// 1 - total length, clamped to [0, 1].
auto dust_mass(const Interval_partition& p) -> double;

// Hausdorff distance between the complements [0,1] \ I and [0,1] \ J.
auto hausdorff(const Interval_partition& a, const Interval_partition& b) -> double;

// True when every component of `inner` lies inside one component of `outer`.
auto is_nested(const Interval_partition& inner, const Interval_partition& outer) -> bool;

// Replaces components [first, first + count) by the interior of their hull.
auto merge_adjacent(const Interval_partition& p, std::size_t first, std::size_t count) -> Interval_partition;

}  // namespace combs
