#pragma once

#include <compare>
#include <cstddef>
#include <limits>
#include <vector>

#include "combs/interval_partition.hpp"
#include "combs/rng.hpp"

namespace combs {

// A merge time, or the "unmerged" sentinel for points that never share a
// component. Stored as +inf so that ordering and max() behave.
class Merge_time {
 public:
  constexpr Merge_time() = default;
  constexpr explicit Merge_time(double t) : t_{t} {}

  static constexpr auto unmerged() -> Merge_time { return Merge_time{std::numeric_limits<double>::infinity()}; }

  constexpr auto is_merged() const -> bool { return t_ != std::numeric_limits<double>::infinity(); }
  constexpr auto value() const -> double { return t_; }

  friend constexpr auto operator<=>(const Merge_time&, const Merge_time&) = default;

 private:
  double t_ = 0.0;
};

struct Tooth {
  double position = 0.5;
  double height = 1.0;

  friend auto operator==(const Tooth&, const Tooth&) -> bool = default;
};

struct Comb_event {
  double time = 0.0;
  Interval_partition value;

  friend auto operator==(const Comb_event&, const Comb_event&) -> bool = default;
};

// A nested family of interval-partitions (I_t), right-continuous step function
// of t. Either given by explicit events, or backed by a finite tooth list, in
// which case I_t = (0,1) minus the positions of teeth taller than t and the
// events are only built on request.
class Comb {
 public:
  // Times strictly increasing starting at 0, values nested. Throws otherwise.
  explicit Comb(std::vector<Comb_event> events);

  // Positions distinct and inside (0,1), heights positive and finite.
  static auto from_teeth(std::vector<Tooth> teeth) -> Comb;

  auto has_teeth() const -> bool { return teeth_backed_; }
  // Sorted by position. Empty for explicit combs.
  auto teeth() const -> const std::vector<Tooth>& { return teeth_; }

  auto events() const -> std::vector<Comb_event>;
  auto event_times() const -> std::vector<double>;
  auto event_count() const -> std::size_t;
  auto max_time() const -> double;

  // Same comb, stored as explicit events.
  auto materialized() const -> Comb;

  auto eval(double t) const -> Interval_partition;

  // f(x) = first time x lies in a component.
  auto function(double x) const -> Merge_time;

  // sup of f over the interval between lo <= hi with the given closedness.
  // Empty open intervals give 0.
  auto sup_over(double lo, double hi, bool lo_closed, bool hi_closed) const -> Merge_time;

 private:
  Comb() = default;

  // First event index at which pred(value) holds, assuming monotone pred.
  template <typename Pred>
  auto first_event_where(Pred pred) const -> std::size_t;

  bool teeth_backed_ = false;
  std::vector<Tooth> teeth_;
  std::vector<Comb_event> events_;
};

auto comb_function(const Comb& c, double x) -> Merge_time;

// inf{t : x and y share a component of I_t}; 0 when x == y.
auto comb_distance(const Comb& c, double x, double y) -> Merge_time;

// Truncated Kingman comb with n_teeth teeth: heights T_i for i = 2..n+1,
// T_i = sum_{j=i}^{n+1} 2/(j(j-1)) e_j, at i.i.d. uniform positions.
// Draw order: e_2..e_{n+1}, then the positions (a collision is redrawn).
auto sample_kingman_comb(Rng& rng, std::size_t n_teeth) -> Comb;

// Right/left faces of a comb. `start` is the first time the point is an
// endpoint and `end` is f(x) (possibly unmerged); the window is [start, end).
struct Face_window {
  double position = 0.0;
  double start = 0.0;
  Merge_time end;

  friend auto operator==(const Face_window&, const Face_window&) -> bool = default;
};

struct Face_sets {
  std::vector<Face_window> right;  // points that are right endpoints
  std::vector<Face_window> left;   // points that are left endpoints
};

auto face_sets(const Comb& c) -> Face_sets;

enum class Face { plain, right, left };

struct Face_point {
  double position = 0.0;
  Face face = Face::plain;
};

// Distance on the completion of the comb by its faces. Faces that are not in
// face_sets(c) throw std::invalid_argument.
auto extended_distance(const Comb& c, Face_point p, Face_point q) -> Merge_time;

}  // namespace combs
