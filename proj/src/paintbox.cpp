#include "combs/paintbox.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <unordered_map>

namespace combs {

namespace {

constexpr auto no_label = std::numeric_limits<std::size_t>::max();

struct Union_find {
  explicit Union_find(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }

  auto find(std::size_t x) -> std::size_t {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  auto unite(std::size_t a, std::size_t b) -> bool {
    a = find(a);
    b = find(b);
    if (a == b) {
      return false;
    }
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }

  std::vector<std::size_t> parent;
};

auto sorted_order(const std::vector<double>& positions) -> std::vector<std::size_t> {
  auto order = std::vector<std::size_t>(positions.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) {
    return positions[a] < positions[b] or (positions[a] == positions[b] and a < b);
  });
  return order;
}

// gaps[j] = comb distance between the j-th and (j+1)-th point from the left.
// The distance between any two points is the max of the gaps between them.
auto consecutive_gaps(const Comb& c, const std::vector<double>& positions, const std::vector<std::size_t>& order)
    -> std::vector<double> {
  auto gaps = std::vector<double>{};
  for (auto j = std::size_t{1}; j < order.size(); ++j) {
    gaps.push_back(comb_distance(c, positions[order[j - 1]], positions[order[j]]).value());
  }
  return gaps;
}

// 0 and every distinct finite positive gap, ascending.
auto gap_thresholds(const std::vector<double>& gaps) -> std::vector<double> {
  auto times = std::vector<double>{0.0};
  for (auto g : gaps) {
    if (g > 0.0 and std::isfinite(g)) {
      times.push_back(g);
    }
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

// Runs of the left-to-right order whose internal gaps are <= t.
auto runs_at(const std::vector<std::size_t>& order, const std::vector<double>& gaps, double t)
    -> std::vector<std::vector<std::size_t>> {
  auto runs = std::vector<std::vector<std::size_t>>{};
  for (auto j = std::size_t{0}; j < order.size(); ++j) {
    if (j == 0 or gaps[j - 1] > t) {
      runs.emplace_back();
    }
    runs.back().push_back(order[j]);
  }
  return runs;
}

void check_positions(const std::vector<double>& positions) {
  if (positions.empty()) {
    throw std::invalid_argument("paintbox needs at least one point");
  }
  for (auto x : positions) {
    if (not(0.0 < x and x < 1.0)) {
      throw std::invalid_argument("paintbox positions must lie in (0, 1)");
    }
  }
}

}  // namespace

Partition::Partition(const std::vector<std::size_t>& labels) : block_of_(labels.size()) {
  auto relabel = std::unordered_map<std::size_t, std::size_t>{};
  for (auto i = std::size_t{0}; i < labels.size(); ++i) {
    block_of_[i] = relabel.emplace(labels[i], relabel.size()).first->second;
  }
  block_count_ = relabel.size();
}

auto Partition::singletons(std::size_t n) -> Partition {
  auto labels = std::vector<std::size_t>(n);
  std::iota(labels.begin(), labels.end(), std::size_t{0});
  return Partition{labels};
}

auto Partition::single_block(std::size_t n) -> Partition { return Partition{std::vector<std::size_t>(n, 0)}; }

auto Partition::blocks() const -> std::vector<std::vector<std::size_t>> {
  auto out = std::vector<std::vector<std::size_t>>(block_count_);
  for (auto i = std::size_t{0}; i < block_of_.size(); ++i) {
    out[block_of_[i]].push_back(i);
  }
  return out;
}

auto is_coarsening(const Partition& fine, const Partition& coarse) -> bool {
  if (fine.size() != coarse.size()) {
    return false;
  }
  auto image = std::vector<std::size_t>(fine.block_count(), no_label);
  for (auto i = std::size_t{0}; i < fine.size(); ++i) {
    auto& slot = image[fine.block_of(i)];
    if (slot == no_label) {
      slot = coarse.block_of(i);
    } else if (slot != coarse.block_of(i)) {
      return false;
    }
  }
  return true;
}

Composition::Composition(std::vector<std::vector<std::size_t>> blocks) : blocks_{std::move(blocks)} {
  for (auto& b : blocks_) {
    if (b.empty()) {
      throw std::invalid_argument("composition blocks must be nonempty");
    }
    std::sort(b.begin(), b.end());
    n_ += b.size();
  }
  auto seen = std::vector<bool>(n_, false);
  for (const auto& b : blocks_) {
    for (auto i : b) {
      if (i >= n_ or seen[i]) {
        throw std::invalid_argument("composition blocks must partition 0..n-1");
      }
      seen[i] = true;
    }
  }
}

auto Composition::partition() const -> Partition {
  auto labels = std::vector<std::size_t>(n_);
  for (auto k = std::size_t{0}; k < blocks_.size(); ++k) {
    for (auto i : blocks_[k]) {
      labels[i] = k;
    }
  }
  return Partition{labels};
}

auto merges_adjacent(const Composition& before, const Composition& after) -> bool {
  if (before.size() != after.size()) {
    return false;
  }
  auto after_block = std::vector<std::size_t>(after.size());
  for (auto k = std::size_t{0}; k < after.block_count(); ++k) {
    for (auto i : after.blocks()[k]) {
      after_block[i] = k;
    }
  }
  auto p = std::size_t{0};
  for (auto k = std::size_t{0}; k < after.block_count(); ++k) {
    auto need = after.blocks()[k].size();
    while (need > 0) {
      if (p == before.block_count()) {
        return false;
      }
      const auto& b = before.blocks()[p++];
      for (auto i : b) {
        if (after_block[i] != k) {
          return false;
        }
      }
      if (b.size() > need) {
        return false;
      }
      need -= b.size();
    }
  }
  return p == before.block_count();
}

Coalescent_trajectory::Coalescent_trajectory(std::vector<Partition_event> events) : events_{std::move(events)} {
  if (events_.empty() or events_.front().time != 0.0) {
    throw std::invalid_argument("trajectory must start with an event at time 0");
  }
  for (auto i = std::size_t{1}; i < events_.size(); ++i) {
    if (not(events_[i - 1].time < events_[i].time) or not std::isfinite(events_[i].time)) {
      throw std::invalid_argument("trajectory times must be finite and strictly increasing");
    }
    if (not is_coarsening(events_[i - 1].value, events_[i].value)) {
      throw std::invalid_argument("trajectory partitions must coarsen over time");
    }
  }
}

auto Coalescent_trajectory::eval(double t) const -> const Partition& {
  if (not(t >= 0.0)) {
    throw std::invalid_argument("trajectory evaluated at negative time");
  }
  auto it = std::upper_bound(events_.begin(), events_.end(), t,
                             [](double v, const Partition_event& e) { return v < e.time; });
  return std::prev(it)->value;
}

Composition_trajectory::Composition_trajectory(std::vector<Composition_event> events) : events_{std::move(events)} {
  if (events_.empty() or events_.front().time != 0.0) {
    throw std::invalid_argument("trajectory must start with an event at time 0");
  }
  for (auto i = std::size_t{1}; i < events_.size(); ++i) {
    if (not(events_[i - 1].time < events_[i].time) or not std::isfinite(events_[i].time)) {
      throw std::invalid_argument("trajectory times must be finite and strictly increasing");
    }
    if (not merges_adjacent(events_[i - 1].value, events_[i].value)) {
      throw std::invalid_argument("only adjacent blocks of a composition may merge");
    }
  }
}

auto Composition_trajectory::eval(double t) const -> const Composition& {
  if (not(t >= 0.0)) {
    throw std::invalid_argument("trajectory evaluated at negative time");
  }
  auto it = std::upper_bound(events_.begin(), events_.end(), t,
                             [](double v, const Composition_event& e) { return v < e.time; });
  return std::prev(it)->value;
}

auto Composition_trajectory::partitions() const -> Coalescent_trajectory {
  auto out = std::vector<Partition_event>{};
  out.reserve(events_.size());
  for (const auto& e : events_) {
    out.push_back({e.time, e.value.partition()});
  }
  return Coalescent_trajectory{std::move(out)};
}

auto paintbox_from_positions(const Comb& c, const std::vector<double>& positions) -> Coalescent_trajectory {
  check_positions(positions);
  auto order = sorted_order(positions);
  auto gaps = consecutive_gaps(c, positions, order);
  auto events = std::vector<Partition_event>{};
  for (auto t : gap_thresholds(gaps)) {
    auto labels = std::vector<std::size_t>(positions.size());
    auto block = std::size_t{0};
    for (const auto& run : runs_at(order, gaps, t)) {
      for (auto i : run) {
        labels[i] = block;
      }
      ++block;
    }
    events.push_back({t, Partition{labels}});
  }
  return Coalescent_trajectory{std::move(events)};
}

auto ordered_paintbox_from_positions(const Comb& c, const std::vector<double>& positions) -> Composition_trajectory {
  check_positions(positions);
  auto order = sorted_order(positions);
  auto gaps = consecutive_gaps(c, positions, order);
  auto events = std::vector<Composition_event>{};
  for (auto t : gap_thresholds(gaps)) {
    events.push_back({t, Composition{runs_at(order, gaps, t)}});
  }
  return Composition_trajectory{std::move(events)};
}

auto paintbox_sample(const Comb& c, std::size_t n, Rng& rng) -> Paintbox_sample {
  auto positions = draw_distinct_uniforms(rng, n);
  auto traj = paintbox_from_positions(c, positions);
  return {std::move(positions), std::move(traj)};
}

auto ordered_paintbox(const Comb& c, std::size_t n, Rng& rng) -> Ordered_paintbox_sample {
  auto positions = draw_distinct_uniforms(rng, n);
  auto traj = ordered_paintbox_from_positions(c, positions);
  return {std::move(positions), std::move(traj)};
}

auto empirical_interval_partition(const Composition& comp) -> Interval_partition {
  if (comp.size() == 0) {
    throw std::invalid_argument("empirical interval-partition of an empty composition");
  }
  // Cuts are integer counts over n, so nested compositions give nested
  // partitions exactly.
  auto n = static_cast<double>(comp.size());
  auto cuts = std::vector<double>{};
  auto cum = std::size_t{0};
  for (auto k = std::size_t{0}; k + 1 < comp.block_count(); ++k) {
    cum += comp.blocks()[k].size();
    cuts.push_back(static_cast<double>(cum) / n);
  }
  return Interval_partition::from_cut_points(cuts);
}

auto uniform_consistent_ordering(const Coalescent_trajectory& traj, Rng& rng) -> Composition_trajectory {
  const auto& events = traj.events();
  auto n = traj.size();
  auto label = [&](std::size_t e, std::size_t i) { return events[e].value.block_of(i); };
  auto last = events.size() - 1;

  // seq is a left-to-right order of 0..k-1 in which every block of every
  // event, restricted to 0..k-1, is contiguous. Insert k keeping that true;
  // the legal slots are the same in number for every such seq.
  auto seq = std::vector<std::size_t>{};
  seq.reserve(n);
  for (auto k = std::size_t{0}; k < n; ++k) {
    auto slots = std::vector<std::size_t>{};
    auto boundaries = [&](std::size_t e, std::size_t a, std::size_t b) {
      for (auto p = a; p <= b; ++p) {
        if (p == a or p == b or label(e, seq[p - 1]) != label(e, seq[p])) {
          slots.push_back(p);
        }
      }
    };
    auto same_block = std::optional<std::size_t>{};
    for (auto p = std::size_t{0}; p < seq.size(); ++p) {
      if (label(0, seq[p]) == label(0, k)) {
        same_block = p + 1;
      }
    }
    if (same_block) {
      // k starts inside an existing block.
      slots.push_back(*same_block);
    } else {
      auto first = std::optional<std::size_t>{};
      for (auto e = std::size_t{1}; e <= last and not first; ++e) {
        for (auto j = std::size_t{0}; j < k; ++j) {
          if (label(e, j) == label(e, k)) {
            first = e;
            break;
          }
        }
      }
      if (first) {
        // The blocks k joins at its first merger form a run [a, b) of seq; k
        // may go at any block boundary (just before that merger) inside it.
        auto e = *first;
        auto a = seq.size();
        auto b = std::size_t{0};
        for (auto p = std::size_t{0}; p < seq.size(); ++p) {
          if (label(e, seq[p]) == label(e, k)) {
            a = std::min(a, p);
            b = p + 1;
          }
        }
        boundaries(e - 1, a, b);
      } else {
        boundaries(last, 0, seq.size());
      }
    }
    auto pick = slots.size() == 1 ? 0 : rng.uniform_index(slots.size());
    seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(slots[pick]), k);
  }

  auto out = std::vector<Composition_event>{};
  out.reserve(events.size());
  for (auto e = std::size_t{0}; e < events.size(); ++e) {
    auto blocks = std::vector<std::vector<std::size_t>>{};
    auto done = std::vector<bool>(events[e].value.block_count(), false);
    for (auto p = std::size_t{0}; p < n; ++p) {
      auto l = label(e, seq[p]);
      if (p == 0 or l != label(e, seq[p - 1])) {
        if (done[l]) {
          throw std::logic_error("uniform_consistent_ordering produced a split block");
        }
        done[l] = true;
        blocks.emplace_back();
      }
      blocks.back().push_back(seq[p]);
    }
    out.push_back({events[e].time, Composition{std::move(blocks)}});
  }
  return Composition_trajectory{std::move(out)};
}

auto distance_matrix(const std::vector<double>& positions, const Comb& c) -> Square_matrix<double> {
  auto n = positions.size();
  auto m = Square_matrix<double>(n, 0.0);
  auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (auto i = std::int64_t{0}; i < count; ++i) {
    auto ui = static_cast<std::size_t>(i);
    for (auto j = ui + 1; j < n; ++j) {
      auto d = comb_distance(c, positions[ui], positions[j]).value();
      m(ui, j) = d;
      m(j, ui) = d;
    }
  }
  return m;
}

namespace serial {

auto distance_matrix(const std::vector<double>& positions, const Comb& c) -> Square_matrix<double> {
  auto n = positions.size();
  auto m = Square_matrix<double>(n, 0.0);
  for (auto i = std::size_t{0}; i < n; ++i) {
    for (auto j = i + 1; j < n; ++j) {
      auto d = comb_distance(c, positions[i], positions[j]).value();
      m(i, j) = d;
      m(j, i) = d;
    }
  }
  return m;
}

}  // namespace serial

auto single_linkage(const Square_matrix<double>& dist) -> Coalescent_trajectory {
  struct Pair {
    double d;
    std::size_t i;
    std::size_t j;
  };
  auto n = dist.size();
  if (n == 0) {
    throw std::invalid_argument("single_linkage of an empty matrix");
  }
  auto pairs = std::vector<Pair>{};
  for (auto i = std::size_t{0}; i < n; ++i) {
    for (auto j = i + 1; j < n; ++j) {
      auto d = dist(i, j);
      if (not(d >= 0.0)) {
        throw std::invalid_argument("single_linkage needs nonnegative distances");
      }
      if (std::isfinite(d)) {
        pairs.push_back({d, i, j});
      }
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return a.d < b.d or (a.d == b.d and (a.i < b.i or (a.i == b.i and a.j < b.j)));
  });
  auto uf = Union_find{n};
  auto snapshot = [&] {
    auto labels = std::vector<std::size_t>(n);
    for (auto i = std::size_t{0}; i < n; ++i) {
      labels[i] = uf.find(i);
    }
    return Partition{labels};
  };
  auto events = std::vector<Partition_event>{};
  auto p = std::size_t{0};
  while (p < pairs.size() and pairs[p].d == 0.0) {
    uf.unite(pairs[p].i, pairs[p].j);
    ++p;
  }
  events.push_back({0.0, snapshot()});
  while (p < pairs.size()) {
    auto d = pairs[p].d;
    auto changed = false;
    for (; p < pairs.size() and pairs[p].d == d; ++p) {
      changed = uf.unite(pairs[p].i, pairs[p].j) or changed;
    }
    if (changed) {
      events.push_back({d, snapshot()});
    }
  }
  return Coalescent_trajectory{std::move(events)};
}

auto cophenetic_matrix(const Coalescent_trajectory& traj) -> Square_matrix<double> {
  auto n = traj.size();
  auto m = Square_matrix<double>(n, std::numeric_limits<double>::infinity());
  for (const auto& e : traj.events()) {
    for (const auto& block : e.value.blocks()) {
      for (auto a = std::size_t{0}; a < block.size(); ++a) {
        for (auto b = a + 1; b < block.size(); ++b) {
          auto& slot = m(block[a], block[b]);
          if (slot == std::numeric_limits<double>::infinity()) {
            slot = e.time;
            m(block[b], block[a]) = e.time;
          }
        }
      }
    }
  }
  for (auto i = std::size_t{0}; i < n; ++i) {
    m(i, i) = 0.0;
  }
  return m;
}

}  // namespace combs
