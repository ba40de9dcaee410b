#include "combs/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace combs {

namespace {

constexpr auto mass_tolerance = 1e-12;

auto location_less(const Jump& j, double x) -> bool { return j.location < x; }

// Cuts at cumulative size / n.
auto partition_from_sizes(const std::vector<std::size_t>& sizes) -> Interval_partition {
  auto n = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  auto cuts = std::vector<double>{};
  auto cum = std::size_t{0};
  for (auto k = std::size_t{0}; k + 1 < sizes.size(); ++k) {
    cum += sizes[k];
    cuts.push_back(static_cast<double>(cum) / static_cast<double>(n));
  }
  return Interval_partition::from_cut_points(cuts);
}

auto place_at_uniforms(const std::vector<double>& sizes, double drift, Rng& rng) -> Bridge {
  auto u = draw_distinct_uniforms(rng, sizes.size());
  std::sort(u.begin(), u.end());
  auto jumps = std::vector<Jump>{};
  jumps.reserve(sizes.size());
  for (auto i = std::size_t{0}; i < sizes.size(); ++i) {
    jumps.push_back({u[i], sizes[i]});
  }
  return Bridge{drift, std::move(jumps)};
}

auto snapped_dust(double total) -> double {
  auto dust = std::max(0.0, 1.0 - total);
  return dust < mass_tolerance ? 0.0 : dust;
}

}  // namespace

Bridge::Bridge(double drift, std::vector<Jump> jumps) : drift_{drift}, jumps_{std::move(jumps)} {
  if (not(0.0 <= drift_ and drift_ <= 1.0)) {
    throw std::invalid_argument("bridge drift must lie in [0, 1]");
  }
  std::sort(jumps_.begin(), jumps_.end(), [](const Jump& a, const Jump& b) { return a.location < b.location; });
  cum_.assign(jumps_.size() + 1, 0.0);
  for (auto i = std::size_t{0}; i < jumps_.size(); ++i) {
    const auto& j = jumps_[i];
    if (not(0.0 < j.location and j.location <= 1.0)) {
      throw std::invalid_argument("bridge jump location must lie in (0, 1]");
    }
    if (not(j.size > 0.0) or not std::isfinite(j.size)) {
      throw std::invalid_argument("bridge jump size must be positive");
    }
    if (i > 0 and jumps_[i - 1].location == j.location) {
      throw std::invalid_argument("bridge jump locations must be distinct");
    }
    cum_[i + 1] = cum_[i] + j.size;
  }
  if (std::abs(drift_ + cum_.back() - 1.0) > mass_tolerance) {
    throw std::invalid_argument("bridge drift plus jump sizes must equal 1");
  }
}

auto Bridge::eval(double x) const -> double {
  if (not(0.0 <= x and x <= 1.0)) {
    throw std::out_of_range("bridge evaluated outside [0, 1]");
  }
  auto i = std::upper_bound(jumps_.begin(), jumps_.end(), x,
                            [](double v, const Jump& j) { return v < j.location; }) -
           jumps_.begin();
  return std::min(1.0, drift_ * x + cumulative(static_cast<std::size_t>(i)));
}

auto Bridge::left_limit(double x) const -> double {
  if (not(0.0 <= x and x <= 1.0)) {
    throw std::out_of_range("bridge evaluated outside [0, 1]");
  }
  auto i = std::lower_bound(jumps_.begin(), jumps_.end(), x, location_less) - jumps_.begin();
  return std::min(1.0, drift_ * x + cumulative(static_cast<std::size_t>(i)));
}

auto Bridge::inverse(double y) const -> double {
  if (not(0.0 <= y and y <= 1.0)) {
    throw std::out_of_range("bridge inverse outside [0, 1]");
  }
  if (y == 1.0) {
    return 1.0;
  }
  auto k = jumps_.size();
  // First jump after which B exceeds y.
  auto lo = std::size_t{0};
  auto hi = k;
  while (lo < hi) {
    auto mid = lo + (hi - lo) / 2;
    if (drift_ * jumps_[mid].location + cum_[mid + 1] > y) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  auto i = lo;
  // On [v_{i-1}, v_i) the bridge is drift * x + cum_[i].
  auto seg_start = i == 0 ? 0.0 : jumps_[i - 1].location;
  auto seg_end = i == k ? 1.0 : jumps_[i].location;
  if (drift_ > 0.0) {
    auto x = std::max(seg_start, (y - cum_[i]) / drift_);
    if (x < seg_end or i == k) {
      return std::min(x, 1.0);
    }
  }
  return seg_end;
}

auto interval_partition_of(const Bridge& b) -> Interval_partition {
  auto comps = std::vector<Interval>{};
  auto prev_right = 0.0;
  auto cum = 0.0;
  for (const auto& j : b.jumps()) {
    auto base = b.drift() * j.location;
    auto l = std::clamp(base + cum, prev_right, 1.0);
    cum += j.size;
    auto r = std::clamp(base + cum, 0.0, 1.0);
    if (l < r) {
      comps.push_back({l, r});
      prev_right = r;
    }
  }
  return Interval_partition{std::move(comps)};
}

auto compose(const Bridge& outer, const Bridge& inner) -> Bridge {
  const auto& oj = outer.jumps();
  auto ocum = std::vector<double>(oj.size() + 1, 0.0);
  for (auto i = std::size_t{0}; i < oj.size(); ++i) {
    ocum[i + 1] = ocum[i] + oj[i].size;
  }
  // Total outer jump mass at locations in [lo, hi] (or (lo, hi]).
  auto mass_in = [&](double lo, double hi, bool lo_closed) {
    auto first = lo_closed ? std::lower_bound(oj.begin(), oj.end(), lo, location_less)
                           : std::upper_bound(oj.begin(), oj.end(), lo,
                                              [](double v, const Jump& j) { return v < j.location; });
    auto last = std::upper_bound(oj.begin(), oj.end(), hi, [](double v, const Jump& j) { return v < j.location; });
    if (last <= first) {
      return 0.0;
    }
    return ocum[static_cast<std::size_t>(last - oj.begin())] - ocum[static_cast<std::size_t>(first - oj.begin())];
  };

  auto d = outer.drift();
  auto dp = inner.drift();
  const auto& ij = inner.jumps();
  auto out = std::vector<Jump>{};

  // Inner jump at v maps [B'(v-), B'(v)] (open at the left end when B' has no
  // drift, as B' is then constant just before v) through the outer bridge.
  auto icum = 0.0;
  auto bounds = std::vector<std::pair<double, double>>{};
  for (const auto& j : ij) {
    auto base = dp * j.location;
    auto l = base + icum;
    icum += j.size;
    auto r = base + icum;
    bounds.push_back({l, r});
    out.push_back({j.location, d * j.size + mass_in(l, r, dp > 0.0)});
  }

  // Outer jumps hit by the continuous part of B' (only when it has drift).
  if (dp > 0.0) {
    auto seg_cum = 0.0;
    for (auto k = std::size_t{0}; k <= ij.size(); ++k) {
      auto x0 = k == 0 ? 0.0 : ij[k - 1].location;
      auto x1 = k == ij.size() ? 1.0 : ij[k].location;
      auto v0 = k == 0 ? 0.0 : bounds[k - 1].second;
      auto v1 = k == ij.size() ? 1.0 : bounds[k].first;
      auto first = std::upper_bound(oj.begin(), oj.end(), v0, [](double v, const Jump& j) { return v < j.location; });
      for (auto it = first; it != oj.end(); ++it) {
        auto inside = k == ij.size() ? it->location <= v1 : it->location < v1;
        if (not inside) {
          break;
        }
        auto x = std::clamp((it->location - seg_cum) / dp, x0, x1);
        if (x <= 0.0) {
          x = std::nextafter(0.0, 1.0);
        }
        out.push_back({x, it->size});
      }
      if (k < ij.size()) {
        seg_cum += ij[k].size;
      }
    }
  }

  std::sort(out.begin(), out.end(), [](const Jump& a, const Jump& b) { return a.location < b.location; });
  auto merged = std::vector<Jump>{};
  for (const auto& j : out) {
    if (not merged.empty() and merged.back().location == j.location) {
      merged.back().size += j.size;
    } else {
      merged.push_back(j);
    }
  }
  std::erase_if(merged, [](const Jump& j) { return not(j.size > 0.0); });
  return Bridge{d * dp, std::move(merged)};
}

auto bridge_from_interval_partition(const Interval_partition& p, Rng& rng) -> Bridge {
  auto sizes = std::vector<double>{};
  auto total = 0.0;
  for (const auto& c : p.components()) {
    sizes.push_back(c.length());
    total += c.length();
  }
  return place_at_uniforms(sizes, snapped_dust(total), rng);
}

auto bridge_from_mass_partition(const std::vector<double>& masses, Rng& rng) -> Bridge {
  auto sizes = masses;
  auto total = 0.0;
  for (auto m : sizes) {
    if (not(m > 0.0)) {
      throw std::invalid_argument("masses must be positive");
    }
    total += m;
  }
  if (total > 1.0 + mass_tolerance) {
    throw std::invalid_argument("masses sum to more than 1");
  }
  for (auto i = sizes.size(); i-- > 1;) {
    std::swap(sizes[i], sizes[static_cast<std::size_t>(rng.uniform_index(i + 1))]);
  }
  return place_at_uniforms(sizes, snapped_dust(total), rng);
}

auto coarsen(const Interval_partition& p, const Bridge& r, const Bridge& inner) -> Interval_partition {
  if (r.drift() != 0.0 or r.jumps().size() != p.size()) {
    throw std::invalid_argument("coarsen needs a drift-free bridge with one jump per component");
  }
  const auto& ij = inner.jumps();
  auto lefts = std::vector<double>{};
  auto rights = std::vector<double>{};
  auto icum = 0.0;
  for (const auto& j : ij) {
    auto base = inner.drift() * j.location;
    lefts.push_back(base + icum);
    icum += j.size;
    rights.push_back(base + icum);
  }
  auto closed = inner.drift() > 0.0;
  // Component i joins group j when its jump location lies in the window of
  // inner jump j; otherwise it stays alone.
  auto group_of = [&](std::size_t i) {
    auto u = r.jumps()[i].location;
    auto j = static_cast<std::size_t>(std::lower_bound(rights.begin(), rights.end(), u) - rights.begin());
    if (j < ij.size() and (closed ? lefts[j] <= u : lefts[j] < u)) {
      return j;
    }
    return ij.size() + i;
  };
  auto comps = std::vector<Interval>{};
  auto prev_group = std::size_t{0};
  for (auto i = std::size_t{0}; i < p.size(); ++i) {
    auto g = group_of(i);
    if (i > 0 and g == prev_group) {
      comps.back().right = p[i].right;
    } else {
      comps.push_back(p[i]);
    }
    prev_group = g;
  }
  return Interval_partition{std::move(comps)};
}

namespace {

void check_dust_free(const Interval_partition& p) {
  if (p.empty() or dust_mass(p) >= mass_tolerance) {
    throw std::invalid_argument("adjacent-merge evolution needs a dust-free interval-partition");
  }
}

}  // namespace

auto adjacent_merge_trajectory(const Interval_partition& p, const Rate_table& rates, double horizon, Rng& rng)
    -> Comb {
  check_dust_free(p);
  if (p.size() > 1 and rates.max_blocks() < p.size()) {
    throw std::invalid_argument("rate table too small");
  }
  auto events = std::vector<Comb_event>{{0.0, p}};
  auto current = p;
  auto t = 0.0;
  while (current.size() > 1) {
    auto b = current.size();
    auto total = rates.window_rate(b);
    if (not(total > 0.0)) {
      break;
    }
    t += rng.exponential(total);
    if (t > horizon) {
      break;
    }
    auto k = rates.sample_window_size(b, rng);
    auto start = static_cast<std::size_t>(rng.uniform_index(b - k + 1));
    current = merge_adjacent(current, start, k);
    events.push_back({t, current});
  }
  return Comb{std::move(events)};
}

auto adjacent_merge_evolution(const Interval_partition& p, const Rate_table& rates, double t, Rng& rng)
    -> Interval_partition {
  if (not(t >= 0.0)) {
    throw std::invalid_argument("evolution time must be nonnegative");
  }
  return adjacent_merge_trajectory(p, rates, t, rng).eval(t);
}

auto adjacent_merge_evolution(const Interval_partition& p, const Lambda_measure& lambda, double t, Rng& rng)
    -> Interval_partition {
  check_dust_free(p);
  return adjacent_merge_evolution(p, Rate_table{lambda, std::max<std::size_t>(p.size(), 2)}, t, rng);
}

auto empirical_lambda_bridge(const Rate_table& rates, std::size_t m, double s, Rng& rng) -> Bridge {
  if (not(s >= 0.0)) {
    throw std::invalid_argument("time must be nonnegative");
  }
  auto sizes = simulate_composition_block_sizes(rates, m, s, rng);
  return bridge_from_interval_partition(partition_from_sizes(sizes), rng);
}

auto lambda_comb_step(const Interval_partition& p, const Rate_table& rates, double s, std::size_t m, Rng& rng)
    -> Interval_partition {
  if (m < p.size() or m == 0) {
    throw std::invalid_argument("resolution m must be at least the number of components");
  }
  auto b = bridge_from_interval_partition(p, rng);
  auto bs = empirical_lambda_bridge(rates, m, s, rng);
  if (not p.empty() and b.drift() == 0.0) {
    return coarsen(p, b, bs);
  }
  return interval_partition_of(compose(b, bs));
}

auto lambda_comb_step(const Interval_partition& p, const Lambda_measure& lambda, double s, std::size_t m, Rng& rng)
    -> Interval_partition {
  return lambda_comb_step(p, Rate_table{lambda, std::max<std::size_t>(m, 2)}, s, m, rng);
}

auto flow_comb(const Rate_table& rates, const std::vector<double>& times, std::size_t m, Rng& rng) -> Comb {
  if (times.empty() or times.front() != 0.0) {
    throw std::invalid_argument("time grid must start at 0");
  }
  if (m == 0) {
    throw std::invalid_argument("resolution m must be positive");
  }
  auto p = partition_from_sizes(std::vector<std::size_t>(m, 1));
  auto running = bridge_from_interval_partition(p, rng);
  auto events = std::vector<Comb_event>{{0.0, p}};
  for (auto k = std::size_t{1}; k < times.size(); ++k) {
    if (not(times[k] > times[k - 1])) {
      throw std::invalid_argument("time grid must be strictly increasing");
    }
    auto increment = empirical_lambda_bridge(rates, m, times[k] - times[k - 1], rng);
    p = coarsen(p, running, increment);
    running = compose(running, increment);
    events.push_back({times[k], p});
  }
  return Comb{std::move(events)};
}

auto flow_comb(const Lambda_measure& lambda, const std::vector<double>& times, std::size_t m, Rng& rng) -> Comb {
  return flow_comb(Rate_table{lambda, std::max<std::size_t>(m, 2)}, times, m, rng);
}

}  // namespace combs
