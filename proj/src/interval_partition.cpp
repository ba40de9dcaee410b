#include "combs/interval_partition.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace combs {

Interval_partition::Interval_partition(std::vector<Interval> components) : components_{std::move(components)} {
  auto prev_right = 0.0;
  for (const auto& c : components_) {
    if (not(0.0 <= c.left and c.left < c.right and c.right <= 1.0)) {
      throw std::invalid_argument("interval component must satisfy 0 <= left < right <= 1");
    }
    if (c.left < prev_right) {
      throw std::invalid_argument("interval components must be sorted and disjoint");
    }
    prev_right = c.right;
  }
}

auto Interval_partition::full() -> Interval_partition { return Interval_partition{{Interval{0.0, 1.0}}}; }

auto Interval_partition::from_cut_points(const std::vector<double>& cuts) -> Interval_partition {
  auto comps = std::vector<Interval>{};
  comps.reserve(cuts.size() + 1);
  auto left = 0.0;
  for (auto c : cuts) {
    if (not(left < c and c < 1.0)) {
      throw std::invalid_argument("cut points must be strictly increasing inside (0, 1)");
    }
    comps.push_back({left, c});
    left = c;
  }
  comps.push_back({left, 1.0});
  return Interval_partition{std::move(comps)};
}

auto Interval_partition::component_of(double x) const -> std::optional<std::size_t> {
  if (not(0.0 <= x and x <= 1.0)) {
    throw std::out_of_range("component_of: x must lie in [0, 1]");
  }
  // Last component with left < x.
  auto it = std::partition_point(components_.begin(), components_.end(),
                                 [x](const Interval& c) { return c.left < x; });
  if (it == components_.begin()) {
    return std::nullopt;
  }
  --it;
  if (x < it->right) {
    return static_cast<std::size_t>(it - components_.begin());
  }
  return std::nullopt;
}

auto mass_partition(const Interval_partition& p) -> std::vector<double> {
  auto out = std::vector<double>{};
  out.reserve(p.size());
  for (const auto& c : p.components()) {
    out.push_back(c.length());
  }
  std::sort(out.begin(), out.end(), std::greater<>{});
  return out;
}

auto dust_mass(const Interval_partition& p) -> double {
  auto total = 0.0;
  for (const auto& c : p.components()) {
    total += c.length();
  }
  return std::clamp(1.0 - total, 0.0, 1.0);
}

namespace {

// sup over x in the complement of `from` of dist(x, complement of `to`).
// dist(x, [0,1] \ to) is the tent min(x-a, b-x) on each component (a,b) of `to`
// and 0 elsewhere, so only the components of `to` matter.
auto one_sided(const Interval_partition& from, const Interval_partition& to) -> double {
  auto best = 0.0;
  for (const auto& [a, b] : to.components()) {
    auto tent = [a = a, b = b](double x) { return std::min(x - a, b - x); };
    auto mid = 0.5 * (a + b);
    auto k = from.component_of(mid);
    if (not k) {
      best = std::max(best, tent(mid));
      continue;
    }
    // mid sits inside (c,d) of `from`; the nearest complement points of `from`
    // are c and d, whichever lie inside (a,b).
    const auto& [c, d] = from[*k];
    if (c > a) {
      best = std::max(best, tent(c));
    }
    if (d < b) {
      best = std::max(best, tent(d));
    }
  }
  return best;
}

}  // namespace

auto hausdorff(const Interval_partition& a, const Interval_partition& b) -> double {
  return std::max(one_sided(a, b), one_sided(b, a));
}

auto is_nested(const Interval_partition& inner, const Interval_partition& outer) -> bool {
  const auto& oc = outer.components();
  for (const auto& c : inner.components()) {
    auto it = std::partition_point(oc.begin(), oc.end(), [&](const Interval& o) { return o.left <= c.left; });
    if (it == oc.begin()) {
      return false;
    }
    --it;
    if (c.right > it->right) {
      return false;
    }
  }
  return true;
}

auto merge_adjacent(const Interval_partition& p, std::size_t first, std::size_t count) -> Interval_partition {
  if (count == 0 or first + count > p.size()) {
    throw std::out_of_range("merge_adjacent: window out of range");
  }
  auto comps = std::vector<Interval>{};
  comps.reserve(p.size() - count + 1);
  for (auto i = std::size_t{0}; i < first; ++i) {
    comps.push_back(p[i]);
  }
  comps.push_back({p[first].left, p[first + count - 1].right});
  for (auto i = first + count; i < p.size(); ++i) {
    comps.push_back(p[i]);
  }
  return Interval_partition{std::move(comps)};
}

}  // namespace combs
