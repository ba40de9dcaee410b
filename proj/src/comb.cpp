#include "combs/comb.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace combs {

Comb::Comb(std::vector<Comb_event> events) : events_{std::move(events)} {
  if (events_.empty()) {
    throw std::invalid_argument("comb needs at least one event");
  }
  if (events_.front().time != 0.0) {
    throw std::invalid_argument("first comb event must be at time 0");
  }
  for (auto i = std::size_t{1}; i < events_.size(); ++i) {
    if (not(events_[i - 1].time < events_[i].time) or not std::isfinite(events_[i].time)) {
      throw std::invalid_argument("comb event times must be finite and strictly increasing");
    }
    if (not is_nested(events_[i - 1].value, events_[i].value)) {
      throw std::invalid_argument("comb values must be nested");
    }
  }
}

auto Comb::from_teeth(std::vector<Tooth> teeth) -> Comb {
  std::sort(teeth.begin(), teeth.end(), [](const Tooth& a, const Tooth& b) { return a.position < b.position; });
  for (auto i = std::size_t{0}; i < teeth.size(); ++i) {
    const auto& t = teeth[i];
    if (not(0.0 < t.position and t.position < 1.0)) {
      throw std::invalid_argument("tooth position must lie in (0, 1)");
    }
    if (not(t.height > 0.0) or not std::isfinite(t.height)) {
      throw std::invalid_argument("tooth height must be positive and finite");
    }
    if (i > 0 and teeth[i - 1].position == t.position) {
      throw std::invalid_argument("duplicate tooth position");
    }
  }
  auto c = Comb{};
  c.teeth_backed_ = true;
  c.teeth_ = std::move(teeth);
  return c;
}

auto Comb::event_times() const -> std::vector<double> {
  auto times = std::vector<double>{};
  if (not teeth_backed_) {
    times.reserve(events_.size());
    for (const auto& e : events_) {
      times.push_back(e.time);
    }
    return times;
  }
  times.reserve(teeth_.size() + 1);
  times.push_back(0.0);
  for (const auto& t : teeth_) {
    times.push_back(t.height);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

auto Comb::event_count() const -> std::size_t {
  return teeth_backed_ ? event_times().size() : events_.size();
}

auto Comb::max_time() const -> double {
  if (not teeth_backed_) {
    return events_.back().time;
  }
  auto m = 0.0;
  for (const auto& t : teeth_) {
    m = std::max(m, t.height);
  }
  return m;
}

auto Comb::events() const -> std::vector<Comb_event> {
  if (not teeth_backed_) {
    return events_;
  }
  auto out = std::vector<Comb_event>{};
  for (auto t : event_times()) {
    out.push_back({t, eval(t)});
  }
  return out;
}

auto Comb::materialized() const -> Comb { return Comb{events()}; }

auto Comb::eval(double t) const -> Interval_partition {
  if (not(t >= 0.0)) {
    throw std::invalid_argument("comb evaluated at negative time");
  }
  if (teeth_backed_) {
    auto cuts = std::vector<double>{};
    for (const auto& tooth : teeth_) {
      if (tooth.height > t) {
        cuts.push_back(tooth.position);
      }
    }
    return Interval_partition::from_cut_points(cuts);
  }
  auto it = std::upper_bound(events_.begin(), events_.end(), t,
                             [](double v, const Comb_event& e) { return v < e.time; });
  return std::prev(it)->value;
}

template <typename Pred>
auto Comb::first_event_where(Pred pred) const -> std::size_t {
  auto lo = std::size_t{0};
  auto hi = events_.size();
  while (lo < hi) {
    auto mid = lo + (hi - lo) / 2;
    if (pred(events_[mid].value)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

auto Comb::function(double x) const -> Merge_time {
  if (not(0.0 <= x and x <= 1.0)) {
    throw std::out_of_range("comb function: x must lie in [0, 1]");
  }
  if (x == 0.0 or x == 1.0) {
    return Merge_time::unmerged();
  }
  if (teeth_backed_) {
    auto it = std::lower_bound(teeth_.begin(), teeth_.end(), x,
                               [](const Tooth& t, double v) { return t.position < v; });
    if (it != teeth_.end() and it->position == x) {
      return Merge_time{it->height};
    }
    return Merge_time{0.0};
  }
  auto k = first_event_where([x](const Interval_partition& p) { return p.contains(x); });
  if (k == events_.size()) {
    return Merge_time::unmerged();
  }
  return Merge_time{events_[k].time};
}

auto Comb::sup_over(double lo, double hi, bool lo_closed, bool hi_closed) const -> Merge_time {
  if (not(0.0 <= lo and lo <= hi and hi <= 1.0)) {
    throw std::out_of_range("sup_over: need 0 <= lo <= hi <= 1");
  }
  if (lo == hi) {
    return (lo_closed and hi_closed) ? function(lo) : Merge_time{0.0};
  }
  if (teeth_backed_) {
    if ((lo_closed and lo == 0.0) or (hi_closed and hi == 1.0)) {
      return Merge_time::unmerged();
    }
    auto first = std::lower_bound(teeth_.begin(), teeth_.end(), lo,
                                  [](const Tooth& t, double v) { return t.position < v; });
    auto best = 0.0;
    for (auto it = first; it != teeth_.end() and it->position <= hi; ++it) {
      if (it->position == lo and not lo_closed) {
        continue;
      }
      if (it->position == hi and not hi_closed) {
        continue;
      }
      best = std::max(best, it->height);
    }
    return Merge_time{best};
  }
  auto mid = 0.5 * (lo + hi);
  auto covers = [&](const Interval_partition& p) {
    auto k = p.component_of(mid);
    if (not k) {
      return false;
    }
    const auto& [l, r] = p[*k];
    auto left_ok = lo_closed ? l < lo : l <= lo;
    auto right_ok = hi_closed ? hi < r : hi <= r;
    return left_ok and right_ok;
  };
  auto k = first_event_where(covers);
  if (k == events_.size()) {
    return Merge_time::unmerged();
  }
  return Merge_time{events_[k].time};
}

auto comb_function(const Comb& c, double x) -> Merge_time { return c.function(x); }

auto comb_distance(const Comb& c, double x, double y) -> Merge_time {
  if (x == y) {
    return Merge_time{0.0};
  }
  return c.sup_over(std::min(x, y), std::max(x, y), true, true);
}

auto sample_kingman_comb(Rng& rng, std::size_t n_teeth) -> Comb {
  if (n_teeth == 0) {
    throw std::invalid_argument("sample_kingman_comb needs n_teeth >= 1");
  }
  auto n = n_teeth;
  // e[k] holds e_{k+2}.
  auto e = std::vector<double>(n);
  for (auto& v : e) {
    v = rng.exponential();
  }
  auto pos = draw_distinct_uniforms(rng, n);
  auto teeth = std::vector<Tooth>(n);
  auto height = 0.0;
  for (auto k = n; k-- > 0;) {
    auto i = static_cast<double>(k + 2);
    height += 2.0 / (i * (i - 1.0)) * e[k];
    teeth[k] = {pos[k], height};
  }
  return Comb::from_teeth(std::move(teeth));
}

auto face_sets(const Comb& c) -> Face_sets {
  auto out = Face_sets{};
  if (c.has_teeth()) {
    for (const auto& t : c.teeth()) {
      out.right.push_back({t.position, 0.0, Merge_time{t.height}});
      out.left.push_back({t.position, 0.0, Merge_time{t.height}});
    }
    return out;
  }
  auto right = std::map<double, double>{};
  auto left = std::map<double, double>{};
  for (const auto& e : c.events()) {
    for (const auto& comp : e.value.components()) {
      if (comp.left > 0.0) {
        left.emplace(comp.left, e.time);
      }
      if (comp.right < 1.0) {
        right.emplace(comp.right, e.time);
      }
    }
  }
  for (const auto& [x, s] : right) {
    out.right.push_back({x, s, c.function(x)});
  }
  for (const auto& [x, s] : left) {
    out.left.push_back({x, s, c.function(x)});
  }
  return out;
}

namespace {

auto has_face(const std::vector<Face_window>& faces, double x) -> bool {
  auto it = std::lower_bound(faces.begin(), faces.end(), x,
                             [](const Face_window& f, double v) { return f.position < v; });
  return it != faces.end() and it->position == x;
}

}  // namespace

auto extended_distance(const Comb& c, Face_point p, Face_point q) -> Merge_time {
  if (p.face != Face::plain or q.face != Face::plain) {
    auto faces = face_sets(c);
    for (const auto& fp : {p, q}) {
      if (fp.face == Face::right and not has_face(faces.right, fp.position)) {
        throw std::invalid_argument("point has no right face");
      }
      if (fp.face == Face::left and not has_face(faces.left, fp.position)) {
        throw std::invalid_argument("point has no left face");
      }
    }
  }
  if (p.position == q.position) {
    return p.face == q.face ? Merge_time{0.0} : c.function(p.position);
  }
  if (q.position < p.position) {
    std::swap(p, q);
  }
  // The lower end is open for a left face, the upper end for a right face.
  return c.sup_over(p.position, q.position, p.face != Face::left, q.face != Face::right);
}

}  // namespace combs
