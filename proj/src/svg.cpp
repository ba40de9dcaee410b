#include "combs/svg.hpp"

#include <cstdio>
#include <map>

namespace combs {

namespace {

constexpr auto width = 900;
constexpr auto height = 450;
constexpr auto x0 = 50.0;
constexpr auto x_span = 800.0;
constexpr auto y0 = 400.0;
constexpr auto y_span = 350.0;

auto fmt(double v) -> std::string {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

auto render_svg(const Comb& c) -> std::string {
  auto events = c.events();
  auto t_max = events.back().time > 0.0 ? events.back().time : 1.0;
  auto t_top = 1.05 * t_max;
  auto px = [](double x) { return fmt(x0 + x_span * x); };
  auto py = [&](double t) { return fmt(y0 - y_span * t / t_top); };

  auto body = std::string{};
  // Point gap position -> time it became a point gap.
  auto open_gaps = std::map<double, double>{};
  auto lines = std::map<double, std::pair<double, double>>{};
  for (auto k = std::size_t{0}; k < events.size(); ++k) {
    auto t = events[k].time;
    auto t_next = k + 1 < events.size() ? events[k + 1].time : t_top;
    const auto& comps = events[k].value.components();
    auto gaps_now = std::map<double, double>{};
    auto dust = [&](double lo, double hi) {
      if (hi > lo) {
        body += "<rect class=\"dust\" x=\"" + px(lo) + "\" y=\"" + py(t_next) + "\" width=\"" +
                fmt(x_span * (hi - lo)) + "\" height=\"" + fmt(y_span * (t_next - t) / t_top) + "\"/>\n";
      }
    };
    auto prev_right = 0.0;
    for (auto i = std::size_t{0}; i < comps.size(); ++i) {
      dust(prev_right, comps[i].left);
      if (i > 0 and comps[i - 1].right == comps[i].left) {
        auto x = comps[i].left;
        auto it = open_gaps.find(x);
        gaps_now[x] = it == open_gaps.end() ? t : it->second;
      }
      prev_right = comps[i].right;
    }
    dust(prev_right, 1.0);
    for (const auto& [x, start] : open_gaps) {
      if (not gaps_now.contains(x)) {
        lines[x] = {start, t};
      }
    }
    open_gaps = std::move(gaps_now);
  }
  for (const auto& [x, start] : open_gaps) {
    lines[x] = {start, t_top};
  }

  auto out = std::string{};
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
         std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) + " " + std::to_string(height) +
         "\">\n";
  out += "<style>.tooth{stroke:#222;stroke-width:1}.dust{fill:#222}.baseline{stroke:#888;stroke-width:1}</style>\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" fill=\"white\"/>\n";
  for (const auto& [x, span] : lines) {
    out += "<line class=\"tooth\" x1=\"" + px(x) + "\" y1=\"" + py(span.first) + "\" x2=\"" + px(x) + "\" y2=\"" +
           py(span.second) + "\"/>\n";
  }
  out += body;
  out += "<line class=\"baseline\" x1=\"" + px(0.0) + "\" y1=\"" + py(0.0) + "\" x2=\"" + px(1.0) + "\" y2=\"" +
         py(0.0) + "\"/>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace combs
