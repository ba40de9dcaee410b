#include "combs/io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace combs {

namespace {

auto blocks_json(const std::vector<std::vector<std::size_t>>& blocks) -> json {
  auto out = json::array();
  for (const auto& b : blocks) {
    auto jb = json::array();
    for (auto i : b) {
      jb.push_back(i + 1);
    }
    out.push_back(std::move(jb));
  }
  return out;
}

auto matrix_from_rows(const std::vector<std::vector<double>>& rows) -> Square_matrix<double> {
  auto n = rows.size();
  auto m = Square_matrix<double>(n, 0.0);
  for (auto i = std::size_t{0}; i < n; ++i) {
    if (rows[i].size() != n) {
      throw std::invalid_argument("distance matrix must be square");
    }
    for (auto j = std::size_t{0}; j < n; ++j) {
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

auto parse_csv_double(const std::string& cell) -> double {
  auto begin = cell.find_first_not_of(" \t\r");
  auto end = cell.find_last_not_of(" \t\r");
  if (begin == std::string::npos) {
    throw std::invalid_argument("empty CSV cell");
  }
  auto text = cell.substr(begin, end - begin + 1);
  if (text == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  auto value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} or ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad CSV number '" + text + "'");
  }
  return value;
}

}  // namespace

auto format_double(double x) -> std::string {
  if (x == std::numeric_limits<double>::infinity()) {
    return "inf";
  }
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

auto to_json(const Interval_partition& p) -> json {
  auto comps = json::array();
  for (const auto& c : p.components()) {
    comps.push_back({c.left, c.right});
  }
  return {{"components", std::move(comps)}};
}

auto interval_partition_from_json(const json& j) -> Interval_partition {
  auto comps = std::vector<Interval>{};
  for (const auto& c : j.at("components")) {
    if (c.size() != 2) {
      throw std::invalid_argument("interval component must be [left, right]");
    }
    comps.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
  }
  return Interval_partition{std::move(comps)};
}

auto to_json(const Comb& c) -> json {
  auto events = json::array();
  for (const auto& e : c.events()) {
    events.push_back({{"t", e.time}, {"partition", to_json(e.value)}});
  }
  auto out = json{{"events", std::move(events)}};
  if (c.has_teeth()) {
    auto teeth = json::array();
    for (const auto& t : c.teeth()) {
      teeth.push_back({t.position, t.height});
    }
    out["teeth"] = std::move(teeth);
  }
  return out;
}

auto comb_from_json(const json& j) -> Comb {
  if (j.contains("teeth")) {
    auto teeth = std::vector<Tooth>{};
    for (const auto& t : j.at("teeth")) {
      teeth.push_back({t.at(0).get<double>(), t.at(1).get<double>()});
    }
    return Comb::from_teeth(std::move(teeth));
  }
  auto events = std::vector<Comb_event>{};
  for (const auto& e : j.at("events")) {
    events.push_back({e.at("t").get<double>(), interval_partition_from_json(e.at("partition"))});
  }
  return Comb{std::move(events)};
}

auto to_json(const Coalescent_trajectory& traj) -> json {
  auto events = json::array();
  for (const auto& e : traj.events()) {
    events.push_back({{"t", e.time}, {"blocks", blocks_json(e.value.blocks())}});
  }
  return {{"events", std::move(events)}};
}

auto to_json(const Composition_trajectory& traj) -> json {
  auto events = json::array();
  for (const auto& e : traj.events()) {
    events.push_back({{"t", e.time}, {"blocks", blocks_json(e.value.blocks())}});
  }
  return {{"events", std::move(events)}};
}

auto to_json(const Bridge& b) -> json {
  auto jumps = json::array();
  for (const auto& j : b.jumps()) {
    jumps.push_back({j.location, j.size});
  }
  return {{"drift", b.drift()}, {"jumps", std::move(jumps)}};
}

auto bridge_from_json(const json& j) -> Bridge {
  auto jumps = std::vector<Jump>{};
  for (const auto& jj : j.at("jumps")) {
    jumps.push_back({jj.at(0).get<double>(), jj.at(1).get<double>()});
  }
  return Bridge{j.at("drift").get<double>(), std::move(jumps)};
}

auto to_json(const Finite_ums& u) -> json {
  auto rows = json::array();
  for (auto i = std::size_t{0}; i < u.size(); ++i) {
    auto row = json::array();
    for (auto j = std::size_t{0}; j < u.size(); ++j) {
      row.push_back(u.dist()(i, j));
    }
    rows.push_back(std::move(row));
  }
  return {{"dist", std::move(rows)}, {"weights", u.weights()}};
}

auto finite_ums_from_json(const json& j) -> Finite_ums {
  auto rows = j.at("dist").get<std::vector<std::vector<double>>>();
  return Finite_ums{matrix_from_rows(rows), j.at("weights").get<std::vector<double>>()};
}

auto finite_ums_from_csv(const std::string& text) -> Finite_ums {
  auto rows = std::vector<std::vector<double>>{};
  auto in = std::istringstream{text};
  auto line = std::string{};
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    auto row = std::vector<double>{};
    auto cells = std::istringstream{line};
    auto cell = std::string{};
    while (std::getline(cells, cell, ',')) {
      row.push_back(parse_csv_double(cell));
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2) {
    throw std::invalid_argument("CSV needs the distance rows and a weights row");
  }
  auto weights = std::move(rows.back());
  rows.pop_back();
  return Finite_ums{matrix_from_rows(rows), std::move(weights)};
}

auto to_json(const Evolve_step_record& rec) -> json {
  return {{"s", rec.s},
          {"fresh", to_json(rec.fresh)},
          {"tall_count", rec.tall_count},
          {"tall_positions", rec.tall_positions},
          {"order_statistics", rec.order_statistics},
          {"gap_maxima", rec.gap_maxima},
          {"pasted_heights", rec.pasted_heights}};
}

auto to_json(const Test_report& r) -> json {
  return {{"name", r.name},
          {"statistic", r.statistic},
          {"threshold", r.threshold},
          {"sizes", r.sizes},
          {"passed", r.passed}};
}

auto matrix_to_csv(const Square_matrix<double>& m) -> std::string {
  auto out = std::string{};
  for (auto i = std::size_t{0}; i < m.size(); ++i) {
    for (auto j = std::size_t{0}; j < m.size(); ++j) {
      if (j > 0) {
        out += ',';
      }
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace combs
