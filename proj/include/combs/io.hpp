#pragma once

#include <string>

#include <json.hpp>

#include "combs/backbone.hpp"
#include "combs/bridge.hpp"
#include "combs/comb.hpp"
#include "combs/evolve.hpp"
#include "combs/interval_partition.hpp"
#include "combs/matrix.hpp"
#include "combs/paintbox.hpp"
#include "combs/stats.hpp"

namespace combs {

using json = nlohmann::json;

// {"components": [[l, r], ...]}
auto to_json(const Interval_partition& p) -> json;
auto interval_partition_from_json(const json& j) -> Interval_partition;

// {"events": [{"t": t, "partition": {...}}, ...], "teeth": [[pos, h], ...]}
// "teeth" is present only for tooth-backed combs, and then rebuilds the comb.
auto to_json(const Comb& c) -> json;
auto comb_from_json(const json& j) -> Comb;

// {"events": [{"t": t, "blocks": [[1, 2], [3]]}, ...]}, labels 1-based.
auto to_json(const Coalescent_trajectory& traj) -> json;
auto to_json(const Composition_trajectory& traj) -> json;

// {"drift": d, "jumps": [[v, s], ...]}
auto to_json(const Bridge& b) -> json;
auto bridge_from_json(const json& j) -> Bridge;

// {"dist": [[...]], "weights": [...]}
auto to_json(const Finite_ums& u) -> json;
auto finite_ums_from_json(const json& j) -> Finite_ums;

// n rows of n distances followed by one row of weights.
auto finite_ums_from_csv(const std::string& text) -> Finite_ums;

auto to_json(const Evolve_step_record& rec) -> json;
auto to_json(const Test_report& r) -> json;

// Comma separated rows, "inf" for +infinity, full precision.
auto matrix_to_csv(const Square_matrix<double>& m) -> std::string;

// Shortest text that reads back to the same double; "inf" for +infinity.
auto format_double(double x) -> std::string;

}  // namespace combs
