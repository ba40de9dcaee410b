#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "combs/backbone.hpp"
#include "combs/bridge.hpp"
#include "combs/comb.hpp"
#include "combs/evolve.hpp"
#include "combs/io.hpp"
#include "combs/lambda.hpp"
#include "combs/paintbox.hpp"
#include "combs/svg.hpp"
#include "combs/verify.hpp"

namespace combs::cli {

namespace {

struct Usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_format(const Run_config& c, std::initializer_list<const char*> allowed) {
  for (const auto* f : allowed) {
    if (c.format == f) {
      return;
    }
  }
  throw Usage_error("format '" + c.format + "' is not supported by " + c.command);
}

auto read_file(const std::string& path) -> std::string {
  auto in = std::ifstream{path, std::ios::binary};
  if (not in) {
    throw Usage_error("cannot read '" + path + "'");
  }
  auto ss = std::ostringstream{};
  ss << in.rdbuf();
  return ss.str();
}

void write_artifact(const Run_config& c, const std::string& text, std::ostream& out) {
  if (c.out == "-") {
    out << text;
    return;
  }
  auto file = std::ofstream{c.out, std::ios::binary | std::ios::trunc};
  file << text;
  file.close();
  if (not file) {
    throw Usage_error("cannot write '" + c.out + "'");
  }
}

auto dump(const json& j) -> std::string { return j.dump(2) + "\n"; }

auto load_comb(const std::string& path) -> Comb { return comb_from_json(json::parse(read_file(path))); }

auto matrix_json(const Square_matrix<double>& m) -> json {
  auto rows = json::array();
  for (auto i = std::size_t{0}; i < m.size(); ++i) {
    auto row = json::array();
    for (auto j = std::size_t{0}; j < m.size(); ++j) {
      row.push_back(m(i, j));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

auto comb_artifact(const Run_config& c, const Comb& comb) -> std::string {
  return c.format == "svg" ? render_svg(comb) : dump(to_json(comb));
}

auto cmd_kingman_comb(const Run_config& c) -> std::string {
  require_format(c, {"json", "svg"});
  if (c.n_teeth == 0) {
    throw Usage_error("--n-teeth must be at least 1");
  }
  auto rng = Rng{c.seed};
  return comb_artifact(c, sample_kingman_comb(rng, c.n_teeth));
}

auto cmd_lambda_sim(const Run_config& c) -> std::string {
  require_format(c, {"json"});
  auto lambda = Lambda_measure::parse(c.lambda);
  if (c.n == 0) {
    throw Usage_error("--n must be at least 1");
  }
  auto rng = Rng{c.seed};
  auto rates = Rate_table{lambda, c.n};
  auto j = c.ordered ? to_json(simulate_composition_chain(rates, c.n, rng))
                     : to_json(simulate_partition_chain(rates, c.n, rng));
  return dump(j);
}

auto cmd_paintbox(const Run_config& c) -> std::string {
  require_format(c, {"json", "csv"});
  if (c.n == 0) {
    throw Usage_error("--n must be at least 1");
  }
  auto rng = Rng{c.seed};
  auto comb = c.input.empty() ? sample_kingman_comb(rng, c.n_teeth) : load_comb(c.input);
  auto positions = std::vector<double>{};
  auto j = json{};
  if (c.ordered) {
    auto sample = ordered_paintbox(comb, c.n, rng);
    positions = sample.positions;
    j = {{"positions", positions}, {"trajectory", to_json(sample.trajectory)}};
  } else {
    auto sample = paintbox_sample(comb, c.n, rng);
    positions = sample.positions;
    j = {{"positions", positions}, {"trajectory", to_json(sample.trajectory)}};
  }
  if (c.format == "csv") {
    return matrix_to_csv(distance_matrix(positions, comb));
  }
  return dump(j);
}

auto cmd_lambda_comb(const Run_config& c) -> std::string {
  require_format(c, {"json", "svg"});
  if (c.steps == 0 or not(c.t > 0.0) or c.m == 0) {
    throw Usage_error("lambda-comb needs --steps >= 1, --t > 0 and --m >= 1");
  }
  auto lambda = Lambda_measure::parse(c.lambda);
  auto times = std::vector<double>{0.0};
  for (auto k = std::size_t{1}; k <= c.steps; ++k) {
    times.push_back(c.t * static_cast<double>(k) / static_cast<double>(c.steps));
  }
  auto rng = Rng{c.seed};
  return comb_artifact(c, flow_comb(Rate_table{lambda, c.m}, times, c.m, rng));
}

auto cmd_evolve(const Run_config& c) -> std::string {
  require_format(c, {"json", "svg"});
  if (c.n_teeth == 0 or not(c.s > 0.0)) {
    throw Usage_error("evolve needs --n-teeth >= 1 and --s > 0");
  }
  auto rng = Rng{c.seed};
  auto comb = sample_kingman_comb(rng, c.n_teeth);
  auto frames = json::array();
  frames.push_back({{"comb", to_json(comb)}});
  for (auto k = std::size_t{0}; k < c.steps; ++k) {
    auto [next, record] = evolving_kingman_step(comb, c.s, rng, c.n_teeth);
    comb = std::move(next);
    frames.push_back({{"comb", to_json(comb)}, {"record", to_json(record)}});
  }
  if (c.format == "svg") {
    return render_svg(comb);
  }
  return dump({{"frames", std::move(frames)}});
}

auto cmd_backbone(const Run_config& c) -> std::string {
  require_format(c, {"json", "csv"});
  auto rng = Rng{c.seed};
  auto load = [&]() {
    if (c.input.empty()) {
      return random_finite_ums(c.n, c.n_zero, rng);
    }
    auto text = read_file(c.input);
    if (c.input.size() >= 4 and c.input.compare(c.input.size() - 4, 4, ".csv") == 0) {
      return finite_ums_from_csv(text);
    }
    return finite_ums_from_json(json::parse(text));
  };
  auto u = load();
  auto star = star_metric(u);
  if (c.format == "csv") {
    return matrix_to_csv(star);
  }
  auto backbone = Square_matrix<double>(u.size(), 0.0);
  for (auto x = std::size_t{0}; x < u.size(); ++x) {
    for (auto y = std::size_t{0}; y < u.size(); ++y) {
      backbone(x, y) = backbone_distance(u, x, y);
    }
  }
  return dump({{"ums", to_json(u)},
               {"height", height_function(u)},
               {"star", matrix_json(star)},
               {"backbone", matrix_json(backbone)}});
}

auto cmd_render(const Run_config& c) -> std::string {
  if (c.input.empty()) {
    throw Usage_error("render needs --comb");
  }
  return render_svg(load_comb(c.input));
}

auto cmd_verify(const Run_config& c, std::ostream& err, bool& passed) -> std::string {
  require_format(c, {"json"});
  auto names = c.suite == "all" ? suite_names() : std::vector<std::string>{c.suite};
  auto results = std::vector<Suite_result>{};
  for (const auto& name : names) {
    try {
      results.push_back(run_suite(name, c.seed));
    } catch (const std::invalid_argument& e) {
      throw Usage_error(e.what());
    }
  }
  passed = true;
  auto suites = json::array();
  for (const auto& r : results) {
    auto reports = json::array();
    for (const auto& rep : r.reports) {
      reports.push_back(to_json(rep));
      err << (rep.passed ? "PASS " : "FAIL ") << r.suite << ": " << rep.name << " = " << format_double(rep.statistic)
          << " (threshold " << format_double(rep.threshold) << ")\n";
    }
    passed = passed and r.passed();
    suites.push_back({{"suite", r.suite}, {"passed", r.passed()}, {"reports", std::move(reports)}});
  }
  return dump({{"seed", c.seed}, {"passed", passed}, {"suites", std::move(suites)}});
}

}  // namespace

auto execute(const Run_config& config, std::ostream& out, std::ostream& err) -> int {
  try {
    auto passed = true;
    auto text = std::string{};
    const auto& cmd = config.command;
    if (cmd == "kingman-comb") {
      text = cmd_kingman_comb(config);
    } else if (cmd == "lambda-sim") {
      text = cmd_lambda_sim(config);
    } else if (cmd == "paintbox") {
      text = cmd_paintbox(config);
    } else if (cmd == "lambda-comb") {
      text = cmd_lambda_comb(config);
    } else if (cmd == "evolve") {
      text = cmd_evolve(config);
    } else if (cmd == "backbone") {
      text = cmd_backbone(config);
    } else if (cmd == "verify") {
      text = cmd_verify(config, err, passed);
    } else if (cmd == "render") {
      text = cmd_render(config);
    } else {
      throw Usage_error("unknown command '" + cmd + "'");
    }
    write_artifact(config, text, out);
    return passed ? ok : verification_failed;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
  } catch (const Usage_error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
  }
  return usage_error;
}

auto run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) -> int {
  auto c = Run_config{};
  auto app = CLI::App{"Simulate and check combs, Lambda-coalescents and their orderings."};
  app.require_subcommand(1);
  app.add_option("--seed", c.seed, "Master seed")->capture_default_str();
  app.add_option("--out", c.out, "Output path, - for stdout")->capture_default_str();
  app.add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "svg"}))
      ->capture_default_str();

  auto* kingman = app.add_subcommand("kingman-comb", "Sample a truncated Kingman comb")->fallthrough();
  kingman->add_option("--n-teeth", c.n_teeth)->capture_default_str();

  auto* sim = app.add_subcommand("lambda-sim", "Run the Lambda-coalescent or its adjacent-merge chain")->fallthrough();
  sim->add_option("--lambda", c.lambda, "kingman, uniform, dirac:p, beta:a,b, mix:[...]")->capture_default_str();
  sim->add_option("--n", c.n)->capture_default_str();
  sim->add_flag("--ordered", c.ordered, "Run the composition chain");

  auto* paint = app.add_subcommand("paintbox", "Paintbox coalescent of uniform points on a comb")->fallthrough();
  paint->add_option("--comb", c.input, "Comb JSON; a Kingman comb is sampled if absent");
  paint->add_option("--n", c.n)->capture_default_str();
  paint->add_option("--n-teeth", c.n_teeth)->capture_default_str();
  paint->add_flag("--ordered", c.ordered, "Keep the left-to-right block order");

  auto* lcomb = app.add_subcommand("lambda-comb", "Lambda-comb on a regular time grid")->fallthrough();
  lcomb->add_option("--lambda", c.lambda)->capture_default_str();
  lcomb->add_option("--t", c.t, "Final time")->capture_default_str();
  lcomb->add_option("--steps", c.steps, "Grid steps")->capture_default_str();
  lcomb->add_option("--m", c.m, "Resolution of the increment bridges")->capture_default_str();

  auto* evolve = app.add_subcommand("evolve", "Evolving Kingman comb")->fallthrough();
  evolve->add_option("--n-teeth", c.n_teeth)->capture_default_str();
  evolve->add_option("--s", c.s)->capture_default_str();
  evolve->add_option("--steps", c.steps)->capture_default_str();

  auto* backbone = app.add_subcommand("backbone", "Height function and star metric of a finite ultrametric space")
                       ->fallthrough();
  backbone->add_option("--ums", c.input, "JSON or .csv; a random space is used if absent");
  backbone->add_option("--n", c.n)->capture_default_str();
  backbone->add_option("--n-zero", c.n_zero)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run a verification suite")->fallthrough();
  verify->add_option("--suite", c.suite, "Suite name or all")->capture_default_str();

  auto* render = app.add_subcommand("render", "Render a comb JSON file as SVG")->fallthrough();
  render->add_option("--comb", c.input)->required();

  auto argv = std::vector<const char*>{};
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return ok;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return usage_error;
  }
  c.command = app.get_subcommands().front()->get_name();
  if (c.command == "render") {
    c.format = "svg";
  }
  return execute(c, out, err);
}

}  // namespace combs::cli
