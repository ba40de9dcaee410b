#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace combs::cli {

enum Exit_code : int { ok = 0, verification_failed = 1, usage_error = 2 };

// Parsed command line. Fields a command does not use keep their defaults.
struct Run_config {
  std::string command;
  std::uint64_t seed = 0;
  std::string out = "-";  // "-" is stdout
  std::string format = "json";

  std::string input;  // comb or ultrametric file
  std::string lambda = "kingman";
  std::size_t n = 10;
  std::size_t n_teeth = 20;
  std::size_t n_zero = 0;
  std::size_t m = 1000;
  std::size_t steps = 1;
  double s = 0.3;
  double t = 1.0;
  bool ordered = false;
  std::string suite = "all";
};

// Runs one command and returns the process exit code. Artifacts go to
// config.out (or `out` for "-"), diagnostics to `err`.
auto execute(const Run_config& config, std::ostream& out, std::ostream& err) -> int;

// Parses argv (argv[0] is the program name) and executes.
auto run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) -> int;

}  // namespace combs::cli
