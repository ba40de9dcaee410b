#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "combs/comb.hpp"
#include "combs/stats.hpp"

namespace combs {

struct Suite_result {
  std::string suite;
  std::vector<Test_report> reports;

  auto passed() const -> bool;
};

// Names accepted by run_suite, in the order `verify --suite all` runs them.
auto suite_names() -> const std::vector<std::string>&;

// Throws std::invalid_argument for an unknown name.
auto run_suite(const std::string& name, std::uint64_t seed) -> Suite_result;

// Exact counts are reported with threshold 0.5, so they pass iff zero.

// Partition generator applied to Lf against L applied to the composition
// generator, n = 2..5, 20 random f per (Lambda, n).
auto verify_intertwining(std::uint64_t seed) -> std::vector<Test_report>;

// Time to reach <= k blocks, partition chain vs composition chain, n = 20,
// Beta(2,2), 1e4 replicates, k in {10, 5, 1}.
auto verify_projection(std::uint64_t seed) -> std::vector<Test_report>;

// Merge time of two paintbox points on a 500-tooth Kingman comb against
// Exp(1), 1e5 replicates.
auto verify_kingman_pair(std::uint64_t seed) -> std::vector<Test_report>;

// Hausdorff distance between the empirical interval-partition of an ordered
// paintbox and the comb, maximized over event times and averaged over 100
// replicates, for n = 1e2, 1e3, 1e4.
auto verify_empirical_convergence(std::uint64_t seed) -> std::vector<Test_report>;

// Largest mass after time 0.5 from ten equal components: adjacent-merge
// evolution against one Lambda-comb step at m = 2000, 1e4 replicates.
auto verify_semigroup(std::uint64_t seed) -> std::vector<Test_report>;

// Initial orderings of uniform_consistent_ordering on the star and the
// caterpillar coalescents of [3].
auto verify_uniform_ordering(std::uint64_t seed) -> std::vector<Test_report>;

// Max tooth height, fresh vs one-step-evolved Kingman comb, s = 0.3,
// 500 teeth, 1e4 replicates.
auto verify_evolve_stationarity(std::uint64_t seed) -> std::vector<Test_report>;

// Sampled distance matrices under d and the star metric with one shared
// random stream, 50 points of which 20 have no mass, 100 replicates.
auto verify_star_metric(std::uint64_t seed) -> std::vector<Test_report>;

// The two combs below have the same ranked masses at every time but
// differ in where a point of a 1/9 component at t = 0 sits at t = 1.
auto figure2_left_comb() -> Comb;
auto figure2_right_comb() -> Comb;
auto verify_figure2(std::uint64_t seed) -> std::vector<Test_report>;

// Hausdorff symmetry and triangle inequality, ultrametricity of sampled
// distance matrices, and exact associativity of compose on dyadic bridges.
auto verify_metric_properties(std::uint64_t seed) -> std::vector<Test_report>;

}  // namespace combs
