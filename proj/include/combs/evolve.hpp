#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "combs/comb.hpp"
#include "combs/rng.hpp"

namespace combs {

// Audit trail of one cut-and-paste step.
struct Evolve_step_record {
  Comb fresh = Comb::from_teeth({});
  double s = 0.0;
  std::size_t tall_count = 0;               // fresh teeth with height >= s
  std::vector<double> tall_positions;       // left to right
  std::vector<double> order_statistics;     // tall_count + 1 sorted uniforms
  std::vector<double> gap_maxima;           // sup of the old comb on each gap
  std::vector<double> pasted_heights;       // gap_maxima[k] + s
};

// One step of the evolving Kingman comb at level s > 0. Draws a fresh
// n_teeth Kingman comb, then tall_count + 1 uniforms. The k-th tall fresh
// tooth from the left gets height M_k + s where M_k is the sup of f over the
// k-th open gap between the uniforms. `f` must be tooth-backed.
auto evolving_kingman_step(const Comb& f, double s, Rng& rng, std::size_t n_teeth)
    -> std::pair<Comb, Evolve_step_record>;

struct Stationarity_sample {
  std::vector<double> fresh_heights;
  std::vector<double> evolved_heights;
};

// Per replicate: the max tooth of a fresh Kingman comb, and of a one-step
// evolution of an independent one. Replicate streams derive from one draw of rng.
auto stationarity_sample(std::size_t n_teeth, double s, std::size_t replicates, Rng& rng) -> Stationarity_sample;

// Two-sample KS statistic between the two height samples.
auto stationarity_probe(std::size_t n_teeth, double s, std::size_t replicates, Rng& rng) -> double;

}  // namespace combs
