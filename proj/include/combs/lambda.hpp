#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "combs/interval_partition.hpp"
#include "combs/paintbox.hpp"
#include "combs/rng.hpp"

namespace combs {

// One term of a finite measure on [0,1]: an atom, or mass * Beta(a, b).
struct Lambda_component {
  enum class Kind { atom, beta };
  Kind kind = Kind::atom;
  double location = 0.0;  // atom only
  double a = 1.0;         // beta only
  double b = 1.0;         // beta only
  double mass = 1.0;
};

class Lambda_measure {
 public:
  static auto kingman(double mass = 1.0) -> Lambda_measure { return atom(0.0, mass); }
  static auto atom(double location, double mass = 1.0) -> Lambda_measure;
  static auto beta(double a, double b, double mass = 1.0) -> Lambda_measure;
  static auto uniform(double mass = 1.0) -> Lambda_measure { return beta(1.0, 1.0, mass); }
  static auto mixture(const std::vector<Lambda_measure>& parts) -> Lambda_measure;

  // "kingman", "uniform", "dirac:p", "beta:a,b", "mix:[spec,...]", each with
  // an optional "*mass" suffix. Throws std::invalid_argument on bad input.
  static auto parse(const std::string& spec) -> Lambda_measure;

  auto components() const -> const std::vector<Lambda_component>& { return components_; }
  auto total_mass() const -> double;

  auto scaled(double factor) const -> Lambda_measure;

 private:
  std::vector<Lambda_component> components_;
};

// lambda_{b,k} = int x^{k-2} (1-x)^{b-k} Lambda(dx), with 0^0 = 1.
auto rate(const Lambda_measure& lambda, std::size_t b, std::size_t k) -> double;
// log of the above; -inf when it is 0. Safe for large b.
auto log_rate(const Lambda_measure& lambda, std::size_t b, std::size_t k) -> double;

// Adjacent-merge rate C(b,k) lambda_{b,k} / (b-k+1).
auto adjacent_rate(const Lambda_measure& lambda, std::size_t b, std::size_t k) -> double;

// Rates for every 2 <= k <= b <= max_blocks, built once. Immutable, so it
// can be shared between threads.
class Rate_table {
 public:
  Rate_table(const Lambda_measure& lambda, std::size_t max_blocks);

  auto max_blocks() const -> std::size_t { return max_blocks_; }

  // sum_k C(b,k) lambda_{b,k}: total merger rate with b blocks.
  auto merger_rate(std::size_t b) const -> double { return rows_.at(b).merger_total; }
  // sum_k (b-k+1) ~lambda_{b,k}: total adjacent-merge rate with b blocks.
  auto window_rate(std::size_t b) const -> double { return rows_.at(b).window_total; }

  // Number of merging blocks, P(k) proportional to C(b,k) lambda_{b,k}.
  auto sample_merger_size(std::size_t b, Rng& rng) const -> std::size_t;
  // Window width, P(k) proportional to (b-k+1) ~lambda_{b,k}.
  auto sample_window_size(std::size_t b, Rng& rng) const -> std::size_t;

 private:
  struct Row {
    std::vector<std::size_t> sizes;  // k with positive weight
    std::vector<double> merger_cdf;
    std::vector<double> window_cdf;
    double merger_total = 0.0;
    double window_total = 0.0;
  };

  std::size_t max_blocks_;
  std::vector<Row> rows_;
};

constexpr auto no_horizon = std::numeric_limits<double>::infinity();

// Lambda-coalescent on n singletons, run until one block remains, the rates
// vanish, or the next event would fall after `horizon`.
auto simulate_partition_chain(const Rate_table& rates, std::size_t n, Rng& rng, double horizon = no_horizon)
    -> Coalescent_trajectory;
auto simulate_partition_chain(const Lambda_measure& lambda, std::size_t n, Rng& rng) -> Coalescent_trajectory;

// Nested composition chain started from uniformly ordered singletons: any k
// adjacent blocks merge at rate ~lambda_{b,k}.
auto simulate_composition_chain(const Rate_table& rates, std::size_t n, Rng& rng, double horizon = no_horizon)
    -> Composition_trajectory;
auto simulate_composition_chain(const Lambda_measure& lambda, std::size_t n, Rng& rng) -> Composition_trajectory;

// Ordered block sizes at time `horizon` of the composition chain started from
// n singletons. Same holding times and windows as simulate_composition_chain
// but does not draw the initial order (sizes do not depend on labels).
// O(n log n) per run.
auto simulate_composition_block_sizes(const Rate_table& rates, std::size_t n, double horizon, Rng& rng)
    -> std::vector<std::size_t>;

// All partitions / compositions of {0..n-1}, in a fixed order.
auto enumerate_partitions(std::size_t n) -> std::vector<Partition>;
auto enumerate_compositions(std::size_t n) -> std::vector<Composition>;

using Composition_function = std::function<double(const Composition&)>;

// Table of i.i.d. uniform(-1, 1) values over the compositions of [n].
auto random_composition_function(std::size_t n, Rng& rng) -> Composition_function;

// max over partitions pi of |G_part (L f)(pi) - L (G_comp f)(pi)|, where
// G_part is the Lambda-coalescent generator (rates lambda_{b,k}), G_comp the
// adjacent-merge generator on compositions (rates ~lambda_{b,k}) and L f(pi)
// the mean of f over the orderings of the blocks of pi. n must be in [1, 6].
auto intertwining_check(const Lambda_measure& lambda, std::size_t n, const Composition_function& f) -> double;

}  // namespace combs
