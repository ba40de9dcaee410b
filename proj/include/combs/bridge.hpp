#pragma once

#include <cstddef>
#include <vector>

#include "combs/comb.hpp"
#include "combs/interval_partition.hpp"
#include "combs/lambda.hpp"
#include "combs/rng.hpp"

namespace combs {

struct Jump {
  double location = 1.0;  // in (0, 1]
  double size = 0.0;      // > 0

  friend auto operator==(const Jump&, const Jump&) -> bool = default;
};

// B(x) = drift * x + sum of sizes of jumps with location <= x.
// Invariant: drift + sum of sizes = 1 within 1e-12.
class Bridge {
 public:
  // Identity.
  Bridge() = default;
  // Jumps need not be sorted; locations must be distinct. Throws on
  // violated invariants.
  Bridge(double drift, std::vector<Jump> jumps);

  static auto identity() -> Bridge { return Bridge{}; }

  auto drift() const -> double { return drift_; }
  // Sorted by location.
  auto jumps() const -> const std::vector<Jump>& { return jumps_; }

  auto eval(double x) const -> double;
  // B(x-).
  auto left_limit(double x) const -> double;
  // inf{x : B(x) > y}, and 1 at y = 1.
  auto inverse(double y) const -> double;

  friend auto operator==(const Bridge&, const Bridge&) -> bool = default;

 private:
  // Sum of sizes of the first i jumps.
  auto cumulative(std::size_t i) const -> double { return cum_[i]; }

  double drift_ = 1.0;
  std::vector<Jump> jumps_;
  std::vector<double> cum_{0.0};
};

// The open gaps (B(v-), B(v)) of the range of B.
auto interval_partition_of(const Bridge& b) -> Interval_partition;

// x -> outer(inner(x)).
auto compose(const Bridge& outer, const Bridge& inner) -> Bridge;

// Jumps at the order statistics of K uniforms with the component lengths of
// I in left-to-right order; drift = dust of I (0 below 1e-12).
auto bridge_from_interval_partition(const Interval_partition& p, Rng& rng) -> Bridge;

// Same, with the masses placed in uniformly random order. Draws the
// permutation first, then the locations.
auto bridge_from_mass_partition(const std::vector<double>& masses, Rng& rng) -> Bridge;

// interval_partition_of(compose(r, inner)) computed by merging runs of the
// components of p, so that the result is nested in p exactly. The k-th jump
// of r must correspond to the k-th component of p.
auto coarsen(const Interval_partition& p, const Bridge& r, const Bridge& inner) -> Interval_partition;

// Any k adjacent components merge at rate ~lambda_{b,k}, started from a
// dust-free p, up to time `horizon`. The comb has one event per merger.
auto adjacent_merge_trajectory(const Interval_partition& p, const Rate_table& rates, double horizon, Rng& rng) -> Comb;

auto adjacent_merge_evolution(const Interval_partition& p, const Lambda_measure& lambda, double t, Rng& rng)
    -> Interval_partition;
auto adjacent_merge_evolution(const Interval_partition& p, const Rate_table& rates, double t, Rng& rng)
    -> Interval_partition;

// Bridge of the empirical interval-partition of the composition chain on m
// singletons at time s.
auto empirical_lambda_bridge(const Rate_table& rates, std::size_t m, double s, Rng& rng) -> Bridge;

// One transition of the Lambda-comb: I(B^p o B'_s) with B'_s at resolution m.
// Needs rates.max_blocks() >= m >= p.size().
auto lambda_comb_step(const Interval_partition& p, const Rate_table& rates, double s, std::size_t m, Rng& rng)
    -> Interval_partition;
auto lambda_comb_step(const Interval_partition& p, const Lambda_measure& lambda, double s, std::size_t m, Rng& rng)
    -> Interval_partition;

// Lambda-comb on a time grid starting at 0, by composing independent
// increment bridges. Event k is at times[k].
auto flow_comb(const Rate_table& rates, const std::vector<double>& times, std::size_t m, Rng& rng) -> Comb;
auto flow_comb(const Lambda_measure& lambda, const std::vector<double>& times, std::size_t m, Rng& rng) -> Comb;

}  // namespace combs
