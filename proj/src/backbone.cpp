#include "combs/backbone.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "combs/lambda.hpp"
#include "combs/paintbox.hpp"

namespace combs {

namespace {

void check_structure(const Square_matrix<double>& d) {
  auto n = d.size();
  for (auto i = std::size_t{0}; i < n; ++i) {
    if (d(i, i) != 0.0) {
      throw std::invalid_argument("distance matrix must have a zero diagonal");
    }
    for (auto j = i + 1; j < n; ++j) {
      if (not(d(i, j) >= 0.0) or not std::isfinite(d(i, j))) {
        throw std::invalid_argument("distances must be finite and nonnegative");
      }
      if (d(i, j) != d(j, i)) {
        throw std::invalid_argument("distance matrix must be symmetric");
      }
    }
  }
}

auto row_ok(const Square_matrix<double>& d, std::size_t x) -> bool {
  auto n = d.size();
  for (auto y = std::size_t{0}; y < n; ++y) {
    for (auto z = std::size_t{0}; z < n; ++z) {
      if (d(x, y) > std::max(d(x, z), d(z, y))) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

auto validate_ultrametric(const Square_matrix<double>& dist) -> bool {
  check_structure(dist);
  auto n = static_cast<std::int64_t>(dist.size());
  auto ok = 1;
#pragma omp parallel for schedule(static) reduction(&& : ok)
  for (auto x = std::int64_t{0}; x < n; ++x) {
    ok = ok && row_ok(dist, static_cast<std::size_t>(x));
  }
  return ok != 0;
}

namespace serial {

auto validate_ultrametric(const Square_matrix<double>& dist) -> bool {
  check_structure(dist);
  for (auto x = std::size_t{0}; x < dist.size(); ++x) {
    if (not row_ok(dist, x)) {
      return false;
    }
  }
  return true;
}

}  // namespace serial

Finite_ums::Finite_ums(Square_matrix<double> dist, std::vector<double> weights)
    : dist_{std::move(dist)}, weights_{std::move(weights)} {
  if (weights_.empty() or weights_.size() != dist_.size()) {
    throw std::invalid_argument("weights must match the distance matrix");
  }
  auto total = 0.0;
  for (auto w : weights_) {
    if (not(w >= 0.0) or not std::isfinite(w)) {
      throw std::invalid_argument("weights must be nonnegative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("weights must sum to 1");
  }
  if (not validate_ultrametric(dist_)) {
    throw std::invalid_argument("distance matrix is not ultrametric");
  }
}

auto height_function(const Finite_ums& u) -> std::vector<double> {
  auto n = u.size();
  auto f = std::vector<double>(n, std::numeric_limits<double>::infinity());
  for (auto x = std::size_t{0}; x < n; ++x) {
    if (u.weights()[x] > 0.0) {
      f[x] = 0.0;
      continue;
    }
    for (auto y = std::size_t{0}; y < n; ++y) {
      if (u.weights()[y] > 0.0) {
        f[x] = std::min(f[x], u.dist()(x, y));
      }
    }
  }
  return f;
}

auto star_metric(const Finite_ums& u) -> Square_matrix<double> {
  auto f = height_function(u);
  auto n = u.size();
  auto out = Square_matrix<double>(n, 0.0);
  for (auto x = std::size_t{0}; x < n; ++x) {
    for (auto y = std::size_t{0}; y < n; ++y) {
      if (x != y) {
        out(x, y) = std::max(u.dist()(x, y), f[x]);
      }
    }
  }
  return out;
}

auto tree_distance(double d, double s, double t) -> double {
  if (not(s >= 0.0 and t >= 0.0)) {
    throw std::invalid_argument("tree heights must be nonnegative");
  }
  return std::max(d - 0.5 * (s + t), 0.5 * std::abs(t - s));
}

auto backbone_distance(const Finite_ums& u, std::size_t x, std::size_t y) -> double {
  auto f = height_function(u);
  return tree_distance(u.dist().at(x, y), f.at(x), f.at(y));
}

auto sample_indices(const Finite_ums& u, std::size_t n, Rng& rng) -> std::vector<std::size_t> {
  const auto& w = u.weights();
  auto cum = std::vector<double>(w.size());
  auto acc = 0.0;
  auto last_positive = std::size_t{0};
  for (auto i = std::size_t{0}; i < w.size(); ++i) {
    acc += w[i];
    cum[i] = acc;
    if (w[i] > 0.0) {
      last_positive = i;
    }
  }
  auto out = std::vector<std::size_t>(n);
  for (auto& idx : out) {
    auto target = rng.uniform() * acc;
    auto i = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), target) - cum.begin());
    idx = std::min(i, last_positive);
  }
  return out;
}

auto sample_distance_matrix(const Finite_ums& u, std::size_t n, Rng& rng, Sample_metric metric)
    -> Square_matrix<double> {
  if (n == 0) {
    throw std::invalid_argument("need at least one sample");
  }
  auto idx = sample_indices(u, n, rng);
  auto star = metric == Sample_metric::star ? star_metric(u) : Square_matrix<double>{};
  const auto& d = metric == Sample_metric::star ? star : u.dist();
  auto out = Square_matrix<double>(n, 0.0);
  for (auto i = std::size_t{0}; i < n; ++i) {
    for (auto j = std::size_t{0}; j < n; ++j) {
      if (idx[i] != idx[j]) {
        out(i, j) = d(idx[i], idx[j]);
      }
    }
  }
  return out;
}

auto random_finite_ums(std::size_t n, std::size_t n_zero, Rng& rng) -> Finite_ums {
  if (n == 0 or n_zero >= n) {
    throw std::invalid_argument("random_finite_ums needs 0 <= n_zero < n");
  }
  auto traj = simulate_partition_chain(Lambda_measure::kingman(), n, rng);
  auto dist = cophenetic_matrix(traj);
  auto order = std::vector<std::size_t>(n);
  for (auto i = std::size_t{0}; i < n; ++i) {
    order[i] = i;
  }
  for (auto i = std::size_t{0}; i < n_zero; ++i) {
    std::swap(order[i], order[i + static_cast<std::size_t>(rng.uniform_index(n - i))]);
  }
  auto weights = std::vector<double>(n, 0.0);
  auto total = 0.0;
  for (auto i = n_zero; i < n; ++i) {
    weights[order[i]] = rng.uniform_open();
    total += weights[order[i]];
  }
  for (auto& w : weights) {
    w /= total;
  }
  // Renormalizing may leave the sum off by a few ulps; push it onto one entry.
  auto sum = 0.0;
  for (auto w : weights) {
    sum += w;
  }
  weights[order[n_zero]] += 1.0 - sum;
  return Finite_ums{std::move(dist), std::move(weights)};
}

auto gromov_weak_compare(const Finite_ums& a, const Finite_ums& b, std::size_t n_samples, std::size_t replicates,
                         Rng& rng, double ks_threshold, double energy_threshold) -> Gromov_weak_report {
  if (n_samples < 3 or replicates == 0) {
    throw std::invalid_argument("gromov_weak_compare needs n_samples >= 3 and replicates >= 1");
  }
  auto collect = [&](const Finite_ums& u, std::vector<double>& pairs, std::vector<Point3>& triples) {
    for (auto r = std::size_t{0}; r < replicates; ++r) {
      auto idx = sample_indices(u, n_samples, rng);
      auto d = [&](std::size_t i, std::size_t j) { return idx[i] == idx[j] ? 0.0 : u.dist()(idx[i], idx[j]); };
      for (auto i = std::size_t{0}; i + 1 < n_samples; i += 2) {
        pairs.push_back(d(i, i + 1));
      }
      for (auto i = std::size_t{0}; i + 2 < n_samples; i += 3) {
        triples.push_back({d(i, i + 1), d(i, i + 2), d(i + 1, i + 2)});
      }
    }
  };
  auto pa = std::vector<double>{};
  auto pb = std::vector<double>{};
  auto ta = std::vector<Point3>{};
  auto tb = std::vector<Point3>{};
  collect(a, pa, ta);
  collect(b, pb, tb);
  return {make_report("pair-distance KS", ks_two_sample(pa, pb), ks_threshold, {pa.size(), pb.size()}),
          make_report("triple energy coefficient", energy_coefficient(ta, tb), energy_threshold,
                      {ta.size(), tb.size()})};
}

}  // namespace combs
