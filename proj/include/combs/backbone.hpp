#pragma once

#include <cstddef>
#include <vector>

#include "combs/matrix.hpp"
#include "combs/rng.hpp"
#include "combs/stats.hpp"

namespace combs {

// True iff d(x,y) <= max(d(x,z), d(z,y)) for all triples. Throws
// std::invalid_argument on asymmetric, negative, non-finite entries or a
// nonzero diagonal.
auto validate_ultrametric(const Square_matrix<double>& dist) -> bool;

namespace serial {
auto validate_ultrametric(const Square_matrix<double>& dist) -> bool;
}

// Finite ultrametric measure space.
class Finite_ums {
 public:
  // Throws unless dist is a valid ultrametric and weights are nonnegative,
  // sum to 1 within 1e-12 and have the matrix's size.
  Finite_ums(Square_matrix<double> dist, std::vector<double> weights);

  auto size() const -> std::size_t { return weights_.size(); }
  auto dist() const -> const Square_matrix<double>& { return dist_; }
  auto weights() const -> const std::vector<double>& { return weights_; }

 private:
  Square_matrix<double> dist_;
  std::vector<double> weights_;
};

// f(x) = 0 if x has mass, else the distance to the nearest point with mass.
auto height_function(const Finite_ums& u) -> std::vector<double>;

// d~(x,y) = max(d(x,y), f(x)) for x != y.
auto star_metric(const Finite_ums& u) -> Square_matrix<double>;

// Distance between (x, s) and (y, t) in the tree, given d = d(x, y).
auto tree_distance(double d, double s, double t) -> double;

// tree_distance between (x, f(x)) and (y, f(y)).
auto backbone_distance(const Finite_ums& u, std::size_t x, std::size_t y) -> double;

enum class Sample_metric { plain, star };

// n i.i.d. indices drawn by weight (one uniform each).
auto sample_indices(const Finite_ums& u, std::size_t n, Rng& rng) -> std::vector<std::size_t>;

auto sample_distance_matrix(const Finite_ums& u, std::size_t n, Rng& rng, Sample_metric metric) -> Square_matrix<double>;

// Ultrametric from the cophenetic matrix of a Kingman coalescent on n
// points; n_zero uniformly chosen points get weight 0, the rest i.i.d.
// uniform weights, normalized.
auto random_finite_ums(std::size_t n, std::size_t n_zero, Rng& rng) -> Finite_ums;

struct Gromov_weak_report {
  Test_report pair_distance;  // two-sample KS on d(X1, X2)
  Test_report triple;         // energy coefficient on (d12, d13, d23)
  auto passed() const -> bool { return pair_distance.passed and triple.passed; }
};

// Each replicate draws n_samples >= 3 points from each space; disjoint pairs
// feed the pair-distance sample and disjoint triples the triple sample.
// Statistical only: equal laws pass with high probability.
auto gromov_weak_compare(const Finite_ums& a, const Finite_ums& b, std::size_t n_samples, std::size_t replicates,
                         Rng& rng, double ks_threshold = 0.02, double energy_threshold = 0.01) -> Gromov_weak_report;

}  // namespace combs
