#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace combs {

// Outcome of one statistical or exact check. passed <=> statistic < threshold.
struct Test_report {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  std::vector<std::size_t> sizes;
  bool passed = false;
};

auto make_report(std::string name, double statistic, double threshold, std::vector<std::size_t> sizes)
    -> Test_report;

// sup_x |F_n(x) - F(x)| for a continuous cdf F. Ties are grouped.
auto ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf) -> double;

// sup over `support` of |F_n(x) - F(x)|, both right-continuous. Exact KS
// distance when F and the samples live on `support`.
auto ks_discrete(std::vector<double> samples, const std::vector<double>& support,
                 const std::function<double(double)>& cdf) -> double;

// sup_x |F_a(x) - F_b(x)|.
auto ks_two_sample(std::vector<double> a, std::vector<double> b) -> double;

// sum (observed - expected)^2 / expected against equal expected counts.
auto chi_square_uniform(const std::vector<double>& counts) -> double;

using Point3 = std::array<double, 3>;

// Energy distance divided by 2 E|X - Y|; 0 for equal laws, at most 1.
// Infinite coordinates are not allowed.
auto energy_coefficient(const std::vector<Point3>& x, const std::vector<Point3>& y) -> double;

namespace serial {
auto energy_coefficient(const std::vector<Point3>& x, const std::vector<Point3>& y) -> double;
}

}  // namespace combs
