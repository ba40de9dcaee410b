#include "combs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace combs {

auto make_report(std::string name, double statistic, double threshold, std::vector<std::size_t> sizes)
    -> Test_report {
  return {std::move(name), statistic, threshold, std::move(sizes), statistic < threshold};
}

auto ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf) -> double {
  if (samples.empty()) {
    throw std::invalid_argument("ks_one_sample needs at least one sample");
  }
  std::sort(samples.begin(), samples.end());
  auto n = static_cast<double>(samples.size());
  auto d = 0.0;
  auto i = std::size_t{0};
  while (i < samples.size()) {
    auto j = i;
    while (j < samples.size() and samples[j] == samples[i]) {
      ++j;
    }
    auto f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(j) / n - f, f - static_cast<double>(i) / n});
    i = j;
  }
  return d;
}

auto ks_discrete(std::vector<double> samples, const std::vector<double>& support,
                 const std::function<double(double)>& cdf) -> double {
  if (samples.empty()) {
    throw std::invalid_argument("ks_discrete needs at least one sample");
  }
  std::sort(samples.begin(), samples.end());
  auto n = static_cast<double>(samples.size());
  auto d = 0.0;
  for (auto x : support) {
    auto count = std::upper_bound(samples.begin(), samples.end(), x) - samples.begin();
    d = std::max(d, std::abs(static_cast<double>(count) / n - cdf(x)));
  }
  return d;
}

auto ks_two_sample(std::vector<double> a, std::vector<double> b) -> double {
  if (a.empty() or b.empty()) {
    throw std::invalid_argument("ks_two_sample needs nonempty samples");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  auto na = static_cast<double>(a.size());
  auto nb = static_cast<double>(b.size());
  auto i = std::size_t{0};
  auto j = std::size_t{0};
  auto d = 0.0;
  while (i < a.size() or j < b.size()) {
    auto x = j == b.size() or (i < a.size() and a[i] <= b[j]) ? a[i] : b[j];
    while (i < a.size() and a[i] == x) {
      ++i;
    }
    while (j < b.size() and b[j] == x) {
      ++j;
    }
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

auto chi_square_uniform(const std::vector<double>& counts) -> double {
  if (counts.size() < 2) {
    throw std::invalid_argument("chi_square_uniform needs at least two categories");
  }
  auto total = 0.0;
  for (auto c : counts) {
    total += c;
  }
  if (not(total > 0.0)) {
    throw std::invalid_argument("chi_square_uniform needs a positive total");
  }
  auto expected = total / static_cast<double>(counts.size());
  auto chi = 0.0;
  for (auto c : counts) {
    chi += (c - expected) * (c - expected) / expected;
  }
  return chi;
}

namespace {

auto dist(const Point3& p, const Point3& q) -> double {
  return std::sqrt((p[0] - q[0]) * (p[0] - q[0]) + (p[1] - q[1]) * (p[1] - q[1]) + (p[2] - q[2]) * (p[2] - q[2]));
}

void check_points(const std::vector<Point3>& x, const std::vector<Point3>& y) {
  if (x.empty() or y.empty()) {
    throw std::invalid_argument("energy_coefficient needs nonempty samples");
  }
  for (const auto* v : {&x, &y}) {
    for (const auto& p : *v) {
      for (auto c : p) {
        if (not std::isfinite(c)) {
          throw std::invalid_argument("energy_coefficient needs finite coordinates");
        }
      }
    }
  }
}

auto combine(double xy, double xx, double yy) -> double {
  if (xy == 0.0) {
    return 0.0;
  }
  return (2.0 * xy - xx - yy) / (2.0 * xy);
}

// Mean pairwise distance; rows are summed separately and then added in order
// so that the result does not depend on the thread count.
auto mean_cross(const std::vector<Point3>& x, const std::vector<Point3>& y, bool parallel) -> double {
  auto rows = std::vector<double>(x.size(), 0.0);
  auto nx = static_cast<std::int64_t>(x.size());
#pragma omp parallel for schedule(static) if (parallel)
  for (auto i = std::int64_t{0}; i < nx; ++i) {
    auto acc = 0.0;
    for (const auto& q : y) {
      acc += dist(x[static_cast<std::size_t>(i)], q);
    }
    rows[static_cast<std::size_t>(i)] = acc;
  }
  auto total = 0.0;
  for (auto r : rows) {
    total += r;
  }
  return total / (static_cast<double>(x.size()) * static_cast<double>(y.size()));
}

}  // namespace

auto energy_coefficient(const std::vector<Point3>& x, const std::vector<Point3>& y) -> double {
  check_points(x, y);
  return combine(mean_cross(x, y, true), mean_cross(x, x, true), mean_cross(y, y, true));
}

namespace serial {

auto energy_coefficient(const std::vector<Point3>& x, const std::vector<Point3>& y) -> double {
  check_points(x, y);
  return combine(mean_cross(x, y, false), mean_cross(x, x, false), mean_cross(y, y, false));
}

}  // namespace serial

}  // namespace combs
