#include "combs/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "combs/backbone.hpp"
#include "combs/bridge.hpp"
#include "combs/evolve.hpp"
#include "combs/lambda.hpp"
#include "combs/paintbox.hpp"
#include "combs/parallel.hpp"

namespace combs {

namespace {

constexpr auto exact = 0.5;

auto hitting_time(const Coalescent_trajectory& traj, std::size_t k) -> double {
  for (const auto& e : traj.events()) {
    if (e.value.block_count() <= k) {
      return e.time;
    }
  }
  return std::numeric_limits<double>::infinity();
}

auto largest_mass(const Interval_partition& p) -> double {
  auto m = mass_partition(p);
  // Both routes build lengths from the same endpoints; rounding only guards
  // against a stray ulp splitting a tie in the KS statistic.
  return m.empty() ? 0.0 : std::round(m.front() * 1e12) / 1e12;
}

auto random_interval_partition(Rng& rng) -> Interval_partition {
  auto k = static_cast<std::size_t>(rng.uniform_index(5));
  auto pts = draw_distinct_uniforms(rng, 2 * k);
  std::sort(pts.begin(), pts.end());
  auto comps = std::vector<Interval>{};
  for (auto i = std::size_t{0}; i < k; ++i) {
    auto left = pts[2 * i];
    if (i > 0 and rng.uniform() < 0.5) {
      left = comps.back().right;
    }
    comps.push_back({left, pts[2 * i + 1]});
  }
  return Interval_partition{std::move(comps)};
}

// Drift in {0, 1/4, 1/2, 1} and everything else a multiple of 1/64, so that
// compose never rounds.
auto random_dyadic_bridge(Rng& rng) -> Bridge {
  constexpr auto drifts = std::array{0.0, 0.25, 0.5, 1.0};
  auto drift = drifts[rng.uniform_index(drifts.size())];
  auto units = static_cast<std::size_t>(64.0 * (1.0 - drift));
  if (units == 0) {
    return Bridge::identity();
  }
  auto count = 1 + static_cast<std::size_t>(rng.uniform_index(std::min<std::size_t>(units, 5)));
  auto cuts = std::set<std::size_t>{};
  while (cuts.size() + 1 < count) {
    cuts.insert(1 + static_cast<std::size_t>(rng.uniform_index(units - 1)));
  }
  cuts.insert(units);
  auto locations = std::set<std::size_t>{};
  while (locations.size() < count) {
    locations.insert(1 + static_cast<std::size_t>(rng.uniform_index(64)));
  }
  auto jumps = std::vector<Jump>{};
  auto prev = std::size_t{0};
  auto loc = locations.begin();
  for (auto c : cuts) {
    jumps.push_back({static_cast<double>(*loc++) / 64.0, static_cast<double>(c - prev) / 64.0});
    prev = c;
  }
  return Bridge{drift, std::move(jumps)};
}

}  // namespace

auto Suite_result::passed() const -> bool {
  return std::all_of(reports.begin(), reports.end(), [](const Test_report& r) { return r.passed; });
}

auto suite_names() -> const std::vector<std::string>& {
  static const auto names = std::vector<std::string>{
      "intertwining", "projection",  "kingman-pair", "empirical-convergence", "semigroup",
      "uniform-ordering", "evolve-stationarity", "star-metric", "figure2", "metric-properties"};
  return names;
}

auto run_suite(const std::string& name, std::uint64_t seed) -> Suite_result {
  using Fn = std::vector<Test_report> (*)(std::uint64_t);
  static const auto table = std::map<std::string, Fn>{
      {"intertwining", verify_intertwining},
      {"projection", verify_projection},
      {"kingman-pair", verify_kingman_pair},
      {"empirical-convergence", verify_empirical_convergence},
      {"semigroup", verify_semigroup},
      {"uniform-ordering", verify_uniform_ordering},
      {"evolve-stationarity", verify_evolve_stationarity},
      {"star-metric", verify_star_metric},
      {"figure2", verify_figure2},
      {"metric-properties", verify_metric_properties},
  };
  auto it = table.find(name);
  if (it == table.end()) {
    throw std::invalid_argument("unknown suite '" + name + "'");
  }
  return {name, it->second(seed)};
}

auto verify_intertwining(std::uint64_t seed) -> std::vector<Test_report> {
  auto rng = Rng{derive_seed(seed, 1)};
  auto out = std::vector<Test_report>{};
  for (const auto* spec : {"kingman", "uniform", "beta:2,2", "dirac:0.5"}) {
    auto lambda = Lambda_measure::parse(spec);
    auto worst = 0.0;
    for (auto n = std::size_t{2}; n <= 5; ++n) {
      for (auto rep = 0; rep < 20; ++rep) {
        auto f = random_composition_function(n, rng);
        worst = std::max(worst, intertwining_check(lambda, n, f));
      }
    }
    out.push_back(make_report(std::string{"intertwining max error, "} + spec, worst, 1e-9, {4 * 20}));
  }
  return out;
}

auto verify_projection(std::uint64_t seed) -> std::vector<Test_report> {
  constexpr auto n = std::size_t{20};
  constexpr auto replicates = std::int64_t{10000};
  constexpr auto ks = std::array<std::size_t, 3>{10, 5, 1};
  auto rates = Rate_table{Lambda_measure::beta(2.0, 2.0), n};
  auto times = [&](const Coalescent_trajectory& traj) {
    auto t = std::array<double, 3>{};
    for (auto i = std::size_t{0}; i < ks.size(); ++i) {
      t[i] = hitting_time(traj, ks[i]);
    }
    return t;
  };
  auto part = map_replicates(derive_seed(seed, 2), replicates,
                             [&](Rng& r, std::int64_t) { return times(simulate_partition_chain(rates, n, r)); });
  auto comp = map_replicates(derive_seed(seed, 3), replicates, [&](Rng& r, std::int64_t) {
    return times(simulate_composition_chain(rates, n, r).partitions());
  });
  auto out = std::vector<Test_report>{};
  for (auto i = std::size_t{0}; i < ks.size(); ++i) {
    auto a = std::vector<double>{};
    auto b = std::vector<double>{};
    for (auto r = std::size_t{0}; r < part.size(); ++r) {
      a.push_back(part[r][i]);
      b.push_back(comp[r][i]);
    }
    out.push_back(make_report("time to " + std::to_string(ks[i]) + " blocks, KS", ks_two_sample(a, b), 0.03,
                              {a.size(), b.size()}));
  }
  return out;
}

auto verify_kingman_pair(std::uint64_t seed) -> std::vector<Test_report> {
  auto samples = map_replicates(derive_seed(seed, 4), 100000, [](Rng& r, std::int64_t) {
    auto comb = sample_kingman_comb(r, 500);
    auto traj = paintbox_sample(comb, 2, r).trajectory;
    return hitting_time(traj, 1);
  });
  auto n = samples.size();
  auto d = ks_one_sample(std::move(samples), [](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); });
  return {make_report("pair merge time vs Exp(1), KS", d, 0.015, {n})};
}

auto verify_empirical_convergence(std::uint64_t seed) -> std::vector<Test_report> {
  auto comb = Comb::from_teeth({{0.2, 0.5}, {0.45, 1.5}, {0.8, 1.0}});
  auto times = comb.event_times();
  auto sizes = std::array<std::size_t, 3>{100, 1000, 10000};
  auto means = std::vector<double>{};
  for (auto k = std::size_t{0}; k < sizes.size(); ++k) {
    auto n = sizes[k];
    auto worst = map_replicates(derive_seed(seed, 10 + k), 100, [&](Rng& r, std::int64_t) {
      auto traj = ordered_paintbox(comb, n, r).trajectory;
      auto m = 0.0;
      for (auto t : times) {
        m = std::max(m, hausdorff(empirical_interval_partition(traj.eval(t)), comb.eval(t)));
      }
      return m;
    });
    auto sum = 0.0;
    for (auto w : worst) {
      sum += w;
    }
    means.push_back(sum / static_cast<double>(worst.size()));
  }
  // Largest change between consecutive means; negative iff strictly decreasing.
  auto step = -std::numeric_limits<double>::infinity();
  for (auto k = std::size_t{1}; k < means.size(); ++k) {
    step = std::max(step, means[k] - means[k - 1]);
  }
  return {make_report("mean max Hausdorff, n = 10000", means.back(), 0.05, {100}),
          make_report("largest change of the mean over n = 100, 1000, 10000", step, 0.0, {100, 100, 100})};
}

auto verify_semigroup(std::uint64_t seed) -> std::vector<Test_report> {
  constexpr auto m = std::size_t{2000};
  constexpr auto t = 0.5;
  constexpr auto replicates = std::int64_t{10000};
  auto cuts = std::vector<double>{};
  for (auto i = 1; i < 10; ++i) {
    cuts.push_back(i / 10.0);
  }
  auto p = Interval_partition::from_cut_points(cuts);
  auto rates = Rate_table{Lambda_measure::kingman(), m};
  auto direct = map_replicates(derive_seed(seed, 20), replicates, [&](Rng& r, std::int64_t) {
    return largest_mass(adjacent_merge_evolution(p, rates, t, r));
  });
  auto via_comb = map_replicates(derive_seed(seed, 21), replicates, [&](Rng& r, std::int64_t) {
    return largest_mass(lambda_comb_step(p, rates, t, m, r));
  });
  return {make_report("largest mass at t = 0.5, KS", ks_two_sample(direct, via_comb), 0.03,
                      {direct.size(), via_comb.size()})};
}

auto verify_uniform_ordering(std::uint64_t seed) -> std::vector<Test_report> {
  auto rng = Rng{derive_seed(seed, 30)};
  auto order_of = [](const Composition_trajectory& traj) {
    auto key = std::size_t{0};
    for (const auto& b : traj.events().front().value.blocks()) {
      key = 10 * key + b.front();
    }
    return key;
  };
  auto star = Coalescent_trajectory{{{0.0, Partition::singletons(3)}, {1.0, Partition::single_block(3)}}};
  auto counts = std::map<std::size_t, double>{};
  constexpr auto draws = 60000;
  for (auto i = 0; i < draws; ++i) {
    counts[order_of(uniform_consistent_ordering(star, rng))] += 1.0;
  }
  auto observed = std::vector<double>{};
  for (auto key : {12, 21, 102, 120, 201, 210}) {
    observed.push_back(counts[static_cast<std::size_t>(key)]);
  }
  auto caterpillar = Coalescent_trajectory{{{0.0, Partition::singletons(3)},
                                            {1.0, Partition{std::vector<std::size_t>{0, 0, 1}}},
                                            {2.0, Partition::single_block(3)}}};
  auto legal = std::set<std::size_t>{12, 102, 201, 210};
  auto seen = std::set<std::size_t>{};
  auto illegal = 0.0;
  for (auto i = 0; i < draws; ++i) {
    auto key = order_of(uniform_consistent_ordering(caterpillar, rng));
    seen.insert(key);
    if (not legal.contains(key)) {
      illegal += 1.0;
    }
  }
  return {make_report("star on [3], chi-square over 6 orderings", chi_square_uniform(observed), 20.5,
                      {static_cast<std::size_t>(draws)}),
          make_report("caterpillar on [3], illegal orderings", illegal, exact, {static_cast<std::size_t>(draws)}),
          make_report("caterpillar on [3], |distinct orderings - 4|",
                      std::abs(static_cast<double>(seen.size()) - 4.0), exact, {static_cast<std::size_t>(draws)})};
}

auto verify_evolve_stationarity(std::uint64_t seed) -> std::vector<Test_report> {
  auto rng = Rng{derive_seed(seed, 40)};
  auto d = stationarity_probe(500, 0.3, 10000, rng);
  return {make_report("tree height, fresh vs evolved, KS", d, 0.02, {10000, 10000})};
}

auto verify_star_metric(std::uint64_t seed) -> std::vector<Test_report> {
  auto mismatches = map_replicates(derive_seed(seed, 50), 100, [](Rng& r, std::int64_t) {
    auto u = random_finite_ums(50, 20, r);
    auto stream = r.next_u64();
    auto r1 = Rng{stream};
    auto r2 = Rng{stream};
    auto a = sample_distance_matrix(u, 50, r1, Sample_metric::plain);
    auto b = sample_distance_matrix(u, 50, r2, Sample_metric::star);
    return a == b ? 0.0 : 1.0;
  });
  auto total = 0.0;
  for (auto m : mismatches) {
    total += m;
  }
  return {make_report("sampled matrices differing between d and star metric", total, exact, {100})};
}

namespace {

auto figure2_start() -> Interval_partition {
  return Interval_partition::from_cut_points({1.0 / 3.0, 0.5, 2.0 / 3.0, 7.0 / 9.0, 8.0 / 9.0});
}

}  // namespace

auto figure2_left_comb() -> Comb {
  return Comb{{{0.0, figure2_start()},
               {1.0, Interval_partition::from_cut_points({1.0 / 3.0})},
               {2.0, Interval_partition::full()}}};
}

auto figure2_right_comb() -> Comb {
  return Comb{{{0.0, figure2_start()},
               {1.0, Interval_partition::from_cut_points({2.0 / 3.0})},
               {2.0, Interval_partition::full()}}};
}

auto verify_figure2(std::uint64_t seed) -> std::vector<Test_report> {
  constexpr auto tol = 1e-12;
  constexpr auto t1 = 0.0;
  constexpr auto t2 = 1.0;
  constexpr auto samples = 10000;
  auto left = figure2_left_comb();
  auto right = figure2_right_comb();

  auto mass_gap = 0.0;
  auto times = left.event_times();
  for (auto t : right.event_times()) {
    times.push_back(t);
  }
  for (auto t : times) {
    auto a = mass_partition(left.eval(t));
    auto b = mass_partition(right.eval(t));
    if (a.size() != b.size()) {
      mass_gap = std::numeric_limits<double>::infinity();
      break;
    }
    for (auto i = std::size_t{0}; i < a.size(); ++i) {
      mass_gap = std::max(mass_gap, std::abs(a[i] - b[i]));
    }
  }

  auto rng = Rng{derive_seed(seed, 60)};
  auto landing = [&](const Comb& c) {
    auto at_t1 = c.eval(t1);
    auto at_t2 = c.eval(t2);
    auto hits = 0;
    for (auto accepted = 0; accepted < samples;) {
      auto x = rng.uniform_open();
      auto i = at_t1.component_of(x);
      if (not i or std::abs(at_t1[*i].length() - 1.0 / 9.0) > tol) {
        continue;
      }
      ++accepted;
      auto j = at_t2.component_of(x);
      if (j and std::abs(at_t2[*j].length() - 2.0 / 3.0) <= tol) {
        ++hits;
      }
    }
    return static_cast<double>(hits) / samples;
  };
  auto p_left = landing(left);
  auto p_right = landing(right);
  auto n = static_cast<std::size_t>(samples);
  return {make_report("ranked masses, max difference over event times", mass_gap, std::nextafter(tol, 1.0),
                      {times.size()}),
          make_report("left comb, 1 - P(1/9 component -> 2/3 block)", 1.0 - p_left, 0.05, {n}),
          make_report("right comb, P(1/9 component -> 2/3 block)", p_right, 0.05, {n})};
}

auto verify_metric_properties(std::uint64_t seed) -> std::vector<Test_report> {
  auto rng = Rng{derive_seed(seed, 70)};
  auto slack = std::nextafter(1e-12, 1.0);

  auto symmetry = 0.0;
  auto triangle = 0.0;
  constexpr auto triples = 10000;
  for (auto i = 0; i < triples; ++i) {
    auto a = random_interval_partition(rng);
    auto b = random_interval_partition(rng);
    auto c = random_interval_partition(rng);
    symmetry = std::max(symmetry, std::abs(hausdorff(a, b) - hausdorff(b, a)));
    triangle = std::max(triangle, hausdorff(a, c) - hausdorff(a, b) - hausdorff(b, c));
  }

  auto failures = 0.0;
  auto matrices = std::size_t{0};
  auto check = [&](const Square_matrix<double>& d) {
    ++matrices;
    if (not validate_ultrametric(d)) {
      failures += 1.0;
    }
  };
  auto beta = Rate_table{Lambda_measure::beta(2.0, 2.0), 30};
  for (auto rep = 0; rep < 100; ++rep) {
    auto comb = sample_kingman_comb(rng, 100);
    check(distance_matrix(paintbox_sample(comb, 30, rng).positions, comb));
    check(cophenetic_matrix(simulate_partition_chain(beta, 30, rng)));
    auto u = random_finite_ums(30, 10, rng);
    check(sample_distance_matrix(u, 30, rng, Sample_metric::plain));
    check(sample_distance_matrix(u, 30, rng, Sample_metric::star));
  }

  auto non_assoc = 0.0;
  constexpr auto bridge_triples = 1000;
  for (auto i = 0; i < bridge_triples; ++i) {
    auto a = random_dyadic_bridge(rng);
    auto b = random_dyadic_bridge(rng);
    auto c = random_dyadic_bridge(rng);
    if (not(compose(a, compose(b, c)) == compose(compose(a, b), c))) {
      non_assoc += 1.0;
    }
  }

  auto t = static_cast<std::size_t>(triples);
  return {make_report("Hausdorff asymmetry", symmetry, slack, {t}),
          make_report("Hausdorff triangle excess", triangle, slack, {t}),
          make_report("sampled matrices failing ultrametric check", failures, exact, {matrices}),
          make_report("compose associativity failures", non_assoc, exact, {static_cast<std::size_t>(bridge_triples)})};
}

}  // namespace combs
