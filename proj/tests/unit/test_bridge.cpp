#include <gtest/gtest.h>

#include <array>
#include <set>

#include "combs/bridge.hpp"
#include "combs/paintbox.hpp"
#include "combs/parallel.hpp"
#include "combs/stats.hpp"
#include "oracles/oracles.hpp"

using namespace combs;

namespace {

auto random_bridge(Rng& rng) -> Bridge {
  auto k = 1 + rng.uniform_index(6);
  auto drift = rng.uniform() < 0.3 ? 0.0 : rng.uniform();
  auto w = std::vector<double>(k);
  auto total = 0.0;
  for (auto& x : w) {
    x = rng.uniform_open();
    total += x;
  }
  auto locs = draw_distinct_uniforms(rng, k);
  auto jumps = std::vector<Jump>{};
  auto used = 0.0;
  for (auto i = std::size_t{0}; i < k; ++i) {
    auto size = i + 1 == k ? (1.0 - drift) - used : (1.0 - drift) * w[i] / total;
    used += size;
    if (size > 0.0) {
      jumps.push_back({locs[i], size});
    }
  }
  return Bridge{drift, jumps};
}

// Drift a power of two (or 0) and all other data multiples of 1/64: compose
// is then exact in floating point.
auto dyadic_bridge(Rng& rng) -> Bridge {
  constexpr auto drifts = std::array{0.0, 0.25, 0.5, 1.0};
  auto drift = drifts[rng.uniform_index(drifts.size())];
  auto units = static_cast<std::size_t>(64.0 * (1.0 - drift));
  if (units == 0) {
    return Bridge::identity();
  }
  auto count = 1 + rng.uniform_index(std::min<std::size_t>(units, 5));
  auto cuts = std::set<std::size_t>{units};
  while (cuts.size() < count) {
    cuts.insert(1 + rng.uniform_index(units - 1));
  }
  auto locs = std::set<std::size_t>{};
  while (locs.size() < count) {
    locs.insert(1 + rng.uniform_index(64));
  }
  auto jumps = std::vector<Jump>{};
  auto prev = std::size_t{0};
  auto loc = locs.begin();
  for (auto c : cuts) {
    jumps.push_back({static_cast<double>(*loc++) / 64.0, static_cast<double>(c - prev) / 64.0});
    prev = c;
  }
  return Bridge{drift, jumps};
}

// Every component of `fine` lies in a component of `coarse`, endpoints
// compared with slack eps.
auto nested_within(const Interval_partition& fine, const Interval_partition& coarse, double eps) -> bool {
  for (const auto& f : fine.components()) {
    auto inside = false;
    for (const auto& c : coarse.components()) {
      inside = inside or (c.left <= f.left + eps and f.right <= c.right + eps);
    }
    if (not inside) {
      return false;
    }
  }
  return true;
}

auto equal_parts(std::size_t k) -> Interval_partition {
  auto cuts = std::vector<double>{};
  for (auto i = std::size_t{1}; i < k; ++i) {
    cuts.push_back(static_cast<double>(i) / static_cast<double>(k));
  }
  return Interval_partition::from_cut_points(cuts);
}

}  // namespace

TEST(Bridge, Validation) {
  EXPECT_THROW(Bridge(0.5, {}), std::invalid_argument);
  EXPECT_THROW(Bridge(1.5, {}), std::invalid_argument);
  EXPECT_THROW(Bridge(0.0, {{0.0, 1.0}}), std::invalid_argument);
  EXPECT_THROW(Bridge(0.0, {{0.5, 0.5}, {0.5, 0.5}}), std::invalid_argument);
  EXPECT_THROW(Bridge(0.5, {{0.5, 0.0}, {0.6, 0.5}}), std::invalid_argument);
  EXPECT_NO_THROW(Bridge(0.0, {{1.0, 1.0}}));
}

TEST(Bridge, IdentityEvalInverse) {
  auto b = Bridge::identity();
  for (auto x : {0.0, 0.1, 0.5, 0.99, 1.0}) {
    EXPECT_EQ(b.eval(x), x);
    EXPECT_EQ(b.inverse(x), x);
  }
}

TEST(Bridge, StepBridge) {
  auto b = Bridge{0.0, {{0.5, 1.0}}};
  EXPECT_EQ(b.eval(0.49), 0.0);
  EXPECT_EQ(b.eval(0.5), 1.0);
  EXPECT_EQ(b.left_limit(0.5), 0.0);
  for (auto y : {0.0, 0.3, 0.999}) {
    EXPECT_EQ(b.inverse(y), 0.5);
  }
}

TEST(Bridge, DriftAndJump) {
  auto b = Bridge{0.5, {{0.5, 0.5}}};
  EXPECT_EQ(b.eval(0.5), 0.75);
  EXPECT_EQ(b.left_limit(0.5), 0.25);
  // B < 0.25 on [0, 0.5) and B(0.5) = 0.75, so the first x with B(x) > 0.3 is 0.5.
  EXPECT_EQ(b.inverse(0.3), 0.5);
  EXPECT_EQ(b.inverse(0.1), 0.2);
  EXPECT_DOUBLE_EQ(b.inverse(0.8), 0.6);
  EXPECT_EQ(interval_partition_of(b), (Interval_partition{{{0.25, 0.75}}}));
}

TEST(Bridge, InverseMatchesBisection) {
  auto rng = Rng{61};
  for (auto rep = 0; rep < 200; ++rep) {
    auto b = random_bridge(rng);
    auto y = rng.uniform();
    // inf{x : B(x) > y} by bisection on the monotone predicate.
    auto lo = 0.0;
    auto hi = 1.0;
    for (auto it = 0; it < 100; ++it) {
      auto mid = 0.5 * (lo + hi);
      (b.eval(mid) > y ? hi : lo) = mid;
    }
    ASSERT_NEAR(b.inverse(y), hi, 1e-12);
  }
}

TEST(Bridge, InverseOfEvalOffFlats) {
  auto rng = Rng{62};
  for (auto rep = 0; rep < 500; ++rep) {
    auto b = random_bridge(rng);
    if (b.drift() == 0.0) {
      continue;
    }
    auto x = rng.uniform();
    ASSERT_NEAR(b.inverse(b.eval(x)), x, 1e-12);
  }
}

TEST(Bridge, IntervalPartitionExamples) {
  EXPECT_TRUE(interval_partition_of(Bridge::identity()).empty());
  for (auto v : {0.1, 0.5, 1.0}) {
    EXPECT_EQ(interval_partition_of(Bridge{0.0, {{v, 1.0}}}), Interval_partition::full());
  }
}

TEST(Compose, IdentityLaws) {
  auto rng = Rng{63};
  for (auto rep = 0; rep < 200; ++rep) {
    auto b = random_bridge(rng);
    ASSERT_EQ(compose(b, Bridge::identity()), b);
    ASSERT_EQ(compose(Bridge::identity(), b), b);
  }
}

TEST(Compose, CollapsingSteps) {
  auto c = compose(Bridge{0.0, {{0.5, 1.0}}}, Bridge{0.0, {{0.3, 1.0}}});
  EXPECT_EQ(interval_partition_of(c), Interval_partition::full());
}

TEST(Compose, MatchesPointwiseComposition) {
  auto rng = Rng{64};
  for (auto rep = 0; rep < 300; ++rep) {
    auto a = random_bridge(rng);
    auto b = random_bridge(rng);
    auto c = compose(a, b);
    for (auto i = 0; i < 20; ++i) {
      auto x = rng.uniform();
      ASSERT_NEAR(c.eval(x), a.eval(b.eval(x)), 1e-12);
    }
  }
}

TEST(Compose, Coarsens) {
  auto rng = Rng{65};
  for (auto rep = 0; rep < 500; ++rep) {
    auto a = random_bridge(rng);
    auto b = random_bridge(rng);
    ASSERT_TRUE(nested_within(interval_partition_of(a), interval_partition_of(compose(a, b)), 1e-12));
  }
}

TEST(Compose, AssociativeOnDyadicBridges) {
  auto rng = Rng{66};
  for (auto rep = 0; rep < 2000; ++rep) {
    auto a = dyadic_bridge(rng);
    auto b = dyadic_bridge(rng);
    auto c = dyadic_bridge(rng);
    ASSERT_EQ(compose(a, compose(b, c)), compose(compose(a, b), c));
  }
}

TEST(Compose, DependsOnInnerOnlyThroughOrderedMasses) {
  auto rng = Rng{67};
  for (auto rep = 0; rep < 300; ++rep) {
    auto outer = random_bridge(rng);
    auto inner = random_bridge(rng);
    if (inner.drift() != 0.0) {
      continue;
    }
    auto locs = draw_distinct_uniforms(rng, inner.jumps().size());
    std::sort(locs.begin(), locs.end());
    auto moved = std::vector<Jump>{};
    for (auto i = std::size_t{0}; i < locs.size(); ++i) {
      moved.push_back({locs[i], inner.jumps()[i].size});
    }
    ASSERT_EQ(interval_partition_of(compose(outer, inner)), interval_partition_of(compose(outer, Bridge{0.0, moved})));
  }
}

TEST(BridgeFromPartition, Examples) {
  auto rng = Rng{68};
  auto full = bridge_from_interval_partition(Interval_partition::full(), rng);
  EXPECT_EQ(full.drift(), 0.0);
  ASSERT_EQ(full.jumps().size(), 1u);
  EXPECT_EQ(full.jumps()[0].size, 1.0);
  EXPECT_EQ(interval_partition_of(full), Interval_partition::full());
  EXPECT_EQ(bridge_from_interval_partition(Interval_partition{}, rng), Bridge::identity());
}

TEST(BridgeFromPartition, MassesAndDustPreserved) {
  auto rng = Rng{69};
  for (auto rep = 0; rep < 500; ++rep) {
    auto p = oracle::random_interval_partition(rng);
    auto q = interval_partition_of(bridge_from_interval_partition(p, rng));
    auto mp = mass_partition(p);
    auto mq = mass_partition(q);
    ASSERT_EQ(mp.size(), mq.size());
    for (auto i = std::size_t{0}; i < mp.size(); ++i) {
      ASSERT_NEAR(mp[i], mq[i], 1e-12);
    }
    ASSERT_NEAR(dust_mass(p), dust_mass(q), 1e-12);
  }
}

TEST(BridgeFromPartition, PreservesOrder) {
  auto rng = Rng{70};
  auto p = Interval_partition{{{0.0, 0.5}, {0.6, 0.9}}};
  for (auto rep = 0; rep < 100; ++rep) {
    auto b = bridge_from_interval_partition(p, rng);
    ASSERT_EQ(b.jumps().size(), 2u);
    ASSERT_NEAR(b.jumps()[0].size, 0.5, 1e-15);
    ASSERT_NEAR(b.drift(), 0.2, 1e-12);
  }
}

TEST(BridgeFromMassPartition, UniformOrder) {
  auto rng = Rng{71};
  auto first_big = 0;
  constexpr auto draws = 10000;
  for (auto i = 0; i < draws; ++i) {
    auto b = bridge_from_mass_partition({0.5, 0.3}, rng);
    auto m = mass_partition(interval_partition_of(b));
    ASSERT_EQ(m.size(), 2u);
    ASSERT_NEAR(m[0], 0.5, 1e-12);
    ASSERT_NEAR(m[1], 0.3, 1e-12);
    ASSERT_NEAR(b.drift(), 0.2, 1e-12);
    first_big += b.jumps()[0].size == 0.5 ? 1 : 0;
  }
  EXPECT_NEAR(static_cast<double>(first_big) / draws, 0.5, 0.015);
}

TEST(Coarsen, MatchesComposeRoute) {
  auto rng = Rng{72};
  for (auto rep = 0; rep < 300; ++rep) {
    auto p = equal_parts(1 + rng.uniform_index(8));
    auto r = bridge_from_interval_partition(p, rng);
    auto inner = random_bridge(rng);
    auto direct = interval_partition_of(compose(r, inner));
    auto merged = coarsen(p, r, inner);
    ASSERT_TRUE(is_nested(p, merged));
    ASSERT_EQ(merged.size(), direct.size());
    for (auto i = std::size_t{0}; i < merged.size(); ++i) {
      ASSERT_NEAR(merged[i].left, direct[i].left, 1e-12);
      ASSERT_NEAR(merged[i].right, direct[i].right, 1e-12);
    }
  }
}

TEST(AdjacentMerge, TrivialCases) {
  auto rng = Rng{73};
  auto p = equal_parts(4);
  EXPECT_EQ(adjacent_merge_evolution(p, Lambda_measure::kingman(), 0.0, rng), p);
  auto one = Interval_partition::full();
  EXPECT_EQ(adjacent_merge_evolution(one, Lambda_measure::kingman(), 10.0, rng), one);
  EXPECT_THROW(adjacent_merge_evolution(Interval_partition{{{0.0, 0.5}}}, Lambda_measure::kingman(), 1.0, rng),
               std::invalid_argument);
}

TEST(AdjacentMerge, AbsorptionTimeMatchesPartitionChain) {
  auto rng = Rng{74};
  auto table = Rate_table{Lambda_measure::kingman(), 4};
  auto p = equal_parts(4);
  auto a = std::vector<double>{};
  auto b = std::vector<double>{};
  for (auto i = 0; i < 10000; ++i) {
    auto comb = adjacent_merge_trajectory(p, table, oracle::inf, rng);
    ASSERT_EQ(comb.events().back().value, Interval_partition::full());
    a.push_back(comb.max_time());
    b.push_back(simulate_partition_chain(table, 4, rng).events().back().time);
  }
  EXPECT_LT(ks_two_sample(a, b), 0.03);
  auto far = adjacent_merge_evolution(p, table, 1e6, rng);
  EXPECT_EQ(far, Interval_partition::full());
}

TEST(LambdaCombStep, ZeroTimeKeepsMasses) {
  auto rng = Rng{75};
  auto table = Rate_table{Lambda_measure::kingman(), 100000};
  auto p = Interval_partition{{{0.0, 0.1}, {0.1, 0.35}, {0.35, 0.4}, {0.4, 0.8}, {0.8, 1.0}}};
  for (auto rep = 0; rep < 20; ++rep) {
    auto q = lambda_comb_step(p, table, 0.0, 100000, rng);
    EXPECT_EQ(mass_partition(q), mass_partition(p));
  }
}

TEST(LambdaCombStep, LongTimeAbsorbs) {
  auto rng = Rng{76};
  auto table = Rate_table{Lambda_measure::kingman(), 200};
  for (auto rep = 0; rep < 50; ++rep) {
    EXPECT_EQ(lambda_comb_step(equal_parts(5), table, 50.0, 200, rng), Interval_partition::full());
  }
}

TEST(LambdaCombStep, Nested) {
  auto rng = Rng{77};
  auto table = Rate_table{Lambda_measure::beta(2.0, 2.0), 500};
  for (auto rep = 0; rep < 100; ++rep) {
    auto p = equal_parts(1 + rng.uniform_index(10));
    ASSERT_TRUE(is_nested(p, lambda_comb_step(p, table, 0.2, 500, rng)));
  }
  EXPECT_THROW(lambda_comb_step(equal_parts(10), table, 0.1, 5, rng), std::invalid_argument);
}

TEST(LambdaCombStep, AgreesWithAdjacentMerge) {
  constexpr auto m = std::size_t{500};
  auto table = Rate_table{Lambda_measure::kingman(), m};
  auto p = equal_parts(6);
  auto largest = [](const Interval_partition& q) { return std::round(mass_partition(q).front() * 1e12) / 1e12; };
  auto a = map_replicates(78, 5000, [&](Rng& r, std::int64_t) { return largest(adjacent_merge_evolution(p, table, 0.4, r)); });
  auto b = map_replicates(79, 5000, [&](Rng& r, std::int64_t) { return largest(lambda_comb_step(p, table, 0.4, m, r)); });
  EXPECT_LT(ks_two_sample(a, b), 0.04);
}

TEST(FlowComb, SingleGridPoint) {
  auto rng = Rng{80};
  auto c = flow_comb(Lambda_measure::kingman(), {0.0}, 7, rng);
  ASSERT_EQ(c.event_count(), 1u);
  EXPECT_EQ(c.eval(0.0), equal_parts(7));
  EXPECT_THROW(flow_comb(Lambda_measure::kingman(), {0.1}, 7, rng), std::invalid_argument);
}

TEST(FlowComb, PairMergeTimeIsGridCensoredExp1) {
  constexpr auto m = std::size_t{1000};
  auto table = Rate_table{Lambda_measure::kingman(), m};
  auto grid = std::vector<double>{};
  for (auto k = 0; k <= 10; ++k) {
    grid.push_back(0.25 * k);
  }
  auto times = map_replicates(81, 5000, [&](Rng& r, std::int64_t) {
    auto comb = flow_comb(table, grid, m, r);
    auto traj = paintbox_sample(comb, 2, r).trajectory;
    const auto& ev = traj.events();
    return ev.back().value.block_count() == 1 ? ev.back().time : oracle::inf;
  });
  for (auto t : times) {
    ASSERT_TRUE(t == oracle::inf or std::find(grid.begin(), grid.end(), t) != grid.end());
  }
  auto d = ks_discrete(times, grid, [](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); });
  EXPECT_LT(d, 0.03);
}
