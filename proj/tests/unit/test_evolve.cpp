#include <gtest/gtest.h>

#include "combs/evolve.hpp"
#include "combs/paintbox.hpp"
#include "combs/parallel.hpp"
#include "combs/stats.hpp"
#include "oracles/oracles.hpp"

using namespace combs;

namespace {

// sup of the tooth heights strictly inside (lo, hi).
auto open_gap_max(const std::vector<Tooth>& teeth, double lo, double hi) -> double {
  auto m = 0.0;
  for (const auto& t : teeth) {
    if (lo < t.position and t.position < hi) {
      m = std::max(m, t.height);
    }
  }
  return m;
}

void check_step(const Comb& f, const Comb& g, const Evolve_step_record& rec) {
  const auto& fresh = rec.fresh.teeth();
  const auto& out = g.teeth();
  ASSERT_EQ(fresh.size(), out.size());
  ASSERT_EQ(rec.order_statistics.size(), rec.tall_count + 1);
  ASSERT_TRUE(std::is_sorted(rec.order_statistics.begin(), rec.order_statistics.end()));
  auto k = std::size_t{0};
  for (auto i = std::size_t{0}; i < fresh.size(); ++i) {
    ASSERT_EQ(out[i].position, fresh[i].position);
    if (fresh[i].height < rec.s) {
      ASSERT_EQ(out[i].height, fresh[i].height);
      continue;
    }
    ASSERT_LT(k, rec.tall_count);
    ASSERT_EQ(rec.tall_positions[k], fresh[i].position);
    auto m = open_gap_max(f.teeth(), rec.order_statistics[k], rec.order_statistics[k + 1]);
    ASSERT_EQ(rec.gap_maxima[k], m);
    ASSERT_EQ(out[i].height, m + rec.s);
    ASSERT_EQ(rec.pasted_heights[k], m + rec.s);
    ++k;
  }
  ASSERT_EQ(k, rec.tall_count);
}

}  // namespace

TEST(Evolve, Validation) {
  auto rng = Rng{90};
  auto f = sample_kingman_comb(rng, 10);
  EXPECT_THROW(evolving_kingman_step(f, 0.0, rng, 10), std::invalid_argument);
  EXPECT_THROW(evolving_kingman_step(f, -1.0, rng, 10), std::invalid_argument);
  EXPECT_THROW(evolving_kingman_step(f.materialized(), 0.3, rng, 10), std::invalid_argument);
}

TEST(Evolve, NoTallTeethReturnsFreshComb) {
  auto rng = Rng{91};
  auto f = sample_kingman_comb(rng, 20);
  auto [g, rec] = evolving_kingman_step(f, 1e6, rng, 20);
  EXPECT_EQ(rec.tall_count, 0u);
  EXPECT_EQ(rec.order_statistics.size(), 1u);
  EXPECT_EQ(g.teeth(), rec.fresh.teeth());
}

TEST(Evolve, SingleToothInput) {
  auto rng = Rng{92};
  auto f = Comb::from_teeth({{0.5, 1.0}});
  for (auto rep = 0; rep < 200; ++rep) {
    auto [g, rec] = evolving_kingman_step(f, 0.3, rng, 15);
    check_step(f, g, rec);
    for (auto k = std::size_t{0}; k < rec.tall_count; ++k) {
      auto inside = rec.order_statistics[k] < 0.5 and 0.5 < rec.order_statistics[k + 1];
      ASSERT_EQ(rec.gap_maxima[k], inside ? 1.0 : 0.0);
    }
  }
}

TEST(Evolve, TallTeethGetGapMaximaPlusS) {
  auto rng = Rng{93};
  for (auto rep = 0; rep < 200; ++rep) {
    auto f = Comb::from_teeth(oracle::random_teeth(rng, 1 + rng.uniform_index(30)));
    auto s = 0.05 + rng.uniform();
    auto [g, rec] = evolving_kingman_step(f, s, rng, 40);
    check_step(f, g, rec);
  }
}

TEST(Evolve, TinyLevelMakesAlmostEveryToothTall) {
  auto rng = Rng{94};
  auto f = sample_kingman_comb(rng, 100);
  auto [g, rec] = evolving_kingman_step(f, 1e-6, rng, 100);
  check_step(f, g, rec);
  EXPECT_GE(rec.tall_count, 95u);
}

TEST(Evolve, RepeatedStepsStayTheSameSize) {
  auto rng = Rng{95};
  auto f = sample_kingman_comb(rng, 50);
  for (auto step = 0; step < 20; ++step) {
    auto [g, rec] = evolving_kingman_step(f, 0.3, rng, 50);
    check_step(f, g, rec);
    f = g;
  }
  EXPECT_EQ(f.teeth().size(), 50u);
}

// Pair merge time of the evolved comb has the fresh law, checked below the
// tallest tooth level reachable by the truncation.
TEST(Evolve, PaintboxPairMergeStationary) {
  constexpr auto n_teeth = std::size_t{300};
  auto pair_time = [](const Comb& c, Rng& r) {
    const auto& ev = paintbox_sample(c, 2, r).trajectory.events();
    return ev.back().value.block_count() == 1 ? ev.back().time : oracle::inf;
  };
  auto fresh = map_replicates(96, 5000, [&](Rng& r, std::int64_t) {
    return std::min(pair_time(sample_kingman_comb(r, n_teeth), r), 3.0);
  });
  auto evolved = map_replicates(97, 5000, [&](Rng& r, std::int64_t) {
    auto start = sample_kingman_comb(r, n_teeth);
    auto g = evolving_kingman_step(start, 0.3, r, n_teeth).first;
    return std::min(pair_time(g, r), 3.0);
  });
  EXPECT_LT(ks_two_sample(fresh, evolved), 0.04);
}

TEST(Evolve, StationarityProbeSmall) {
  auto rng = Rng{98};
  auto sample = stationarity_sample(100, 0.3, 2000, rng);
  EXPECT_EQ(sample.fresh_heights.size(), 2000u);
  EXPECT_LT(ks_two_sample(sample.fresh_heights, sample.evolved_heights), 0.05);
  EXPECT_THROW(stationarity_sample(10, 0.3, 1, rng), std::invalid_argument);
}
