#include <gtest/gtest.h>

#include "combs/comb.hpp"
#include "oracles/oracles.hpp"

using namespace combs;

namespace {

auto single_tooth(double h) -> Comb { return Comb::from_teeth({{0.5, h}}); }
auto two_teeth() -> Comb { return Comb::from_teeth({{1.0 / 3.0, 1.0}, {2.0 / 3.0, 2.0}}); }
auto half_split() -> Interval_partition { return Interval_partition::from_cut_points({0.5}); }

}  // namespace

TEST(Comb, ExplicitValidation) {
  EXPECT_THROW(Comb{std::vector<Comb_event>{}}, std::invalid_argument);
  EXPECT_THROW((Comb{{{0.5, Interval_partition::full()}}}), std::invalid_argument);
  EXPECT_THROW((Comb{{{0.0, Interval_partition::full()}, {1.0, half_split()}}}), std::invalid_argument);
  EXPECT_THROW((Comb{{{0.0, half_split()}, {0.0, Interval_partition::full()}}}), std::invalid_argument);
  EXPECT_NO_THROW((Comb{{{0.0, Interval_partition{}}, {1.0, half_split()}}}));
}

TEST(Comb, TeethValidation) {
  EXPECT_THROW(Comb::from_teeth({{0.0, 1.0}}), std::invalid_argument);
  EXPECT_THROW(Comb::from_teeth({{0.5, 0.0}}), std::invalid_argument);
  EXPECT_THROW(Comb::from_teeth({{0.5, oracle::inf}}), std::invalid_argument);
  EXPECT_THROW(Comb::from_teeth({{0.5, 1.0}, {0.5, 2.0}}), std::invalid_argument);
}

TEST(Comb, EvalStepConvention) {
  auto c = Comb{{{0.0, half_split()}, {2.0, Interval_partition::full()}}};
  EXPECT_EQ(c.eval(0.0), half_split());
  EXPECT_EQ(c.eval(2.0 - 1e-9), half_split());
  EXPECT_EQ(c.eval(2.0), Interval_partition::full());
  EXPECT_EQ(c.eval(100.0), Interval_partition::full());
  EXPECT_THROW(c.eval(-1.0), std::invalid_argument);
}

TEST(Comb, FromTeethEvents) {
  auto none = Comb::from_teeth({});
  ASSERT_EQ(none.events().size(), 1u);
  EXPECT_EQ(none.events()[0].value, Interval_partition::full());

  auto one = single_tooth(1.5);
  auto ev = one.events();
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_EQ(ev[0].time, 0.0);
  EXPECT_EQ(ev[0].value, half_split());
  EXPECT_EQ(ev[1].time, 1.5);
  EXPECT_EQ(ev[1].value, Interval_partition::full());

  auto two = two_teeth();
  EXPECT_EQ(two.eval(1.5), Interval_partition::from_cut_points({2.0 / 3.0}));
  EXPECT_EQ(two.eval(2.5), Interval_partition::full());
}

TEST(Comb, FunctionExamples) {
  auto c = single_tooth(1.5);
  EXPECT_EQ(c.function(0.25), Merge_time{0.0});
  EXPECT_EQ(c.function(0.5), Merge_time{1.5});
  auto stuck = Comb{{{0.0, Interval_partition::from_cut_points({0.5})}}};
  EXPECT_FALSE(stuck.function(0.5).is_merged());
  EXPECT_EQ(stuck.function(0.5), Merge_time::unmerged());
}

TEST(Comb, DistanceExamples) {
  auto c = single_tooth(1.5);
  EXPECT_EQ(comb_distance(c, 0.3, 0.3), Merge_time{0.0});
  EXPECT_EQ(comb_distance(c, 0.2, 0.7), Merge_time{1.5});
  EXPECT_EQ(comb_distance(c, 0.2, 0.4), Merge_time{0.0});
  EXPECT_EQ(comb_distance(two_teeth(), 0.1, 0.9), Merge_time{2.0});
}

TEST(Comb, TeethAndMaterializedAgree) {
  auto rng = Rng{21};
  for (auto rep = 0; rep < 50; ++rep) {
    auto teeth = oracle::random_teeth(rng, 1 + rng.uniform_index(12));
    auto lazy = Comb::from_teeth(teeth);
    auto eager = lazy.materialized();
    ASSERT_EQ(lazy.events(), eager.events());
    for (auto i = 0; i < 50; ++i) {
      auto x = rng.uniform_open();
      auto y = rng.uniform_open();
      ASSERT_EQ(comb_distance(lazy, x, y), comb_distance(eager, x, y));
      ASSERT_EQ(lazy.function(x), eager.function(x));
      ASSERT_EQ(comb_distance(lazy, x, y).value(), oracle::comb_distance_by_teeth(teeth, x, y));
      ASSERT_EQ(comb_distance(eager, x, y).value(), oracle::comb_distance_by_events(eager, x, y));
    }
    for (const auto& t : teeth) {
      ASSERT_EQ(lazy.function(t.position).value(), t.height);
      ASSERT_EQ(eager.function(t.position).value(), t.height);
    }
  }
}

TEST(Comb, DistanceIsUltrametric) {
  auto rng = Rng{22};
  auto c = sample_kingman_comb(rng, 200);
  auto e = c.materialized();
  for (auto i = 0; i < 10000; ++i) {
    auto x = rng.uniform_open();
    auto y = rng.uniform_open();
    auto z = rng.uniform_open();
    for (const auto* comb : {&c, &e}) {
      ASSERT_LE(comb_distance(*comb, x, z), std::max(comb_distance(*comb, x, y), comb_distance(*comb, y, z)));
    }
  }
}

TEST(Comb, DistanceIsSupOfFunctionOnGrid) {
  auto rng = Rng{23};
  for (auto rep = 0; rep < 20; ++rep) {
    auto teeth = oracle::random_teeth(rng, 5);
    auto c = Comb::from_teeth(teeth).materialized();
    auto x = rng.uniform_open();
    auto y = rng.uniform_open();
    // Dense grid plus the tooth positions, which a grid would miss.
    auto grid = std::vector<double>{};
    for (auto i = 0; i <= 1000; ++i) {
      grid.push_back(std::min(x, y) + (std::max(x, y) - std::min(x, y)) * i / 1000.0);
    }
    for (const auto& t : teeth) {
      grid.push_back(t.position);
    }
    auto sup = 0.0;
    for (auto g : grid) {
      if (std::min(x, y) <= g and g <= std::max(x, y)) {
        sup = std::max(sup, c.function(g).value());
      }
    }
    ASSERT_NEAR(comb_distance(c, x, y).value(), sup, 1e-12);
  }
}

TEST(Comb, DustRegionNeverMerges) {
  // Dust on [0.4, 0.6] until t = 1.
  auto c = Comb{{{0.0, Interval_partition{{{0.0, 0.4}, {0.6, 1.0}}}}, {1.0, Interval_partition::full()}}};
  EXPECT_EQ(c.function(0.5), Merge_time{1.0});
  EXPECT_EQ(comb_distance(c, 0.1, 0.2), Merge_time{0.0});
  EXPECT_EQ(comb_distance(c, 0.45, 0.55), Merge_time{1.0});
  EXPECT_EQ(comb_distance(c, 0.1, 0.9), Merge_time{1.0});
  auto stuck = Comb{{{0.0, Interval_partition{{{0.0, 0.4}, {0.6, 1.0}}}}}};
  EXPECT_FALSE(comb_distance(stuck, 0.1, 0.9).is_merged());
}

TEST(Comb, KingmanHeightsDecrease) {
  auto rng = Rng{24};
  for (auto rep = 0; rep < 100; ++rep) {
    auto c = sample_kingman_comb(rng, 50);
    auto h = std::vector<double>{};
    for (const auto& t : c.teeth()) {
      h.push_back(t.height);
    }
    std::sort(h.begin(), h.end());
    ASSERT_EQ(std::adjacent_find(h.begin(), h.end()), h.end());
  }
}

TEST(Comb, KingmanTallestAndShortestMeans) {
  constexpr auto n = std::size_t{500};
  constexpr auto reps = 20000;
  auto rng = Rng{25};
  auto top = 0.0;
  auto bottom = 0.0;
  for (auto rep = 0; rep < reps; ++rep) {
    auto c = sample_kingman_comb(rng, n);
    auto lo = oracle::inf;
    for (const auto& t : c.teeth()) {
      lo = std::min(lo, t.height);
    }
    top += c.max_time();
    bottom += lo;
  }
  auto mean_top = oracle::kingman_tooth_mean(2, n);
  EXPECT_NEAR(mean_top, 2.0 * (1.0 - 1.0 / (n + 1)), 1e-12);
  // Var T_2 <= 4 (pi^2/3 - 3) < 1.2; five standard errors.
  EXPECT_NEAR(top / reps, mean_top, 5.0 * std::sqrt(1.2 / reps));
  auto mean_bottom = oracle::kingman_tooth_mean(n + 1, n);
  EXPECT_NEAR(bottom / reps, mean_bottom, 5.0 * mean_bottom / std::sqrt(reps));
}

TEST(Comb, FaceSetsExamples) {
  auto one = face_sets(single_tooth(1.5));
  ASSERT_EQ(one.right.size(), 1u);
  ASSERT_EQ(one.left.size(), 1u);
  EXPECT_EQ(one.right[0], (Face_window{0.5, 0.0, Merge_time{1.5}}));
  EXPECT_EQ(one.left[0], (Face_window{0.5, 0.0, Merge_time{1.5}}));

  auto none = face_sets(Comb::from_teeth({}));
  EXPECT_TRUE(none.right.empty());
  EXPECT_TRUE(none.left.empty());

  auto two = face_sets(two_teeth());
  ASSERT_EQ(two.right.size(), 2u);
  EXPECT_EQ(two.right[0], (Face_window{1.0 / 3.0, 0.0, Merge_time{1.0}}));
  EXPECT_EQ(two.right[1], (Face_window{2.0 / 3.0, 0.0, Merge_time{2.0}}));
  EXPECT_EQ(two.left.size(), 2u);
}

TEST(Comb, FaceSetsTeethMatchMaterialized) {
  auto rng = Rng{26};
  auto c = Comb::from_teeth(oracle::random_teeth(rng, 8));
  auto a = face_sets(c);
  auto b = face_sets(c.materialized());
  EXPECT_EQ(a.right, b.right);
  EXPECT_EQ(a.left, b.left);
}

TEST(Comb, ExtendedDistance) {
  auto c = single_tooth(1.5);
  EXPECT_EQ(extended_distance(c, {0.5, Face::right}, {0.5, Face::left}), Merge_time{1.5});
  EXPECT_EQ(extended_distance(c, {0.5, Face::right}, {0.5, Face::right}), Merge_time{0.0});
  EXPECT_EQ(extended_distance(c, {0.5, Face::right}, {0.2, Face::plain}), Merge_time{0.0});
  EXPECT_EQ(extended_distance(c, {0.5, Face::left}, {0.2, Face::plain}), Merge_time{1.5});
  EXPECT_THROW(extended_distance(c, {0.3, Face::left}, {0.2, Face::plain}), std::invalid_argument);

  auto two = two_teeth();
  EXPECT_EQ(extended_distance(two, {1.0 / 3.0, Face::left}, {2.0 / 3.0, Face::right}), Merge_time{0.0});
  EXPECT_EQ(extended_distance(two, {1.0 / 3.0, Face::right}, {2.0 / 3.0, Face::right}), Merge_time{1.0});
  EXPECT_EQ(extended_distance(two, {1.0 / 3.0, Face::left}, {2.0 / 3.0, Face::left}), Merge_time{2.0});
}

TEST(Comb, ExtendedDistanceOnPlainPoints) {
  auto rng = Rng{27};
  auto c = sample_kingman_comb(rng, 100);
  for (auto i = 0; i < 1000; ++i) {
    auto x = rng.uniform_open();
    auto y = rng.uniform_open();
    ASSERT_EQ(extended_distance(c, {x, Face::plain}, {y, Face::plain}), comb_distance(c, x, y));
  }
}
