#include "combs/evolve.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "combs/parallel.hpp"
#include "combs/stats.hpp"

namespace combs {

auto evolving_kingman_step(const Comb& f, double s, Rng& rng, std::size_t n_teeth)
    -> std::pair<Comb, Evolve_step_record> {
  if (not(s > 0.0)) {
    throw std::invalid_argument("evolution level s must be positive");
  }
  if (not f.has_teeth()) {
    throw std::invalid_argument("evolving_kingman_step needs a tooth-backed comb");
  }
  auto rec = Evolve_step_record{};
  rec.s = s;
  rec.fresh = sample_kingman_comb(rng, n_teeth);
  auto teeth = rec.fresh.teeth();
  auto tall = std::vector<std::size_t>{};
  for (auto i = std::size_t{0}; i < teeth.size(); ++i) {
    if (teeth[i].height >= s) {
      tall.push_back(i);
      rec.tall_positions.push_back(teeth[i].position);
    }
  }
  rec.tall_count = tall.size();
  rec.order_statistics = draw_distinct_uniforms(rng, tall.size() + 1);
  std::sort(rec.order_statistics.begin(), rec.order_statistics.end());
  for (auto k = std::size_t{0}; k < tall.size(); ++k) {
    auto m = f.sup_over(rec.order_statistics[k], rec.order_statistics[k + 1], false, false).value();
    rec.gap_maxima.push_back(m);
    rec.pasted_heights.push_back(m + s);
    teeth[tall[k]].height = m + s;
  }
  return {Comb::from_teeth(std::move(teeth)), std::move(rec)};
}

auto stationarity_sample(std::size_t n_teeth, double s, std::size_t replicates, Rng& rng) -> Stationarity_sample {
  if (replicates < 2) {
    throw std::invalid_argument("stationarity needs at least two replicates");
  }
  auto master = rng.next_u64();
  auto pairs = map_replicates(master, static_cast<std::int64_t>(replicates), [&](Rng& r, std::int64_t) {
    auto fresh = sample_kingman_comb(r, n_teeth);
    auto start = sample_kingman_comb(r, n_teeth);
    auto evolved = evolving_kingman_step(start, s, r, n_teeth).first;
    return std::pair{fresh.max_time(), evolved.max_time()};
  });
  auto out = Stationarity_sample{};
  for (const auto& [a, b] : pairs) {
    out.fresh_heights.push_back(a);
    out.evolved_heights.push_back(b);
  }
  return out;
}

auto stationarity_probe(std::size_t n_teeth, double s, std::size_t replicates, Rng& rng) -> double {
  auto sample = stationarity_sample(n_teeth, s, replicates, rng);
  return ks_two_sample(sample.fresh_heights, sample.evolved_heights);
}

}  // namespace combs
