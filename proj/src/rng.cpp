#include "combs/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace combs {

auto Rng::exponential(double rate) -> double {
  if (not(rate > 0.0)) {
    throw std::invalid_argument("exponential rate must be positive");
  }
  return -std::log(uniform_open()) / rate;
}

auto Rng::uniform_index(std::uint64_t n) -> std::uint64_t {
  if (n == 0) {
    throw std::invalid_argument("uniform_index needs n > 0");
  }
  // Largest multiple of n representable; draws above it are rejected.
  const auto limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  auto x = engine_();
  while (x >= limit) {
    x = engine_();
  }
  return x % n;
}

auto draw_distinct_uniforms(Rng& rng, std::size_t n) -> std::vector<double> {
  auto u = std::vector<double>(n);
  for (auto& v : u) {
    v = rng.uniform_open();
  }
  // Collisions have probability about n^2 2^-54.
  for (auto clean = false; not clean;) {
    clean = true;
    auto order = std::vector<std::size_t>(n);
    for (auto i = std::size_t{0}; i < n; ++i) {
      order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return u[a] < u[b] or (u[a] == u[b] and a < b); });
    for (auto i = std::size_t{1}; i < n; ++i) {
      if (u[order[i]] == u[order[i - 1]]) {
        u[order[i]] = rng.uniform_open();
        clean = false;
      }
    }
  }
  return u;
}

auto mix64(std::uint64_t x) -> std::uint64_t {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

auto derive_seed(std::uint64_t master, std::uint64_t stream) -> std::uint64_t {
  return mix64(mix64(master) ^ (stream + 0x9e3779b97f4a7c15ULL));
}

}  // namespace combs
