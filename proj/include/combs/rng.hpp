#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace combs {

// Random source used by every sampler. The engine is std::mt19937_64; the
// variate conversions below are written out by hand because the std
// distributions are implementation-defined, and golden files depend on the
// exact bit stream. Changing any of this is a breaking change.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_{seed} {}

  auto next_u64() -> std::uint64_t { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  auto uniform() -> double { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0, 1); never returns 0 or 1.
  auto uniform_open() -> double { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  // Uniform on (0, 1]; used for jump locations of bridges.
  auto uniform_left_open() -> double { return 1.0 - uniform(); }

  auto exponential(double rate = 1.0) -> double;

  // Uniform integer in [0, n), n > 0, by rejection (no modulo bias).
  auto uniform_index(std::uint64_t n) -> std::uint64_t;

  auto engine() -> std::mt19937_64& { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// n uniforms on (0,1) in draw order, pairwise distinct. A value equal to an
// earlier one is redrawn in place.
auto draw_distinct_uniforms(Rng& rng, std::size_t n) -> std::vector<double>;

// splitmix64 finalizer.
auto mix64(std::uint64_t x) -> std::uint64_t;

// Seed of replicate stream `stream` under master seed `master`:
// mix64(mix64(master) ^ (stream + 0x9e3779b97f4a7c15)).
auto derive_seed(std::uint64_t master, std::uint64_t stream) -> std::uint64_t;

inline auto derive_rng(std::uint64_t master, std::uint64_t stream) -> Rng {
  return Rng{derive_seed(master, stream)};
}

}  // namespace combs
