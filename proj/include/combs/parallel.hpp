#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <vector>

#include "combs/rng.hpp"

namespace combs {

// Runs fn(rng_i, i) for i in [0, count), where rng_i = derive_rng(master, i),
// and returns the results in index order. Results do not depend on the number
// of threads. The first exception thrown by any replicate is rethrown.
template <typename Fn>
auto map_replicates(std::uint64_t master, std::int64_t count, Fn fn) {
  using T = decltype(fn(std::declval<Rng&>(), std::int64_t{0}));
  auto slots = std::vector<std::optional<T>>(static_cast<std::size_t>(count));
  auto error = std::exception_ptr{};
#pragma omp parallel for schedule(static)
  for (auto i = std::int64_t{0}; i < count; ++i) {
    try {
      auto rng = derive_rng(master, static_cast<std::uint64_t>(i));
      slots[static_cast<std::size_t>(i)].emplace(fn(rng, i));
    } catch (...) {
#pragma omp critical(combs_map_replicates_error)
      if (not error) {
        error = std::current_exception();
      }
    }
  }
  if (error) {
    std::rethrow_exception(error);
  }
  auto out = std::vector<T>{};
  out.reserve(slots.size());
  for (auto& s : slots) {
    out.push_back(std::move(*s));
  }
  return out;
}

namespace serial {

// Reference version of combs::map_replicates; same streams, one thread.
template <typename Fn>
auto map_replicates(std::uint64_t master, std::int64_t count, Fn fn) {
  using T = decltype(fn(std::declval<Rng&>(), std::int64_t{0}));
  auto out = std::vector<T>{};
  out.reserve(static_cast<std::size_t>(count));
  for (auto i = std::int64_t{0}; i < count; ++i) {
    auto rng = derive_rng(master, static_cast<std::uint64_t>(i));
    out.push_back(fn(rng, i));
  }
  return out;
}

}  // namespace serial

}  // namespace combs
