#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace combs {

// Dense row-major n x n matrix.
template <typename T>
class Square_matrix {
 public:
  Square_matrix() = default;
  explicit Square_matrix(std::size_t n, T fill = T{}) : n_{n}, data_(n * n, fill) {}

  auto size() const -> std::size_t { return n_; }

  auto operator()(std::size_t i, std::size_t j) -> T& { return data_[i * n_ + j]; }
  auto operator()(std::size_t i, std::size_t j) const -> const T& { return data_[i * n_ + j]; }

  auto at(std::size_t i, std::size_t j) const -> const T& {
    if (i >= n_ or j >= n_) {
      throw std::out_of_range("matrix index out of range");
    }
    return data_[i * n_ + j];
  }

  auto data() const -> const std::vector<T>& { return data_; }

  friend auto operator==(const Square_matrix&, const Square_matrix&) -> bool = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

}  // namespace combs
