#pragma once

// Pairwise (tree) reduction. Every quadrature sum in the library goes through
// these helpers so results do not depend on thread count or blocking.

#include <cstddef>
#include <span>
#include <vector>

#include "qtf/quaternion.hpp"

namespace qtf {

namespace detail {
inline constexpr std::size_t kPairwiseLeaf = 16;
}

template <typename T>
T pairwise_sum(std::span<const T> values) {
  const std::size_t n = values.size();
  if (n <= detail::kPairwiseLeaf) {
    T acc{};
    for (const T& v : values) acc += v;
    return acc;
  }
  const std::size_t half = n / 2;
  T left = pairwise_sum(values.first(half));
  left += pairwise_sum(values.subspan(half));
  return left;
}

inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(std::span<const double>(v)); }
inline Quaternion pairwise_sum(const std::vector<Quaternion>& v) {
  return pairwise_sum(std::span<const Quaternion>(v));
}

/**
 * Streaming pairwise accumulator over equally sized vectors.
 *
 * Keeps one partial per binary level (like a binary counter), so adding N
 * items costs O(N) vector additions and O(log N) storage while reproducing the
 * tree shape of a pairwise sum over the insertion order.
 */
template <typename T>
class PairwiseAccumulator {
 public:
  explicit PairwiseAccumulator(std::size_t width) : width_(width) {}

  void add(std::vector<T> item) {
    std::size_t level = 0;
    for (;; ++level) {
      if (level == levels_.size()) {
        levels_.push_back(std::move(item));
        occupied_.push_back(true);
        return;
      }
      if (!occupied_[level]) {
        levels_[level] = std::move(item);
        occupied_[level] = true;
        return;
      }
      std::vector<T>& other = levels_[level];
      for (std::size_t i = 0; i < width_; ++i) other[i] += item[i];
      item = std::move(other);
      occupied_[level] = false;
    }
  }

  std::vector<T> total() const {
    std::vector<T> acc(width_, T{});
    for (std::size_t level = 0; level < levels_.size(); ++level) {
      if (!occupied_[level]) continue;
      for (std::size_t i = 0; i < width_; ++i) acc[i] += levels_[level][i];
    }
    return acc;
  }

  std::size_t width() const { return width_; }

 private:
  std::size_t width_;
  std::vector<std::vector<T>> levels_;
  std::vector<bool> occupied_;
};

}  // namespace qtf
