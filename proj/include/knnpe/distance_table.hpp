#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "knnpe/core.hpp"
#include "knnpe/kernels.hpp"

namespace knnpe {

/// Packs a dataset's features for the distance kernel.
kernels::PackedPoints pack(const Dataset& data);

/// Squared Euclidean distances from `query` to every example of `data`.
std::vector<double> squared_distances_to(const kernels::PackedPoints& points,
                                         std::span<const double> query);

/// Dense symmetric matrix of squared Euclidean distances between all examples.
/// Entry (i, j) is bit-identical to euclidean_distance(x_i, x_j)^2 before the root.
class DistanceTable {
 public:
  explicit DistanceTable(const Dataset& data);

  std::size_t size() const noexcept { return n_; }
  double squared(std::size_t i, std::size_t j) const noexcept { return sq_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const noexcept { return {sq_.data() + i * n_, n_}; }

 private:
  std::size_t n_ = 0;
  std::vector<double> sq_;
};

}  // namespace knnpe
