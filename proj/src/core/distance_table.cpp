#include "knnpe/distance_table.hpp"

#include <fmt/format.h>

#include "knnpe/parallel.hpp"

namespace knnpe {

kernels::PackedPoints pack(const Dataset& data) {
  return kernels::PackedPoints(data.values(), data.size(), data.attribute_count());
}

std::vector<double> squared_distances_to(const kernels::PackedPoints& points,
                                         std::span<const double> query) {
  if (query.size() != points.dims()) {
    throw Error(ErrorKind::Dimension, fmt::format("query has {} attributes, training data has {}",
                                                  query.size(), points.dims()));
  }
  std::vector<double> out(points.rows());
  kernels::squared_distances(points, query, out);
  return out;
}

DistanceTable::DistanceTable(const Dataset& data) : n_(data.size()), sq_(n_ * n_) {
  const auto points = pack(data);
  parallel_for(n_, [&](std::size_t i) {
    kernels::squared_distances(points, data.features(i), {sq_.data() + i * n_, n_});
  });
}

}  // namespace knnpe
