#include "knnpe/preprocess.hpp"

#include <cmath>

#include <fmt/format.h>

#include "knnpe/distance_table.hpp"
#include "knnpe/parallel.hpp"

namespace knnpe {

NormalizationStats attribute_stats(const Dataset& data) {
  if (data.empty()) throw Error(ErrorKind::EmptyInput, "dataset has no examples");
  const std::size_t n = data.size();
  const std::size_t dims = data.attribute_count();
  NormalizationStats stats{std::vector<double>(dims, 0.0), std::vector<double>(dims, 0.0),
                           std::vector<bool>(dims, true)};
  for (std::size_t d = 0; d < dims; ++d) {
    const double first = data.features(0)[d];
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = data.features(i)[d];
      sum += v;
      if (v != first) stats.constant[d] = false;
    }
    const double mean = sum / static_cast<double>(n);
    stats.mean[d] = mean;
    if (stats.constant[d]) continue;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = data.features(i)[d] - mean;
      ss += e * e;
    }
    stats.stddev[d] = std::sqrt(ss / static_cast<double>(n));
  }
  return stats;
}

std::vector<std::size_t> constant_attributes(const Dataset& data) {
  const auto stats = attribute_stats(data);
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d < stats.constant.size(); ++d) {
    if (stats.constant[d]) out.push_back(d);
  }
  return out;
}

Normalized zscore_normalize(const Dataset& data) {
  auto stats = attribute_stats(data);
  const std::size_t dims = data.attribute_count();
  for (std::size_t d = 0; d < dims; ++d) {
    if (stats.constant[d]) {
      throw Error(ErrorKind::DegenerateAttribute,
                  fmt::format("attribute column {} is constant (standard deviation 0)", d));
    }
  }
  std::vector<double> values(data.values().begin(), data.values().end());
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t d = 0; d < dims; ++d) {
      double& v = values[i * dims + d];
      v = (v - stats.mean[d]) / stats.stddev[d];
    }
  }
  return {data.with_values(std::move(values), dims), std::move(stats)};
}

double average_pairwise_distance(const Dataset& data, RadiusAverage average) {
  const std::size_t n = data.size();
  if (n < 2) {
    throw Error(ErrorKind::InsufficientData,
                fmt::format("need at least 2 examples for pairwise distances, got {}", n));
  }
  const auto points = pack(data);
  // Row sums are computed independently, then folded in row order, so the
  // total does not depend on how rows are scheduled.
  std::vector<double> row_sums(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    std::vector<double> sq(n);
    kernels::squared_distances(points, data.features(i), sq);
    double s = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      s += average == RadiusAverage::MeanDistance ? std::sqrt(sq[j]) : sq[j];
    }
    row_sums[i] = s;
  });
  double total = 0.0;
  for (double s : row_sums) total += s;
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return total / pairs;
}

double radius_for_percent(double average, double percent) {
  if (!(percent > 0.0 && percent <= 200.0)) {
    throw Error(ErrorKind::Config, fmt::format("radius percent must be in (0, 200], got {}", percent));
  }
  return (percent / 100.0) * std::sqrt(average);
}

double interaction_radius(const Dataset& data, double percent, RadiusAverage average) {
  if (!(percent > 0.0 && percent <= 200.0)) {
    throw Error(ErrorKind::Config, fmt::format("radius percent must be in (0, 200], got {}", percent));
  }
  return radius_for_percent(average_pairwise_distance(data, average), percent);
}

}  // namespace knnpe
