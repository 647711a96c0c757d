#pragma once

#include <cstddef>
#include <vector>

#include "knnpe/core.hpp"

namespace knnpe {

struct NormalizationStats {
  std::vector<double> mean;
  std::vector<double> stddev;  // population (1/n)
  std::vector<bool> constant;
};

struct Normalized {
  Dataset data;
  NormalizationStats stats;
};

/// Per-attribute mean and population standard deviation. An attribute whose
/// values are all identical gets stddev 0 and is flagged constant.
NormalizationStats attribute_stats(const Dataset& data);

/// (x - mean) / stddev per attribute. Throws DegenerateAttribute naming the
/// first constant column, EmptyInput on an empty dataset.
Normalized zscore_normalize(const Dataset& data);

/// Indices of constant attributes, ascending.
std::vector<std::size_t> constant_attributes(const Dataset& data);

enum class RadiusAverage {
  MeanDistance,         // mean Euclidean distance over unordered distinct pairs
  MeanSquaredDistance,  // mean squared distance over the same pairs
};

/// Mean pairwise distance (or squared distance) over unordered distinct pairs.
double average_pairwise_distance(const Dataset& data,
                                 RadiusAverage average = RadiusAverage::MeanDistance);

/// (percent / 100) * sqrt(average pairwise distance). Percent must lie in (0, 200].
double interaction_radius(const Dataset& data, double percent,
                          RadiusAverage average = RadiusAverage::MeanDistance);
/// Same formula for an average computed once and reused across a sweep.
double radius_for_percent(double average, double percent);

}  // namespace knnpe
