#pragma once

// Shared test helpers: seeded generators for property tests and naive
// reference implementations written independently of the library's engines.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "knnpe/core.hpp"

#ifndef KNNPE_DATA_DIR
#define KNNPE_DATA_DIR "data"
#endif

namespace testing {

using knnpe::Dataset;

inline std::string data_path(const std::string& file) {
  return std::string(KNNPE_DATA_DIR) + "/" + file;
}

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  std::size_t index(std::size_t lo, std::size_t hi) {  // inclusive
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

  /// Random labeled dataset. `grid` > 0 snaps coordinates to multiples of
  /// 1/grid so ties and duplicates actually occur.
  Dataset dataset(std::size_t n, std::size_t dims, std::size_t classes, int grid = 0) {
    std::vector<knnpe::FeatureVector> features(n, knnpe::FeatureVector(dims));
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto& v : features[i]) {
        v = uniform(-1.0, 1.0);
        if (grid > 0) v = std::round(v * grid) / grid;
      }
      labels[i] = "c" + std::to_string(i < classes ? i : index(0, classes - 1));
    }
    return Dataset::from_rows(features, labels);
  }
};

// ---- naive references ----

/// Distance computed the textbook way, independent of the packed kernels.
inline double naive_squared(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) s += (a[d] - b[d]) * (a[d] - b[d]);
  return s;
}
inline double naive_distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(naive_squared(a, b));
}

/// Leave-one-out 1-NN: nearest other example (ties to the lower index);
/// returns the error count.
inline std::size_t naive_loo_1nn_errors(const Dataset& data) {
  std::size_t errors = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::size_t best = data.size();
    double best_d = 0.0;
    for (std::size_t j = 0; j < data.size(); ++j) {
      if (j == i) continue;
      // Squared: sqrt can merge two values an ulp apart into a false tie.
      const double d = naive_squared(data.features(i), data.features(j));
      if (best == data.size() || d < best_d) {
        best = j;
        best_d = d;
      }
    }
    if (data.label_index(best) != data.label_index(i)) ++errors;
  }
  return errors;
}

/// 1-NN over a prototype subset, ties to the lower original index.
inline std::size_t naive_nearest(const Dataset& data, const std::vector<std::size_t>& protos,
                                 std::size_t i) {
  std::size_t best = protos.front();
  double best_d = naive_squared(data.features(i), data.features(best));
  for (auto p : protos) {
    const double d = naive_squared(data.features(i), data.features(p));
    if (d < best_d || (d == best_d && p < best)) {
      best = p;
      best_d = d;
    }
  }
  return best;
}

/// H(Y) - H(Y|X) from probabilities, via maps rather than count tables.
inline double naive_info_gain(const std::vector<std::size_t>& xs, const std::vector<std::size_t>& ys) {
  const double n = static_cast<double>(xs.size());
  std::map<std::size_t, double> py;
  std::map<std::size_t, double> px;
  std::map<std::pair<std::size_t, std::size_t>, double> pxy;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    py[ys[k]] += 1.0 / n;
    px[xs[k]] += 1.0 / n;
    pxy[{xs[k], ys[k]}] += 1.0 / n;
  }
  double hy = 0.0;
  for (const auto& [y, p] : py) hy -= p * std::log2(p);
  double hy_given_x = 0.0;
  for (const auto& [xy, p] : pxy) {
    const double cond = p / px[xy.first];
    hy_given_x -= p * std::log2(cond);
  }
  return hy - hy_given_x;
}

/// Pearson coefficient by the expectation formulas Cov/(sd sd).
inline double naive_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double ex = 0, ey = 0, exy = 0, exx = 0, eyy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    ex += x[i] / n;
    ey += y[i] / n;
    exy += x[i] * y[i] / n;
    exx += x[i] * x[i] / n;
    eyy += y[i] * y[i] / n;
  }
  return (exy - ex * ey) / std::sqrt((exx - ex * ex) * (eyy - ey * ey));
}

}  // namespace testing
