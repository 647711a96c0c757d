#pragma once

// The three benchmark commands (cv, compare, map) as library calls. The CLI
// and the HTTP service are thin layers over these.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "knnpe/io.hpp"
#include "knnpe/mapgen.hpp"
#include "knnpe/preprocess.hpp"
#include "knnpe/report.hpp"
#include "knnpe/spec_text.hpp"

namespace knnpe {

struct SweepRange {
  double start = 10.0;
  double stop = 200.0;
  double step = 10.0;
  /// start, start + step, ... up to stop (inclusive, 1e-9 slack).
  std::vector<double> values() const;
};

struct RunConfig {
  std::vector<std::string> data_paths;
  std::optional<bool> normalize;  // unset: on for cv/compare, off for map
  std::vector<SpecText> specs;
  std::optional<SweepRange> sweep;  // varies every PE spec's percent
  std::size_t map_width = 200;
  std::size_t map_height = 200;
  std::optional<Bounds> bounds;   // unset: data bounding box plus a 10% margin
  std::string out_dir = ".";      // map: where PPM files go
  std::vector<std::string> images;  // map: external PPMs to snap and correlate
  RadiusAverage radius_average = RadiusAverage::MeanDistance;
  bool predictions = false;
  HeaderMode header = HeaderMode::Auto;
};

/// Throws Config for an empty spec list, an empty data list or a bad sweep.
void validate(const RunConfig& config);

/// A loaded dataset ready for evaluation: constant attributes dropped and
/// z-scored when normalizing.
struct PreparedData {
  std::string name;
  std::string source;
  Dataset data;
  std::vector<std::string> attribute_names;
  std::vector<std::string> catalog_notes;
  std::vector<std::string> dropped;
  bool normalized = false;
};

PreparedData prepare(const std::string& path, bool normalize, HeaderMode header);
PreparedData prepare(std::string name, Dataset data, bool normalize);

/// Leave-one-out per spec, plus the radius sweep when configured.
EvaluationReport evaluate_cv(const PreparedData& data, const RunConfig& config);
/// evaluate_cv plus correlation, information gain and McNemar matrices.
EvaluationReport evaluate_compare(const PreparedData& data, const RunConfig& config);

std::vector<EvaluationReport> cmd_cv(const RunConfig& config);
std::vector<EvaluationReport> cmd_compare(const RunConfig& config);
/// Writes one PPM per spec into out_dir and reports the map correlations.
std::vector<EvaluationReport> cmd_map(const RunConfig& config);

/// Bounding box of 2-D data widened by 10% per side (1 unit when flat).
Bounds default_bounds(const Dataset& data);

}  // namespace knnpe
