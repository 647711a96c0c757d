#pragma once

// Evaluation reports and their two renderings: aligned human-readable tables
// and the "knnpe-report/1" machine record (JSON with a fixed key order, see
// README.md for the schema).

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "knnpe/mapgen.hpp"

namespace knnpe {

struct SpecSummary {
  std::string spec;  // canonical text as requested (p= kept)
  std::string name;  // display name
  std::optional<double> radius;  // resolved PE radius
  std::size_t errors = 0;
  double error_ratio = 0.0;
  std::optional<double> outlier_ratio;  // CNN only: condense once, classify all
  // Per-example predicted label name, nullopt for Unclassified; only kept
  // when predictions were requested.
  std::vector<std::optional<std::string>> predictions;
  friend bool operator==(const SpecSummary&, const SpecSummary&) = default;
};

struct McNemarCell {
  std::size_t e00 = 0, e01 = 0, e10 = 0, e11 = 0;
  double statistic = 0.0;
  bool reject = false;
  friend bool operator==(const McNemarCell&, const McNemarCell&) = default;
};

struct SweepPoint {
  double percent = 0.0;
  double radius = 0.0;
  std::vector<std::size_t> errors;   // one per sweep spec
  std::vector<double> error_ratios;  // one per sweep spec
  // Result correlation between sweep specs, null where undefined.
  std::vector<std::vector<std::optional<double>>> correlation;
  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

struct MapSection {
  std::size_t width = 0, height = 0;
  Bounds bounds;
  std::vector<std::string> files;  // written PPM paths, one per spec or image
  std::vector<std::string> labels; // row/column labels of `correlation`
  std::vector<std::size_t> excluded;  // Unclassified cells per map
  std::vector<std::vector<std::optional<double>>> correlation;
  friend bool operator==(const MapSection&, const MapSection&) = default;
};

struct EvaluationReport {
  std::string dataset;
  std::string source;  // file path
  std::size_t instances = 0, attributes = 0, classes = 0;
  std::vector<std::string> alphabet;
  std::vector<std::string> catalog_notes;  // verify_catalog output
  bool normalized = false;
  std::vector<std::string> dropped_attributes;
  std::string radius_average;  // "mean-distance" or "mean-squared-distance"
  std::optional<double> average_distance;
  std::vector<SpecSummary> specs;
  // All matrices are indexed by `specs` order. Empty unless compared.
  std::vector<std::vector<std::optional<double>>> correlation;
  std::vector<std::vector<double>> info_gain;  // [i][j] = IG(spec j | spec i)
  std::vector<double> truth_info_gain;         // IG(truth | spec i)
  std::vector<std::vector<McNemarCell>> mcnemar;
  std::vector<std::string> sweep_specs;
  std::vector<SweepPoint> sweep;
  std::optional<MapSection> maps;
  friend bool operator==(const EvaluationReport&, const EvaluationReport&) = default;
};

enum class ReportFormat { Table, Record };

std::optional<ReportFormat> parse_report_format(std::string_view text);

std::string emit_report(const EvaluationReport& report, ReportFormat format);
std::string emit_reports(const std::vector<EvaluationReport>& reports, ReportFormat format);

/// Inverse of emit_reports(..., Record). Throws Parse on malformed input.
std::vector<EvaluationReport> parse_reports(std::string_view record);

}  // namespace knnpe
