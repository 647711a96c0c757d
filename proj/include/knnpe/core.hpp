#pragma once

// Domain types shared by every module: labels, datasets, classifier
// configurations, and the Euclidean distance.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace knnpe {

enum class ErrorKind {
  Dimension,
  DegenerateAttribute,
  InsufficientData,
  Singularity,
  NoEnemy,
  UndefinedCorrelation,
  EmptyInput,
  Parse,
  Config,
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

using FeatureVector = std::vector<double>;
using LabelIndex = std::size_t;

struct Label {
  std::string name;
  LabelIndex index = 0;

  friend bool operator==(const Label& a, const Label& b) { return a.name == b.name; }
};

struct LabeledExample {
  FeatureVector features;
  Label label;
};

/// Ordered, immutable collection of labeled feature vectors.
///
/// Features are stored row-major in one contiguous buffer. The label alphabet
/// is kept in first-appearance order, so label indices are stable for a given
/// input order.
class Dataset {
 public:
  Dataset() = default;

  /// Validates equal dimension and finite coordinates; label names are trimmed.
  static Dataset from_rows(const std::vector<FeatureVector>& features,
                           const std::vector<std::string>& labels);
  static Dataset from_examples(const std::vector<LabeledExample>& examples);

  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  std::size_t attribute_count() const noexcept { return dims_; }
  std::size_t class_count() const noexcept { return alphabet_.size(); }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }

  std::span<const double> features(std::size_t i) const {
    return {values_.data() + i * dims_, dims_};
  }
  std::span<const double> values() const noexcept { return values_; }
  LabelIndex label_index(std::size_t i) const { return labels_[i]; }
  const std::vector<LabelIndex>& label_indices() const noexcept { return labels_; }
  Label label(std::size_t i) const { return {alphabet_[labels_[i]], labels_[i]}; }
  LabeledExample example(std::size_t i) const;

  std::optional<LabelIndex> find_label(std::string_view name) const;
  /// Examples per alphabet entry.
  std::vector<std::size_t> class_counts() const;

  /// Examples at `indices`, in that order. The alphabet keeps this dataset's
  /// relative order restricted to labels that still occur, so when every
  /// class survives the label indices are unchanged.
  Dataset subset(std::span<const std::size_t> indices) const;
  Dataset without(std::size_t index) const;
  /// Same examples with attribute columns removed.
  Dataset drop_attributes(std::span<const std::size_t> columns) const;
  /// Same labels with a replaced feature matrix (row-major, same row count).
  Dataset with_values(std::vector<double> values, std::size_t dims) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::size_t dims_ = 0;
  std::vector<double> values_;
  std::vector<LabelIndex> labels_;
  std::vector<std::string> alphabet_;
};

std::string trim(std::string_view text);

// ---- classifier configurations ----

enum class PotentialKind { Yukawa, Gaussian };

std::string_view potential_name(PotentialKind kind) noexcept;

struct KnnSpec {
  std::size_t k = 1;
  bool weighted = false;
  friend bool operator==(const KnnSpec&, const KnnSpec&) = default;
};

struct CnnSpec {
  std::size_t k = 1;
  friend bool operator==(const CnnSpec&, const CnnSpec&) = default;
};

struct PeSpec {
  PotentialKind kind = PotentialKind::Yukawa;
  double radius = 1.0;
  bool normalized = false;
  friend bool operator==(const PeSpec&, const PeSpec&) = default;
};

using ClassifierSpec = std::variant<KnnSpec, CnnSpec, PeSpec>;

/// Throws Config when k < 1 or radius is not a positive finite number.
void validate(const ClassifierSpec& spec);

// ---- distance ----

/// sqrt of the sum of squared coordinate differences, summed in dimension order.
double euclidean_distance(std::span<const double> a, std::span<const double> b);

}  // namespace knnpe
