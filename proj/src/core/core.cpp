#include "knnpe/core.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <fmt/format.h>

namespace knnpe {

std::string_view error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Dimension: return "dimension error";
    case ErrorKind::DegenerateAttribute: return "degenerate attribute";
    case ErrorKind::InsufficientData: return "insufficient data";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::NoEnemy: return "no enemy";
    case ErrorKind::UndefinedCorrelation: return "undefined correlation";
    case ErrorKind::EmptyInput: return "empty input";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Config: return "config error";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(fmt::format("{}: {}", error_kind_name(kind), message)), kind_(kind) {}

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(first, last - first + 1));
}

Dataset Dataset::from_rows(const std::vector<FeatureVector>& features,
                           const std::vector<std::string>& labels) {
  if (features.size() != labels.size()) {
    throw Error(ErrorKind::Dimension,
                fmt::format("{} feature rows but {} labels", features.size(), labels.size()));
  }
  Dataset out;
  if (features.empty()) return out;
  out.dims_ = features.front().size();
  if (out.dims_ == 0) throw Error(ErrorKind::Dimension, "examples have no attributes");
  out.values_.reserve(features.size() * out.dims_);
  out.labels_.reserve(labels.size());

  std::unordered_map<std::string, LabelIndex> index_of;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const auto& row = features[i];
    if (row.size() != out.dims_) {
      throw Error(ErrorKind::Dimension, fmt::format("example {} has {} attributes, expected {}", i,
                                                    row.size(), out.dims_));
    }
    for (std::size_t d = 0; d < row.size(); ++d) {
      if (!std::isfinite(row[d])) {
        throw Error(ErrorKind::Parse,
                    fmt::format("example {} attribute {} is not finite", i, d));
      }
    }
    out.values_.insert(out.values_.end(), row.begin(), row.end());

    std::string name = trim(labels[i]);
    auto [it, inserted] = index_of.try_emplace(name, out.alphabet_.size());
    if (inserted) out.alphabet_.push_back(name);
    out.labels_.push_back(it->second);
  }
  return out;
}

Dataset Dataset::from_examples(const std::vector<LabeledExample>& examples) {
  std::vector<FeatureVector> features;
  std::vector<std::string> labels;
  features.reserve(examples.size());
  labels.reserve(examples.size());
  for (const auto& e : examples) {
    features.push_back(e.features);
    labels.push_back(e.label.name);
  }
  return from_rows(features, labels);
}

LabeledExample Dataset::example(std::size_t i) const {
  auto f = features(i);
  return {FeatureVector(f.begin(), f.end()), label(i)};
}

std::optional<LabelIndex> Dataset::find_label(std::string_view name) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), name);
  if (it == alphabet_.end()) return std::nullopt;
  return static_cast<LabelIndex>(it - alphabet_.begin());
}

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(alphabet_.size(), 0);
  for (auto l : labels_) ++counts[l];
  return counts;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out;
  out.dims_ = dims_;
  std::vector<bool> present(alphabet_.size(), false);
  for (auto i : indices) {
    if (i >= size()) throw Error(ErrorKind::Dimension, fmt::format("index {} out of range", i));
    present[labels_[i]] = true;
  }
  std::vector<LabelIndex> remap(alphabet_.size(), 0);
  for (std::size_t c = 0; c < alphabet_.size(); ++c) {
    if (!present[c]) continue;
    remap[c] = out.alphabet_.size();
    out.alphabet_.push_back(alphabet_[c]);
  }
  out.values_.reserve(indices.size() * dims_);
  out.labels_.reserve(indices.size());
  for (auto i : indices) {
    auto f = features(i);
    out.values_.insert(out.values_.end(), f.begin(), f.end());
    out.labels_.push_back(remap[labels_[i]]);
  }
  return out;
}

Dataset Dataset::without(std::size_t index) const {
  std::vector<std::size_t> keep;
  keep.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (i != index) keep.push_back(i);
  }
  return subset(keep);
}

Dataset Dataset::drop_attributes(std::span<const std::size_t> columns) const {
  std::vector<bool> drop(dims_, false);
  for (auto c : columns) {
    if (c >= dims_) throw Error(ErrorKind::Dimension, fmt::format("column {} out of range", c));
    drop[c] = true;
  }
  const auto kept = static_cast<std::size_t>(std::count(drop.begin(), drop.end(), false));
  if (kept == 0) throw Error(ErrorKind::Dimension, "cannot drop every attribute");
  std::vector<double> values;
  values.reserve(size() * kept);
  for (std::size_t i = 0; i < size(); ++i) {
    auto f = features(i);
    for (std::size_t d = 0; d < dims_; ++d) {
      if (!drop[d]) values.push_back(f[d]);
    }
  }
  return with_values(std::move(values), kept);
}

Dataset Dataset::with_values(std::vector<double> values, std::size_t dims) const {
  if (dims == 0 || values.size() != size() * dims) {
    throw Error(ErrorKind::Dimension, "replacement feature matrix has the wrong shape");
  }
  Dataset out = *this;
  out.values_ = std::move(values);
  out.dims_ = dims;
  return out;
}

std::string_view potential_name(PotentialKind kind) noexcept {
  return kind == PotentialKind::Yukawa ? "yukawa" : "gauss";
}

void validate(const ClassifierSpec& spec) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PeSpec>) {
          if (!(s.radius > 0.0) || !std::isfinite(s.radius)) {
            throw Error(ErrorKind::Config, fmt::format("radius must be > 0, got {}", s.radius));
          }
        } else {
          if (s.k < 1) throw Error(ErrorKind::Config, "k must be at least 1");
        }
      },
      spec);
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::Dimension,
                fmt::format("vectors have dimensions {} and {}", a.size(), b.size()));
  }
  double sum = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double diff = a[d] - b[d];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

}  // namespace knnpe
