#pragma once

// Text form of classifier specs:
//   knn:k=1   knn:k=5:weighted   cnn:k=1   pe:yukawa:p=10   pe:gauss:r=30:normalized
// A PE radius is either absolute (r=) or a percentage of the square root of
// the dataset's average pairwise distance (p=), resolved per dataset.

#include <optional>
#include <string>
#include <string_view>

#include "knnpe/core.hpp"
#include "knnpe/preprocess.hpp"

namespace knnpe {

struct SpecText {
  ClassifierSpec spec;                  // PE radius is a placeholder when `percent` is set
  std::optional<double> percent;        // p=...; PE only
  friend bool operator==(const SpecText&, const SpecText&) = default;
};

/// Throws Config on unknown kinds, missing or malformed keys, k < 1,
/// r <= 0, or p outside (0, 200].
SpecText parse_spec(std::string_view text);

/// Canonical text; parse_spec(format_spec(s)) == s.
std::string format_spec(const SpecText& spec);
/// Canonical text of a concrete spec (PE radius written as r=).
std::string format_spec(const ClassifierSpec& spec);

/// Short table label: 1NN, 5WNN, 1CNN, PE-Y, PE-G (normalized PE adds "n").
std::string display_name(const ClassifierSpec& spec);

/// Concrete spec for a dataset whose average pairwise distance is `average`.
ClassifierSpec resolve(const SpecText& spec, double average);

}  // namespace knnpe
