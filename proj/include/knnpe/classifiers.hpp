#pragma once

// K-nearest-neighbors (majority and distance-weighted votes) and the
// potential energy classifier with Yukawa / Gaussian potentials.

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "knnpe/core.hpp"
#include "knnpe/kernels.hpp"

namespace knnpe {

/// A class label index, or the explicit "unclassified" outcome of a tie.
class Verdict {
 public:
  static Verdict unclassified() { return Verdict{}; }
  static Verdict classified(LabelIndex label) { return Verdict{label}; }

  bool is_classified() const noexcept { return label_.has_value(); }
  /// Precondition: is_classified().
  LabelIndex label() const { return *label_; }
  std::optional<LabelIndex> maybe_label() const noexcept { return label_; }
  bool is(LabelIndex label) const noexcept { return label_ && *label_ == label; }

  friend bool operator==(const Verdict&, const Verdict&) = default;

 private:
  Verdict() = default;
  explicit Verdict(LabelIndex label) : label_(label) {}
  std::optional<LabelIndex> label_;
};

struct Neighbor {
  std::size_t index;  // position in the training dataset
  double distance;    // true Euclidean distance
};

/// The min(k, n) nearest training examples, sorted by (distance, index).
using NeighborSet = std::vector<Neighbor>;

inline constexpr double kInfiniteEnergy = std::numeric_limits<double>::infinity();

// ---- public operations over a training Dataset ----

NeighborSet nearest_neighbors(const Dataset& train, std::size_t k, std::span<const double> query);

Verdict knn_classify(const Dataset& train, std::size_t k, std::span<const double> query);
Verdict weighted_knn_classify(const Dataset& train, std::size_t k, std::span<const double> query);

/// Yukawa: exp(-d/r)/d, Gaussian: exp(-d^2/r^2)/d. Throws Singularity for d = 0.
double potential(PotentialKind kind, double radius, double distance);

/// Summed (or, when normalized, averaged) potential of one class at `query`.
/// Returns kInfiniteEnergy when the query coincides with a member of the class.
double class_energy(const Dataset& train, LabelIndex label, PotentialKind kind, double radius,
                    std::span<const double> query, bool normalized);

Verdict pe_classify(const Dataset& train, PotentialKind kind, double radius,
                    std::span<const double> query, bool normalized);

// ---- vote engines over precomputed squared distances ----
//
// `sq` holds squared distances from the query to each candidate, `labels`
// the candidates' label indices, both in candidate order (which is also the
// tie-break order). The candidate at position `skip`, if any, is ignored.
// Shared by the public operations above, LOO, condensation and maps so every
// path applies exactly the same tie rules.

inline constexpr std::size_t kNoSkip = std::numeric_limits<std::size_t>::max();

/// Positions of the min(k, candidates) nearest candidates by (sq, position).
std::vector<std::size_t> select_nearest(std::span<const double> sq, std::size_t k,
                                        std::size_t skip = kNoSkip);

Verdict majority_vote(std::span<const double> sq, std::span<const LabelIndex> labels,
                      std::size_t class_count, std::size_t k, std::size_t skip = kNoSkip);
Verdict weighted_vote(std::span<const double> sq, std::span<const LabelIndex> labels,
                      std::size_t class_count, std::size_t k, std::size_t skip = kNoSkip);

/// Per-class energies; coincident classes hold kInfiniteEnergy.
std::vector<double> energies(std::span<const double> sq, std::span<const LabelIndex> labels,
                             std::size_t class_count, PotentialKind kind, double radius,
                             bool normalized, std::size_t skip = kNoSkip);
Verdict pe_vote(std::span<const double> sq, std::span<const LabelIndex> labels,
                std::size_t class_count, PotentialKind kind, double radius, bool normalized,
                std::size_t skip = kNoSkip);

/// Training set packed once for repeated queries (maps, services).
class PackedTrainingSet {
 public:
  explicit PackedTrainingSet(const Dataset& train);

  const Dataset& data() const noexcept { return data_; }
  std::vector<double> squared_distances(std::span<const double> query) const;

 private:
  Dataset data_;
  kernels::PackedPoints points_;
};

/// Classifies one query with a KNN or PE spec against a packed training set.
/// CNN specs must be condensed first (see condense.hpp); passing one throws Config.
Verdict classify(const PackedTrainingSet& train, const ClassifierSpec& spec,
                 std::span<const double> query);

}  // namespace knnpe
