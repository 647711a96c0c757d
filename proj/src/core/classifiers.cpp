#include "knnpe/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "knnpe/distance_table.hpp"

namespace knnpe {

namespace {

void require_nonempty(const Dataset& train) {
  if (train.empty()) throw Error(ErrorKind::EmptyInput, "training set is empty");
}

// Unique argmax over `score`, considering only entries with `eligible` set.
Verdict unique_argmax(std::span<const double> score, const std::vector<bool>& eligible) {
  std::optional<LabelIndex> best;
  bool tied = false;
  for (LabelIndex c = 0; c < score.size(); ++c) {
    if (!eligible[c]) continue;
    if (!best || score[c] > score[*best]) {
      best = c;
      tied = false;
    } else if (score[c] == score[*best]) {
      tied = true;
    }
  }
  if (!best || tied) return Verdict::unclassified();
  return Verdict::classified(*best);
}

}  // namespace

std::vector<std::size_t> select_nearest(std::span<const double> sq, std::size_t k,
                                        std::size_t skip) {
  std::vector<std::size_t> order;
  order.reserve(sq.size());
  for (std::size_t i = 0; i < sq.size(); ++i) {
    if (i != skip) order.push_back(i);
  }
  const std::size_t take = std::min(k, order.size());
  const auto closer = [&](std::size_t a, std::size_t b) {
    return sq[a] < sq[b] || (sq[a] == sq[b] && a < b);
  };
  if (take == 1) {
    order = {*std::min_element(order.begin(), order.end(), closer)};
    return order;
  }
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                    closer);
  order.resize(take);
  return order;
}

Verdict majority_vote(std::span<const double> sq, std::span<const LabelIndex> labels,
                      std::size_t class_count, std::size_t k, std::size_t skip) {
  const auto nearest = select_nearest(sq, k, skip);
  if (nearest.empty()) return Verdict::unclassified();
  std::vector<double> votes(class_count, 0.0);
  std::vector<bool> eligible(class_count, false);
  for (auto i : nearest) {
    votes[labels[i]] += 1.0;
    eligible[labels[i]] = true;
  }
  return unique_argmax(votes, eligible);
}

Verdict weighted_vote(std::span<const double> sq, std::span<const LabelIndex> labels,
                      std::size_t class_count, std::size_t k, std::size_t skip) {
  const auto nearest = select_nearest(sq, k, skip);
  if (nearest.empty()) return Verdict::unclassified();
  std::vector<double> votes(class_count, 0.0);
  std::vector<bool> eligible(class_count, false);

  // Zero-distance neighbors carry infinite weight: only they vote.
  bool coincident = false;
  for (auto i : nearest) {
    if (sq[i] == 0.0) {
      coincident = true;
      votes[labels[i]] += 1.0;
      eligible[labels[i]] = true;
    }
  }
  if (coincident) return unique_argmax(votes, eligible);

  for (auto i : nearest) {
    votes[labels[i]] += 1.0 / sq[i];
    eligible[labels[i]] = true;
  }
  return unique_argmax(votes, eligible);
}

double potential(PotentialKind kind, double radius, double distance) {
  if (!(radius > 0.0)) throw Error(ErrorKind::Config, "radius must be > 0");
  if (distance == 0.0) throw Error(ErrorKind::Singularity, "potential is singular at distance 0");
  if (distance < 0.0) throw Error(ErrorKind::Config, "distance must be nonnegative");
  if (kind == PotentialKind::Yukawa) return std::exp(-distance / radius) / distance;
  const double s = distance / radius;
  return std::exp(-(s * s)) / distance;
}

std::vector<double> energies(std::span<const double> sq, std::span<const LabelIndex> labels,
                             std::size_t class_count, PotentialKind kind, double radius,
                             bool normalized, std::size_t skip) {
  std::vector<double> energy(class_count, 0.0);
  std::vector<std::size_t> count(class_count, 0);
  std::vector<bool> coincident(class_count, false);
  for (std::size_t i = 0; i < sq.size(); ++i) {
    if (i == skip) continue;
    const auto c = labels[i];
    ++count[c];
    if (sq[i] == 0.0) {
      coincident[c] = true;
    } else if (!coincident[c]) {
      energy[c] += potential(kind, radius, std::sqrt(sq[i]));
    }
  }
  for (std::size_t c = 0; c < class_count; ++c) {
    if (coincident[c]) {
      energy[c] = kInfiniteEnergy;
    } else if (normalized && count[c] > 0) {
      energy[c] /= static_cast<double>(count[c]);
    }
  }
  return energy;
}

Verdict pe_vote(std::span<const double> sq, std::span<const LabelIndex> labels,
                std::size_t class_count, PotentialKind kind, double radius, bool normalized,
                std::size_t skip) {
  const auto energy = energies(sq, labels, class_count, kind, radius, normalized, skip);
  // Only classes with at least one training example compete.
  std::vector<bool> eligible(class_count, false);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i != skip) eligible[labels[i]] = true;
  }
  return unique_argmax(energy, eligible);
}

NeighborSet nearest_neighbors(const Dataset& train, std::size_t k, std::span<const double> query) {
  require_nonempty(train);
  if (k < 1) throw Error(ErrorKind::Config, "k must be at least 1");
  const auto sq = squared_distances_to(pack(train), query);
  NeighborSet out;
  for (auto i : select_nearest(sq, k)) out.push_back({i, std::sqrt(sq[i])});
  return out;
}

Verdict knn_classify(const Dataset& train, std::size_t k, std::span<const double> query) {
  return classify(PackedTrainingSet(train), KnnSpec{k, false}, query);
}

Verdict weighted_knn_classify(const Dataset& train, std::size_t k, std::span<const double> query) {
  return classify(PackedTrainingSet(train), KnnSpec{k, true}, query);
}

double class_energy(const Dataset& train, LabelIndex label, PotentialKind kind, double radius,
                    std::span<const double> query, bool normalized) {
  if (label >= train.class_count()) {
    throw Error(ErrorKind::Config, fmt::format("label index {} not in the alphabet", label));
  }
  if (!(radius > 0.0)) throw Error(ErrorKind::Config, "radius must be > 0");
  const auto sq = squared_distances_to(pack(train), query);
  return energies(sq, train.label_indices(), train.class_count(), kind, radius, normalized)[label];
}

Verdict pe_classify(const Dataset& train, PotentialKind kind, double radius,
                    std::span<const double> query, bool normalized) {
  return classify(PackedTrainingSet(train), PeSpec{kind, radius, normalized}, query);
}

PackedTrainingSet::PackedTrainingSet(const Dataset& train) : data_(train), points_(pack(train)) {
  require_nonempty(data_);
}

std::vector<double> PackedTrainingSet::squared_distances(std::span<const double> query) const {
  return squared_distances_to(points_, query);
}

Verdict classify(const PackedTrainingSet& train, const ClassifierSpec& spec,
                 std::span<const double> query) {
  validate(spec);
  const auto sq = train.squared_distances(query);
  const auto& labels = train.data().label_indices();
  const auto classes = train.data().class_count();
  if (const auto* knn = std::get_if<KnnSpec>(&spec)) {
    return knn->weighted ? weighted_vote(sq, labels, classes, knn->k)
                         : majority_vote(sq, labels, classes, knn->k);
  }
  if (const auto* pe = std::get_if<PeSpec>(&spec)) {
    return pe_vote(sq, labels, classes, pe->kind, pe->radius, pe->normalized);
  }
  throw Error(ErrorKind::Config, "CNN specs classify through a condensed prototype set");
}

}  // namespace knnpe
