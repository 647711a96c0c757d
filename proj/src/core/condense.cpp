#include "knnpe/condense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "knnpe/parallel.hpp"

namespace knnpe {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

BorderRatio border_ratio(const DistanceTable& table, std::span<const LabelIndex> labels,
                         std::span<const std::size_t> active, std::size_t index) {
  const LabelIndex own = labels[index];
  std::size_t enemy = kNone;
  for (auto j : active) {
    if (labels[j] == own) continue;
    if (enemy == kNone || table.squared(index, j) < table.squared(index, enemy)) enemy = j;
  }
  if (enemy == kNone) {
    throw Error(ErrorKind::NoEnemy,
                fmt::format("example {} has no example with a different label", index));
  }
  // x itself is always a candidate, so the witness is never farther from y than x.
  std::size_t witness = kNone;
  for (auto j : active) {
    if (labels[j] != own) continue;
    if (witness == kNone || table.squared(enemy, j) < table.squared(enemy, witness)) witness = j;
  }
  BorderRatio out{index, 1.0, enemy, witness, false};
  const double to_enemy = std::sqrt(table.squared(index, enemy));
  if (to_enemy == 0.0) {
    out.coincident_enemy = true;
  } else {
    out.ratio = std::sqrt(table.squared(enemy, witness)) / to_enemy;
  }
  return out;
}

std::vector<std::size_t> hart_order_indices(const DistanceTable& table,
                                            std::span<const LabelIndex> labels,
                                            std::span<const std::size_t> active) {
  std::vector<double> ratio(active.size());
  parallel_for(active.size(), [&](std::size_t a) {
    ratio[a] = border_ratio(table, labels, active, active[a]).ratio;
  });
  std::vector<std::size_t> pos = all_indices(active.size());
  // `active` is ascending, so a stable sort keeps original-index order on ties.
  std::stable_sort(pos.begin(), pos.end(),
                   [&](std::size_t a, std::size_t b) { return ratio[a] > ratio[b]; });
  std::vector<std::size_t> out;
  out.reserve(pos.size());
  for (auto p : pos) out.push_back(active[p]);
  return out;
}

std::vector<std::size_t> hart_condense_indices(const DistanceTable& table,
                                               std::span<const LabelIndex> labels,
                                               std::span<const std::size_t> active,
                                               std::size_t* passes) {
  if (active.empty()) throw Error(ErrorKind::EmptyInput, "nothing to condense");
  const auto order = hart_order_indices(table, labels, active);

  std::vector<std::size_t> prototypes{order.front()};

  struct Pending {
    std::size_t index;
    std::size_t checked = 0;  // prototypes[0, checked) already examined
    std::size_t nearest = kNone;
  };
  std::vector<Pending> remaining;
  remaining.reserve(order.size());
  for (std::size_t i = 1; i < order.size(); ++i) remaining.push_back({order[i]});

  std::size_t pass_count = 0;
  bool added = true;
  while (added && !remaining.empty()) {
    added = false;
    ++pass_count;
    std::vector<Pending> next;
    next.reserve(remaining.size());
    for (auto& x : remaining) {
      // U only grows, so the nearest prototype is updated incrementally;
      // ties go to the lower original index regardless of insertion order.
      for (; x.checked < prototypes.size(); ++x.checked) {
        const std::size_t p = prototypes[x.checked];
        if (x.nearest == kNone) {
          x.nearest = p;
          continue;
        }
        const double dp = table.squared(x.index, p);
        const double dn = table.squared(x.index, x.nearest);
        if (dp < dn || (dp == dn && p < x.nearest)) x.nearest = p;
      }
      if (labels[x.nearest] != labels[x.index]) {
        prototypes.push_back(x.index);
        added = true;
      } else {
        next.push_back(x);
      }
    }
    remaining = std::move(next);
  }
  if (passes) *passes = pass_count;
  std::sort(prototypes.begin(), prototypes.end());
  return prototypes;
}

std::vector<std::size_t> prototypes_for(const DistanceTable& table,
                                        std::span<const LabelIndex> labels,
                                        std::span<const std::size_t> active) {
  if (active.empty()) throw Error(ErrorKind::EmptyInput, "nothing to condense");
  const bool single_class = std::all_of(active.begin(), active.end(), [&](std::size_t j) {
    return labels[j] == labels[active.front()];
  });
  if (single_class) return {active.front()};
  return hart_condense_indices(table, labels, active);
}

BorderRatio border_ratio(const Dataset& data, std::size_t index) {
  if (index >= data.size()) {
    throw Error(ErrorKind::Dimension, fmt::format("example index {} out of range", index));
  }
  const DistanceTable table(data);
  const auto active = all_indices(data.size());
  return border_ratio(table, data.label_indices(), active, index);
}

std::vector<std::size_t> hart_order_indices(const Dataset& data) {
  if (data.empty()) throw Error(ErrorKind::EmptyInput, "dataset is empty");
  const DistanceTable table(data);
  const auto active = all_indices(data.size());
  return hart_order_indices(table, data.label_indices(), active);
}

Dataset hart_order(const Dataset& data) { return data.subset(hart_order_indices(data)); }

PrototypeSet hart_condense(const Dataset& data) {
  if (data.empty()) throw Error(ErrorKind::EmptyInput, "dataset is empty");
  const DistanceTable table(data);
  const auto active = all_indices(data.size());
  PrototypeSet out;
  out.indices = hart_condense_indices(table, data.label_indices(), active, &out.passes);
  out.prototypes = data.subset(out.indices);
  return out;
}

}  // namespace knnpe
