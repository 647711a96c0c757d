#pragma once

// Hart's condensed nearest neighbor rule, scanning examples in descending
// border-ratio order so class-border points become prototypes first.

#include <cstddef>
#include <span>
#include <vector>

#include "knnpe/core.hpp"
#include "knnpe/distance_table.hpp"

namespace knnpe {

struct BorderRatio {
  std::size_t index;          // example x
  double ratio;               // ||x' - y|| / ||x - y||, in [0, 1]
  std::size_t nearest_enemy;  // y: closest example with a different label
  std::size_t witness;        // x': closest example to y sharing x's label
  bool coincident_enemy;      // ||x - y|| = 0; ratio defined as 1
};

struct PrototypeSet {
  std::vector<std::size_t> indices;  // into the original dataset, ascending
  Dataset prototypes;                // materialized subset U, same order
  std::size_t passes = 0;            // scans over the remaining examples
};

BorderRatio border_ratio(const Dataset& data, std::size_t index);

/// Permutation of `data` by descending border ratio, ties by original index.
Dataset hart_order(const Dataset& data);
/// The permutation itself (original indices in scan order).
std::vector<std::size_t> hart_order_indices(const Dataset& data);

PrototypeSet hart_condense(const Dataset& data);

// ---- table-driven forms over a subset of a larger dataset ----
//
// `active` lists the participating example indices (ascending); distances
// come from the full dataset's table, labels from `labels`. Used by LOO to
// condense "dataset minus one" without rebuilding distances.

BorderRatio border_ratio(const DistanceTable& table, std::span<const LabelIndex> labels,
                         std::span<const std::size_t> active, std::size_t index);

std::vector<std::size_t> hart_order_indices(const DistanceTable& table,
                                            std::span<const LabelIndex> labels,
                                            std::span<const std::size_t> active);

/// Returns prototype indices (original numbering, ascending) and the pass count.
std::vector<std::size_t> hart_condense_indices(const DistanceTable& table,
                                               std::span<const LabelIndex> labels,
                                               std::span<const std::size_t> active,
                                               std::size_t* passes = nullptr);

/// Prototypes for classification: Hart's set, or just the first active
/// example when `active` holds a single class (every example is then
/// consistent with it, and there is no enemy to order by).
std::vector<std::size_t> prototypes_for(const DistanceTable& table,
                                        std::span<const LabelIndex> labels,
                                        std::span<const std::size_t> active);

}  // namespace knnpe
