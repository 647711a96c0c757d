#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "knnpe/classifiers.hpp"
#include "knnpe/core.hpp"

namespace knnpe {

struct LooResult {
  std::vector<Verdict> predictions;  // aligned with dataset order
  std::size_t errors = 0;
  double error_ratio = 0.0;
};

/// Leave-one-out cross-validation. Unclassified counts as an error. CNN specs
/// condense the reduced training set afresh for every held-out example.
LooResult loo_cv(const Dataset& data, const ClassifierSpec& spec);

/// Condenses the full dataset once, then classifies every original example
/// with k-NN over the prototypes; misclassified / n.
double cnn_outlier_ratio(const Dataset& data, std::size_t k);

std::size_t count_errors(std::span<const Verdict> predictions, std::span<const LabelIndex> truth);

// ---- correlation ----

/// Pearson product-moment coefficient. Throws UndefinedCorrelation when either
/// side has zero variance, Dimension on length mismatch or fewer than 2 values.
double pearson(std::span<const double> xs, std::span<const double> ys);

/// Numeric code of a label for correlation: with a two-class alphabet class 0
/// is +1 and class 1 is -1 (Unclassified 0); otherwise the alphabet index
/// (Unclassified = alphabet size).
double correlation_code(std::optional<LabelIndex> label, std::size_t alphabet_size);

/// Pearson coefficient of two label sequences under correlation_code.
double result_correlation(std::span<const LabelIndex> xs, std::span<const LabelIndex> ys,
                          std::size_t alphabet_size);
double result_correlation(std::span<const Verdict> xs, std::span<const Verdict> ys,
                          std::size_t alphabet_size);

// ---- information ----

/// Shannon entropy in bits of a histogram. Throws EmptyInput on zero total.
double entropy(std::span<const std::size_t> counts);

/// IG(Y|X) in bits, from the joint count table W(i, j) of (X_k, Y_k) pairs:
/// sum_j f(V(j)/N) - (1/N) sum_i U(i) sum_j f(W(i,j)/U(i)), f(q) = -q log2 q.
/// Arity 0 means "max value + 1".
double info_gain(std::span<const std::size_t> xs, std::span<const std::size_t> ys,
                 std::size_t arity_x = 0, std::size_t arity_y = 0);

/// Symbol sequence for information measures: label index, Unclassified ->
/// alphabet size.
std::vector<std::size_t> symbols(std::span<const Verdict> verdicts, std::size_t alphabet_size);

// ---- McNemar ----

struct ContingencyTable {
  std::size_t e00 = 0;  // misclassified by both
  std::size_t e01 = 0;  // misclassified by 1 but not 2
  std::size_t e10 = 0;  // misclassified by 2 but not 1
  std::size_t e11 = 0;  // correct for both
  friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;
};

struct McNemarResult {
  ContingencyTable table;
  double statistic = 0.0;
  bool reject = false;
};

/// chi-square critical value, one degree of freedom, alpha = 0.05.
inline constexpr double kMcNemarCritical = 3.84;

/// (|e01 - e10| - 1)^2 / (e01 + e10); 0 when e01 + e10 = 0.
double mcnemar_statistic(std::size_t e01, std::size_t e10);

McNemarResult mcnemar(std::span<const LabelIndex> truth, std::span<const Verdict> pred1,
                      std::span<const Verdict> pred2);

}  // namespace knnpe
