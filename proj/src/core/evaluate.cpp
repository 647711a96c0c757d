#include "knnpe/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "knnpe/condense.hpp"
#include "knnpe/distance_table.hpp"
#include "knnpe/parallel.hpp"

namespace knnpe {

namespace {

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) throw Error(ErrorKind::Dimension, fmt::format("lengths differ: {} vs {}", a, b));
}

double plogp(double q) { return q > 0.0 ? -q * std::log2(q) : 0.0; }

// 1-NN (or k-NN) over prototypes for one query row of the table.
Verdict vote_over(const DistanceTable& table, std::span<const LabelIndex> labels,
                  std::size_t class_count, std::span<const std::size_t> prototypes,
                  std::size_t query, std::size_t k) {
  std::vector<double> sq(prototypes.size());
  std::vector<LabelIndex> proto_labels(prototypes.size());
  for (std::size_t p = 0; p < prototypes.size(); ++p) {
    sq[p] = table.squared(query, prototypes[p]);
    proto_labels[p] = labels[prototypes[p]];
  }
  return majority_vote(sq, proto_labels, class_count, k);
}

}  // namespace

std::size_t count_errors(std::span<const Verdict> predictions, std::span<const LabelIndex> truth) {
  require_same_length(predictions.size(), truth.size());
  std::size_t errors = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (!predictions[i].is(truth[i])) ++errors;
  }
  return errors;
}

LooResult loo_cv(const Dataset& data, const ClassifierSpec& spec) {
  validate(spec);
  const std::size_t n = data.size();
  if (n < 2) {
    throw Error(ErrorKind::InsufficientData,
                fmt::format("leave-one-out needs at least 2 examples, got {}", n));
  }
  const DistanceTable table(data);
  const auto& labels = data.label_indices();
  const std::size_t classes = data.class_count();

  LooResult out;
  out.predictions.assign(n, Verdict::unclassified());
  parallel_for(n, [&](std::size_t i) {
    const auto row = table.row(i);
    out.predictions[i] = std::visit(
        [&](const auto& s) -> Verdict {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, KnnSpec>) {
            return s.weighted ? weighted_vote(row, labels, classes, s.k, i)
                              : majority_vote(row, labels, classes, s.k, i);
          } else if constexpr (std::is_same_v<T, PeSpec>) {
            return pe_vote(row, labels, classes, s.kind, s.radius, s.normalized, i);
          } else {
            std::vector<std::size_t> active;
            active.reserve(n - 1);
            for (std::size_t j = 0; j < n; ++j) {
              if (j != i) active.push_back(j);
            }
            const auto prototypes = prototypes_for(table, labels, active);
            return vote_over(table, labels, classes, prototypes, i, s.k);
          }
        },
        spec);
  });
  out.errors = count_errors(out.predictions, labels);
  out.error_ratio = static_cast<double>(out.errors) / static_cast<double>(n);
  return out;
}

double cnn_outlier_ratio(const Dataset& data, std::size_t k) {
  if (k < 1) throw Error(ErrorKind::Config, "k must be at least 1");
  if (data.empty()) throw Error(ErrorKind::EmptyInput, "dataset is empty");
  const DistanceTable table(data);
  std::vector<std::size_t> active(data.size());
  std::iota(active.begin(), active.end(), 0);
  const auto& labels = data.label_indices();
  const auto prototypes = prototypes_for(table, labels, active);
  std::size_t errors = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!vote_over(table, labels, data.class_count(), prototypes, i, k).is(labels[i])) ++errors;
  }
  return static_cast<double>(errors) / static_cast<double>(data.size());
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  require_same_length(xs.size(), ys.size());
  if (xs.size() < 2) throw Error(ErrorKind::Dimension, "correlation needs at least 2 values");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorKind::UndefinedCorrelation, "one of the sequences has zero variance");
  }
  return std::clamp(sxy / (std::sqrt(sxx) * std::sqrt(syy)), -1.0, 1.0);
}

double correlation_code(std::optional<LabelIndex> label, std::size_t alphabet_size) {
  if (alphabet_size == 2) {
    if (!label) return 0.0;
    return *label == 0 ? 1.0 : -1.0;
  }
  return static_cast<double>(label ? *label : alphabet_size);
}

double result_correlation(std::span<const LabelIndex> xs, std::span<const LabelIndex> ys,
                          std::size_t alphabet_size) {
  require_same_length(xs.size(), ys.size());
  std::vector<double> a, b;
  a.reserve(xs.size());
  b.reserve(ys.size());
  for (auto x : xs) a.push_back(correlation_code(x, alphabet_size));
  for (auto y : ys) b.push_back(correlation_code(y, alphabet_size));
  return pearson(a, b);
}

double result_correlation(std::span<const Verdict> xs, std::span<const Verdict> ys,
                          std::size_t alphabet_size) {
  require_same_length(xs.size(), ys.size());
  std::vector<double> a, b;
  a.reserve(xs.size());
  b.reserve(ys.size());
  for (const auto& x : xs) a.push_back(correlation_code(x.maybe_label(), alphabet_size));
  for (const auto& y : ys) b.push_back(correlation_code(y.maybe_label(), alphabet_size));
  return pearson(a, b);
}

double entropy(std::span<const std::size_t> counts) {
  const std::size_t total = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  if (total == 0) throw Error(ErrorKind::EmptyInput, "histogram is empty");
  double h = 0.0;
  for (auto c : counts) h += plogp(static_cast<double>(c) / static_cast<double>(total));
  return h;
}

double info_gain(std::span<const std::size_t> xs, std::span<const std::size_t> ys,
                 std::size_t arity_x, std::size_t arity_y) {
  require_same_length(xs.size(), ys.size());
  if (xs.empty()) throw Error(ErrorKind::EmptyInput, "no pairs");
  const auto max_plus_one = [](std::span<const std::size_t> v) {
    return *std::max_element(v.begin(), v.end()) + 1;
  };
  if (arity_x == 0) arity_x = max_plus_one(xs);
  if (arity_y == 0) arity_y = max_plus_one(ys);

  std::vector<std::size_t> w(arity_x * arity_y, 0);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (xs[k] >= arity_x || ys[k] >= arity_y) {
      throw Error(ErrorKind::Dimension, fmt::format("symbol out of range at position {}", k));
    }
    ++w[xs[k] * arity_y + ys[k]];
  }
  std::vector<std::size_t> u(arity_x, 0), v(arity_y, 0);
  for (std::size_t i = 0; i < arity_x; ++i) {
    for (std::size_t j = 0; j < arity_y; ++j) {
      u[i] += w[i * arity_y + j];
      v[j] += w[i * arity_y + j];
    }
  }
  const double n = static_cast<double>(xs.size());
  double hy = 0.0;
  for (std::size_t j = 0; j < arity_y; ++j) hy += plogp(static_cast<double>(v[j]) / n);
  double conditional = 0.0;
  for (std::size_t i = 0; i < arity_x; ++i) {
    if (u[i] == 0) continue;
    double row = 0.0;
    for (std::size_t j = 0; j < arity_y; ++j) {
      row += plogp(static_cast<double>(w[i * arity_y + j]) / static_cast<double>(u[i]));
    }
    conditional += static_cast<double>(u[i]) * row;
  }
  return hy - conditional / n;
}

std::vector<std::size_t> symbols(std::span<const Verdict> verdicts, std::size_t alphabet_size) {
  std::vector<std::size_t> out;
  out.reserve(verdicts.size());
  for (const auto& v : verdicts) out.push_back(v.is_classified() ? v.label() : alphabet_size);
  return out;
}

double mcnemar_statistic(std::size_t e01, std::size_t e10) {
  const std::size_t disagreements = e01 + e10;
  if (disagreements == 0) return 0.0;
  const double gap = std::fabs(static_cast<double>(e01) - static_cast<double>(e10)) - 1.0;
  return gap * gap / static_cast<double>(disagreements);
}

McNemarResult mcnemar(std::span<const LabelIndex> truth, std::span<const Verdict> pred1,
                      std::span<const Verdict> pred2) {
  require_same_length(truth.size(), pred1.size());
  require_same_length(truth.size(), pred2.size());
  McNemarResult out;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool wrong1 = !pred1[i].is(truth[i]);
    const bool wrong2 = !pred2[i].is(truth[i]);
    if (wrong1 && wrong2) ++out.table.e00;
    else if (wrong1) ++out.table.e01;
    else if (wrong2) ++out.table.e10;
    else ++out.table.e11;
  }
  out.statistic = mcnemar_statistic(out.table.e01, out.table.e10);
  out.reject = out.statistic > kMcNemarCritical;
  return out;
}

}  // namespace knnpe
