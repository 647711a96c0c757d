#include "doctest.h"
#include "knnpe/condense.hpp"
#include "support.hpp"

using namespace knnpe;

namespace {

Dataset line(std::vector<double> xs, std::vector<std::string> labels) {
  std::vector<FeatureVector> rows;
  for (double x : xs) rows.push_back({x});
  return Dataset::from_rows(rows, labels);
}

// Every original example is classified correctly by 1-NN over the prototypes.
std::size_t consistency_misses(const Dataset& d, const std::vector<std::size_t>& protos) {
  std::size_t misses = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.label_index(testing::naive_nearest(d, protos, i)) != d.label_index(i)) ++misses;
  }
  return misses;
}

bool has_conflicting_duplicates(const Dataset& d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      if (d.label_index(i) != d.label_index(j) &&
          testing::naive_distance(d.features(i), d.features(j)) == 0.0) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace

TEST_SUITE("condense") {
  TEST_CASE("border ratio examples") {
    const auto d = line({0, 3, 4}, {"A", "A", "B"});
    const auto r0 = border_ratio(d, 0);
    CHECK(r0.ratio == 0.25);
    CHECK(r0.nearest_enemy == 2);
    CHECK(r0.witness == 1);
    CHECK(border_ratio(d, 1).ratio == 1.0);
    CHECK(border_ratio(d, 2).ratio == 1.0);
    try {
      border_ratio(line({0, 1}, {"A", "A"}), 0);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NoEnemy);
    }
  }

  TEST_CASE("coincident enemy gives ratio 1 and is flagged") {
    const auto d = line({0, 0, 5}, {"A", "B", "A"});
    const auto r = border_ratio(d, 0);
    CHECK(r.coincident_enemy);
    CHECK(r.ratio == 1.0);
  }

  TEST_CASE("hart order examples") {
    const auto d = line({0, 3, 4}, {"A", "A", "B"});
    CHECK(hart_order_indices(d) == std::vector<std::size_t>{1, 2, 0});
    const auto ordered = hart_order(d);
    CHECK(ordered.features(0)[0] == 3.0);
    CHECK(hart_order_indices(ordered) == std::vector<std::size_t>{0, 1, 2});
    CHECK(hart_order_indices(line({0, 1}, {"A", "B"})) == std::vector<std::size_t>{0, 1});
  }

  TEST_CASE("hart condense examples") {
    const auto d = line({0, 1, 10, 11}, {"A", "A", "B", "B"});
    const auto order = hart_order_indices(d);
    CHECK(order[0] == 1);
    CHECK(order[1] == 2);
    const auto set = hart_condense(d);
    CHECK(set.indices == std::vector<std::size_t>{1, 2});
    CHECK(consistency_misses(d, set.indices) == 0);

    const auto two = line({0, 1}, {"A", "B"});
    CHECK(hart_condense(two).indices == std::vector<std::size_t>{0, 1});
    CHECK_THROWS_AS(hart_condense(line({0, 1}, {"A", "A"})), Error);
  }

  TEST_CASE("random datasets: ratios in [0,1], consistency, termination, determinism") {
    testing::Gen gen(41);
    for (int t = 0; t < 100; ++t) {
      const auto d = gen.dataset(gen.index(2, 120), gen.index(1, 4), gen.index(2, 4),
                                 t % 3 == 0 ? 3 : 0);
      for (std::size_t i = 0; i < d.size(); ++i) {
        const double r = border_ratio(d, i).ratio;
        CHECK(r >= 0.0);
        CHECK(r <= 1.0);
      }
      const auto set = hart_condense(d);
      CHECK(set.indices.size() <= d.size());
      CHECK(set.passes <= d.size());
      CHECK(std::is_sorted(set.indices.begin(), set.indices.end()));
      CHECK(set.prototypes == d.subset(set.indices));
      if (!has_conflicting_duplicates(d)) CHECK(consistency_misses(d, set.indices) == 0);
      CHECK(hart_condense(d).indices == set.indices);
    }
  }

  TEST_CASE("single-class subsets fall back to one seed prototype") {
    const auto d = line({0, 1, 2}, {"A", "A", "A"});
    const DistanceTable table(d);
    const std::vector<std::size_t> active{1, 2};
    CHECK(prototypes_for(table, d.label_indices(), active) == std::vector<std::size_t>{1});
  }
}
