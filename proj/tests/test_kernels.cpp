#include <cstring>

#include "doctest.h"
#include "knnpe/distance_table.hpp"
#include "knnpe/kernels.hpp"
#include "support.hpp"

using namespace knnpe;
namespace k = knnpe::kernels;

namespace {

std::vector<double> random_rows(testing::Gen& gen, std::size_t rows, std::size_t dims) {
  std::vector<double> v(rows * dims);
  for (auto& x : v) x = gen.uniform(-1e3, 1e3);
  return v;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

// Restores the dispatch choice after a test forces one.
struct IsaGuard {
  k::Isa saved = k::active_isa();
  ~IsaGuard() { k::set_isa(saved); }
};

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar squared distances match a per-row loop exactly") {
    testing::Gen gen(1);
    for (std::size_t rows : {1u, 3u, 4u, 5u, 17u, 64u}) {
      for (std::size_t dims : {1u, 2u, 7u, 34u}) {
        const auto data = random_rows(gen, rows, dims);
        const k::PackedPoints packed(data, rows, dims);
        std::vector<double> query(dims);
        for (auto& q : query) q = gen.uniform(-1e3, 1e3);
        std::vector<double> out(rows);
        k::scalar::squared_distances(packed, query, out);
        for (std::size_t i = 0; i < rows; ++i) {
          double s = 0.0;
          for (std::size_t d = 0; d < dims; ++d) {
            const double diff = data[i * dims + d] - query[d];
            s += diff * diff;
          }
          CHECK(same_bits(out[i], s));
        }
      }
    }
  }

#if defined(KNNPE_HAVE_AVX2)
  TEST_CASE("avx2 squared distances are bit-identical to scalar") {
    if (!k::isa_supported(k::Isa::Avx2)) {
      MESSAGE("AVX2 not available on this CPU; skipped");
      return;
    }
    testing::Gen gen(2);
    for (int t = 0; t < 300; ++t) {
      const std::size_t rows = gen.index(1, 90);
      const std::size_t dims = gen.index(1, 40);
      const auto data = random_rows(gen, rows, dims);
      const k::PackedPoints packed(data, rows, dims);
      std::vector<double> query(dims);
      for (auto& q : query) q = gen.uniform(-1e3, 1e3);
      std::vector<double> a(rows), b(rows);
      k::scalar::squared_distances(packed, query, a);
      k::avx2::squared_distances(packed, query, b);
      for (std::size_t i = 0; i < rows; ++i) CHECK(same_bits(a[i], b[i]));
    }
  }

  TEST_CASE("avx2 snap is identical to scalar, including ties") {
    if (!k::isa_supported(k::Isa::Avx2)) return;
    testing::Gen gen(3);
    for (int t = 0; t < 200; ++t) {
      const std::size_t pixels = gen.index(0, 100);
      std::vector<std::uint8_t> rgb(3 * pixels);
      for (auto& c : rgb) c = static_cast<std::uint8_t>(gen.index(0, 255));
      const k::Rgb a{static_cast<std::uint8_t>(gen.index(0, 255)), 0, 0};
      const k::Rgb b{0, static_cast<std::uint8_t>(gen.index(0, 255)), 255};
      if (pixels > 0) {
        // Exact midpoint between a and b on every channel that allows it.
        rgb[0] = static_cast<std::uint8_t>((a[0] + b[0]) / 2);
      }
      std::vector<std::uint8_t> x(rgb.size()), y(rgb.size());
      k::scalar::snap_pixels(rgb, a, b, x);
      k::avx2::snap_pixels(rgb, a, b, y);
      CHECK(x == y);
    }
  }
#endif

  TEST_CASE("scalar snap picks the nearer color, ties to the first") {
    const k::Rgb red{255, 0, 0}, blue{0, 0, 255};
    const std::vector<std::uint8_t> in{128, 0, 127, 255, 0, 0, 0, 0, 255, 10, 0, 10};
    std::vector<std::uint8_t> out(in.size());
    k::scalar::snap_pixels(in, red, blue, out);
    CHECK(out == std::vector<std::uint8_t>{255, 0, 0, 255, 0, 0, 0, 0, 255, 255, 0, 0});
  }

  TEST_CASE("dispatch can be forced to scalar") {
    IsaGuard guard;
    k::set_isa(k::Isa::Scalar);
    CHECK(k::active_isa() == k::Isa::Scalar);
    CHECK(k::isa_name(k::Isa::Scalar) == "scalar");
    if (!k::isa_supported(k::Isa::Avx2)) {
      CHECK_THROWS_AS(k::set_isa(k::Isa::Avx2), Error);
    }
  }

  TEST_CASE("distance table entries equal the naive squared distance for every variant") {
    testing::Gen gen(4);
    const auto d = gen.dataset(37, 5, 3);
    for (k::Isa isa : {k::Isa::Scalar, k::Isa::Avx2}) {
      if (!k::isa_supported(isa)) continue;
      IsaGuard guard;
      k::set_isa(isa);
      const DistanceTable table(d);
      for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < d.size(); ++j) {
          const double ref = testing::naive_distance(d.features(i), d.features(j));
          CHECK(same_bits(std::sqrt(table.squared(i, j)), ref));
          CHECK(same_bits(table.squared(i, j), table.squared(j, i)));
        }
      }
    }
  }
}
