#pragma once

// Data-parallel inner loops with a scalar reference and SIMD variants chosen
// at runtime. Every variant produces bit-identical output to the scalar one:
// the distance kernel vectorizes across points (not across dimensions), so
// each lane accumulates its sum in the same dimension order as the scalar
// loop, and the pixel kernel is pure integer arithmetic.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace knnpe::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;
bool isa_supported(Isa isa) noexcept;
/// Best supported variant, unless KNNPE_ISA=scalar|avx2 says otherwise.
Isa active_isa() noexcept;
/// Overrides the dispatch choice (tests). Throws Config if unsupported.
void set_isa(Isa isa);

/// Points stored feature-major: column d holds coordinate d of every point,
/// padded with zeros to a multiple of kLanes.
class PackedPoints {
 public:
  static constexpr std::size_t kLanes = 4;

  PackedPoints() = default;
  PackedPoints(std::span<const double> row_major, std::size_t rows, std::size_t dims);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t dims() const noexcept { return dims_; }
  std::size_t stride() const noexcept { return stride_; }
  const double* column(std::size_t d) const noexcept { return data_.data() + d * stride_; }

 private:
  std::size_t rows_ = 0;
  std::size_t dims_ = 0;
  std::size_t stride_ = 0;
  std::vector<double> data_;
};

using Rgb = std::array<std::uint8_t, 3>;

namespace scalar {
void squared_distances(const PackedPoints& points, std::span<const double> query,
                       std::span<double> out);
void snap_pixels(std::span<const std::uint8_t> rgb, Rgb a, Rgb b, std::span<std::uint8_t> out);
}  // namespace scalar

namespace avx2 {
void squared_distances(const PackedPoints& points, std::span<const double> query,
                       std::span<double> out);
void snap_pixels(std::span<const std::uint8_t> rgb, Rgb a, Rgb b, std::span<std::uint8_t> out);
}  // namespace avx2

/// out[i] = sum_d (points[i][d] - query[d])^2 for every packed point.
/// `out` must hold points.rows() values; `query` must have points.dims() values.
void squared_distances(const PackedPoints& points, std::span<const double> query,
                       std::span<double> out);

/// Replaces every RGB triple by whichever of `a`, `b` is nearer in squared
/// RGB distance; ties go to `a`. `rgb` and `out` are interleaved, same size.
void snap_pixels(std::span<const std::uint8_t> rgb, Rgb a, Rgb b, std::span<std::uint8_t> out);

}  // namespace knnpe::kernels
