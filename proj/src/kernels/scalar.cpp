#include "knnpe/kernels.hpp"

namespace knnpe::kernels {

PackedPoints::PackedPoints(std::span<const double> row_major, std::size_t rows, std::size_t dims)
    : rows_(rows),
      dims_(dims),
      stride_((rows + kLanes - 1) / kLanes * kLanes),
      data_(stride_ * dims, 0.0) {
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t d = 0; d < dims; ++d) data_[d * stride_ + i] = row_major[i * dims + d];
  }
}

namespace scalar {

void squared_distances(const PackedPoints& points, std::span<const double> query,
                       std::span<double> out) {
  const std::size_t n = points.rows();
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
  for (std::size_t d = 0; d < points.dims(); ++d) {
    const double* col = points.column(d);
    const double q = query[d];
    for (std::size_t i = 0; i < n; ++i) {
      const double diff = col[i] - q;
      out[i] += diff * diff;
    }
  }
}

void snap_pixels(std::span<const std::uint8_t> rgb, Rgb a, Rgb b, std::span<std::uint8_t> out) {
  const std::size_t pixels = rgb.size() / 3;
  for (std::size_t p = 0; p < pixels; ++p) {
    std::int32_t da = 0;
    std::int32_t db = 0;
    for (std::size_t c = 0; c < 3; ++c) {
      const std::int32_t v = rgb[3 * p + c];
      const std::int32_t ea = v - a[c];
      const std::int32_t eb = v - b[c];
      da += ea * ea;
      db += eb * eb;
    }
    const Rgb& pick = da <= db ? a : b;
    out[3 * p] = pick[0];
    out[3 * p + 1] = pick[1];
    out[3 * p + 2] = pick[2];
  }
}

}  // namespace scalar
}  // namespace knnpe::kernels
