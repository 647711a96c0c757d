#pragma once

// Decision maps over a 2-D region, their PPM form, color snapping for
// externally produced map images, and cell-wise map correlation.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "knnpe/core.hpp"
#include "knnpe/kernels.hpp"

namespace knnpe {

using kernels::Rgb;

struct Bounds {
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// Row-major grid of class indices. Row r, column c is the cell whose center
/// is (x0 + (c + 0.5) * (x1 - x0) / width, y0 + (r + 0.5) * (y1 - y0) / height),
/// so row 0 lies along y0 (the top edge in desk/pixel coordinates).
struct DecisionMap {
  static constexpr std::int32_t kUnclassified = -1;

  std::size_t width = 0;
  std::size_t height = 0;
  Bounds bounds;
  std::vector<std::int32_t> cells;

  std::int32_t at(std::size_t row, std::size_t col) const { return cells[row * width + col]; }
  double center_x(std::size_t col) const;
  double center_y(std::size_t row) const;
  friend bool operator==(const DecisionMap&, const DecisionMap&) = default;
};

struct RgbImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;  // interleaved RGB, row-major

  Rgb at(std::size_t row, std::size_t col) const;
  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

inline constexpr Rgb kRed{255, 0, 0};
inline constexpr Rgb kBlue{0, 0, 255};
inline constexpr Rgb kWhite{255, 255, 255};

/// Class 0 red, class 1 blue, Unclassified white; classes beyond 1 cycle
/// through a fixed list of further colors.
Rgb palette_color(std::int32_t cell);

/// Classifies every cell center. CNN specs condense `train` once and then run
/// k-NN over the prototypes. Throws Dimension unless `train` is 2-D.
DecisionMap rasterize_map(const Dataset& train, const ClassifierSpec& spec, std::size_t width,
                          std::size_t height, const Bounds& bounds);

/// Palette image with the y1 edge on top, as a viewer would show the map.
RgbImage to_image(const DecisionMap& map);

/// Binary PPM: "P6 <w> <h> 255\n" followed by raw RGB bytes.
std::string write_ppm(const RgbImage& image);
RgbImage read_ppm(std::string_view bytes);
void save_ppm(const std::string& path, const RgbImage& image);
RgbImage load_ppm(const std::string& path);

/// Every pixel becomes whichever of a, b is nearer in RGB space (ties to a).
RgbImage snap_map_colors(const RgbImage& image, Rgb a, Rgb b);

struct MapCorrelation {
  double coefficient = 0.0;
  std::size_t cells = 0;     // cells that entered the coefficient
  std::size_t excluded = 0;  // cells Unclassified (white) in either map
};

/// Class 0 / red is +1, class 1 / blue is -1 in both maps; cells that are
/// Unclassified in either map are excluded. Throws Dimension on size mismatch,
/// UndefinedCorrelation when either map has a single class over the cells used.
MapCorrelation map_correlation(const DecisionMap& a, const DecisionMap& b);
/// Images must contain only red, blue and (excluded) white pixels; snap first.
MapCorrelation map_correlation(const RgbImage& a, const RgbImage& b);

}  // namespace knnpe
