#include "knnpe/mapgen.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

#include "knnpe/classifiers.hpp"
#include "knnpe/condense.hpp"
#include "knnpe/distance_table.hpp"
#include "knnpe/parallel.hpp"

namespace knnpe {

double DecisionMap::center_x(std::size_t col) const {
  return bounds.x0 + (static_cast<double>(col) + 0.5) * (bounds.x1 - bounds.x0) /
                         static_cast<double>(width);
}

double DecisionMap::center_y(std::size_t row) const {
  return bounds.y0 + (static_cast<double>(row) + 0.5) * (bounds.y1 - bounds.y0) /
                         static_cast<double>(height);
}

Rgb RgbImage::at(std::size_t row, std::size_t col) const {
  const std::size_t o = 3 * (row * width + col);
  return {pixels[o], pixels[o + 1], pixels[o + 2]};
}

Rgb palette_color(std::int32_t cell) {
  static constexpr std::array<Rgb, 6> extra{{{0, 160, 0},
                                             {255, 160, 0},
                                             {160, 0, 160},
                                             {0, 160, 160},
                                             {128, 128, 0},
                                             {96, 96, 96}}};
  if (cell == DecisionMap::kUnclassified) return kWhite;
  if (cell == 0) return kRed;
  if (cell == 1) return kBlue;
  return extra[static_cast<std::size_t>(cell - 2) % extra.size()];
}

DecisionMap rasterize_map(const Dataset& train, const ClassifierSpec& spec, std::size_t width,
                          std::size_t height, const Bounds& bounds) {
  validate(spec);
  if (train.attribute_count() != 2) {
    throw Error(ErrorKind::Dimension,
                fmt::format("decision maps need 2-D data, got {} attributes",
                            train.attribute_count()));
  }
  if (width < 1 || height < 1) throw Error(ErrorKind::Config, "map size must be at least 1x1");
  if (!(bounds.x1 > bounds.x0) || !(bounds.y1 > bounds.y0)) {
    throw Error(ErrorKind::Config, "map bounds must have positive extent");
  }

  // CNN: condense once, then k-NN over the prototypes.
  ClassifierSpec effective = spec;
  Dataset source = train;
  if (const auto* cnn = std::get_if<CnnSpec>(&spec)) {
    const DistanceTable table(train);
    std::vector<std::size_t> all(train.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    source = train.subset(prototypes_for(table, train.label_indices(), all));
    effective = KnnSpec{cnn->k, false};
  }
  const PackedTrainingSet packed(source);
  // Prototype subsets keep the training alphabet order, but a class may only
  // be missing if condensation dropped it, which consistency rules out.
  std::vector<std::int32_t> to_train(source.class_count());
  for (std::size_t c = 0; c < source.class_count(); ++c) {
    to_train[c] = static_cast<std::int32_t>(*train.find_label(source.alphabet()[c]));
  }

  DecisionMap map{width, height, bounds, std::vector<std::int32_t>(width * height)};
  parallel_for(height, [&](std::size_t row) {
    std::array<double, 2> query{0.0, map.center_y(row)};
    for (std::size_t col = 0; col < width; ++col) {
      query[0] = map.center_x(col);
      const Verdict v = classify(packed, effective, query);
      map.cells[row * width + col] =
          v.is_classified() ? to_train[v.label()] : DecisionMap::kUnclassified;
    }
  });
  return map;
}

RgbImage to_image(const DecisionMap& map) {
  RgbImage image{map.width, map.height, std::vector<std::uint8_t>(3 * map.cells.size())};
  // Image rows run top-down; map row 0 is the bottom (y0) edge.
  for (std::size_t row = 0; row < map.height; ++row) {
    for (std::size_t col = 0; col < map.width; ++col) {
      const Rgb c = palette_color(map.at(map.height - 1 - row, col));
      const std::size_t o = 3 * (row * map.width + col);
      image.pixels[o] = c[0];
      image.pixels[o + 1] = c[1];
      image.pixels[o + 2] = c[2];
    }
  }
  return image;
}

std::string write_ppm(const RgbImage& image) {
  std::string out = fmt::format("P6 {} {} 255\n", image.width, image.height);
  out.append(reinterpret_cast<const char*>(image.pixels.data()), image.pixels.size());
  return out;
}

RgbImage read_ppm(std::string_view bytes) {
  std::size_t pos = 0;
  const auto skip_space = [&] {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
  };
  const auto read_number = [&](const char* what) {
    skip_space();
    std::size_t value = 0;
    auto [end, ec] = std::from_chars(bytes.data() + pos, bytes.data() + bytes.size(), value);
    if (ec != std::errc{}) throw Error(ErrorKind::Parse, fmt::format("PPM: bad {}", what));
    pos = static_cast<std::size_t>(end - bytes.data());
    return value;
  };
  if (bytes.substr(0, 2) != "P6") throw Error(ErrorKind::Parse, "PPM: missing P6 magic");
  pos = 2;
  RgbImage image;
  image.width = read_number("width");
  image.height = read_number("height");
  if (read_number("maxval") != 255) throw Error(ErrorKind::Parse, "PPM: only maxval 255 supported");
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw Error(ErrorKind::Parse, "PPM: header not terminated");
  }
  ++pos;
  const std::size_t expected = 3 * image.width * image.height;
  if (bytes.size() - pos != expected) {
    throw Error(ErrorKind::Parse, fmt::format("PPM: expected {} raster bytes, found {}", expected,
                                              bytes.size() - pos));
  }
  image.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
  return image;
}

void save_ppm(const std::string& path, const RgbImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Config, fmt::format("cannot write {}", path));
  const auto bytes = write_ppm(image);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

RgbImage load_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, fmt::format("cannot open {}", path));
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return read_ppm(bytes);
}

RgbImage snap_map_colors(const RgbImage& image, Rgb a, Rgb b) {
  if (a == b) throw Error(ErrorKind::Config, "snap colors must differ");
  RgbImage out{image.width, image.height, std::vector<std::uint8_t>(image.pixels.size())};
  kernels::snap_pixels(image.pixels, a, b, out.pixels);
  return out;
}

namespace {

// Codes: +1, -1, or 0 for an excluded cell.
MapCorrelation correlate_codes(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t both_pos = 0, pos_neg = 0, neg_pos = 0, both_neg = 0, excluded = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0 || b[i] == 0) {
      ++excluded;
      continue;
    }
    if (a[i] > 0) (b[i] > 0 ? both_pos : pos_neg)++;
    else (b[i] > 0 ? neg_pos : both_neg)++;
  }
  const std::size_t cells = both_pos + pos_neg + neg_pos + both_neg;
  const std::size_t a_pos = both_pos + pos_neg, a_neg = neg_pos + both_neg;
  const std::size_t b_pos = both_pos + neg_pos, b_neg = pos_neg + both_neg;
  if (a_pos == 0 || a_neg == 0 || b_pos == 0 || b_neg == 0) {
    throw Error(ErrorKind::UndefinedCorrelation, "a map is single-colored over the compared cells");
  }
  const double n = static_cast<double>(cells);
  const double ex = (static_cast<double>(a_pos) - static_cast<double>(a_neg)) / n;
  const double ey = (static_cast<double>(b_pos) - static_cast<double>(b_neg)) / n;
  const double exy = (static_cast<double>(both_pos + both_neg) -
                      static_cast<double>(pos_neg + neg_pos)) / n;
  // X^2 = Y^2 = 1, so Var = E(X^2) - E(X)^2 = 1 - E(X)^2.
  const double var_x = 1.0 - ex * ex;
  const double var_y = 1.0 - ey * ey;
  const double cov = exy - ex * ey;
  MapCorrelation out;
  out.coefficient = std::clamp(cov / std::sqrt(var_x * var_y), -1.0, 1.0);
  out.cells = cells;
  out.excluded = excluded;
  return out;
}

}  // namespace

MapCorrelation map_correlation(const DecisionMap& a, const DecisionMap& b) {
  if (a.width != b.width || a.height != b.height) {
    throw Error(ErrorKind::Dimension, fmt::format("map sizes differ: {}x{} vs {}x{}", a.width,
                                                  a.height, b.width, b.height));
  }
  const auto codes = [](const DecisionMap& m) {
    std::vector<int> out(m.cells.size());
    for (std::size_t i = 0; i < m.cells.size(); ++i) {
      const auto c = m.cells[i];
      if (c > 1 || c < DecisionMap::kUnclassified) {
        throw Error(ErrorKind::Config, "map correlation needs exactly two classes");
      }
      out[i] = c == 0 ? 1 : (c == 1 ? -1 : 0);
    }
    return out;
  };
  return correlate_codes(codes(a), codes(b));
}

MapCorrelation map_correlation(const RgbImage& a, const RgbImage& b) {
  if (a.width != b.width || a.height != b.height) {
    throw Error(ErrorKind::Dimension, fmt::format("image sizes differ: {}x{} vs {}x{}", a.width,
                                                  a.height, b.width, b.height));
  }
  const auto codes = [](const RgbImage& m) {
    std::vector<int> out(m.width * m.height);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Rgb c{m.pixels[3 * i], m.pixels[3 * i + 1], m.pixels[3 * i + 2]};
      if (c == kRed) out[i] = 1;
      else if (c == kBlue) out[i] = -1;
      else if (c == kWhite) out[i] = 0;
      else {
        throw Error(ErrorKind::Config,
                    fmt::format("pixel {} is neither red nor blue; snap the image first", i));
      }
    }
    return out;
  };
  return correlate_codes(codes(a), codes(b));
}

}  // namespace knnpe
