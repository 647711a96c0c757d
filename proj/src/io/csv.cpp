#include "knnpe/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>

#include <fmt/format.h>

namespace knnpe {

namespace {

std::vector<std::string> split_cells(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos
                                                                            : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::optional<double> parse_cell(std::string_view cell) {
  if (cell.size() == 1) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(cell[0])));
    if (c == 'y') return 1.0;
    if (c == 'n') return 0.0;
  }
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || end != cell.data() + cell.size()) return std::nullopt;
  return value;
}

}  // namespace

CsvTable parse_csv(std::string_view text, HeaderMode header, std::string_view source) {
  CsvTable out;
  std::vector<FeatureVector> features;
  std::vector<std::string> labels;
  std::size_t columns = 0;
  bool first_row = true;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;

    auto cells = split_cells(line);
    if (cells.size() < 2) {
      throw Error(ErrorKind::Parse, fmt::format("{}:{}: expected a label and at least one "
                                                "attribute, found {} column(s)",
                                                source, line_no, cells.size()));
    }
    if (first_row) {
      first_row = false;
      columns = cells.size();
      bool is_header = header == HeaderMode::Present;
      if (header == HeaderMode::Auto) {
        is_header = std::any_of(cells.begin() + 1, cells.end(),
                                [](const std::string& c) { return !parse_cell(c); });
      }
      if (is_header) {
        out.attribute_names.assign(cells.begin() + 1, cells.end());
        continue;
      }
    }
    if (cells.size() != columns) {
      throw Error(ErrorKind::Parse, fmt::format("{}:{}: ragged row, expected {} columns, found {}",
                                                source, line_no, columns, cells.size()));
    }
    if (cells[0].empty()) {
      throw Error(ErrorKind::Parse, fmt::format("{}:{}: empty class label", source, line_no));
    }
    FeatureVector row;
    row.reserve(columns - 1);
    for (std::size_t c = 1; c < columns; ++c) {
      const auto value = parse_cell(cells[c]);
      if (!value) {
        throw Error(ErrorKind::Parse, fmt::format("{}:{}: column {}: '{}' is not numeric or y/n",
                                                  source, line_no, c + 1, cells[c]));
      }
      row.push_back(*value);
    }
    features.push_back(std::move(row));
    labels.push_back(std::move(cells[0]));
  }
  if (features.empty()) {
    throw Error(ErrorKind::Parse, fmt::format("{}: no data rows", source));
  }
  try {
    out.data = Dataset::from_rows(features, labels);
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, fmt::format("{}: {}", source, e.what()));
  }
  return out;
}

CsvTable load_csv(const std::string& path, HeaderMode header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, fmt::format("cannot open {}", path));
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_csv(text, header, path);
}

std::string write_csv(const Dataset& data, const std::vector<std::string>& attribute_names) {
  std::string out;
  if (!attribute_names.empty()) {
    if (attribute_names.size() != data.attribute_count()) {
      throw Error(ErrorKind::Dimension, "attribute name count does not match the dataset");
    }
    out += "class";
    for (const auto& name : attribute_names) out += "," + name;
    out += '\n';
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    out += data.label(i).name;
    // fmt's default double formatting is the shortest exact representation.
    for (double v : data.features(i)) out += fmt::format(",{}", v);
    out += '\n';
  }
  return out;
}

}  // namespace knnpe
