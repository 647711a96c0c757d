#pragma once

// CSV datasets (class label in the first column) and the benchmark catalog.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "knnpe/core.hpp"

namespace knnpe {

enum class HeaderMode { Auto, Present, Absent };

struct CsvTable {
  Dataset data;
  std::vector<std::string> attribute_names;  // empty when the file had no header
};

/// Parses comma-separated text. Column 1 is the label, the rest are
/// attributes; cells "y"/"n" (any case) become 1/0. Blank lines are skipped.
/// Auto treats the first row as a header when any attribute cell in it is
/// neither numeric nor y/n. Errors carry `source` and the 1-based line number.
CsvTable parse_csv(std::string_view text, HeaderMode header = HeaderMode::Auto,
                   std::string_view source = "<input>");

CsvTable load_csv(const std::string& path, HeaderMode header = HeaderMode::Auto);

/// Writes label-first CSV with round-trippable (shortest exact) numbers.
std::string write_csv(const Dataset& data, const std::vector<std::string>& attribute_names = {});

struct DatasetDescriptor {
  std::string name;
  std::size_t instances;
  std::size_t attributes;
  std::size_t classes;
  std::string characteristics;
};

/// The six benchmark databases as published: Glass, Haberman, Ionosphere,
/// Iris, Party, Transfusion.
const std::vector<DatasetDescriptor>& benchmark_catalog();
/// Case-insensitive lookup by name.
std::optional<DatasetDescriptor> find_descriptor(std::string_view name);

/// How each vendored CSV maps the raw source file onto feature columns.
struct BenchmarkFile {
  std::string name;         // catalog name
  std::string file;         // file name under the data directory
  std::string column_note;  // raw-file-to-feature mapping
  bool public_data;         // false for Party, which was never published
};
const std::vector<BenchmarkFile>& benchmark_files();

/// Instance, attribute and class count differences; empty means exact match.
std::vector<std::string> verify_catalog(const Dataset& data, const DatasetDescriptor& descriptor);

}  // namespace knnpe
