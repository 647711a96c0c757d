#include <cctype>

#include <fmt/format.h>

#include "knnpe/io.hpp"

namespace knnpe {

const std::vector<DatasetDescriptor>& benchmark_catalog() {
  static const std::vector<DatasetDescriptor> catalog{
      {"Glass", 214, 10, 7, "Real"},
      {"Haberman", 306, 3, 2, "Integer"},
      {"Ionosphere", 351, 34, 2, "Integer,Real"},
      {"Iris", 150, 4, 3, "Real"},
      {"Party", 384, 12, 2, "Categorical"},
      {"Transfusion", 748, 5, 2, "Real"},
  };
  return catalog;
}

std::optional<DatasetDescriptor> find_descriptor(std::string_view name) {
  const auto lower = [](std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
  };
  const std::string wanted = lower(name);
  for (const auto& d : benchmark_catalog()) {
    if (lower(d.name) == wanted) return d;
  }
  return std::nullopt;
}

const std::vector<BenchmarkFile>& benchmark_files() {
  static const std::vector<BenchmarkFile> files{
      {"Glass", "glass.csv",
       "raw UCI glass.data minus its leading ID column: 9 oxide/refractive-index features; "
       "the catalog's 10 counts the ID. Class 4 has no instances, so 6 classes occur.",
       true},
      {"Haberman", "haberman.csv",
       "age, operation year, positive axillary nodes; survival status becomes the label "
       "(positive/negative).",
       true},
      {"Ionosphere", "ionosphere.csv",
       "all 34 attributes; attribute a2 is constant 0 and is dropped before z-scoring.", true},
      {"Iris", "iris.csv", "the 4 measurements; class name as label.", true},
      {"Party", "party.csv", "12 y/n attributes (y=1, n=0); not distributed, supply your own.",
       false},
      {"Transfusion", "transfusion.csv",
       "recency, frequency, monetary, time; donated-in-March flag becomes the label. The "
       "catalog's 5 counts the label column. Not vendored here, supply your own.",
       true},
  };
  return files;
}

std::vector<std::string> verify_catalog(const Dataset& data, const DatasetDescriptor& descriptor) {
  std::vector<std::string> notes;
  const auto compare = [&](const char* what, std::size_t found, std::size_t expected) {
    if (found != expected) {
      notes.push_back(fmt::format("{}: {} {} found, catalog lists {}", descriptor.name, found,
                                  what, expected));
    }
  };
  compare("instances", data.size(), descriptor.instances);
  compare("attributes", data.attribute_count(), descriptor.attributes);
  compare("classes", data.class_count(), descriptor.classes);
  return notes;
}

}  // namespace knnpe
