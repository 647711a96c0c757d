#include "knnpe/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include <fmt/format.h>

#include "knnpe/evaluate.hpp"

namespace knnpe {

namespace fs = std::filesystem;

std::vector<double> SweepRange::values() const {
  std::vector<double> out;
  const double span = (stop - start) / step;
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

void validate(const RunConfig& config) {
  if (config.specs.empty()) throw Error(ErrorKind::Config, "at least one --spec is required");
  if (config.data_paths.empty()) throw Error(ErrorKind::Config, "--data is required");
  if (config.sweep) {
    const auto& s = *config.sweep;
    if (!(s.step > 0.0)) throw Error(ErrorKind::Config, "sweep step must be positive");
    if (!(s.start > 0.0 && s.stop <= 200.0 && s.start <= s.stop)) {
      throw Error(ErrorKind::Config, "sweep must satisfy 0 < start <= stop <= 200");
    }
    const bool has_pe = std::any_of(config.specs.begin(), config.specs.end(), [](const auto& s) {
      return std::holds_alternative<PeSpec>(s.spec);
    });
    if (!has_pe) throw Error(ErrorKind::Config, "--sweep needs at least one pe spec");
  }
  if (config.map_width < 1 || config.map_height < 1) {
    throw Error(ErrorKind::Config, "map size must be at least 1x1");
  }
}

namespace {

std::string dataset_name(const std::string& path) {
  const std::string stem = fs::path(path).stem().string();
  if (const auto d = find_descriptor(stem)) return d->name;
  return stem;
}

std::string average_name(RadiusAverage a) {
  return a == RadiusAverage::MeanDistance ? "mean-distance" : "mean-squared-distance";
}

PreparedData finish(PreparedData out, bool normalize) {
  if (out.attribute_names.empty()) {
    for (std::size_t c = 0; c < out.data.attribute_count(); ++c) {
      out.attribute_names.push_back(fmt::format("a{}", c + 1));
    }
  }
  out.normalized = normalize;
  if (!normalize) return out;
  const auto constant = constant_attributes(out.data);
  if (constant.size() == out.data.attribute_count()) {
    throw Error(ErrorKind::DegenerateAttribute, "every attribute is constant");
  }
  std::vector<std::string> kept;
  for (std::size_t c = 0; c < out.attribute_names.size(); ++c) {
    if (std::find(constant.begin(), constant.end(), c) != constant.end()) {
      out.dropped.push_back(out.attribute_names[c]);
    } else {
      kept.push_back(out.attribute_names[c]);
    }
  }
  out.attribute_names = std::move(kept);
  out.data = zscore_normalize(out.data.drop_attributes(constant)).data;
  return out;
}

struct Evaluated {
  EvaluationReport report;
  std::vector<LooResult> results;
};

EvaluationReport report_header(const PreparedData& d, const RunConfig& config) {
  EvaluationReport r;
  r.dataset = d.name;
  r.source = d.source;
  r.instances = d.data.size();
  r.attributes = d.data.attribute_count();
  r.classes = d.data.class_count();
  r.alphabet = d.data.alphabet();
  r.catalog_notes = d.catalog_notes;
  r.normalized = d.normalized;
  r.dropped_attributes = d.dropped;
  r.radius_average = average_name(config.radius_average);
  return r;
}

bool needs_average(const RunConfig& config) {
  return config.sweep || std::any_of(config.specs.begin(), config.specs.end(),
                                     [](const auto& s) { return s.percent.has_value(); });
}

std::optional<double> correlation_or_null(std::span<const Verdict> a, std::span<const Verdict> b,
                                          std::size_t classes) {
  try {
    return result_correlation(a, b, classes);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UndefinedCorrelation) return std::nullopt;
    throw;
  }
}

std::vector<std::vector<std::optional<double>>> correlation_matrix(
    const std::vector<const std::vector<Verdict>*>& preds, std::size_t classes) {
  const std::size_t m = preds.size();
  std::vector<std::vector<std::optional<double>>> out(m, std::vector<std::optional<double>>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      auto c = correlation_or_null(*preds[i], *preds[j], classes);
      if (i == j && c) c = 1.0;
      out[i][j] = out[j][i] = c;
    }
  }
  return out;
}

Evaluated run_cv(const PreparedData& d, const RunConfig& config) {
  Evaluated ev{report_header(d, config), {}};
  auto& r = ev.report;
  double average = 0.0;
  if (needs_average(config)) {
    average = average_pairwise_distance(d.data, config.radius_average);
    r.average_distance = average;
  }
  for (const auto& text : config.specs) {
    const ClassifierSpec spec = resolve(text, average);
    LooResult loo = loo_cv(d.data, spec);
    SpecSummary s;
    s.spec = format_spec(text);
    s.name = display_name(spec);
    if (const auto* pe = std::get_if<PeSpec>(&spec)) s.radius = pe->radius;
    s.errors = loo.errors;
    s.error_ratio = loo.error_ratio;
    if (const auto* cnn = std::get_if<CnnSpec>(&spec)) {
      s.outlier_ratio = cnn_outlier_ratio(d.data, cnn->k);
    }
    if (config.predictions) {
      for (const auto& v : loo.predictions) {
        s.predictions.push_back(v.is_classified()
                                    ? std::optional<std::string>(d.data.alphabet()[v.label()])
                                    : std::nullopt);
      }
    }
    r.specs.push_back(std::move(s));
    ev.results.push_back(std::move(loo));
  }

  if (config.sweep) {
    std::vector<PeSpec> pes;
    for (const auto& text : config.specs) {
      if (const auto* pe = std::get_if<PeSpec>(&text.spec)) {
        pes.push_back(*pe);
        r.sweep_specs.push_back(display_name(*pe));
      }
    }
    for (double percent : config.sweep->values()) {
      SweepPoint point;
      point.percent = percent;
      point.radius = radius_for_percent(average, percent);
      std::vector<std::vector<Verdict>> preds;
      for (auto pe : pes) {
        pe.radius = point.radius;
        auto loo = loo_cv(d.data, pe);
        point.errors.push_back(loo.errors);
        point.error_ratios.push_back(loo.error_ratio);
        preds.push_back(std::move(loo.predictions));
      }
      std::vector<const std::vector<Verdict>*> ptrs;
      for (const auto& p : preds) ptrs.push_back(&p);
      point.correlation = correlation_matrix(ptrs, d.data.class_count());
      r.sweep.push_back(std::move(point));
    }
  }
  return ev;
}

}  // namespace

PreparedData prepare(const std::string& path, bool normalize, HeaderMode header) {
  CsvTable table = load_csv(path, header);
  PreparedData out;
  out.name = dataset_name(path);
  out.source = path;
  if (const auto d = find_descriptor(out.name)) out.catalog_notes = verify_catalog(table.data, *d);
  out.data = std::move(table.data);
  out.attribute_names = std::move(table.attribute_names);
  return finish(std::move(out), normalize);
}

PreparedData prepare(std::string name, Dataset data, bool normalize) {
  PreparedData out;
  out.name = std::move(name);
  out.data = std::move(data);
  return finish(std::move(out), normalize);
}

EvaluationReport evaluate_cv(const PreparedData& data, const RunConfig& config) {
  return run_cv(data, config).report;
}

EvaluationReport evaluate_compare(const PreparedData& d, const RunConfig& config) {
  Evaluated ev = run_cv(d, config);
  auto& r = ev.report;
  const std::size_t m = ev.results.size();
  const std::size_t classes = d.data.class_count();
  const auto& truth = d.data.label_indices();

  std::vector<const std::vector<Verdict>*> preds;
  std::vector<std::vector<std::size_t>> syms;
  for (const auto& res : ev.results) {
    preds.push_back(&res.predictions);
    syms.push_back(symbols(res.predictions, classes));
  }
  r.correlation = correlation_matrix(preds, classes);

  const std::vector<std::size_t> truth_syms(truth.begin(), truth.end());
  r.info_gain.assign(m, std::vector<double>(m, 0.0));
  r.mcnemar.assign(m, std::vector<McNemarCell>(m));
  for (std::size_t i = 0; i < m; ++i) {
    r.truth_info_gain.push_back(info_gain(syms[i], truth_syms, classes + 1, classes));
    for (std::size_t j = 0; j < m; ++j) {
      r.info_gain[i][j] = info_gain(syms[i], syms[j], classes + 1, classes + 1);
      const auto mc = mcnemar(truth, *preds[i], *preds[j]);
      r.mcnemar[i][j] = {mc.table.e00, mc.table.e01, mc.table.e10, mc.table.e11, mc.statistic,
                         mc.reject};
    }
  }
  return r;
}

std::vector<EvaluationReport> cmd_cv(const RunConfig& config) {
  validate(config);
  std::vector<EvaluationReport> out;
  for (const auto& path : config.data_paths) {
    out.push_back(evaluate_cv(prepare(path, config.normalize.value_or(true), config.header), config));
  }
  return out;
}

std::vector<EvaluationReport> cmd_compare(const RunConfig& config) {
  validate(config);
  std::vector<EvaluationReport> out;
  for (const auto& path : config.data_paths) {
    out.push_back(
        evaluate_compare(prepare(path, config.normalize.value_or(true), config.header), config));
  }
  return out;
}

Bounds default_bounds(const Dataset& data) {
  if (data.attribute_count() != 2) {
    throw Error(ErrorKind::Dimension, fmt::format("decision maps need 2-D data, got {} attributes",
                                                  data.attribute_count()));
  }
  double lo[2] = {data.features(0)[0], data.features(0)[1]};
  double hi[2] = {lo[0], lo[1]};
  for (std::size_t i = 1; i < data.size(); ++i) {
    for (int d = 0; d < 2; ++d) {
      lo[d] = std::min(lo[d], data.features(i)[d]);
      hi[d] = std::max(hi[d], data.features(i)[d]);
    }
  }
  double margin[2];
  for (int d = 0; d < 2; ++d) margin[d] = hi[d] > lo[d] ? 0.1 * (hi[d] - lo[d]) : 1.0;
  return {lo[0] - margin[0], lo[1] - margin[1], hi[0] + margin[0], hi[1] + margin[1]};
}

std::vector<EvaluationReport> cmd_map(const RunConfig& config) {
  validate(config);
  std::vector<EvaluationReport> out;
  for (const auto& path : config.data_paths) {
    const PreparedData d = prepare(path, config.normalize.value_or(false), config.header);
    EvaluationReport r = report_header(d, config);
    double average = 0.0;
    if (needs_average(config)) {
      average = average_pairwise_distance(d.data, config.radius_average);
      r.average_distance = average;
    }
    MapSection maps;
    maps.width = config.map_width;
    maps.height = config.map_height;
    maps.bounds = config.bounds ? *config.bounds : default_bounds(d.data);
    fs::create_directories(config.out_dir);
    const std::string stem = fs::path(path).stem().string();

    std::vector<RgbImage> images;
    for (std::size_t i = 0; i < config.specs.size(); ++i) {
      const ClassifierSpec spec = resolve(config.specs[i], average);
      const DecisionMap map =
          rasterize_map(d.data, spec, config.map_width, config.map_height, maps.bounds);
      RgbImage image = to_image(map);
      const std::string file =
          (fs::path(config.out_dir) / fmt::format("{}-{}-{}.ppm", stem, i + 1, display_name(spec)))
              .string();
      save_ppm(file, image);
      maps.files.push_back(file);
      maps.labels.push_back(display_name(spec));
      maps.excluded.push_back(static_cast<std::size_t>(
          std::count(map.cells.begin(), map.cells.end(), DecisionMap::kUnclassified)));
      SpecSummary s;
      s.spec = format_spec(config.specs[i]);
      s.name = display_name(spec);
      if (const auto* pe = std::get_if<PeSpec>(&spec)) s.radius = pe->radius;
      r.specs.push_back(std::move(s));
      images.push_back(std::move(image));
    }
    for (const auto& external : config.images) {
      RgbImage snapped = snap_map_colors(load_ppm(external), kRed, kBlue);
      if (snapped.width != maps.width || snapped.height != maps.height) {
        throw Error(ErrorKind::Dimension,
                    fmt::format("{} is {}x{}, maps are {}x{} (rescaling is not supported)",
                                external, snapped.width, snapped.height, maps.width, maps.height));
      }
      maps.files.push_back(external);
      maps.labels.push_back(fs::path(external).stem().string());
      maps.excluded.push_back(0);
      images.push_back(std::move(snapped));
    }
    const std::size_t m = images.size();
    maps.correlation.assign(m, std::vector<std::optional<double>>(m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i; j < m; ++j) {
        std::optional<double> c;
        try {
          c = map_correlation(images[i], images[j]).coefficient;
        } catch (const Error& e) {
          // More than two classes or a single-colored map: no coefficient.
          if (e.kind() != ErrorKind::UndefinedCorrelation && e.kind() != ErrorKind::Config) throw;
        }
        maps.correlation[i][j] = maps.correlation[j][i] = c;
      }
    }
    r.maps = std::move(maps);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace knnpe
