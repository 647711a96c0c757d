#include "knnpe/report.hpp"

#include <algorithm>

#include <fmt/format.h>
#include "json.hpp"

namespace knnpe {

using Json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kFormatTag = "knnpe-report/1";

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json matrix(const std::vector<std::vector<std::optional<double>>>& m) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(opt(v));
    out.push_back(std::move(r));
  }
  return out;
}

Json to_json(const EvaluationReport& r) {
  Json j;
  j["dataset"] = r.dataset;
  j["source"] = r.source;
  j["instances"] = r.instances;
  j["attributes"] = r.attributes;
  j["classes"] = r.classes;
  j["alphabet"] = r.alphabet;
  j["catalog_notes"] = r.catalog_notes;
  j["normalized"] = r.normalized;
  j["dropped_attributes"] = r.dropped_attributes;
  j["radius_average"] = r.radius_average;
  j["average_distance"] = opt(r.average_distance);
  Json specs = Json::array();
  for (const auto& s : r.specs) {
    Json e;
    e["spec"] = s.spec;
    e["name"] = s.name;
    e["radius"] = opt(s.radius);
    e["errors"] = s.errors;
    e["error_ratio"] = s.error_ratio;
    e["outlier_ratio"] = opt(s.outlier_ratio);
    Json preds = Json::array();
    for (const auto& p : s.predictions) preds.push_back(opt(p));
    e["predictions"] = std::move(preds);
    specs.push_back(std::move(e));
  }
  j["specs"] = std::move(specs);
  j["correlation"] = matrix(r.correlation);
  j["info_gain"] = r.info_gain;
  j["truth_info_gain"] = r.truth_info_gain;
  Json mc = Json::array();
  for (const auto& row : r.mcnemar) {
    Json jr = Json::array();
    for (const auto& c : row) {
      Json cell;
      cell["e00"] = c.e00;
      cell["e01"] = c.e01;
      cell["e10"] = c.e10;
      cell["e11"] = c.e11;
      cell["statistic"] = c.statistic;
      cell["reject"] = c.reject;
      jr.push_back(std::move(cell));
    }
    mc.push_back(std::move(jr));
  }
  j["mcnemar"] = std::move(mc);
  j["sweep_specs"] = r.sweep_specs;
  Json sweep = Json::array();
  for (const auto& p : r.sweep) {
    Json e;
    e["percent"] = p.percent;
    e["radius"] = p.radius;
    e["errors"] = p.errors;
    e["error_ratios"] = p.error_ratios;
    e["correlation"] = matrix(p.correlation);
    sweep.push_back(std::move(e));
  }
  j["sweep"] = std::move(sweep);
  if (r.maps) {
    const auto& m = *r.maps;
    Json e;
    e["width"] = m.width;
    e["height"] = m.height;
    e["bounds"] = Json::array({m.bounds.x0, m.bounds.y0, m.bounds.x1, m.bounds.y1});
    e["files"] = m.files;
    e["labels"] = m.labels;
    e["excluded"] = m.excluded;
    e["correlation"] = matrix(m.correlation);
    j["maps"] = std::move(e);
  } else {
    j["maps"] = nullptr;
  }
  return j;
}

template <class T>
std::optional<T> get_opt(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

std::vector<std::vector<std::optional<double>>> get_matrix(const Json& j) {
  std::vector<std::vector<std::optional<double>>> out;
  for (const auto& row : j) {
    auto& r = out.emplace_back();
    for (const auto& v : row) r.push_back(get_opt<double>(v));
  }
  return out;
}

EvaluationReport from_json(const Json& j) {
  EvaluationReport r;
  r.dataset = j.at("dataset").get<std::string>();
  r.source = j.at("source").get<std::string>();
  r.instances = j.at("instances").get<std::size_t>();
  r.attributes = j.at("attributes").get<std::size_t>();
  r.classes = j.at("classes").get<std::size_t>();
  r.alphabet = j.at("alphabet").get<std::vector<std::string>>();
  r.catalog_notes = j.at("catalog_notes").get<std::vector<std::string>>();
  r.normalized = j.at("normalized").get<bool>();
  r.dropped_attributes = j.at("dropped_attributes").get<std::vector<std::string>>();
  r.radius_average = j.at("radius_average").get<std::string>();
  r.average_distance = get_opt<double>(j.at("average_distance"));
  for (const auto& e : j.at("specs")) {
    SpecSummary s;
    s.spec = e.at("spec").get<std::string>();
    s.name = e.at("name").get<std::string>();
    s.radius = get_opt<double>(e.at("radius"));
    s.errors = e.at("errors").get<std::size_t>();
    s.error_ratio = e.at("error_ratio").get<double>();
    s.outlier_ratio = get_opt<double>(e.at("outlier_ratio"));
    for (const auto& p : e.at("predictions")) s.predictions.push_back(get_opt<std::string>(p));
    r.specs.push_back(std::move(s));
  }
  r.correlation = get_matrix(j.at("correlation"));
  r.info_gain = j.at("info_gain").get<std::vector<std::vector<double>>>();
  r.truth_info_gain = j.at("truth_info_gain").get<std::vector<double>>();
  for (const auto& row : j.at("mcnemar")) {
    auto& out = r.mcnemar.emplace_back();
    for (const auto& c : row) {
      out.push_back({c.at("e00").get<std::size_t>(), c.at("e01").get<std::size_t>(),
                     c.at("e10").get<std::size_t>(), c.at("e11").get<std::size_t>(),
                     c.at("statistic").get<double>(), c.at("reject").get<bool>()});
    }
  }
  r.sweep_specs = j.at("sweep_specs").get<std::vector<std::string>>();
  for (const auto& e : j.at("sweep")) {
    SweepPoint p;
    p.percent = e.at("percent").get<double>();
    p.radius = e.at("radius").get<double>();
    p.errors = e.at("errors").get<std::vector<std::size_t>>();
    p.error_ratios = e.at("error_ratios").get<std::vector<double>>();
    p.correlation = get_matrix(e.at("correlation"));
    r.sweep.push_back(std::move(p));
  }
  if (const auto& m = j.at("maps"); !m.is_null()) {
    MapSection s;
    s.width = m.at("width").get<std::size_t>();
    s.height = m.at("height").get<std::size_t>();
    const auto b = m.at("bounds").get<std::vector<double>>();
    if (b.size() != 4) throw Error(ErrorKind::Parse, "maps.bounds needs 4 numbers");
    s.bounds = {b[0], b[1], b[2], b[3]};
    s.files = m.at("files").get<std::vector<std::string>>();
    s.labels = m.at("labels").get<std::vector<std::string>>();
    s.excluded = m.at("excluded").get<std::vector<std::size_t>>();
    s.correlation = get_matrix(m.at("correlation"));
    r.maps = std::move(s);
  }
  return r;
}

// ---- human tables ----

std::string fixed(const std::optional<double>& v, int digits = 4) {
  return v ? fmt::format("{:.{}f}", *v, digits) : std::string("n/a");
}

std::string square_table(const std::vector<std::string>& labels,
                         const std::vector<std::vector<std::string>>& cells) {
  std::size_t width = 4;
  for (const auto& l : labels) width = std::max(width, l.size());
  for (const auto& row : cells) {
    for (const auto& c : row) width = std::max(width, c.size());
  }
  std::string out = fmt::format("  {:<{}}", "", width);
  for (const auto& l : labels) out += fmt::format("  {:>{}}", l, width);
  out += '\n';
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out += fmt::format("  {:<{}}", labels[i], width);
    for (const auto& c : cells[i]) out += fmt::format("  {:>{}}", c, width);
    out += '\n';
  }
  return out;
}

std::vector<std::vector<std::string>> format_matrix(
    const std::vector<std::vector<std::optional<double>>>& m) {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : m) {
    auto& r = out.emplace_back();
    for (const auto& v : row) r.push_back(fixed(v));
  }
  return out;
}

std::string render_table(const EvaluationReport& r) {
  std::string out = fmt::format("Dataset {} ({}): {} instances, {} attributes, {} classes{}\n",
                                r.dataset, r.source, r.instances, r.attributes, r.classes,
                                r.normalized ? ", z-scored" : "");
  for (const auto& note : r.catalog_notes) out += fmt::format("  catalog: {}\n", note);
  if (!r.dropped_attributes.empty()) {
    out += "  dropped constant attributes:";
    for (const auto& a : r.dropped_attributes) out += " " + a;
    out += '\n';
  }
  if (r.average_distance) {
    out += fmt::format("  average pairwise distance ({}): {:.6g}\n", r.radius_average,
                       *r.average_distance);
  }
  if (r.specs.empty() && r.sweep.empty() && !r.maps) return out;

  std::vector<std::string> names;
  for (const auto& s : r.specs) names.push_back(s.name);

  if (!r.specs.empty()) {
    std::size_t spec_w = 4;
    for (const auto& s : r.specs) spec_w = std::max(spec_w, s.spec.size());
    out += fmt::format("\nLeave-one-out\n  {:<{}}  {:<6}  {:>10}  {:>6}  {:>11}  {:>13}\n", "spec",
                       spec_w, "name", "radius", "errors", "error ratio", "outlier ratio");
    for (const auto& s : r.specs) {
      out += fmt::format("  {:<{}}  {:<6}  {:>10}  {:>6}  {:>11.4f}  {:>13}\n", s.spec, spec_w,
                         s.name, fixed(s.radius), s.errors, s.error_ratio,
                         s.outlier_ratio ? fixed(s.outlier_ratio) : std::string("-"));
    }
  }
  if (!r.correlation.empty()) {
    out += "\nResult correlation\n" + square_table(names, format_matrix(r.correlation));
  }
  if (!r.info_gain.empty()) {
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : r.info_gain) {
      auto& c = cells.emplace_back();
      for (double v : row) c.push_back(fmt::format("{:.4f}", v));
    }
    out += "\nInformation gain of column given row\n" + square_table(names, cells);
  }
  if (!r.truth_info_gain.empty()) {
    out += "\nInformation gain of true label given classifier\n";
    for (std::size_t i = 0; i < names.size(); ++i) {
      out += fmt::format("  {:<6}  {:.4f}\n", names[i], r.truth_info_gain[i]);
    }
  }
  if (!r.mcnemar.empty()) {
    std::vector<std::vector<std::string>> cells;
    for (std::size_t i = 0; i < r.mcnemar.size(); ++i) {
      auto& c = cells.emplace_back();
      for (std::size_t j = 0; j < r.mcnemar[i].size(); ++j) {
        c.push_back(i == j ? "-" : (r.mcnemar[i][j].reject ? "1" : "0"));
      }
    }
    out += "\nMcNemar (1 = different error rates at chi2 > 3.84)\n" + square_table(names, cells);
  }
  if (!r.sweep.empty()) {
    out += "\nRadius sweep (error ratio per spec";
    if (r.sweep_specs.size() == 2) out += ", result correlation of the pair";
    out += ")\n";
    out += fmt::format("  {:>7}  {:>10}", "p%", "radius");
    for (const auto& s : r.sweep_specs) out += fmt::format("  {:>24}", s);
    if (r.sweep_specs.size() == 2) out += fmt::format("  {:>11}", "correlation");
    out += '\n';
    for (const auto& p : r.sweep) {
      out += fmt::format("  {:>7.2f}  {:>10.4f}", p.percent, p.radius);
      for (double e : p.error_ratios) out += fmt::format("  {:>24.4f}", e);
      if (r.sweep_specs.size() == 2) out += fmt::format("  {:>11}", fixed(p.correlation[0][1]));
      out += '\n';
    }
  }
  if (r.maps) {
    const auto& m = *r.maps;
    out += fmt::format("\nMaps {}x{} over [{}, {}] x [{}, {}]\n", m.width, m.height, m.bounds.x0,
                       m.bounds.x1, m.bounds.y0, m.bounds.y1);
    for (std::size_t i = 0; i < m.files.size(); ++i) {
      out += fmt::format("  {:<10}  {}  ({} unclassified cells)\n", m.labels[i], m.files[i],
                         m.excluded[i]);
    }
    if (!m.correlation.empty()) {
      out += "\nMap correlation\n" + square_table(m.labels, format_matrix(m.correlation));
    }
  }
  return out;
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view text) {
  if (text == "table") return ReportFormat::Table;
  if (text == "record") return ReportFormat::Record;
  return std::nullopt;
}

std::string emit_reports(const std::vector<EvaluationReport>& reports, ReportFormat format) {
  if (format == ReportFormat::Table) {
    std::string out;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i) out += '\n';
      out += render_table(reports[i]);
    }
    return out;
  }
  Json doc;
  doc["format"] = kFormatTag;
  Json list = Json::array();
  for (const auto& r : reports) list.push_back(to_json(r));
  doc["reports"] = std::move(list);
  return doc.dump(2) + "\n";
}

std::string emit_report(const EvaluationReport& report, ReportFormat format) {
  return emit_reports({report}, format);
}

std::vector<EvaluationReport> parse_reports(std::string_view record) {
  try {
    const Json doc = Json::parse(record);
    if (doc.at("format").get<std::string>() != kFormatTag) {
      throw Error(ErrorKind::Parse, "not a knnpe-report/1 document");
    }
    std::vector<EvaluationReport> out;
    for (const auto& r : doc.at("reports")) out.push_back(from_json(r));
    return out;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, fmt::format("malformed report: {}", e.what()));
  }
}

}  // namespace knnpe
