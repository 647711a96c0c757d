#include "knnpe/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "knnpe/pipeline.hpp"

namespace knnpe {

namespace {

SweepRange parse_sweep(const std::string& text) {
  SweepRange s;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> s.start >> c1 >> s.stop >> c2 >> s.step) || c1 != ':' || c2 != ':' ||
      !(in >> std::ws).eof()) {
    throw Error(ErrorKind::Config, fmt::format("--sweep expects start:stop:step, got '{}'", text));
  }
  return s;
}

void parse_size(const std::string& text, RunConfig& config) {
  std::size_t w = 0, h = 0;
  char x = 0;
  std::istringstream in(text);
  if (!(in >> w >> x >> h) || (x != 'x' && x != 'X') || !(in >> std::ws).eof() || w < 1 ||
      h < 1) {
    throw Error(ErrorKind::Config, fmt::format("--map-size expects WxH, got '{}'", text));
  }
  config.map_width = w;
  config.map_height = h;
}

Bounds parse_bounds(const std::string& text) {
  Bounds b;
  char c[3] = {};
  std::istringstream in(text);
  if (!(in >> b.x0 >> c[0] >> b.y0 >> c[1] >> b.x1 >> c[2] >> b.y1) || c[0] != ',' ||
      c[1] != ',' || c[2] != ',' || !(in >> std::ws).eof()) {
    throw Error(ErrorKind::Config, fmt::format("--bounds expects x0,y0,x1,y1, got '{}'", text));
  }
  if (!(b.x1 > b.x0 && b.y1 > b.y0)) {
    throw Error(ErrorKind::Config, "--bounds needs x1 > x0 and y1 > y0");
  }
  return b;
}

int exit_code(ErrorKind kind) {
  return kind == ErrorKind::Config ? kExitConfig : kExitData;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"k-NN, condensed NN and potential-energy classifier workbench", "knnpe"};
  app.require_subcommand(1);

  std::vector<std::string> data, specs, images;
  bool no_normalize = false, normalize = false, predictions = false;
  std::string sweep, map_size, bounds, out_path, format = "table", radius_average = "distance";
  std::string header = "auto";

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--data", data, "Label-first CSV dataset (repeatable)")->required();
    sub->add_option("--spec", specs,
                    "Classifier, e.g. knn:k=1, knn:k=5:weighted, cnn:k=1, pe:yukawa:p=10, "
                    "pe:gauss:r=30:normalized (repeatable)");
    sub->add_flag("--no-normalize", no_normalize, "Skip z-score normalization");
    sub->add_flag("--normalize", normalize, "Force z-score normalization");
    sub->add_option("--format", format, "table or record")
        ->check(CLI::IsMember({"table", "record"}));
    sub->add_option("--radius-average", radius_average,
                    "Average behind p=: distance (default) or squared")
        ->check(CLI::IsMember({"distance", "squared"}));
    sub->add_option("--header", header, "auto, yes or no")
        ->check(CLI::IsMember({"auto", "yes", "no"}));
  };
  CLI::App* cv = app.add_subcommand("cv", "Leave-one-out error per spec");
  CLI::App* compare =
      app.add_subcommand("compare", "LOO plus correlation, information gain and McNemar");
  CLI::App* map = app.add_subcommand("map", "Decision maps (PPM) and map correlations");
  for (CLI::App* sub : {cv, compare}) {
    common(sub);
    sub->add_option("--sweep", sweep, "Radius percent sweep start:stop:step for pe specs");
    sub->add_option("--out", out_path, "Write the report here instead of stdout");
    sub->add_flag("--predictions", predictions, "Include per-example LOO predictions");
  }
  common(map);
  map->add_option("--map-size", map_size, "Grid size WxH (default 200x200)");
  map->add_option("--bounds", bounds, "Feature rectangle x0,y0,x1,y1");
  map->add_option("--out", out_path, "Directory for PPM files (default .)");
  map->add_option("--image", images, "External PPM map to snap and correlate (repeatable)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    RunConfig config;
    config.data_paths = data;
    for (const auto& s : specs) config.specs.push_back(parse_spec(s));
    if (no_normalize && normalize) {
      throw Error(ErrorKind::Config, "--normalize and --no-normalize conflict");
    }
    if (no_normalize) config.normalize = false;
    if (normalize) config.normalize = true;
    if (!sweep.empty()) config.sweep = parse_sweep(sweep);
    if (!map_size.empty()) parse_size(map_size, config);
    if (!bounds.empty()) config.bounds = parse_bounds(bounds);
    config.images = images;
    config.predictions = predictions;
    config.radius_average =
        radius_average == "squared" ? RadiusAverage::MeanSquaredDistance : RadiusAverage::MeanDistance;
    config.header = header == "yes" ? HeaderMode::Present
                                    : (header == "no" ? HeaderMode::Absent : HeaderMode::Auto);
    const ReportFormat fmt_kind = *parse_report_format(format);

    std::vector<EvaluationReport> reports;
    if (map->parsed()) {
      if (!out_path.empty()) config.out_dir = out_path;
      reports = cmd_map(config);
      out << emit_reports(reports, fmt_kind);
      return kExitOk;
    }
    reports = cv->parsed() ? cmd_cv(config) : cmd_compare(config);
    const std::string text = emit_reports(reports, fmt_kind);
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw Error(ErrorKind::Config, fmt::format("cannot write {}", out_path));
      file << text;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error (" << error_kind_name(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace knnpe
