#include "knnpe/service.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "httplib.h"
#include "json.hpp"
#include "knnpe/condense.hpp"
#include "knnpe/evaluate.hpp"
#include "knnpe/kernels.hpp"
#include "knnpe/mapgen.hpp"
#include "knnpe/parallel.hpp"
#include "knnpe/spec_text.hpp"

namespace knnpe::service {

using Json = nlohmann::ordered_json;

namespace {

struct BadRequest : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json error_body(std::string_view kind, std::string_view message) {
  Json j;
  j["error"] = kind;
  j["message"] = message;
  return j;
}

template <class F>
Response guarded(std::string_view body, F&& handler) {
  Json request;
  try {
    request = Json::parse(body);
    if (!request.is_object()) throw BadRequest("payload must be a JSON object");
  } catch (const Json::exception& e) {
    return {400, error_body("bad request", e.what()).dump()};
  } catch (const BadRequest& e) {
    return {400, error_body("bad request", e.what()).dump()};
  }
  try {
    return {200, handler(request).dump()};
  } catch (const BadRequest& e) {
    return {400, error_body("bad request", e.what()).dump()};
  } catch (const Json::exception& e) {
    return {400, error_body("bad request", e.what()).dump()};
  } catch (const Error& e) {
    return {422, error_body(error_kind_name(e.kind()), e.what()).dump()};
  }
}

struct Desk {
  double width = kDefaultDesk;
  double height = kDefaultDesk;
};

Desk read_desk(const Json& req) {
  Desk d;
  if (const auto it = req.find("desk"); it != req.end()) {
    d.width = it->at("width").get<double>();
    d.height = it->at("height").get<double>();
    if (!(d.width > 0.0 && d.height > 0.0)) throw BadRequest("desk size must be positive");
  }
  return d;
}

Dataset read_points(const Json& req, const Desk& desk) {
  const auto& points = req.at("points");
  if (!points.is_array() || points.empty()) throw BadRequest("points must be a non-empty array");
  std::vector<FeatureVector> features;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    const double x = p.at("x").get<double>();
    const double y = p.at("y").get<double>();
    if (!(x >= 0.0 && x <= desk.width && y >= 0.0 && y <= desk.height)) {
      throw BadRequest(fmt::format("point {} lies outside the {}x{} desk", i, desk.width,
                                   desk.height));
    }
    auto label = trim(p.at("label").get<std::string>());
    if (label.empty()) throw BadRequest(fmt::format("point {} has an empty label", i));
    features.push_back({x, y});
    labels.push_back(std::move(label));
  }
  return Dataset::from_rows(features, labels);
}

SpecText read_spec_text(const Json& value) {
  try {
    return parse_spec(value.get<std::string>());
  } catch (const Error& e) {
    throw BadRequest(e.what());
  }
}

// Applet mode: no normalization, PE radius in [1, 200] desk units.
ClassifierSpec applet_spec(const SpecText& text, const Dataset& points) {
  const double average =
      text.percent ? average_pairwise_distance(points, RadiusAverage::MeanDistance) : 0.0;
  const ClassifierSpec spec = resolve(text, average);
  if (const auto* pe = std::get_if<PeSpec>(&spec)) {
    if (!(pe->radius >= kMinRadius && pe->radius <= kMaxRadius)) {
      const auto message =
          fmt::format("PE radius {} is outside [{}, {}]", pe->radius, kMinRadius, kMaxRadius);
      if (text.percent) throw Error(ErrorKind::Config, message);
      throw BadRequest(message);
    }
  }
  return spec;
}

std::pair<std::size_t, std::size_t> read_grid(const Json& req) {
  std::size_t w = 200, h = 200;
  if (const auto it = req.find("grid"); it != req.end()) {
    w = it->at("width").get<std::size_t>();
    h = it->at("height").get<std::size_t>();
  }
  if (w < 1 || h < 1 || w > 4096 || h > 4096) throw BadRequest("grid must be 1..4096 per side");
  return {w, h};
}

Json map_json(const DecisionMap& map, const Dataset& points, const ClassifierSpec& spec) {
  Json j;
  j["spec"] = format_spec(spec);
  j["width"] = map.width;
  j["height"] = map.height;
  j["bounds"] = Json::array({map.bounds.x0, map.bounds.y0, map.bounds.x1, map.bounds.y1});
  j["alphabet"] = points.alphabet();
  Json palette = Json::array();
  for (std::size_t c = 0; c < points.class_count(); ++c) {
    const Rgb rgb = palette_color(static_cast<std::int32_t>(c));
    palette.push_back(Json::array({rgb[0], rgb[1], rgb[2]}));
  }
  j["palette"] = std::move(palette);
  j["unclassified"] = DecisionMap::kUnclassified;
  j["cells"] = map.cells;
  return j;
}

}  // namespace

Response handle_health() {
  Json j;
  j["status"] = "ok";
  j["isa"] = kernels::isa_name(kernels::active_isa());
  j["threads"] = worker_count();
  return {200, j.dump()};
}

Response handle_map(std::string_view body) {
  return guarded(body, [](const Json& req) {
    const Desk desk = read_desk(req);
    const Dataset points = read_points(req, desk);
    const ClassifierSpec spec = applet_spec(read_spec_text(req.at("spec")), points);
    const auto [w, h] = read_grid(req);
    const DecisionMap map = rasterize_map(points, spec, w, h, {0.0, 0.0, desk.width, desk.height});
    return map_json(map, points, spec);
  });
}

Response handle_cv(std::string_view body) {
  return guarded(body, [](const Json& req) {
    const Dataset points = read_points(req, read_desk(req));
    const ClassifierSpec spec = applet_spec(read_spec_text(req.at("spec")), points);
    const LooResult loo = loo_cv(points, spec);
    Json j;
    j["spec"] = format_spec(spec);
    j["errors"] = loo.errors;
    j["error_ratio"] = loo.error_ratio;
    Json verdicts = Json::array();
    Json wrong = Json::array();
    for (std::size_t i = 0; i < loo.predictions.size(); ++i) {
      const auto& v = loo.predictions[i];
      verdicts.push_back(v.is_classified() ? Json(points.alphabet()[v.label()]) : Json(nullptr));
      if (!v.is(points.label_index(i))) wrong.push_back(i);
    }
    j["verdicts"] = std::move(verdicts);
    j["misclassified"] = std::move(wrong);
    return j;
  });
}

Response handle_condense(std::string_view body) {
  return guarded(body, [](const Json& req) {
    const Dataset points = read_points(req, read_desk(req));
    std::size_t k = 1;
    if (const auto it = req.find("k"); it != req.end()) k = it->get<std::size_t>();
    if (k < 1) throw BadRequest("k must be at least 1");
    const PrototypeSet set = hart_condense(points);
    Json j;
    j["k"] = k;
    j["prototypes"] = set.indices;
    j["passes"] = set.passes;
    return j;
  });
}

Response handle_compare_maps(std::string_view body) {
  return guarded(body, [](const Json& req) {
    const Desk desk = read_desk(req);
    const Dataset points = read_points(req, desk);
    const auto& specs = req.at("specs");
    if (!specs.is_array() || specs.size() != 2) throw BadRequest("specs must list exactly two");
    const ClassifierSpec a = applet_spec(read_spec_text(specs[0]), points);
    const ClassifierSpec b = applet_spec(read_spec_text(specs[1]), points);
    const auto [w, h] = read_grid(req);
    const Bounds bounds{0.0, 0.0, desk.width, desk.height};
    const DecisionMap ma = rasterize_map(points, a, w, h, bounds);
    const DecisionMap mb = rasterize_map(points, b, w, h, bounds);
    const MapCorrelation mc = map_correlation(ma, mb);
    Json j;
    j["specs"] = Json::array({format_spec(a), format_spec(b)});
    j["coefficient"] = mc.coefficient;
    j["cells"] = mc.cells;
    j["excluded"] = mc.excluded;
    return j;
  });
}

void install_routes(httplib::Server& server) {
  const auto reply = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server.Get("/api/health",
             [reply](const httplib::Request&, httplib::Response& res) { reply(res, handle_health()); });
  server.Post("/api/map", [reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_map(req.body));
  });
  server.Post("/api/cv", [reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_cv(req.body));
  });
  server.Post("/api/condense", [reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_condense(req.body));
  });
  server.Post("/api/compare-maps", [reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_compare_maps(req.body));
  });
}

}  // namespace knnpe::service
