#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "knnpe/io.hpp"
#include "knnpe/service.hpp"
#include "support.hpp"

using namespace knnpe;
using nlohmann::json;

namespace {

json point(double x, double y, const std::string& label) {
  return {{"x", x}, {"y", y}, {"label", label}};
}

json set1_points() {
  const auto d = load_csv(testing::data_path("playground/set1.csv")).data;
  json pts = json::array();
  for (std::size_t i = 0; i < d.size(); ++i) {
    pts.push_back(point(d.features(i)[0], d.features(i)[1], d.label(i).name));
  }
  return pts;
}

json ok(const service::Response& r) {
  REQUIRE(r.status == 200);
  return json::parse(r.body);
}

}  // namespace

TEST_SUITE("service") {
  TEST_CASE("health") {
    const auto body = ok(service::handle_health());
    CHECK(body["status"] == "ok");
    CHECK(body["threads"].get<int>() >= 1);
    CHECK(body["isa"].is_string());
  }

  TEST_CASE("one point paints the whole grid") {
    const json req{{"points", {point(100, 100, "red")}},
                   {"spec", "pe:yukawa:r=30"},
                   {"grid", {{"width", 16}, {"height", 8}}}};
    const auto body = ok(service::handle_map(req.dump()));
    CHECK(body["width"] == 16);
    CHECK(body["height"] == 8);
    CHECK(body["cells"].get<std::vector<int>>() == std::vector<int>(128, 0));
    CHECK(body["alphabet"] == json::array({"red"}));
    CHECK(body["palette"][0] == json::array({255, 0, 0}));
    CHECK(body["bounds"] == json::array({0, 0, 400, 400}));
    // Same payload, same bytes.
    CHECK(service::handle_map(req.dump()).body == service::handle_map(req.dump()).body);
  }

  TEST_CASE("cv examples") {
    const json enemies{{"points", {point(10, 10, "red"), point(20, 10, "blue")}},
                       {"spec", "knn:k=1"}};
    const auto e = ok(service::handle_cv(enemies.dump()));
    CHECK(e["error_ratio"] == 1.0);
    CHECK(e["misclassified"] == json::array({0, 1}));

    json cloud = json::array();
    for (int i = 0; i < 5; ++i) cloud.push_back(point(50, 50, "red"));
    for (const char* spec : {"knn:k=1", "cnn:k=1", "pe:gauss:r=10"}) {
      const auto body = ok(service::handle_cv(json{{"points", cloud}, {"spec", spec}}.dump()));
      CHECK(body["error_ratio"] == 0.0);
      CHECK(body["verdicts"][0] == "red");
    }

    const auto single = service::handle_cv(json{{"points", {point(1, 1, "a")}}, {"spec", "knn:k=1"}}.dump());
    CHECK(single.status == 422);
    CHECK(json::parse(single.body)["error"].is_string());
  }

  TEST_CASE("condense examples") {
    const json two{{"points", {point(10, 10, "red"), point(300, 300, "blue")}}};
    const auto body = ok(service::handle_condense(two.dump()));
    CHECK(body["prototypes"] == json::array({0, 1}));
    CHECK(body["k"] == 1);
    const json lonely{{"points", {point(10, 10, "red"), point(30, 10, "red")}}};
    CHECK(service::handle_condense(lonely.dump()).status == 422);
  }

  TEST_CASE("malformed payloads are 400") {
    const json good_points = json::array({point(10, 10, "red"), point(20, 20, "blue")});
    CHECK(service::handle_map("not json").status == 400);
    CHECK(service::handle_map("[1,2]").status == 400);
    CHECK(service::handle_map(json{{"spec", "knn:k=1"}}.dump()).status == 400);
    CHECK(service::handle_map(json{{"points", good_points}}.dump()).status == 400);
    CHECK(service::handle_map(json{{"points", good_points}, {"spec", "knn:k=zero"}}.dump()).status ==
          400);
    CHECK(service::handle_map(json{{"points", good_points}, {"spec", "pe:yukawa:r=500"}}.dump())
              .status == 400);
    CHECK(service::handle_map(json{{"points", good_points}, {"spec", "pe:yukawa:r=0.5"}}.dump())
              .status == 400);
    CHECK(service::handle_map(json{{"points", {point(500, 10, "red")}}, {"spec", "knn:k=1"}}.dump())
              .status == 400);
    CHECK(service::handle_map(json{{"points", good_points},
                                   {"spec", "knn:k=1"},
                                   {"grid", {{"width", 0}, {"height", 5}}}}
                                  .dump())
              .status == 400);
    CHECK(service::handle_compare_maps(json{{"points", good_points}, {"specs", {"knn:k=1"}}}.dump())
              .status == 400);
    const auto bad = service::handle_cv("{\"points\": 3}");
    CHECK(bad.status == 400);
    CHECK(json::parse(bad.body)["error"] == "bad request");
  }

  TEST_CASE("a percent radius that resolves outside the desk range is 422") {
    // Average distance 1 desk unit: p=10 gives radius 0.1.
    const json req{{"points", {point(10, 10, "red"), point(11, 10, "blue")}},
                   {"spec", "pe:yukawa:p=10"}};
    CHECK(service::handle_map(req.dump()).status == 422);
  }

  TEST_CASE("playground set1: the four classifiers draw similar maps") {
    const auto pts = set1_points();
    const std::vector<std::string> specs{"knn:k=1", "cnn:k=1", "pe:yukawa:r=30", "pe:gauss:r=30"};
    for (std::size_t i = 0; i < specs.size(); ++i) {
      for (std::size_t j = i + 1; j < specs.size(); ++j) {
        const json req{{"points", pts},
                       {"specs", {specs[i], specs[j]}},
                       {"grid", {{"width", 100}, {"height", 100}}}};
        const auto body = ok(service::handle_compare_maps(req.dump()));
        CAPTURE(specs[i]);
        CAPTURE(specs[j]);
        CHECK(body["coefficient"].get<double>() >= 0.85);
        CHECK(body["cells"].get<std::size_t>() + body["excluded"].get<std::size_t>() == 10000);
      }
    }
  }

  TEST_CASE("routes over a live server") {
    httplib::Server server;
    service::install_routes(server);
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    httplib::Client client("127.0.0.1", port);
    const auto pts = json::array({point(100, 200, "red"), point(300, 200, "blue")});
    const auto health = client.Get("/api/health");
    REQUIRE(health);
    CHECK(health->status == 200);
    CHECK(health->get_header_value("Content-Type") == "application/json");

    const auto post = [&](const char* path, const json& body) {
      return client.Post(path, body.dump(), "application/json");
    };
    const auto map = post("/api/map", {{"points", pts},
                                       {"spec", "knn:k=1"},
                                       {"grid", {{"width", 4}, {"height", 1}}}});
    REQUIRE(map);
    CHECK(map->status == 200);
    CHECK(json::parse(map->body)["cells"] == json::array({0, 0, 1, 1}));

    const auto cv = post("/api/cv", {{"points", pts}, {"spec", "knn:k=1"}});
    REQUIRE(cv);
    CHECK(json::parse(cv->body)["errors"] == 2);

    const auto condense = post("/api/condense", {{"points", pts}});
    REQUIRE(condense);
    CHECK(json::parse(condense->body)["prototypes"] == json::array({0, 1}));

    const auto compare = post("/api/compare-maps", {{"points", pts},
                                                    {"specs", {"knn:k=1", "pe:gauss:r=50"}},
                                                    {"grid", {{"width", 8}, {"height", 8}}}});
    REQUIRE(compare);
    CHECK(json::parse(compare->body)["coefficient"] == 1.0);

    const auto bad = client.Post("/api/map", "{", "application/json");
    REQUIRE(bad);
    CHECK(bad->status == 400);

    server.stop();
    thread.join();
  }
}
