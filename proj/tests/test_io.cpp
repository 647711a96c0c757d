#include <cmath>

#include "doctest.h"
#include "knnpe/io.hpp"
#include "knnpe/report.hpp"
#include "knnpe/spec_text.hpp"
#include "support.hpp"

using namespace knnpe;

namespace {

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Config;
}

std::string message_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

EvaluationReport sample_report() {
  EvaluationReport r;
  r.dataset = "Toy";
  r.source = "toy.csv";
  r.instances = 4;
  r.attributes = 2;
  r.classes = 2;
  r.alphabet = {"a", "b"};
  r.catalog_notes = {"Toy: not in the catalog"};
  r.normalized = true;
  r.dropped_attributes = {"a3"};
  r.radius_average = "mean-distance";
  r.average_distance = 1.0 / 3.0;
  r.specs = {SpecSummary{"knn:k=1", "1NN", std::nullopt, 1, 0.25, std::nullopt,
                         {"a", std::nullopt, "b", "b"}},
             SpecSummary{"pe:yukawa:p=10", "PE-Y", 0.1 * std::sqrt(2.0), 2, 0.5, std::nullopt, {}},
             SpecSummary{"cnn:k=1", "1CNN", std::nullopt, 0, 0.0, 0.0, {}}};
  r.correlation = {{1.0, 0.5, std::nullopt}, {0.5, 1.0, -0.1}, {std::nullopt, -0.1, 1.0}};
  r.info_gain = {{1.0, 0.2, 0.3}, {0.2, 1.0, 0.1}, {0.3, 0.1, 0.9}};
  r.truth_info_gain = {0.5, 0.25, 0.125};
  r.mcnemar.assign(3, std::vector<McNemarCell>(3));
  r.mcnemar[0][1] = McNemarCell{2, 0, 1, 1, 0.0, false};
  r.sweep_specs = {"pe:yukawa", "pe:gauss"};
  r.sweep = {SweepPoint{10, 0.1, {1, 2}, {0.25, 0.5}, {{1.0, std::nullopt}, {std::nullopt, 1.0}}}};
  r.maps = MapSection{20, 10, {0, 0, 4, 2}, {"out/toy-1-1NN.ppm"}, {"1NN"}, {3}, {{1.0}}};
  return r;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("iris loads with the catalog shape") {
    const auto t = load_csv(testing::data_path("iris.csv"));
    CHECK(t.data.size() == 150);
    CHECK(t.data.attribute_count() == 4);
    CHECK(t.data.class_count() == 3);
    CHECK(verify_catalog(t.data, *find_descriptor("iris")).empty());
  }

  TEST_CASE("parse errors name the line") {
    CHECK(kind_of([] { parse_csv("a,1,2\nb,3\n", HeaderMode::Absent, "x.csv"); }) ==
          ErrorKind::Parse);
    CHECK(message_of([] { parse_csv("a,1,2\nb,3\n", HeaderMode::Absent, "x.csv"); })
              .find("x.csv:2") != std::string::npos);
    CHECK(message_of([] { parse_csv("a,1\n\nb,zz\n", HeaderMode::Absent, "x.csv"); })
              .find("x.csv:3") != std::string::npos);
    CHECK(kind_of([] { parse_csv("", HeaderMode::Auto); }) == ErrorKind::Parse);
    CHECK(kind_of([] { parse_csv("class,x\n", HeaderMode::Auto); }) == ErrorKind::Parse);
    CHECK(kind_of([] { parse_csv("a,nan\n", HeaderMode::Absent); }) == ErrorKind::Parse);
    CHECK(kind_of([] { load_csv("/nonexistent/file.csv"); }) == ErrorKind::Parse);
  }

  TEST_CASE("y/n cells and header sniffing") {
    const auto votes = parse_csv("dem,y,N\nrep, n ,Y\n");
    CHECK(votes.attribute_names.empty());
    CHECK(votes.data.features(0)[0] == 1.0);
    CHECK(votes.data.features(0)[1] == 0.0);
    CHECK(votes.data.features(1)[0] == 0.0);
    CHECK(votes.data.features(1)[1] == 1.0);

    const auto named = parse_csv("class,x,y\nred,1,2\n");
    CHECK(named.attribute_names == std::vector<std::string>{"x", "y"});
    CHECK(named.data.size() == 1);
    // A forced header consumes the first row even when it is numeric.
    CHECK(parse_csv("c,1,2\nd,3,4\n", HeaderMode::Present).data.size() == 1);
    CHECK(kind_of([] { parse_csv("class,x\nred,1\n", HeaderMode::Absent); }) == ErrorKind::Parse);
  }

  TEST_CASE("write then parse reproduces the dataset exactly") {
    for (const char* file : {"iris.csv", "glass.csv", "ionosphere.csv", "haberman.csv"}) {
      const auto t = load_csv(testing::data_path(file));
      CHECK(parse_csv(write_csv(t.data, t.attribute_names)).data == t.data);
      CHECK(parse_csv(write_csv(t.data), HeaderMode::Absent).data == t.data);
    }
    testing::Gen gen(71);
    const auto d = gen.dataset(50, 4, 3);
    CHECK(parse_csv(write_csv(d), HeaderMode::Absent).data == d);
  }

  TEST_CASE("catalog is verbatim and discrepancies are listed") {
    const auto& c = benchmark_catalog();
    REQUIRE(c.size() == 6);
    const std::vector<std::tuple<std::string, std::size_t, std::size_t, std::size_t>> expected{
        {"Glass", 214, 10, 7}, {"Haberman", 306, 3, 2},     {"Ionosphere", 351, 34, 2},
        {"Iris", 150, 4, 3},   {"Party", 384, 12, 2},       {"Transfusion", 748, 5, 2}};
    for (std::size_t i = 0; i < 6; ++i) {
      CHECK(c[i].name == std::get<0>(expected[i]));
      CHECK(c[i].instances == std::get<1>(expected[i]));
      CHECK(c[i].attributes == std::get<2>(expected[i]));
      CHECK(c[i].classes == std::get<3>(expected[i]));
    }
    CHECK_FALSE(find_descriptor("party")->name.empty());
    CHECK_FALSE(find_descriptor("nope").has_value());

    const auto iris = load_csv(testing::data_path("iris.csv")).data;
    auto wrong = *find_descriptor("Iris");
    wrong.classes = 4;
    CHECK(verify_catalog(iris, wrong).size() == 1);

    const auto glass = load_csv(testing::data_path("glass.csv")).data;
    const auto notes = verify_catalog(glass, *find_descriptor("Glass"));
    bool attribute_note = false;
    for (const auto& n : notes) attribute_note = attribute_note || n.find("9 attributes") != n.npos;
    CHECK(attribute_note);
    CHECK(glass.size() == 214);
  }

  TEST_CASE("spec text round trips and display names") {
    for (const char* text : {"knn:k=1", "knn:k=5:weighted", "cnn:k=1", "pe:yukawa:p=10",
                             "pe:gauss:r=30:normalized", "pe:gauss:p=12.5"}) {
      const auto s = parse_spec(text);
      CHECK(parse_spec(format_spec(s)) == s);
    }
    CHECK(parse_spec("pe:gaussian:r=2") == parse_spec("pe:gauss:r=2"));
    CHECK(display_name(KnnSpec{1, false}) == "1NN");
    CHECK(display_name(KnnSpec{5, true}) == "5WNN");
    CHECK(display_name(CnnSpec{1}) == "1CNN");
    CHECK(display_name(PeSpec{PotentialKind::Yukawa, 1, false}) == "PE-Y");
    CHECK(display_name(PeSpec{PotentialKind::Gaussian, 1, true}) == "PE-Gn");

    const auto p = parse_spec("pe:yukawa:p=10");
    const auto resolved = std::get<PeSpec>(resolve(p, 9.0));
    CHECK(resolved.radius == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(parse_spec(format_spec(resolve(p, 9.0))).spec == resolve(p, 9.0));

    for (const char* bad : {"", "knn", "knn:k=0", "knn:k=x", "svm:k=1", "pe:yukawa",
                            "pe:yukawa:p=0", "pe:yukawa:p=201", "pe:yukawa:r=-1",
                            "pe:cubic:r=1", "knn:k=1:fancy", "cnn:k=2:weighted"}) {
      CAPTURE(bad);
      CHECK(kind_of([&] { parse_spec(bad); }) == ErrorKind::Config);
    }
  }

  TEST_CASE("report formats") {
    CHECK(parse_report_format("table") == ReportFormat::Table);
    CHECK(parse_report_format("record") == ReportFormat::Record);
    CHECK_FALSE(parse_report_format("yaml").has_value());

    EvaluationReport bare;
    bare.dataset = "Iris";
    bare.source = "iris.csv";
    const auto table = emit_report(bare, ReportFormat::Table);
    CHECK(table.find("Dataset Iris") == 0);
    CHECK(std::count(table.begin(), table.end(), '\n') == 1);

    const auto r = sample_report();
    const auto record = emit_reports({r, bare}, ReportFormat::Record);
    CHECK(record.find("\"format\": \"knnpe-report/1\"") != std::string::npos);
    CHECK(record.back() == '\n');
    CHECK(parse_reports(record) == std::vector<EvaluationReport>{r, bare});
    CHECK(emit_reports({r, bare}, ReportFormat::Record) == record);
    CHECK(kind_of([] { parse_reports("{\"format\":\"other\"}"); }) == ErrorKind::Parse);
    CHECK(kind_of([] { parse_reports("not json"); }) == ErrorKind::Parse);

    const auto text = emit_report(r, ReportFormat::Table);
    for (const char* section : {"Leave-one-out", "Result correlation", "Information gain",
                                "McNemar", "Radius sweep", "Maps", "Map correlation"}) {
      CHECK(text.find(section) != std::string::npos);
    }
  }

  TEST_CASE("mcnemar table with no rejections is all zeros off the diagonal") {
    auto r = sample_report();
    r.sweep.clear();
    r.sweep_specs.clear();
    r.maps.reset();
    const auto text = emit_report(r, ReportFormat::Table);
    const auto start = text.find("McNemar");
    REQUIRE(start != std::string::npos);
    const auto block = text.substr(start);
    CHECK(block.find(" 1\n") == std::string::npos);
    CHECK(block.find(" 1 ") == std::string::npos);
    CHECK(block.find(" 0") != std::string::npos);
  }
}
