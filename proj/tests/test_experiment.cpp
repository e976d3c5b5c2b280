#include <sstream>

#include "doctest.h"
#include "rainbow/colouring_io.hpp"
#include "rainbow/edge_rainbow.hpp"
#include "rainbow/experiment.hpp"
#include "rainbow/random_models.hpp"
#include "rainbow/vertex_rainbow.hpp"

using namespace rainbow;

namespace {

Json mindeg_config() {
  return Json{{"id", "mindeg-small"}, {"kind", "mindeg"}, {"n", {40, 60}}, {"r", {6}},
              {"trials", 3},          {"seed", 7},         {"verify", "certificate"}};
}

std::string csv_of(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  write_csv(out, rows);
  return out.str();
}

}  // namespace

TEST_CASE("edge colouring JSON round trip") {
  const auto result = rc_random_regular(40, 5, 2);
  const Json doc = to_json(result.graph, result.layered.colouring, result.layered.bound());
  CHECK(colouring_kind(doc) == "edge");
  CHECK(doc.at("bound") == result.layered.bound());
  const auto back = edge_colouring_from_json(result.graph, Json::parse(doc.dump()));
  CHECK(back.colour == result.layered.colouring.colour);
  REQUIRE(back.certificate);
  const auto& a = *back.certificate;
  const auto& b = *result.layered.colouring.certificate;
  CHECK(a.root == b.root);
  CHECK(a.edges1 == b.edges1);
  CHECK(a.edges2 == b.edges2);
  CHECK(a.layers1 == b.layers1);
  CHECK(a.palette_b == b.palette_b);
}

TEST_CASE("vertex colouring JSON round trip keeps unreachable layers") {
  std::vector<Edge> path;
  for (Vertex v = 0; v < 5; ++v) path.push_back({v, v + 1});
  const Graph g = build_graph(6, path);
  const auto lay = vertex_split_colouring(g, {{0, 1, 2, 3, 4}, {1, 2, 3, 4, 5}});
  const Json doc = to_json(g, lay.colouring, lay.bound());
  CHECK(doc.at("certificate").at("layers1").at(5) == -1);
  const auto back = vertex_colouring_from_json(g, doc);
  CHECK(back.colour == lay.colouring.colour);
  CHECK(back.certificate->layers1 == lay.colouring.certificate->layers1);
}

TEST_CASE("malformed colouring documents are rejected") {
  const std::vector<Edge> tri{{0, 1}, {1, 2}, {0, 2}};
  const Graph g = build_graph(3, tri);
  CHECK_THROWS_AS(colouring_kind(Json{{"kind", "face"}}), InvalidInput);
  CHECK_THROWS_AS(edge_colouring_from_json(g, Json{{"colors", {{0, 1, 0}, {1, 2, 1}}}}), InvalidInput);
  CHECK_THROWS_AS(edge_colouring_from_json(g, Json{{"colors", {{0, 1, 0}, {1, 2, 1}, {0, 3, 2}}}}),
                  InvalidInput);
  CHECK_THROWS_AS(edge_colouring_from_json(g, Json{{"colors", "none"}}), InvalidInput);
  CHECK_THROWS_AS(vertex_colouring_from_json(g, Json{{"n", 4}, {"colors", Json::array()}}), InvalidInput);
}

TEST_CASE("config validation names the field") {
  auto field_of = [](Json doc) {
    try {
      config_from_json(doc);
    } catch (const ConfigError& e) {
      return e.field;
    }
    return std::string();
  };
  Json c = mindeg_config();
  CHECK(field_of(c).empty());
  c["n"] = Json::array();
  CHECK(field_of(c) == "n");
  c = mindeg_config();
  c["kind"] = "sat";
  CHECK(field_of(c) == "kind");
  c = mindeg_config();
  c["trials"] = "three";
  CHECK(field_of(c) == "trials");
  c = mindeg_config();
  c.erase("id");
  CHECK(field_of(c) == "id");
  c = mindeg_config();
  c["verify"] = "maybe";
  CHECK(field_of(c) == "verify");
  CHECK(field_of(Json{{"id", "d"}, {"kind", "diameter"}, {"model", "torus"}, {"n", {8}}}) == "model");
}

TEST_CASE("config round trips through JSON") {
  const auto config = config_from_json(mindeg_config());
  const auto again = config_from_json(to_json(config));
  CHECK(to_json(again) == to_json(config));
  CHECK(config.cell_seed(40, 6, 1) == again.cell_seed(40, 6, 1));
  CHECK(config.cell_seed(40, 6, 1) != config.cell_seed(40, 6, 2));
}

TEST_CASE("mindeg experiment rows respect the 16n/delta bound") {
  const auto run = run_experiment(config_from_json(mindeg_config()));
  REQUIRE(run.rows.size() == 6);
  for (const auto& row : run.rows) {
    CHECK(row.verdict == "pass");
    CHECK(row.bound == (16 * row.n + 5) / 6);
    CHECK(row.colours_used <= row.bound);
    CHECK(row.replay.empty());
  }
  CHECK(run.rows[3].n == 60);
  CHECK(run.rows[3].trial == 0);
}

TEST_CASE("experiments are byte-identical across runs and thread counts") {
  Json doc{{"id", "reg"}, {"kind", "regular"}, {"n", {64, 65}}, {"r", {5, 6}}, {"trials", 2}, {"seed", 3}};
  auto config = config_from_json(doc);
  const std::string first = csv_of(run_experiment(config).rows);
  config.threads = 3;
  CHECK(csv_of(run_experiment(config).rows) == first);
  // Growing the grid keeps existing cells.
  doc["n"] = {64, 65, 128};
  const std::string grown = csv_of(run_experiment(config_from_json(doc)).rows);
  CHECK(grown.find(first.substr(first.find('\n', first.find('\n') + 1) + 1)) != std::string::npos);
}

TEST_CASE("failing cells keep their row and a replay command") {
  // n*r odd cannot be built.
  const Json doc{{"id", "odd"}, {"kind", "regular"}, {"n", {21}}, {"r", {5}}, {"trials", 1}};
  const auto run = run_experiment(config_from_json(doc));
  REQUIRE(run.rows.size() == 1);
  CHECK(run.rows[0].verdict == "error");
  CHECK(run.rows[0].replay.find("rainbow replay --kind regular") == 0);
  CHECK(run.rows[0].replay.find("--n 21 --r 5 --seed ") != std::string::npos);
}

TEST_CASE("csv round trip and malformed input") {
  const Json doc{{"id", "dia"}, {"kind", "diameter"}, {"model", "cycle-perfect-matching"}, {"n", {32}},
                 {"trials", 2}};
  auto rows = run_experiment(config_from_json(doc)).rows;
  rows[0].note = "quoted, \"note\"";
  std::istringstream in(csv_of(rows));
  CHECK(read_csv(in) == rows);
  std::istringstream no_version("experiment,kind\n");
  CHECK_THROWS_AS(read_csv(no_version), InvalidInput);
  std::istringstream short_row(std::string(kCsvVersionLine) + "\n" + csv_of({}).substr(csv_of({}).find('\n') + 1) + "a,b\n");
  CHECK_THROWS_AS(read_csv(short_row), InvalidInput);
}

TEST_CASE("scaling report ratios and trend flags") {
  const Json doc{{"id", "dia"}, {"kind", "diameter"}, {"model", "cycle-perfect-matching"},
                 {"n", {64, 128, 256}}, {"trials", 3}};
  const auto report = scaling_report(run_experiment(config_from_json(doc)).rows);
  const auto& series = report.at("series").at(0);
  REQUIRE(series.at("cells").size() == 3);
  const auto& cell = series.at("cells").at(1);
  CHECK(cell.at("diam_over_log2_n").get<double>() ==
        doctest::Approx(cell.at("median_diameter").get<double>() / 7.0));
  CHECK(series.at("trends").contains("diam_over_ln_n"));

  const Json single{{"id", "one"}, {"kind", "diameter"}, {"model", "cycle-perfect-matching"}, {"n", {64}},
                    {"trials", 2}};
  const auto one = scaling_report(run_experiment(config_from_json(single)).rows);
  CHECK(one.at("series").at(0).at("trends").is_null());
  CHECK(one.at("series").at(0).at("cells").at(0).contains("diam_over_ln_n"));
}
