// Command-line front end: generators, colourers, verifiers and the
// experiment driver.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rainbow/colouring_io.hpp"
#include "rainbow/edge_rainbow.hpp"
#include "rainbow/experiment.hpp"
#include "rainbow/graph_io.hpp"
#include "rainbow/random_models.hpp"
#include "rainbow/verify.hpp"
#include "rainbow/vertex_rainbow.hpp"

using namespace rainbow;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

Json edges_json(const Graph& g, const EdgeSubset& ids) {
  Json out = Json::array();
  for (EdgeId id : ids) out.push_back({g.edge(id).u, g.edge(id).v});
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string edge_list_text(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

void write_dot_file(const std::string& path, const Graph& g, const std::vector<std::string>& labels = {}) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_dot(out, g, labels);
}

std::vector<std::string> colour_labels(const EdgeColouring& c) {
  std::vector<std::string> labels;
  for (auto colour : c.colour) labels.push_back(std::to_string(colour));
  return labels;
}

// "hamcycle", "matching:M", "regular:R", comma separated.
std::vector<GeneratorSpec> parse_parts(const std::string& text) {
  std::vector<GeneratorSpec> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    const std::string name = item.substr(0, colon);
    const std::size_t arg = colon == std::string::npos ? 0 : std::stoul(item.substr(colon + 1));
    if (name == "hamcycle") {
      parts.push_back(GeneratorSpec::hamiltonian_cycle());
    } else if (name == "matching" && colon != std::string::npos) {
      parts.push_back(GeneratorSpec::matching(arg));
    } else if (name == "regular" && colon != std::string::npos) {
      parts.push_back(GeneratorSpec::simple_regular(arg));
    } else {
      throw InvalidInput("unknown part \"" + item + "\" (use hamcycle, matching:M, regular:R)");
    }
  }
  if (parts.empty()) throw InvalidInput("--parts is empty");
  return parts;
}

struct GenerateArgs {
  std::string model = "simple-regular";
  std::size_t n = 0, r = 3, m = 0;
  Seed seed = 0;
  std::string parts, json, out, dot;
};

int run_generate(const GenerateArgs& a) {
  Json record{{"model", a.model}, {"n", a.n}, {"seed", a.seed}};
  std::string text;
  std::optional<Graph> graph;
  if (a.model == "pairing") {
    const auto pairing = sample_pairing(a.n, a.r, a.seed);
    const Multigraph mg = pairing.to_multigraph();
    std::ostringstream out;
    out << "# pairing multigraph, simple: " << (mg.is_simple() ? "yes" : "no") << '\n';
    out << mg.vertex_count() << ' ' << mg.edge_count() << '\n';
    for (const Edge& e : mg.edges()) out << e.u << ' ' << e.v << '\n';
    text = out.str();
    record["r"] = a.r;
    record["mate"] = pairing.mate;
    record["simple"] = mg.is_simple();
    if (mg.is_simple()) graph = mg.simplified();
  } else if (a.model == "simple-regular") {
    graph = sample_simple_regular(a.n, a.r, a.seed);
    record["r"] = a.r;
  } else if (a.model == "hamcycle") {
    graph = random_hamiltonian_cycle(a.n, a.seed);
  } else if (a.model == "matching") {
    graph = random_matching(a.n, a.m, a.seed);
    record["m"] = a.m;
  } else if (a.model == "oplus") {
    const auto specs = parse_parts(a.parts);
    auto result = oplus_union(a.n, specs, a.seed, kDefaultRegularAttempts);
    Json parts = Json::array();
    for (std::size_t i = 0; i < specs.size(); ++i) {
      parts.push_back({{"generator", specs[i].describe()}, {"edges", edges_json(result.graph, result.parts[i])}});
    }
    record["parts"] = std::move(parts);
    record["attempts"] = result.attempts;
    graph = std::move(result.graph);
  } else if (a.model == "cycle-quarter-matching") {
    auto model = subdivide_cycle_model(a.n, a.seed);
    const auto& rec = model.record;
    record["subset"] = rec.subset;
    Json matching = Json::array();
    for (const auto& [i, j] : rec.matching) matching.push_back({i, j});
    record["matching"] = std::move(matching);
    record["gaps"] = rec.gaps.gaps;
    record["attempts"] = rec.attempts;
    graph = std::move(model.graph);
  } else {
    throw InvalidInput("unknown model \"" + a.model + "\"");
  }
  if (text.empty()) text = edge_list_text(*graph);
  write_text(a.out, text);
  if (!a.json.empty()) write_json_file(a.json, record);
  if (!a.dot.empty()) {
    if (!graph) throw InvalidInput("DOT export needs a simple graph");
    write_dot_file(a.dot, *graph);
  }
  return 0;
}

struct ColourEdgesArgs {
  std::string input, method = "mindeg", split, out, dot, graph_out;
  double lambda = 0.5;
  Seed seed = 0;
  std::size_t retries = 100, n = 0, r = 0;
};

int run_colour_edges(const ColourEdgesArgs& a) {
  Graph g;
  LayeredEdgeColouring layered;
  Json extra;
  if (a.method == "regular") {
    auto result = rc_random_regular(a.n, a.r, a.seed);
    g = std::move(result.graph);
    layered = std::move(result.layered);
    extra = {{"construction", result.construction}, {"union_attempts", result.union_attempts}};
    if (!a.graph_out.empty()) write_text(a.graph_out, edge_list_text(g));
  } else {
    if (a.input.empty()) throw InvalidInput("--input is required for method " + a.method);
    g = read_edge_list_file(a.input);
    if (a.method == "split") {
      if (a.split.empty()) throw InvalidInput("method split needs --split");
      const Json doc = read_json_file(a.split);
      EdgeSplit split;
      for (int side = 1; side <= 2; ++side) {
        auto& target = side == 1 ? split.edges1 : split.edges2;
        for (const auto& pair : doc.at(side == 1 ? "edges1" : "edges2")) {
          auto id = g.find_edge(pair.at(0).get<Vertex>(), pair.at(1).get<Vertex>());
          if (!id) throw InvalidInput("split names a non-edge");
          target.push_back(*id);
        }
        std::sort(target.begin(), target.end());
      }
      layered = split_colouring(g, split);
    } else if (a.method == "mindeg") {
      auto result = rc_min_degree(g);
      layered = std::move(result.layered);
      extra = {{"colour_bound", result.colour_bound},
               {"diameter_bound", result.diameter_bound},
               {"diameter_bound_ok", result.diameter_bound_ok}};
    } else if (a.method == "expander") {
      auto result = expander_split(g, a.lambda, a.seed, a.retries);
      layered = split_colouring(g, result.split);
      auto str = [](const Rational& q) { return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator()); };
      extra = {{"expansion", str(result.expansion)},
               {"expansion1", str(result.expansion1)},
               {"expansion2", str(result.expansion2)},
               {"target", result.target},
               {"attempts", result.attempts}};
    } else {
      throw InvalidInput("unknown method \"" + a.method + "\"");
    }
  }
  Json doc = to_json(g, layered.colouring, layered.bound());
  doc["method"] = a.method;
  doc["diam1"] = layered.diam1;
  doc["diam2"] = layered.diam2;
  if (!extra.is_null()) doc["details"] = std::move(extra);
  if (a.out.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    write_json_file(a.out, doc);
  }
  write_dot_file(a.dot, g, colour_labels(layered.colouring));
  return 0;
}

struct ColourVerticesArgs {
  std::string input, split, out, dot;
  double gamma = 0.11;
  Seed seed = 0;
  bool best_effort = false;
  std::size_t max_resamples = 0;
};

int run_colour_vertices(const ColourVerticesArgs& a) {
  const Graph g = read_edge_list_file(a.input);
  LayeredVertexColouring layered;
  Json extra;
  if (!a.split.empty()) {
    const Json doc = read_json_file(a.split);
    VertexSplit split{doc.at("side1").get<std::vector<Vertex>>(), doc.at("side2").get<std::vector<Vertex>>()};
    layered = vertex_split_colouring(g, split);
  } else {
    PartitionParams params;
    params.gamma = a.gamma;
    params.best_effort = a.best_effort;
    if (a.max_resamples > 0) params.max_resamples = a.max_resamples;
    auto result = rvc_pipeline(g, params, a.seed);
    layered = std::move(result.layered);
    extra = {{"threshold", result.partition.threshold},
             {"resamples", result.partition.resamples},
             {"lll_value", result.partition.lll_value},
             {"stitch1", result.stitch1},
             {"stitch2", result.stitch2}};
  }
  Json doc = to_json(g, layered.colouring, layered.bound());
  doc["diam1"] = layered.diam1;
  doc["diam2"] = layered.diam2;
  if (!extra.is_null()) doc["details"] = std::move(extra);
  if (a.out.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    write_json_file(a.out, doc);
  }
  if (!a.dot.empty()) {
    std::ofstream out(a.dot);
    out << "graph G {\n";
    for (Vertex v = 0; v < g.vertex_count(); ++v) out << "  " << v << " [label=\"" << v << ":" << layered.colouring.colour[v] << "\"];\n";
    for (const Edge& e : g.edges()) out << "  " << e.u << " -- " << e.v << ";\n";
    out << "}\n";
  }
  return 0;
}

struct VerifyArgs {
  std::string graph, colouring, mode = "certificate", out;
  std::size_t pairs = 1000;
  Seed seed = 0;
};

int run_verify(const VerifyArgs& a) {
  const Graph g = read_edge_list_file(a.graph);
  const Json doc = read_json_file(a.colouring);
  const auto selection = a.mode == "sample" ? PairSelection::sample(a.pairs, a.seed) : PairSelection::every_pair();
  VerifyReport report;
  if (colouring_kind(doc) == "edge") {
    const auto c = edge_colouring_from_json(g, doc);
    report = a.mode == "exact" ? is_rainbow_edge_connected_exact(g, c) : check_certificate(g, c, selection);
  } else {
    const auto c = vertex_colouring_from_json(g, doc);
    report = a.mode == "exact" ? is_rainbow_vertex_connected_exact(g, c) : check_certificate(g, c, selection);
  }
  const std::string text = to_json(report).dump(2) + "\n";
  write_text(a.out, text);
  if (!a.out.empty() && a.out != "-") std::cout << text;
  return report.verdict ? 0 : kExitFail;
}

int run_experiment_command(const std::string& config_path, const std::string& out, std::size_t threads) {
  ExperimentConfig config = config_from_json(read_json_file(config_path));
  if (threads > 0) config.threads = threads;
  const auto run = run_experiment(config);
  std::ostringstream csv;
  write_csv(csv, run.rows);
  write_text(out, csv.str());
  if (!out.empty() && out != "-") {
    std::size_t failures = 0;
    for (const auto& row : run.rows) failures += row.verdict == "fail" || row.verdict == "error";
    Json config_doc = to_json(config);
    config_doc.erase("threads");  // does not affect results
    write_json_file(out + ".json", {{"config", config_doc}, {"rows", run.rows.size()}, {"failures", failures}});
    write_json_file(out + ".timing.json", {{"seconds", run.seconds}});
  }
  return 0;
}

int run_report(const std::string& in_path, const std::string& out) {
  std::ifstream in(in_path);
  if (!in) throw std::runtime_error("cannot open " + in_path);
  const Json report = scaling_report(read_csv(in));
  write_text(out, report.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rainbow connectivity toolkit: random regular graph models, layered rainbow colourings, verification."};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Sample a graph and print it as an edge list");
  generate->add_option("--model", gen.model, "Random model")
      ->check(CLI::IsMember({"pairing", "simple-regular", "hamcycle", "matching", "oplus", "cycle-quarter-matching"}));
  generate->add_option("--n", gen.n, "Vertex count")->required();
  generate->add_option("--r", gen.r, "Degree (pairing, simple-regular)");
  generate->add_option("--m", gen.m, "Matching size");
  generate->add_option("--seed", gen.seed, "Seed");
  generate->add_option("--parts", gen.parts, "oplus parts: hamcycle, matching:M, regular:R (comma separated)");
  generate->add_option("--json", gen.json, "Write the construction record here");
  generate->add_option("--out", gen.out, "Edge-list output (default stdout)");
  generate->add_option("--dot", gen.dot, "DOT output");

  ColourEdgesArgs ce;
  auto* colour_edges = app.add_subcommand("color-edges", "Layered rainbow edge colouring");
  colour_edges->add_option("--input", ce.input, "Edge-list graph");
  colour_edges->add_option("--method", ce.method, "Split source")
      ->check(CLI::IsMember({"split", "mindeg", "expander", "regular"}));
  colour_edges->add_option("--split", ce.split, "split: JSON with edges1/edges2 as [u,v] lists");
  colour_edges->add_option("--lambda", ce.lambda, "expander: slack in (0,1)");
  colour_edges->add_option("--max-retries", ce.retries, "expander: retry budget");
  colour_edges->add_option("--seed", ce.seed, "Seed");
  colour_edges->add_option("--n", ce.n, "regular: vertex count");
  colour_edges->add_option("--r", ce.r, "regular: degree");
  colour_edges->add_option("--graph-out", ce.graph_out, "regular: write the generated graph");
  colour_edges->add_option("--out", ce.out, "Colouring JSON (default stdout)");
  colour_edges->add_option("--dot", ce.dot, "DOT output with colour labels");

  ColourVerticesArgs cv;
  auto* colour_vertices = app.add_subcommand("color-vertices", "Layered rainbow vertex colouring");
  colour_vertices->add_option("--input", cv.input, "Edge-list graph (r-regular unless --split)")->required();
  colour_vertices->add_option("--gamma", cv.gamma, "Partition fraction");
  colour_vertices->add_option("--seed", cv.seed, "Seed");
  colour_vertices->add_option("--split", cv.split, "JSON with side1/side2 vertex lists");
  colour_vertices->add_option("--max-resamples", cv.max_resamples, "Resampling budget (default 50n)");
  colour_vertices->add_flag("--best-effort", cv.best_effort, "Run when the local-lemma condition fails");
  colour_vertices->add_option("--out", cv.out, "Colouring JSON (default stdout)");
  colour_vertices->add_option("--dot", cv.dot, "DOT output with colour labels");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a colouring; exit 0 on pass, 1 on fail");
  verify->add_option("--graph", va.graph, "Edge-list graph")->required();
  verify->add_option("--colouring", va.colouring, "Colouring JSON")->required();
  verify->add_option("--mode", va.mode, "Verification mode")->check(CLI::IsMember({"exact", "certificate", "sample"}));
  verify->add_option("--pairs", va.pairs, "sample: number of pairs");
  verify->add_option("--seed", va.seed, "sample: seed");
  verify->add_option("--out", va.out, "Report JSON (default stdout)");

  std::string config_path, experiment_out;
  std::size_t threads = 0;
  auto* experiment = app.add_subcommand("experiment", "Run a config grid and write the CSV");
  experiment->add_option("--config", config_path, "Experiment JSON")->required();
  experiment->add_option("--out", experiment_out, "CSV output (default stdout)");
  experiment->add_option("--threads", threads, "Override the worker count");

  std::string report_in, report_out;
  auto* report = app.add_subcommand("report", "Summarise a results CSV");
  report->add_option("--in", report_in, "Results CSV")->required();
  report->add_option("--out", report_out, "Summary JSON (default stdout)");

  CellSpec cell;
  std::string kind = "regular", verify_mode = "certificate";
  auto* replay = app.add_subcommand("replay", "Rerun one experiment cell");
  replay->add_option("--kind", kind, "mindeg, regular, rvc or diameter")->required();
  replay->add_option("--model", cell.model, "Model name");
  replay->add_option("--n", cell.n, "Vertex count")->required();
  replay->add_option("--r", cell.r, "Degree")->required();
  replay->add_option("--seed", cell.seed, "Cell seed from the CSV")->required();
  replay->add_option("--verify", verify_mode, "certificate, sample, exact or none");
  replay->add_option("--pairs", cell.pairs, "sample: number of pairs");
  replay->add_option("--gamma", cell.gamma, "rvc: partition fraction");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) return run_generate(gen);
    if (*colour_edges) return run_colour_edges(ce);
    if (*colour_vertices) return run_colour_vertices(cv);
    if (*verify) return run_verify(va);
    if (*experiment) return run_experiment_command(config_path, experiment_out, threads);
    if (*report) return run_report(report_in, report_out);
    if (*replay) {
      Json doc{{"id", "replay"}, {"kind", kind}, {"n", {cell.n}}, {"r", {cell.r}}, {"verify", verify_mode}};
      if (!cell.model.empty()) doc["model"] = cell.model;
      const auto config = config_from_json(doc);  // validates names
      cell.kind = config.kind;
      cell.verify = config.verify;
      cell.model = config.model;
      ResultRow row = run_cell(cell);
      row.experiment = "replay";
      write_csv(std::cout, {row});
      return row.verdict == "fail" || row.verdict == "error" ? kExitFail : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}
