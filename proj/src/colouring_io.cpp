#include "rainbow/colouring_io.hpp"

#include <fstream>

#include "rainbow/errors.hpp"

namespace rainbow {

namespace {

Json layers_to_json(const std::vector<std::uint32_t>& layers) {
  Json out = Json::array();
  for (auto l : layers) out.push_back(l == kUnreachable ? std::int64_t{-1} : std::int64_t{l});
  return out;
}

std::vector<std::uint32_t> layers_from_json(const Json& arr, std::size_t n) {
  auto raw = arr.get<std::vector<std::int64_t>>();
  if (raw.size() != n) throw InvalidInput("certificate layer array has the wrong length");
  std::vector<std::uint32_t> out;
  for (auto l : raw) out.push_back(l < 0 ? kUnreachable : static_cast<std::uint32_t>(l));
  return out;
}

Json edges_to_json(const Graph& g, const EdgeSubset& ids) {
  Json out = Json::array();
  for (EdgeId id : ids) out.push_back({g.edge(id).u, g.edge(id).v});
  return out;
}

EdgeId edge_id(const Graph& g, const Json& pair) {
  if (!pair.is_array() || pair.size() < 2) throw InvalidInput("edge entry must be [u, v, ...]");
  const auto u = pair[0].get<std::int64_t>(), v = pair[1].get<std::int64_t>();
  const auto n = static_cast<std::int64_t>(g.vertex_count());
  if (u < 0 || v < 0 || u >= n || v >= n) throw InvalidInput("edge endpoint out of range");
  auto id = g.find_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  if (!id) {
    throw InvalidInput("(" + std::to_string(u) + ", " + std::to_string(v) + ") is not an edge of the graph");
  }
  return *id;
}

EdgeSubset edges_from_json(const Graph& g, const Json& arr) {
  EdgeSubset out;
  for (const auto& pair : arr) out.push_back(edge_id(g, pair));
  std::sort(out.begin(), out.end());
  return out;
}

void require_n(const Graph& g, const Json& doc) {
  if (doc.contains("n") && doc.at("n").get<std::size_t>() != g.vertex_count()) {
    throw InvalidInput("colouring was made for a graph with a different vertex count");
  }
}

template <typename T>
T parse(const char* what, auto&& body) {
  try {
    return body();
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed ") + what + " document: " + e.what());
  }
}

}  // namespace

Json to_json(const Graph& g, const EdgeColouring& colouring, std::size_t bound) {
  Json doc;
  doc["kind"] = "edge";
  doc["n"] = g.vertex_count();
  Json colours = Json::array();
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    colours.push_back({g.edge(id).u, g.edge(id).v, colouring.colour[id]});
  }
  doc["colors"] = std::move(colours);
  doc["bound"] = bound;
  doc["colours_used"] = colouring.colours_used();
  if (colouring.certificate) {
    const auto& c = *colouring.certificate;
    doc["certificate"] = {
        {"root", c.root},
        {"edges1", edges_to_json(g, c.edges1)},
        {"edges2", edges_to_json(g, c.edges2)},
        {"shared", edges_to_json(g, c.shared)},
        {"shared_colours", c.shared_colours},
        {"layers1", layers_to_json(c.layers1)},
        {"layers2", layers_to_json(c.layers2)},
        {"palette_a", c.palette_a},
        {"palette_b", c.palette_b},
    };
  }
  return doc;
}

Json to_json(const Graph& g, const VertexColouring& colouring, std::size_t bound) {
  Json doc;
  doc["kind"] = "vertex";
  doc["n"] = g.vertex_count();
  Json colours = Json::array();
  for (Vertex v = 0; v < g.vertex_count(); ++v) colours.push_back({v, colouring.colour[v]});
  doc["colors"] = std::move(colours);
  doc["bound"] = bound;
  doc["colours_used"] = colouring.colours_used();
  if (colouring.certificate) {
    const auto& c = *colouring.certificate;
    doc["certificate"] = {
        {"root1", c.root1},
        {"root2", c.root2},
        {"side1", c.side1},
        {"side2", c.side2},
        {"shared", c.shared},
        {"shared_colours", c.shared_colours},
        {"layers1", layers_to_json(c.layers1)},
        {"layers2", layers_to_json(c.layers2)},
        {"palette_a", c.palette_a},
        {"palette_b", c.palette_b},
    };
  }
  return doc;
}

std::string colouring_kind(const Json& doc) {
  if (!doc.is_object() || !doc.contains("kind") || !doc.at("kind").is_string()) {
    throw InvalidInput("colouring document has no \"kind\"");
  }
  auto kind = doc.at("kind").get<std::string>();
  if (kind != "edge" && kind != "vertex") throw InvalidInput("unknown colouring kind \"" + kind + "\"");
  return kind;
}

EdgeColouring edge_colouring_from_json(const Graph& g, const Json& doc) {
  return parse<EdgeColouring>("edge colouring", [&] {
    require_n(g, doc);
    EdgeColouring out;
    std::vector<char> seen(g.edge_count(), 0);
    out.colour.assign(g.edge_count(), 0);
    for (const auto& entry : doc.at("colors")) {
      if (entry.size() != 3) throw InvalidInput("edge colour entry must be [u, v, c]");
      const EdgeId id = edge_id(g, entry);
      if (seen[id]) throw InvalidInput("edge coloured twice");
      seen[id] = 1;
      out.colour[id] = entry[2].get<std::uint32_t>();
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
      throw InvalidInput("colouring leaves an edge uncoloured");
    }
    if (doc.contains("certificate")) {
      const auto& c = doc.at("certificate");
      EdgeCertificate cert;
      cert.root = c.at("root").get<Vertex>();
      cert.edges1 = edges_from_json(g, c.at("edges1"));
      cert.edges2 = edges_from_json(g, c.at("edges2"));
      cert.shared = edges_from_json(g, c.at("shared"));
      // shared_colours is parallel to the written order, which is id order.
      cert.shared_colours = c.at("shared_colours").get<std::vector<int>>();
      cert.layers1 = layers_from_json(c.at("layers1"), g.vertex_count());
      cert.layers2 = layers_from_json(c.at("layers2"), g.vertex_count());
      cert.palette_a = c.at("palette_a").get<std::vector<int>>();
      cert.palette_b = c.at("palette_b").get<std::vector<int>>();
      out.certificate = std::move(cert);
    }
    return out;
  });
}

VertexColouring vertex_colouring_from_json(const Graph& g, const Json& doc) {
  return parse<VertexColouring>("vertex colouring", [&] {
    require_n(g, doc);
    const std::size_t n = g.vertex_count();
    VertexColouring out;
    std::vector<char> seen(n, 0);
    out.colour.assign(n, 0);
    for (const auto& entry : doc.at("colors")) {
      if (!entry.is_array() || entry.size() != 2) throw InvalidInput("vertex colour entry must be [v, c]");
      const auto v = entry[0].get<std::int64_t>();
      if (v < 0 || v >= static_cast<std::int64_t>(n)) throw InvalidInput("vertex out of range");
      if (seen[v]) throw InvalidInput("vertex coloured twice");
      seen[v] = 1;
      out.colour[v] = entry[1].get<std::uint32_t>();
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
      throw InvalidInput("colouring leaves a vertex uncoloured");
    }
    if (doc.contains("certificate")) {
      const auto& c = doc.at("certificate");
      VertexCertificate cert;
      cert.root1 = c.at("root1").get<Vertex>();
      cert.root2 = c.at("root2").get<Vertex>();
      cert.side1 = c.at("side1").get<std::vector<Vertex>>();
      cert.side2 = c.at("side2").get<std::vector<Vertex>>();
      cert.shared = c.at("shared").get<std::vector<Vertex>>();
      cert.shared_colours = c.at("shared_colours").get<std::vector<int>>();
      cert.layers1 = layers_from_json(c.at("layers1"), n);
      cert.layers2 = layers_from_json(c.at("layers2"), n);
      cert.palette_a = c.at("palette_a").get<std::vector<int>>();
      cert.palette_b = c.at("palette_b").get<std::vector<int>>();
      out.certificate = std::move(cert);
    }
    return out;
  });
}

Json to_json(const VerifyReport& report) {
  Json doc{{"verdict", report.verdict ? "pass" : "fail"},
           {"method", to_string(report.method)},
           {"pairs_checked", report.pairs_checked}};
  if (report.witness) {
    doc["witness"] = {{"x", report.witness->x},
                      {"y", report.witness->y},
                      {"explanation", report.witness->explanation},
                      {"path", report.witness->path}};
  }
  return doc;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << doc.dump(2) << '\n';
}

}  // namespace rainbow
