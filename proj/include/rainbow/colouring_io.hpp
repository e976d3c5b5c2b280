#pragma once

#include <string>

#include "json.hpp"

#include "rainbow/edge_rainbow.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/verify.hpp"
#include "rainbow/vertex_rainbow.hpp"

namespace rainbow {

using Json = nlohmann::json;

/// Edge colouring document:
///   {"kind":"edge","n":..,"colors":[[u,v,c],..],"bound":k,"colours_used":..,
///    "certificate":{..}}
/// Certificate edges are written as [u,v] pairs so the document does not
/// depend on internal edge ids. Unreachable layers are written as -1.
Json to_json(const Graph& g, const EdgeColouring& colouring, std::size_t bound);
Json to_json(const Graph& g, const VertexColouring& colouring, std::size_t bound);

/// "edge" or "vertex"; InvalidInput for anything else.
std::string colouring_kind(const Json& doc);

/// Parse against g. Throws InvalidInput when the document names an edge or
/// vertex g does not have, or leaves an edge or vertex uncoloured.
EdgeColouring edge_colouring_from_json(const Graph& g, const Json& doc);
VertexColouring vertex_colouring_from_json(const Graph& g, const Json& doc);

Json to_json(const VerifyReport& report);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& doc);

}  // namespace rainbow
