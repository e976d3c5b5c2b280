#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rainbow/graph.hpp"

namespace rainbow {

/// Edge-list text: a line "n m", then m lines "u v" with 0-based vertices.
/// Blank lines and lines starting with '#' are ignored.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);

void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g);

/// Graphviz DOT. When `edge_labels` is non-empty it is indexed by edge id
/// and written as the label of each edge.
void write_dot(std::ostream& out, const Graph& g, const std::vector<std::string>& edge_labels = {});

}  // namespace rainbow
