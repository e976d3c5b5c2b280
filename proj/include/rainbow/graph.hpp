#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace rainbow {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;
using Rational = boost::rational<std::int64_t>;

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// Unordered vertex pair. Graph stores them normalised with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;

  Vertex other(Vertex x) const { return x == u ? v : u; }
};

inline Edge normalized(Edge e) { return e.u <= e.v ? e : Edge{e.v, e.u}; }

/// Sorted list of edge ids of some graph.
using EdgeSubset = std::vector<EdgeId>;

/// Simple undirected graph on vertices 0..n-1 with CSR adjacency.
///
/// Edges are kept sorted lexicographically; an edge's id is its index in
/// that order, so ids are stable for a given edge set regardless of the
/// order the edges were supplied in. Immutable after construction.
class Graph {
 public:
  Graph() = default;

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_[id]; }

  std::span<const Vertex> neighbours(Vertex v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  /// Edge ids parallel to neighbours(v).
  std::span<const EdgeId> incident_edges(Vertex v) const {
    return {adj_edge_.data() + offsets_[v], adj_edge_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t min_degree() const;
  std::size_t max_degree() const;

  std::optional<EdgeId> find_edge(Vertex u, Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const { return find_edge(u, v).has_value(); }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  friend Graph build_graph(std::size_t n, std::span<const Edge> edge_list);

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adj_;
  std::vector<EdgeId> adj_edge_;
};

/// Builds a simple graph. Duplicate pairs collapse; self-loops and
/// out-of-range endpoints throw InvalidInput.
Graph build_graph(std::size_t n, std::span<const Edge> edge_list);

/// Graph (V, subset) keeping all n vertices. Edge ids are renumbered.
Graph spanning_subgraph(const Graph& g, std::span<const EdgeId> subset);

/// Subgraph induced by `vertices`, relabelled 0..k-1 in the order given.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_parent;
  /// kUnreachable for vertices outside the subset.
  std::vector<Vertex> from_parent;
};
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

/// Undirected multigraph with loops; each edge has a dense stable index.
/// A loop appears twice in its vertex's adjacency and counts 2 in the degree.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(std::size_t n);

  EdgeId add_edge(Vertex u, Vertex v);

  std::size_t vertex_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_[id]; }

  struct Incidence {
    Vertex neighbour;
    EdgeId edge;
  };
  std::span<const Incidence> incidences(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }

  bool is_simple() const;
  /// Deletes loops and merges parallel edges.
  Graph simplified() const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adj_;
};

Multigraph to_multigraph(const Graph& g);

/// BFS distances from one root.
struct DistanceLayers {
  Vertex root = 0;
  std::vector<std::uint32_t> dist;  // kUnreachable when not reachable
  std::uint32_t eccentricity = 0;   // max finite distance
};

DistanceLayers bfs_layers(const Graph& g, Vertex root);
DistanceLayers bfs_layers(const Multigraph& g, Vertex root);

bool is_connected(const Graph& g);

/// Eccentricity of every vertex (BFS from each). Throws on disconnected input.
std::vector<std::uint32_t> eccentricities(const Graph& g);

/// Max all-pairs distance. Throws InvalidInput if g is disconnected.
std::uint32_t diameter(const Graph& g);

/// Components ordered by smallest member; each sorted ascending.
std::vector<std::vector<Vertex>> connected_components(const Graph& g);

/// Per-vertex component label, labels numbered by smallest member.
std::vector<std::uint32_t> component_labels(const Graph& g, std::size_t* count = nullptr);

/// Closed trail through every edge exactly once.
struct EulerCircuit {
  Vertex start = 0;
  std::vector<EdgeId> edges;
};

/// Hierholzer's algorithm. Requires every degree even and all edges in one
/// component; otherwise throws InvalidInput.
EulerCircuit euler_circuit(const Multigraph& g);

struct ExpansionResult {
  Rational value;
  /// A set attaining value, sorted.
  std::vector<Vertex> witness;
};

inline constexpr std::size_t kDefaultExpansionCap = 24;

/// min |out(S)|/|S| over non-empty S with |S| <= n/2, by exhaustive
/// enumeration (Gray-code order, incremental cut maintenance).
/// Throws InfeasibleInstance when n exceeds `cap`, InvalidInput when n < 2.
ExpansionResult edge_expansion_exact(const Graph& g, std::size_t cap = kDefaultExpansionCap);

/// Monte Carlo upper bound on the edge expansion: the minimum ratio over
/// sampled sets (random subsets and BFS balls). Never a lower bound.
ExpansionResult edge_expansion_upper_bound(const Graph& g, std::size_t samples,
                                           std::uint64_t seed);

}  // namespace rainbow
