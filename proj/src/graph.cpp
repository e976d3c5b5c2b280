#include "rainbow/graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <string>

#include "rainbow/errors.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

Graph build_graph(std::size_t n, std::span<const Edge> edge_list) {
  Graph g;
  g.n_ = n;
  g.edges_.reserve(edge_list.size());
  for (const Edge& raw : edge_list) {
    if (raw.u >= n || raw.v >= n) {
      throw InvalidInput("edge (" + std::to_string(raw.u) + "," + std::to_string(raw.v) +
                         ") has a vertex out of range for n=" + std::to_string(n));
    }
    if (raw.u == raw.v) {
      throw InvalidInput("self-loop at vertex " + std::to_string(raw.u));
    }
    g.edges_.push_back(normalized(raw));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

  std::vector<std::size_t> deg(n, 0);
  for (const Edge& e : g.edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.adj_.resize(g.offsets_[n]);
  g.adj_edge_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted, so every (u, x) with u < x precedes every (x, w):
  // each adjacency list is filled in ascending order.
  for (EdgeId id = 0; id < g.edges_.size(); ++id) {
    const Edge& e = g.edges_[id];
    g.adj_[fill[e.u]] = e.v;
    g.adj_edge_[fill[e.u]++] = id;
    g.adj_[fill[e.v]] = e.u;
    g.adj_edge_[fill[e.v]++] = id;
  }
  return g;
}

std::size_t Graph::min_degree() const {
  std::size_t best = n_ == 0 ? 0 : std::numeric_limits<std::size_t>::max();
  for (Vertex v = 0; v < n_; ++v) best = std::min(best, degree(v));
  return best;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (Vertex v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

std::optional<EdgeId> Graph::find_edge(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) return std::nullopt;
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nb = neighbours(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return std::nullopt;
  return incident_edges(u)[static_cast<std::size_t>(it - nb.begin())];
}

Graph spanning_subgraph(const Graph& g, std::span<const EdgeId> subset) {
  std::vector<Edge> edges;
  edges.reserve(subset.size());
  for (EdgeId id : subset) edges.push_back(g.edge(id));
  return build_graph(g.vertex_count(), edges);
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  InducedSubgraph out;
  out.to_parent.assign(vertices.begin(), vertices.end());
  out.from_parent.assign(g.vertex_count(), kUnreachable);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    out.from_parent[vertices[i]] = static_cast<Vertex>(i);
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (out.from_parent[e.u] != kUnreachable && out.from_parent[e.v] != kUnreachable) {
      edges.push_back({out.from_parent[e.u], out.from_parent[e.v]});
    }
  }
  out.graph = build_graph(vertices.size(), edges);
  return out;
}

Multigraph::Multigraph(std::size_t n) : adj_(n) {}

EdgeId Multigraph::add_edge(Vertex u, Vertex v) {
  if (u >= adj_.size() || v >= adj_.size()) {
    throw InvalidInput("multigraph edge endpoint out of range");
  }
  const auto id = static_cast<EdgeId>(edges_.size());
  edges_.push_back(normalized({u, v}));
  adj_[u].push_back({v, id});
  adj_[v].push_back({u, id});
  return id;
}

bool Multigraph::is_simple() const {
  std::vector<Edge> sorted(edges_.begin(), edges_.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i].u == sorted[i].v) return false;
    if (i > 0 && sorted[i] == sorted[i - 1]) return false;
  }
  return true;
}

Graph Multigraph::simplified() const {
  std::vector<Edge> kept;
  for (const Edge& e : edges_) {
    if (e.u != e.v) kept.push_back(e);
  }
  return build_graph(vertex_count(), kept);
}

Multigraph to_multigraph(const Graph& g) {
  Multigraph m(g.vertex_count());
  for (const Edge& e : g.edges()) m.add_edge(e.u, e.v);
  return m;
}

namespace {

template <typename NeighbourFn>
DistanceLayers bfs_impl(std::size_t n, Vertex root, NeighbourFn&& for_each_neighbour) {
  if (root >= n) {
    throw InvalidInput("BFS root " + std::to_string(root) + " out of range");
  }
  DistanceLayers layers;
  layers.root = root;
  layers.dist.assign(n, kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(n);
  layers.dist[root] = 0;
  queue.push_back(root);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex x = queue[head];
    const std::uint32_t next = layers.dist[x] + 1;
    for_each_neighbour(x, [&](Vertex y) {
      if (layers.dist[y] == kUnreachable) {
        layers.dist[y] = next;
        queue.push_back(y);
      }
    });
  }
  layers.eccentricity = layers.dist[queue.back()];
  return layers;
}

}  // namespace

DistanceLayers bfs_layers(const Graph& g, Vertex root) {
  return bfs_impl(g.vertex_count(), root, [&g](Vertex x, auto&& visit) {
    for (Vertex y : g.neighbours(x)) visit(y);
  });
}

DistanceLayers bfs_layers(const Multigraph& g, Vertex root) {
  return bfs_impl(g.vertex_count(), root, [&g](Vertex x, auto&& visit) {
    for (const auto& inc : g.incidences(x)) visit(inc.neighbour);
  });
}

std::vector<std::uint32_t> component_labels(const Graph& g, std::size_t* count) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> label(n, kUnreachable);
  std::vector<Vertex> stack;
  std::uint32_t next = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (label[s] != kUnreachable) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : g.neighbours(x)) {
        if (label[y] == kUnreachable) {
          label[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  if (count != nullptr) *count = next;
  return label;
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::size_t count = 0;
  const auto label = component_labels(g, &count);
  std::vector<std::vector<Vertex>> comps(count);
  for (Vertex v = 0; v < g.vertex_count(); ++v) comps[label[v]].push_back(v);
  return comps;
}

bool is_connected(const Graph& g) {
  if (g.vertex_count() <= 1) return true;
  const auto layers = bfs_layers(g, 0);
  return std::find(layers.dist.begin(), layers.dist.end(), kUnreachable) == layers.dist.end();
}

std::vector<std::uint32_t> eccentricities(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> ecc(n, 0);
  std::vector<std::uint32_t> dist(n);
  std::vector<Vertex> queue(n);
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    std::size_t head = 0, tail = 0;
    dist[s] = 0;
    queue[tail++] = s;
    while (head < tail) {
      const Vertex x = queue[head++];
      for (Vertex y : g.neighbours(x)) {
        if (dist[y] == kUnreachable) {
          dist[y] = dist[x] + 1;
          queue[tail++] = y;
        }
      }
    }
    if (tail != n) throw InvalidInput("graph is disconnected");
    ecc[s] = dist[queue[tail - 1]];
  }
  return ecc;
}

std::uint32_t diameter(const Graph& g) {
  if (g.vertex_count() == 0) throw InvalidInput("diameter of the empty graph");
  const auto ecc = eccentricities(g);
  return *std::max_element(ecc.begin(), ecc.end());
}

EulerCircuit euler_circuit(const Multigraph& g) {
  const std::size_t n = g.vertex_count();
  EulerCircuit circuit;
  if (g.edge_count() == 0) return circuit;
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) % 2 != 0) {
      throw InvalidInput("vertex " + std::to_string(v) + " has odd degree " +
                         std::to_string(g.degree(v)));
    }
  }
  Vertex start = 0;
  while (g.degree(start) == 0) ++start;
  circuit.start = start;

  std::vector<bool> used(g.edge_count(), false);
  std::vector<std::size_t> cursor(n, 0);
  struct Frame {
    Vertex at;
    EdgeId via;
  };
  constexpr EdgeId kNone = std::numeric_limits<EdgeId>::max();
  std::vector<Frame> stack{{start, kNone}};
  circuit.edges.reserve(g.edge_count());
  while (!stack.empty()) {
    const Vertex v = stack.back().at;
    auto inc = g.incidences(v);
    while (cursor[v] < inc.size() && used[inc[cursor[v]].edge]) ++cursor[v];
    if (cursor[v] < inc.size()) {
      const auto& next = inc[cursor[v]];
      used[next.edge] = true;
      stack.push_back({next.neighbour, next.edge});
    } else {
      if (stack.back().via != kNone) circuit.edges.push_back(stack.back().via);
      stack.pop_back();
    }
  }
  if (circuit.edges.size() != g.edge_count()) {
    throw InvalidInput("edge set is disconnected; no Euler circuit");
  }
  std::reverse(circuit.edges.begin(), circuit.edges.end());
  return circuit;
}

namespace {

void check_expansion_input(const Graph& g) {
  if (g.vertex_count() < 2) {
    throw InvalidInput("edge expansion needs at least 2 vertices");
  }
}

}  // namespace

ExpansionResult edge_expansion_exact(const Graph& g, std::size_t cap) {
  check_expansion_input(g);
  const std::size_t n = g.vertex_count();
  if (n > cap || n > 62) {
    throw InfeasibleInstance("exact edge expansion needs n <= " + std::to_string(cap) +
                             " (n=" + std::to_string(n) +
                             "); use edge_expansion_upper_bound instead");
  }
  std::vector<std::uint64_t> adj(n, 0);
  std::vector<std::int64_t> deg(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u : g.neighbours(v)) adj[v] |= std::uint64_t{1} << u;
    deg[v] = static_cast<std::int64_t>(g.degree(v));
  }
  const std::size_t half = n / 2;
  std::uint64_t set = 0;
  std::int64_t size = 0;
  std::int64_t cut = 0;
  std::int64_t best_cut = -1;
  std::int64_t best_size = 1;
  std::uint64_t best_set = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int v = std::countr_zero(i);
    const std::uint64_t bit = std::uint64_t{1} << v;
    if ((set & bit) == 0) {
      cut += deg[v] - 2 * std::popcount(adj[v] & set);
      set |= bit;
      ++size;
    } else {
      set &= ~bit;
      --size;
      cut -= deg[v] - 2 * std::popcount(adj[v] & set);
    }
    if (size == 0 || static_cast<std::size_t>(size) > half) continue;
    // cut/size < best_cut/best_size
    if (best_cut < 0 || cut * best_size < best_cut * size) {
      best_cut = cut;
      best_size = size;
      best_set = set;
    }
  }
  ExpansionResult result{Rational(best_cut, best_size), {}};
  for (Vertex v = 0; v < n; ++v) {
    if ((best_set >> v) & 1U) result.witness.push_back(v);
  }
  return result;
}

ExpansionResult edge_expansion_upper_bound(const Graph& g, std::size_t samples,
                                           std::uint64_t seed) {
  check_expansion_input(g);
  const std::size_t n = g.vertex_count();
  const std::size_t half = n / 2;
  Rng rng(seed);
  std::vector<char> in(n, 0);
  std::optional<ExpansionResult> best;

  auto consider = [&](const std::vector<Vertex>& set) {
    if (set.empty() || set.size() > half) return;
    std::int64_t cut = 0;
    for (Vertex v : set) {
      for (Vertex u : g.neighbours(v)) cut += in[u] ? 0 : 1;
    }
    Rational ratio(cut, static_cast<std::int64_t>(set.size()));
    if (!best || ratio < best->value) {
      best = ExpansionResult{ratio, set};
      std::sort(best->witness.begin(), best->witness.end());
    }
  };

  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<Vertex> set;
    if (s % 2 == 0) {
      // Uniform subset of a uniform size.
      const std::size_t k = 1 + rng.below(half);
      for (std::size_t i = 0; i < k; ++i) {
        std::swap(perm[i], perm[i + rng.below(n - i)]);
      }
      set.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(k));
    } else {
      // Truncated BFS ball from a random root.
      const auto layers = bfs_layers(g, static_cast<Vertex>(rng.below(n)));
      std::vector<Vertex> order(n);
      std::iota(order.begin(), order.end(), Vertex{0});
      std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        return layers.dist[a] < layers.dist[b];
      });
      const std::size_t k = 1 + rng.below(half);
      set.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    }
    for (Vertex v : set) in[v] = 1;
    consider(set);
    for (Vertex v : set) in[v] = 0;
  }
  if (!best) {
    // samples == 0: fall back to a singleton, still a valid upper bound.
    in[0] = 1;
    consider({0});
  }
  return *best;
}

}  // namespace rainbow
