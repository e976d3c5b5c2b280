#include "rainbow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "rainbow/errors.hpp"
#include "rainbow/random_models.hpp"

namespace rainbow {

namespace {

using ColourMask = unsigned __int128;

ColourMask colour_bit(std::uint32_t c) { return ColourMask{1} << c; }

struct MaskHash {
  std::size_t operator()(ColourMask m) const {
    return std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(m) ^
                                      splitmix64(static_cast<std::uint64_t>(m >> 64)));
  }
};

void check_exact_guard(std::size_t n, std::size_t colours) {
  if (colours > 128) {
    throw InfeasibleInstance("exact rainbow search supports at most 128 colours");
  }
  if (n > kExactMaxVertices && colours > kExactMaxColours) {
    throw InfeasibleInstance("exact rainbow search needs n <= " + std::to_string(kExactMaxVertices) +
                             " or at most " + std::to_string(kExactMaxColours) +
                             " colours; use certificate or sampled mode");
  }
}

template <typename Extend>
VerifyReport exact_search(std::size_t n, Extend&& extend) {
  VerifyReport report;
  report.method = VerifyMethod::kExact;
  std::vector<std::unordered_set<ColourMask, MaskHash>> seen(n);
  std::vector<char> reached(n);
  struct State {
    Vertex at;
    ColourMask used;
  };
  std::vector<State> stack;
  for (Vertex s = 0; s < n; ++s) {
    for (auto& set : seen) set.clear();
    std::fill(reached.begin(), reached.end(), 0);
    reached[s] = 1;
    std::size_t reached_count = 1;
    stack.assign(1, {s, 0});
    seen[s].insert(0);
    while (!stack.empty() && reached_count < n) {
      const State st = stack.back();
      stack.pop_back();
      extend(s, st.at, st.used, [&](Vertex w, ColourMask next) {
        if (!reached[w]) {
          reached[w] = 1;
          ++reached_count;
        }
        if (seen[w].insert(next).second) stack.push_back({w, next});
      });
    }
    for (Vertex t = s + 1; t < n; ++t) {
      ++report.pairs_checked;
      if (!reached[t]) {
        report.verdict = false;
        report.witness = Witness{s, t, "no rainbow path exists between the pair", {}};
        return report;
      }
    }
  }
  return report;
}

std::vector<Vertex> remove_loops(const std::vector<Vertex>& walk) {
  std::vector<Vertex> path;
  std::unordered_map<Vertex, std::size_t> position;
  for (Vertex v : walk) {
    auto it = position.find(v);
    if (it != position.end()) {
      for (std::size_t i = it->second + 1; i < path.size(); ++i) position.erase(path[i]);
      path.resize(it->second + 1);
    } else {
      position[v] = path.size();
      path.push_back(v);
    }
  }
  return path;
}

std::vector<std::uint32_t> bfs_in(const Graph& g, const std::vector<char>& allowed_edge_or_vertex,
                                  Vertex root, bool by_vertex, const std::vector<char>& edge_allowed) {
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreachable);
  std::vector<Vertex> queue{root};
  dist[root] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex x = queue[head];
    const auto nb = g.neighbours(x);
    const auto ids = g.incident_edges(x);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const bool ok = by_vertex ? allowed_edge_or_vertex[nb[i]] != 0 : edge_allowed[ids[i]] != 0;
      if (ok && dist[nb[i]] == kUnreachable) {
        dist[nb[i]] = dist[x] + 1;
        queue.push_back(nb[i]);
      }
    }
  }
  return dist;
}

void require_sorted_unique(const std::vector<std::uint32_t>& ids, std::size_t limit, const char* name) {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] >= limit || (i > 0 && ids[i] <= ids[i - 1])) {
      throw CertificateError(std::string(name) + " is not a sorted list of valid ids");
    }
  }
}

void require_distinct_palette(std::vector<int> colours) {
  colours.erase(std::remove(colours.begin(), colours.end(), kUnusedColour), colours.end());
  std::sort(colours.begin(), colours.end());
  if (std::adjacent_find(colours.begin(), colours.end()) != colours.end()) {
    throw CertificateError("palettes and shared colours overlap");
  }
}

std::vector<Vertex> edge_parents(const Graph& g, const EdgeSubset& edges,
                                 const std::vector<std::uint32_t>& layers) {
  std::vector<Vertex> parent(g.vertex_count(), kUnreachable);
  for (EdgeId id : edges) {
    Edge e = g.edge(id);
    for (int flip = 0; flip < 2; ++flip, std::swap(e.u, e.v)) {
      if (layers[e.v] == layers[e.u] + 1 && e.u < parent[e.v]) parent[e.v] = e.u;
    }
  }
  return parent;
}

std::vector<Vertex> walk_up(Vertex x, Vertex root, const std::vector<Vertex>& parent) {
  std::vector<Vertex> path{x};
  while (x != root) {
    x = parent[x];
    if (x == kUnreachable) throw CertificateError("certificate layers do not reach the root");
    path.push_back(x);
  }
  return path;
}

void validate_edge_certificate(const Graph& g, const EdgeColouring& colouring) {
  if (!colouring.certificate) throw CertificateError("colouring carries no certificate");
  const auto& cert = *colouring.certificate;
  const std::size_t n = g.vertex_count();
  const std::size_t m = g.edge_count();
  if (colouring.colour.size() != m) throw CertificateError("colouring does not cover every edge");
  if (cert.root >= n) throw CertificateError("certificate root out of range");
  if (cert.layers1.size() != n || cert.layers2.size() != n) {
    throw CertificateError("certificate layer arrays have the wrong length");
  }
  require_sorted_unique(cert.edges1, m, "edges1");
  require_sorted_unique(cert.edges2, m, "edges2");
  EdgeSubset shared;
  std::set_intersection(cert.edges1.begin(), cert.edges1.end(), cert.edges2.begin(),
                        cert.edges2.end(), std::back_inserter(shared));
  if (shared != cert.shared || cert.shared_colours.size() != shared.size()) {
    throw CertificateError("shared edge list does not match edges1 and edges2");
  }
  for (int side = 1; side <= 2; ++side) {
    const auto& edges = side == 1 ? cert.edges1 : cert.edges2;
    const auto& layers = side == 1 ? cert.layers1 : cert.layers2;
    std::vector<char> allowed(m, 0);
    for (EdgeId id : edges) allowed[id] = 1;
    const auto dist = bfs_in(g, {}, cert.root, false, allowed);
    for (Vertex v = 0; v < n; ++v) {
      if (dist[v] == kUnreachable) throw CertificateError("certificate subgraph is not spanning-connected");
      if (dist[v] != layers[v]) {
        throw CertificateError("layers" + std::to_string(side) + " inconsistent at vertex " +
                               std::to_string(v));
      }
    }
  }
  std::vector<std::size_t> uses(colouring.colours_used(), 0);
  for (auto c : colouring.colour) ++uses[c];
  for (std::size_t i = 0; i < shared.size(); ++i) {
    const auto c = colouring.colour[shared[i]];
    if (static_cast<int>(c) != cert.shared_colours[i] || uses[c] != 1) {
      throw CertificateError("shared edge colours are not unique");
    }
  }
  std::vector<char> in_shared(m, 0);
  for (EdgeId id : shared) in_shared[id] = 1;
  for (int side = 1; side <= 2; ++side) {
    const auto& edges = side == 1 ? cert.edges1 : cert.edges2;
    const auto& layers = side == 1 ? cert.layers1 : cert.layers2;
    const auto& palette = side == 1 ? cert.palette_a : cert.palette_b;
    for (EdgeId id : edges) {
      if (in_shared[id]) continue;
      const Edge& e = g.edge(id);
      const auto hi = std::max(layers[e.u], layers[e.v]);
      if (hi != std::min(layers[e.u], layers[e.v]) + 1) continue;
      if (hi >= palette.size() || palette[hi] != static_cast<int>(colouring.colour[id])) {
        throw CertificateError("edge colour does not match its layer palette");
      }
    }
  }
  std::vector<int> all(cert.palette_a.begin() + (cert.palette_a.empty() ? 0 : 1), cert.palette_a.end());
  all.insert(all.end(), cert.palette_b.begin() + (cert.palette_b.empty() ? 0 : 1), cert.palette_b.end());
  all.insert(all.end(), cert.shared_colours.begin(), cert.shared_colours.end());
  require_distinct_palette(all);
}

void validate_vertex_certificate(const Graph& g, const VertexColouring& colouring) {
  if (!colouring.certificate) throw CertificateError("colouring carries no certificate");
  const auto& cert = *colouring.certificate;
  const std::size_t n = g.vertex_count();
  if (colouring.colour.size() != n) throw CertificateError("colouring does not cover every vertex");
  require_sorted_unique(cert.side1, n, "side1");
  require_sorted_unique(cert.side2, n, "side2");
  if (cert.layers1.size() != n || cert.layers2.size() != n) {
    throw CertificateError("certificate layer arrays have the wrong length");
  }
  std::vector<char> in1(n, 0), in2(n, 0);
  for (Vertex v : cert.side1) in1[v] = 1;
  for (Vertex v : cert.side2) in2[v] = 1;
  for (Vertex v = 0; v < n; ++v) {
    if (!in1[v] && !in2[v]) throw CertificateError("sides do not cover every vertex");
  }
  std::vector<Vertex> shared;
  std::set_intersection(cert.side1.begin(), cert.side1.end(), cert.side2.begin(), cert.side2.end(),
                        std::back_inserter(shared));
  if (shared != cert.shared || cert.shared_colours.size() != shared.size()) {
    throw CertificateError("shared vertex list does not match the sides");
  }
  if (cert.root1 >= n || cert.root2 >= n || !in1[cert.root1] || !in2[cert.root2] ||
      !g.has_edge(cert.root1, cert.root2)) {
    throw CertificateError("roots must be adjacent with root1 in side1 and root2 in side2");
  }
  for (int side = 1; side <= 2; ++side) {
    const auto& in = side == 1 ? in1 : in2;
    const auto& layers = side == 1 ? cert.layers1 : cert.layers2;
    const auto dist = bfs_in(g, in, side == 1 ? cert.root1 : cert.root2, true, {});
    for (Vertex v = 0; v < n; ++v) {
      const auto expected = in[v] ? dist[v] : kUnreachable;
      if (in[v] && dist[v] == kUnreachable) throw CertificateError("a side does not induce a connected graph");
      if (layers[v] != expected) {
        throw CertificateError("layers" + std::to_string(side) + " inconsistent at vertex " +
                               std::to_string(v));
      }
    }
  }
  std::vector<std::size_t> uses(colouring.colours_used(), 0);
  for (auto c : colouring.colour) ++uses[c];
  std::vector<char> is_shared(n, 0);
  for (std::size_t i = 0; i < shared.size(); ++i) {
    const auto c = colouring.colour[shared[i]];
    if (static_cast<int>(c) != cert.shared_colours[i] || uses[c] != 1) {
      throw CertificateError("shared vertex colours are not unique");
    }
    is_shared[shared[i]] = 1;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (is_shared[v]) continue;
    const auto& palette = in1[v] ? cert.palette_a : cert.palette_b;
    const auto layer = in1[v] ? cert.layers1[v] : cert.layers2[v];
    if (layer >= palette.size() || palette[layer] != static_cast<int>(colouring.colour[v])) {
      throw CertificateError("vertex colour does not match its layer palette");
    }
  }
  std::vector<int> all(cert.palette_a);
  all.insert(all.end(), cert.palette_b.begin(), cert.palette_b.end());
  all.insert(all.end(), cert.shared_colours.begin(), cert.shared_colours.end());
  require_distinct_palette(all);
}

std::vector<Vertex> vertex_parents(const Graph& g, const std::vector<std::uint32_t>& layers) {
  std::vector<Vertex> parent(g.vertex_count(), kUnreachable);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (layers[v] == kUnreachable || layers[v] == 0) continue;
    for (Vertex u : g.neighbours(v)) {
      if (layers[u] + 1 == layers[v]) {
        parent[v] = u;  // neighbours are sorted: first match is the smallest
        break;
      }
    }
  }
  return parent;
}

Vertex smallest_neighbour_in(const Graph& g, Vertex v, const std::vector<std::uint32_t>& layers) {
  for (Vertex u : g.neighbours(v)) {
    if (layers[u] != kUnreachable) return u;
  }
  throw CertificateError("vertex " + std::to_string(v) + " has no neighbour on the other side");
}

std::vector<Vertex> join_paths(const std::vector<Vertex>& p1, const std::vector<Vertex>& p2) {
  // p1: a .. root1, p2: b .. root2. Switch at the earliest vertex of p1 on p2.
  std::unordered_map<Vertex, std::size_t> on_p2;
  for (std::size_t k = 0; k < p2.size(); ++k) on_p2.emplace(p2[k], k);
  std::vector<Vertex> walk;
  for (std::size_t i = 0; i < p1.size(); ++i) {
    walk.push_back(p1[i]);
    auto it = on_p2.find(p1[i]);
    if (it != on_p2.end()) {
      for (std::size_t k = it->second; k-- > 0;) walk.push_back(p2[k]);
      return walk;
    }
  }
  for (std::size_t k = p2.size(); k-- > 0;) walk.push_back(p2[k]);
  return walk;
}

template <typename PathOf, typename PathCheck>
VerifyReport replay_pairs(const Graph& g, PairSelection pairs, PathOf&& path_of, PathCheck&& check) {
  VerifyReport report;
  report.method = pairs.all ? VerifyMethod::kCertificate : VerifyMethod::kSampled;
  const std::size_t n = g.vertex_count();
  auto run = [&](Vertex x, Vertex y) {
    ++report.pairs_checked;
    auto path = path_of(x, y);
    std::string why = check(path);
    if (!why.empty()) {
      report.verdict = false;
      report.witness = Witness{x, y, why, std::move(path)};
      return false;
    }
    return true;
  };
  if (pairs.all) {
    for (Vertex x = 0; x < n; ++x) {
      for (Vertex y = x + 1; y < n; ++y) {
        if (!run(x, y)) return report;
      }
    }
  } else if (n >= 2) {
    Rng rng(pairs.seed);
    for (std::size_t i = 0; i < pairs.count; ++i) {
      const auto x = static_cast<Vertex>(rng.below(n));
      auto y = static_cast<Vertex>(rng.below(n - 1));
      if (y >= x) ++y;
      if (!run(std::min(x, y), std::max(x, y))) return report;
    }
  }
  return report;
}

double wilson_bound(double p, double trials, double z, int sign) {
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * trials)) / (1 + z2 / trials);
  const double half = z * std::sqrt(p * (1 - p) / trials + z2 / (4 * trials * trials)) / (1 + z2 / trials);
  return std::clamp(centre + sign * half, 0.0, 1.0);
}

MonteCarloReport summarize(std::size_t hits, std::size_t trials, double bound) {
  MonteCarloReport r;
  r.trials = trials;
  r.hits = hits;
  r.estimate = static_cast<double>(hits) / static_cast<double>(trials);
  r.sigma = std::sqrt(r.estimate * (1 - r.estimate) / static_cast<double>(trials));
  r.ci_low = wilson_bound(r.estimate, static_cast<double>(trials), 3.0, -1);
  r.ci_high = wilson_bound(r.estimate, static_cast<double>(trials), 3.0, +1);
  r.bound = bound;
  r.consistent = !(r.estimate - 3 * r.sigma > bound);
  return r;
}

void check_pair_list(std::size_t n, const std::vector<Edge>& e0) {
  std::vector<Edge> sorted;
  for (const Edge& e : e0) {
    if (e.u >= n || e.v >= n || e.u == e.v) throw InvalidInput("E0 must hold pairs of distinct vertices");
    sorted.push_back(normalized(e));
  }
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidInput("E0 contains a repeated pair");
  }
}

bool contains_all(const PairingState& p, const std::vector<Edge>& e0) {
  for (const Edge& e : e0) {
    bool found = false;
    for (std::uint32_t pt = static_cast<std::uint32_t>(e.u * p.r); pt < (e.u + 1) * p.r && !found; ++pt) {
      found = p.cell(p.mate[pt]) == e.v;
    }
    if (!found) return false;
  }
  return true;
}

void check_gap_indices(std::size_t n, std::size_t m, const std::vector<std::size_t>& indices) {
  if (m == 0 || 2 * m > n) throw InvalidInput("gap tail needs 1 <= 2m <= n");
  auto sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
      (!sorted.empty() && sorted.back() >= 2 * m)) {
    throw InvalidInput("indices must be distinct values in 0..2m-1");
  }
}

// Y_i from b_1 < ... < b_2m (stored 0-indexed in `b`).
std::size_t gap(const std::vector<std::size_t>& b, std::size_t i) {
  return i == 0 ? b[0] : b[i] - b[i - 1];
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) acc = acc * static_cast<long double>(n - k + i) / i;
  return acc > 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(std::llround(acc));
}

std::vector<Vertex> edge_path(const EdgeCertificate& cert, const std::vector<Vertex>& parent1,
                              const std::vector<Vertex>& parent2, Vertex x, Vertex y) {
  const auto p1 = walk_up(x, cert.root, parent1);
  const auto p2 = walk_up(y, cert.root, parent2);
  // Earliest edge of P1 that P2 also uses.
  std::unordered_map<std::uint64_t, std::size_t> p2_edges;
  auto key = [](Vertex a, Vertex b) {
    return (static_cast<std::uint64_t>(std::min(a, b)) << 32) | std::max(a, b);
  };
  for (std::size_t k = 0; k + 1 < p2.size(); ++k) p2_edges.emplace(key(p2[k], p2[k + 1]), k);
  std::vector<Vertex> walk;
  for (std::size_t i = 0; i + 1 < p1.size(); ++i) {
    walk.push_back(p1[i]);
    auto it = p2_edges.find(key(p1[i], p1[i + 1]));
    if (it == p2_edges.end()) continue;
    const std::size_t k = it->second;
    if (p1[i + 1] == p2[k]) {
      // Opposite directions: cross the edge, then follow P2 back to y.
      walk.push_back(p1[i + 1]);
      for (std::size_t j = k; j-- > 0;) walk.push_back(p2[j]);
    } else {
      // Same direction: p1[i] == p2[k]; leave P1 there.
      for (std::size_t j = k; j-- > 0;) walk.push_back(p2[j]);
    }
    return remove_loops(walk);
  }
  walk.push_back(p1.back());
  for (std::size_t j = p2.size() - 1; j-- > 0;) walk.push_back(p2[j]);
  return remove_loops(walk);
}

std::vector<Vertex> vertex_path(const Graph& g, const VertexCertificate& cert, const std::vector<Vertex>& parent1,
                                const std::vector<Vertex>& parent2, Vertex x, Vertex y) {
  const auto& l1 = cert.layers1;
  const auto& l2 = cert.layers2;
  const bool x1 = l1[x] != kUnreachable, x2 = l2[x] != kUnreachable;
  const bool y1 = l1[y] != kUnreachable, y2 = l2[y] != kUnreachable;
  Vertex a, b;
  std::optional<Vertex> prefix, suffix;
  bool reversed = false;
  if (x1 && y2) {
    a = x;
    b = y;
  } else if (y1 && x2) {
    a = y;
    b = x;
    reversed = true;
  } else if (x1 && y1) {
    a = x;
    b = smallest_neighbour_in(g, y, l2);
    suffix = y;
  } else {
    a = smallest_neighbour_in(g, x, l1);
    b = y;
    prefix = x;
  }
  const auto p1 = walk_up(a, cert.root1, parent1);
  const auto p2 = walk_up(b, cert.root2, parent2);
  std::vector<Vertex> walk;
  if (prefix) walk.push_back(*prefix);
  const auto joined = join_paths(p1, p2);
  walk.insert(walk.end(), joined.begin(), joined.end());
  if (suffix) walk.push_back(*suffix);
  if (reversed) std::reverse(walk.begin(), walk.end());
  return remove_loops(walk);
}

}  // namespace

const char* to_string(VerifyMethod method) {
  switch (method) {
    case VerifyMethod::kExact:
      return "exact";
    case VerifyMethod::kCertificate:
      return "certificate";
    case VerifyMethod::kSampled:
      return "sampled";
  }
  return "?";
}

VerifyReport is_rainbow_edge_connected_exact(const Graph& g, const EdgeColouring& colouring) {
  if (colouring.colour.size() != g.edge_count()) {
    throw InvalidInput("colouring does not match the edge count");
  }
  check_exact_guard(g.vertex_count(), colouring.colours_used());
  return exact_search(g.vertex_count(), [&](Vertex, Vertex v, ColourMask used, auto&& emit) {
    const auto nb = g.neighbours(v);
    const auto ids = g.incident_edges(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const ColourMask bit = colour_bit(colouring.colour[ids[i]]);
      if ((used & bit) == 0) emit(nb[i], used | bit);
    }
  });
}

VerifyReport is_rainbow_vertex_connected_exact(const Graph& g, const VertexColouring& colouring) {
  if (colouring.colour.size() != g.vertex_count()) {
    throw InvalidInput("colouring does not match the vertex count");
  }
  check_exact_guard(g.vertex_count(), colouring.colours_used());
  return exact_search(g.vertex_count(), [&](Vertex s, Vertex v, ColourMask used, auto&& emit) {
    // Moving on from v makes v internal unless it is the source.
    ColourMask next = used;
    if (v != s) {
      const ColourMask bit = colour_bit(colouring.colour[v]);
      if (used & bit) return;
      next |= bit;
    }
    for (Vertex w : g.neighbours(v)) {
      if (w != s) emit(w, next);
    }
  });
}

std::vector<Vertex> certificate_path(const Graph& g, const EdgeCertificate& cert, Vertex x, Vertex y) {
  return edge_path(cert, edge_parents(g, cert.edges1, cert.layers1), edge_parents(g, cert.edges2, cert.layers2), x,
                   y);
}

std::vector<Vertex> certificate_path(const Graph& g, const VertexCertificate& cert, Vertex x, Vertex y) {
  return vertex_path(g, cert, vertex_parents(g, cert.layers1), vertex_parents(g, cert.layers2), x, y);
}

VerifyReport check_certificate(const Graph& g, const EdgeColouring& colouring, PairSelection pairs) {
  validate_edge_certificate(g, colouring);
  const auto& cert = *colouring.certificate;
  const auto parent1 = edge_parents(g, cert.edges1, cert.layers1);
  const auto parent2 = edge_parents(g, cert.edges2, cert.layers2);
  return replay_pairs(
      g, pairs, [&](Vertex x, Vertex y) { return edge_path(cert, parent1, parent2, x, y); },
      [&](const std::vector<Vertex>& path) -> std::string {
        std::vector<std::uint32_t> seen;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
          auto id = g.find_edge(path[i], path[i + 1]);
          if (!id) return "constructed path uses a non-edge";
          seen.push_back(colouring.colour[*id]);
        }
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
          return "constructed path repeats an edge colour";
        }
        return {};
      });
}

VerifyReport check_certificate(const Graph& g, const VertexColouring& colouring, PairSelection pairs) {
  validate_vertex_certificate(g, colouring);
  const auto& cert = *colouring.certificate;
  const auto parent1 = vertex_parents(g, cert.layers1);
  const auto parent2 = vertex_parents(g, cert.layers2);
  return replay_pairs(
      g, pairs, [&](Vertex x, Vertex y) { return vertex_path(g, cert, parent1, parent2, x, y); },
      [&](const std::vector<Vertex>& path) -> std::string {
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
          if (!g.has_edge(path[i], path[i + 1])) return "constructed path uses a non-edge";
        }
        std::vector<std::uint32_t> seen;
        for (std::size_t i = 1; i + 1 < path.size(); ++i) seen.push_back(colouring.colour[path[i]]);
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
          return "constructed path repeats an internal vertex colour";
        }
        return {};
      });
}

DensityAudit density_audit(const Graph& g, double d, std::size_t max_size, std::size_t samples,
                           Seed seed, std::uint64_t exhaustive_limit) {
  const std::size_t n = g.vertex_count();
  max_size = std::min(max_size, n);
  DensityAudit audit;
  audit.worst_excess = -std::numeric_limits<double>::infinity();
  std::vector<char> in(n, 0);
  std::vector<Vertex> current;

  auto consider = [&](std::size_t edges) {
    ++audit.sets_checked;
    const double s = static_cast<double>(current.size());
    const double excess = static_cast<double>(edges) - d * s / 2.0;
    if (2.0 * static_cast<double>(edges) >= d * s) audit.verdict = false;
    auto sorted = current;
    std::sort(sorted.begin(), sorted.end());
    const bool better =
        excess > audit.worst_excess + 1e-12 ||
        (std::abs(excess - audit.worst_excess) <= 1e-12 &&
         (sorted.size() < audit.worst_set.size() ||
          (sorted.size() == audit.worst_set.size() && sorted < audit.worst_set)));
    if (better) {
      audit.worst_excess = excess;
      audit.worst_edges = edges;
      audit.worst_set = std::move(sorted);
    }
  };
  auto edges_into_current = [&](Vertex v) {
    std::size_t count = 0;
    for (Vertex u : g.neighbours(v)) count += in[u] ? 1 : 0;
    return count;
  };

  std::uint64_t candidates = 0;
  for (std::size_t k = 1; k <= max_size && candidates <= exhaustive_limit; ++k) {
    const auto c = binomial(n, k);
    candidates = c > exhaustive_limit ? exhaustive_limit + 1 : candidates + c;
  }
  audit.exhaustive = max_size <= kDensityExhaustiveMaxSize && candidates <= exhaustive_limit;

  if (audit.exhaustive) {
    auto dfs = [&](auto&& self, Vertex start, std::size_t edges) -> void {
      for (Vertex v = start; v < n; ++v) {
        const std::size_t grown = edges + edges_into_current(v);
        in[v] = 1;
        current.push_back(v);
        consider(grown);
        if (current.size() < max_size) self(self, v + 1, grown);
        current.pop_back();
        in[v] = 0;
      }
    };
    dfs(dfs, 0, 0);
    return audit;
  }

  Rng rng(seed);
  for (std::size_t s = 0; s < samples && n > 0; ++s) {
    const std::size_t target = 1 + rng.below(max_size);
    std::vector<Vertex> frontier;
    std::size_t edges = 0;
    auto add = [&](Vertex v) {
      edges += edges_into_current(v);
      in[v] = 1;
      current.push_back(v);
      consider(edges);
      for (Vertex u : g.neighbours(v)) {
        if (!in[u]) frontier.push_back(u);
      }
    };
    add(static_cast<Vertex>(rng.below(n)));
    while (current.size() < target) {
      frontier.erase(std::remove_if(frontier.begin(), frontier.end(), [&](Vertex u) { return in[u] != 0; }),
                     frontier.end());
      if (frontier.empty()) {
        Vertex v;
        do {
          v = static_cast<Vertex>(rng.below(n));
        } while (in[v]);
        add(v);
      } else {
        add(frontier[rng.below(frontier.size())]);
      }
    }
    for (Vertex v : current) in[v] = 0;
    current.clear();
  }
  return audit;
}

MonteCarloReport mc_pairing_edge_probability(std::size_t n, std::size_t r, const std::vector<Edge>& e0,
                                             std::size_t trials, Seed seed) {
  check_pair_list(n, e0);
  if (4 * e0.size() > n * r) throw InvalidInput("|E0| must be at most nr/4");
  if (trials < 10'000) throw InvalidInput("pairing Monte Carlo needs at least 10^4 trials");
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    hits += contains_all(sample_pairing(n, r, derive_seed(seed, {t})), e0) ? 1 : 0;
  }
  const double bound = 2.0 * std::pow(2.0 * static_cast<double>(r) / static_cast<double>(n),
                                      static_cast<double>(e0.size()));
  return summarize(hits, trials, bound);
}

Rational exact_pairing_edge_probability(std::size_t n, std::size_t r, const std::vector<Edge>& e0) {
  check_pair_list(n, e0);
  const std::size_t total = n * r;
  if (total % 2 != 0) throw InvalidInput("n*r must be even");
  if (total > 16) throw InfeasibleInstance("pairing enumeration limited to n*r <= 16");
  PairingState state{n, r, std::vector<std::uint32_t>(total, kUnreachable)};
  std::int64_t hits = 0, count = 0;
  auto rec = [&](auto&& self) -> void {
    std::uint32_t first = 0;
    while (first < total && state.mate[first] != kUnreachable) ++first;
    if (first == total) {
      ++count;
      hits += contains_all(state, e0) ? 1 : 0;
      return;
    }
    for (std::uint32_t other = first + 1; other < total; ++other) {
      if (state.mate[other] != kUnreachable) continue;
      state.mate[first] = other;
      state.mate[other] = first;
      self(self);
      state.mate[first] = state.mate[other] = kUnreachable;
    }
  };
  rec(rec);
  return Rational(hits, count);
}

GapTailReport mc_gap_tail(std::size_t n, std::size_t m, const std::vector<std::size_t>& indices,
                          std::size_t trials, Seed seed) {
  check_gap_indices(n, m, indices);
  if (trials == 0) throw InvalidInput("need at least one trial");
  const double s = static_cast<double>(indices.size());
  const double ln_n = std::log(static_cast<double>(n));
  const double log2_n = std::log2(static_cast<double>(n));
  Rng rng(seed);
  std::vector<std::size_t> b;
  std::size_t hits = 0, over_ln = 0, over_log2 = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    // Selection sampling: a uniform 2m-subset, produced in sorted order.
    b.clear();
    std::size_t need = 2 * m;
    for (std::size_t v = 1; v <= n && need > 0; ++v) {
      if (rng.below(n - v + 1) < need) {
        b.push_back(v);
        --need;
      }
    }
    std::size_t sum = 0;
    for (std::size_t i : indices) sum += gap(b, i);
    hits += static_cast<double>(sum) > 10.0 * s ? 1 : 0;
    const auto last = static_cast<double>(n - b.back());
    over_ln += last > ln_n ? 1 : 0;
    over_log2 += last > log2_n ? 1 : 0;
  }
  GapTailReport report;
  report.tail = summarize(hits, trials, std::exp(-2.0 * s));
  report.last_gap_over_ln = static_cast<double>(over_ln) / static_cast<double>(trials);
  report.last_gap_over_log2 = static_cast<double>(over_log2) / static_cast<double>(trials);
  return report;
}

ExactGapTail exact_gap_tail(std::size_t n, std::size_t m, const std::vector<std::size_t>& indices) {
  check_gap_indices(n, m, indices);
  if (binomial(n, 2 * m) > 10'000'000) throw InfeasibleInstance("too many subsets to enumerate");
  const double s = static_cast<double>(indices.size());
  const double ln_n = std::log(static_cast<double>(n));
  const double log2_n = std::log2(static_cast<double>(n));
  std::vector<std::size_t> b(2 * m);
  std::iota(b.begin(), b.end(), std::size_t{1});
  std::int64_t count = 0, hits = 0, over_ln = 0, over_log2 = 0;
  while (true) {
    ++count;
    std::size_t sum = 0;
    for (std::size_t i : indices) sum += gap(b, i);
    hits += static_cast<double>(sum) > 10.0 * s ? 1 : 0;
    const auto last = static_cast<double>(n - b.back());
    over_ln += last > ln_n ? 1 : 0;
    over_log2 += last > log2_n ? 1 : 0;
    // Next combination in lexicographic order.
    std::size_t i = 2 * m;
    while (i > 0 && b[i - 1] == n - (2 * m - i)) --i;
    if (i == 0) break;
    ++b[i - 1];
    for (std::size_t j = i; j < 2 * m; ++j) b[j] = b[j - 1] + 1;
  }
  return {Rational(hits, count), Rational(over_ln, count), Rational(over_log2, count),
          std::exp(-2.0 * s)};
}

const char* to_string(DiameterModel model) {
  switch (model) {
    case DiameterModel::kCyclePerfectMatching:
      return "cycle-perfect-matching";
    case DiameterModel::kCycleQuarterMatching:
      return "cycle-quarter-matching";
    case DiameterModel::kRegular:
      return "regular";
  }
  return "?";
}

double median(std::vector<double> values) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
}

Graph sample_diameter_model(DiameterModel model, std::size_t n, std::size_t r, Seed seed) {
  switch (model) {
    case DiameterModel::kCyclePerfectMatching:
      return cycle_plus_matching(n, n / 2, seed);
    case DiameterModel::kCycleQuarterMatching:
      return subdivide_cycle_model(n, seed).graph;
    case DiameterModel::kRegular:
      for (std::uint64_t round = 0;; ++round) {
        Graph g = sample_simple_regular(n, r, derive_seed(seed, {round}));
        if (is_connected(g)) return g;
      }
  }
  throw InvalidInput("unknown diameter model");
}

std::vector<DiameterRow> diameter_statistics(DiameterModel model, const std::vector<std::size_t>& n_grid,
                                             std::size_t trials, Seed seed, std::size_t r) {
  std::vector<DiameterRow> rows;
  for (std::size_t n : n_grid) {
    std::vector<double> diams;
    for (std::size_t t = 0; t < trials; ++t) {
      diams.push_back(diameter(sample_diameter_model(model, n, r, derive_seed(seed, {n, t}))));
    }
    DiameterRow row;
    row.model = model;
    row.n = n;
    row.trials = trials;
    if (!diams.empty()) {
      row.min = static_cast<std::uint32_t>(*std::min_element(diams.begin(), diams.end()));
      row.max = static_cast<std::uint32_t>(*std::max_element(diams.begin(), diams.end()));
      row.median = median(diams);
    }
    row.median_over_log2 = row.median / std::log2(static_cast<double>(n));
    row.median_over_ln = row.median / std::log(static_cast<double>(n));
    rows.push_back(row);
  }
  return rows;
}

std::map<std::uint32_t, std::size_t> exact_cycle_matching_diameters(std::size_t n) {
  if (n % 2 != 0 || n < 4 || n > 14) throw InvalidInput("exact enumeration needs even 4 <= n <= 14");
  std::map<std::uint32_t, std::size_t> histogram;
  std::vector<Vertex> mate(n, kUnreachable);
  auto is_cycle_edge = [n](Vertex a, Vertex b) {
    const auto d = a > b ? a - b : b - a;
    return d == 1 || d == n - 1;
  };
  auto rec = [&](auto&& self) -> void {
    Vertex first = 0;
    while (first < n && mate[first] != kUnreachable) ++first;
    if (first == n) {
      std::vector<Edge> edges;
      for (Vertex v = 0; v < n; ++v) {
        edges.push_back({v, static_cast<Vertex>((v + 1) % n)});
        if (v < mate[v]) edges.push_back({v, mate[v]});
      }
      ++histogram[diameter(build_graph(n, edges))];
      return;
    }
    for (Vertex other = first + 1; other < n; ++other) {
      if (mate[other] != kUnreachable || is_cycle_edge(first, other)) continue;
      mate[first] = other;
      mate[other] = first;
      self(self);
      mate[first] = mate[other] = kUnreachable;
    }
  };
  rec(rec);
  return histogram;
}

}  // namespace rainbow
