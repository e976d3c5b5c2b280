#include "rainbow/edge_rainbow.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rainbow/random_models.hpp"

namespace rainbow {

namespace {

EdgeSubset normalized_subset(const Graph& g, EdgeSubset s, const char* name) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (!s.empty() && s.back() >= g.edge_count()) {
    throw InvalidInput(std::string(name) + " contains an edge id outside the graph");
  }
  return s;
}

EdgeSubset intersect(const EdgeSubset& a, const EdgeSubset& b) {
  EdgeSubset out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

EdgeSubset merge(const EdgeSubset& a, const EdgeSubset& b) {
  EdgeSubset out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::uint32_t> side_eccentricities(const Graph& side, const char* name) {
  try {
    return eccentricities(side);
  } catch (const InvalidInput&) {
    throw InvalidInput(std::string(name) + " is not a connected spanning subgraph");
  }
}

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0U); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
  std::vector<std::uint32_t> parent;
};

// Cyclic edge order of a Hamiltonian cycle, walking from vertex 0 towards
// its smaller neighbour.
std::vector<EdgeId> cycle_order(const Graph& union_graph, const EdgeSubset& cycle) {
  const Graph c = spanning_subgraph(union_graph, cycle);
  std::vector<EdgeId> order;
  Vertex prev = 0;
  Vertex cur = c.neighbours(0).front();
  order.push_back(*union_graph.find_edge(prev, cur));
  while (cur != 0) {
    const auto nb = c.neighbours(cur);
    const Vertex next = nb[0] == prev ? nb[1] : nb[0];
    order.push_back(*union_graph.find_edge(cur, next));
    prev = cur;
    cur = next;
  }
  return order;
}

// Edge-disjoint union of two graphs with each part's edge ids.
OplusResult disjoint_pair(const Graph& a, const Graph& b) {
  std::vector<Edge> all(a.edges().begin(), a.edges().end());
  all.insert(all.end(), b.edges().begin(), b.edges().end());
  OplusResult out;
  out.graph = build_graph(a.vertex_count(), all);
  out.attempts = 1;
  for (const Graph* part : {&a, &b}) {
    EdgeSubset ids;
    for (const Edge& e : part->edges()) ids.push_back(*out.graph.find_edge(e.u, e.v));
    std::sort(ids.begin(), ids.end());
    out.parts.push_back(std::move(ids));
  }
  return out;
}

}  // namespace

EdgeSubset EdgeSplit::shared() const {
  EdgeSubset a = edges1, b = edges2;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return intersect(a, b);
}

std::size_t EdgeColouring::colours_used() const {
  if (colour.empty()) return 0;
  return *std::max_element(colour.begin(), colour.end()) + std::size_t{1};
}

LayeredEdgeColouring split_colouring(const Graph& g, const EdgeSplit& split) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw InvalidInput("split colouring of the empty graph");
  const EdgeSubset e1 = normalized_subset(g, split.edges1, "edges1");
  const EdgeSubset e2 = normalized_subset(g, split.edges2, "edges2");
  const Graph g1 = spanning_subgraph(g, e1);
  const Graph g2 = spanning_subgraph(g, e2);
  const auto ecc1 = side_eccentricities(g1, "edges1");
  const auto ecc2 = side_eccentricities(g2, "edges2");

  Vertex root = 0;
  for (Vertex v = 1; v < n; ++v) {
    if (ecc1[v] + ecc2[v] < ecc1[root] + ecc2[root]) root = v;
  }
  const auto layers1 = bfs_layers(g1, root);
  const auto layers2 = bfs_layers(g2, root);
  const EdgeSubset shared = intersect(e1, e2);
  const std::size_t depth1 = layers1.eccentricity;
  const std::size_t depth2 = layers2.eccentricity;

  // Raw palette: shared 0..|B|-1, then a_1..a_depth1, then b_1..b_depth2.
  const std::size_t base_a = shared.size();
  const std::size_t base_b = base_a + depth1;
  std::vector<std::uint8_t> member(g.edge_count(), 0);
  for (EdgeId id : e1) member[id] |= 1;
  for (EdgeId id : e2) member[id] |= 2;
  std::vector<std::size_t> raw(g.edge_count(), base_a);
  for (std::size_t i = 0; i < shared.size(); ++i) raw[shared[i]] = i;
  auto layered_colour = [](const std::vector<std::uint32_t>& dist, const Edge& e,
                           std::size_t base) {
    const auto lo = std::min(dist[e.u], dist[e.v]);
    const auto hi = std::max(dist[e.u], dist[e.v]);
    return hi == lo + 1 ? base + hi - 1 : base;  // intra-layer edges reuse the first colour
  };
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    if (member[id] == 1) raw[id] = layered_colour(layers1.dist, e, base_a);
    if (member[id] == 2) raw[id] = layered_colour(layers2.dist, e, base_b);
  }

  const std::size_t raw_count = base_b + depth2;
  std::vector<int> compact(raw_count + 1, kUnusedColour);
  for (std::size_t c : raw) compact[c] = 0;
  int next = 0;
  for (auto& c : compact) {
    if (c == 0) c = next++;
  }

  LayeredEdgeColouring out;
  out.colouring.colour.resize(g.edge_count());
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    out.colouring.colour[id] = static_cast<std::uint32_t>(compact[raw[id]]);
  }
  EdgeCertificate cert;
  cert.root = root;
  cert.edges1 = e1;
  cert.edges2 = e2;
  cert.shared = shared;
  for (EdgeId id : shared) cert.shared_colours.push_back(static_cast<int>(out.colouring.colour[id]));
  cert.layers1 = layers1.dist;
  cert.layers2 = layers2.dist;
  cert.palette_a.assign(depth1 + 1, kUnusedColour);
  cert.palette_b.assign(depth2 + 1, kUnusedColour);
  for (std::size_t j = 1; j <= depth1; ++j) cert.palette_a[j] = compact[base_a + j - 1];
  for (std::size_t j = 1; j <= depth2; ++j) cert.palette_b[j] = compact[base_b + j - 1];
  out.colouring.certificate = std::move(cert);
  out.diam1 = *std::max_element(ecc1.begin(), ecc1.end());
  out.diam2 = *std::max_element(ecc2.begin(), ecc2.end());
  out.shared_count = shared.size();
  return out;
}

std::pair<EdgeSubset, EdgeSubset> euler_degree_split(const Graph& g) {
  if (!is_connected(g)) throw InvalidInput("euler_degree_split needs a connected graph");
  Multigraph aux = to_multigraph(g);
  const auto real_edges = static_cast<EdgeId>(g.edge_count());
  Vertex pending = kUnreachable;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) % 2 == 0) continue;
    if (pending == kUnreachable) {
      pending = v;
    } else {
      aux.add_edge(pending, v);
      pending = kUnreachable;
    }
  }
  auto trail = euler_circuit(aux).edges;
  // With an odd number of edges the first and last edge land in the same
  // half at the start vertex. Starting on an auxiliary edge makes that
  // surplus disappear when the auxiliary edges are removed.
  if (trail.size() % 2 == 1) {
    auto first_aux = std::find_if(trail.begin(), trail.end(),
                                  [&](EdgeId id) { return id >= real_edges; });
    if (first_aux != trail.end()) std::rotate(trail.begin(), first_aux, trail.end());
  }
  EdgeSubset f1, f2;
  for (std::size_t pos = 0; pos < trail.size(); ++pos) {
    if (trail[pos] >= real_edges) continue;
    // 1-based position j = pos + 1: even -> F1, odd -> F2.
    ((pos + 1) % 2 == 0 ? f1 : f2).push_back(trail[pos]);
  }
  std::sort(f1.begin(), f1.end());
  std::sort(f2.begin(), f2.end());
  return {f1, f2};
}

EdgeSubset connect_components(const Graph& g, const EdgeSubset& f) {
  DisjointSets sets(g.vertex_count());
  for (EdgeId id : f) {
    if (id >= g.edge_count()) throw InvalidInput("edge id outside the graph");
    sets.unite(g.edge(id).u, g.edge(id).v);
  }
  EdgeSubset added;
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    if (sets.unite(g.edge(id).u, g.edge(id).v)) added.push_back(id);
  }
  return added;
}

MinDegreeResult rc_min_degree(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (!is_connected(g)) throw InvalidInput("rc_min_degree needs a connected graph");
  const std::size_t delta = g.min_degree();
  if (delta < 4) {
    throw InvalidInput("rc_min_degree needs minimum degree >= 4, got " + std::to_string(delta));
  }
  MinDegreeResult out;
  out.min_degree = delta;
  std::tie(out.half1, out.half2) = euler_degree_split(g);
  out.added1 = connect_components(g, out.half1);
  out.added2 = connect_components(g, out.half2);
  for (const auto* added : {&out.added1, &out.added2}) {
    if (added->size() * delta > 2 * n) {
      throw std::logic_error("connecting set larger than 2n/delta");
    }
  }
  out.split.edges1 = merge(out.half1, out.added1);
  out.split.edges2 = merge(out.half2, out.added2);
  out.layered = split_colouring(g, out.split);
  out.colour_bound = (16 * n + delta - 1) / delta;
  out.diameter_bound = 6.0 * static_cast<double>(n) / static_cast<double>(delta);
  out.diameter_bound_ok = out.layered.diam1 * delta <= 6 * n && out.layered.diam2 * delta <= 6 * n;
  if (out.layered.colouring.colours_used() > out.colour_bound) {
    throw std::logic_error("min-degree colouring used " +
                           std::to_string(out.layered.colouring.colours_used()) +
                           " colours, above ceil(16n/delta)=" + std::to_string(out.colour_bound));
  }
  return out;
}

ExpanderSplitResult expander_split(const Graph& g, double lambda, Seed seed,
                                   std::size_t max_retries, std::size_t cap) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw InvalidInput("lambda must lie in (0, 1)");
  if (!is_connected(g)) throw InvalidInput("expander_split needs a connected graph");
  if (g.vertex_count() > cap) {
    throw InfeasibleInstance("expander split validation is exact and needs n <= " +
                             std::to_string(cap));
  }
  ExpanderSplitResult out;
  out.expansion = edge_expansion_exact(g, cap).value;
  out.target = (1.0 - lambda) * boost::rational_cast<double>(out.expansion) / 2.0;
  constexpr double kSlack = 1e-12;
  Rng rng(seed);
  std::optional<std::pair<Rational, Rational>> best;
  for (std::size_t attempt = 1; attempt <= max_retries; ++attempt) {
    EdgeSplit split;
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
      (rng.coin() ? split.edges1 : split.edges2).push_back(id);
    }
    const Rational x1 = edge_expansion_exact(spanning_subgraph(g, split.edges1), cap).value;
    const Rational x2 = edge_expansion_exact(spanning_subgraph(g, split.edges2), cap).value;
    if (!best || std::min(x1, x2) > std::min(best->first, best->second)) best = {x1, x2};
    const bool ok1 = boost::rational_cast<double>(x1) + kSlack >= out.target && x1 > 0;
    const bool ok2 = boost::rational_cast<double>(x2) + kSlack >= out.target && x2 > 0;
    if (ok1 && ok2) {
      out.split = std::move(split);
      out.expansion1 = x1;
      out.expansion2 = x2;
      out.attempts = attempt;
      return out;
    }
  }
  std::ostringstream msg;
  const Rational b1 = best ? best->first : Rational(0);
  const Rational b2 = best ? best->second : Rational(0);
  msg << "no split reached expansion " << out.target << " in " << max_retries
      << " retries; best halves had " << b1 << " and " << b2;
  throw ExpanderSplitFailed(msg.str(), b1, b2);
}

RegularRainbowResult rc_random_regular(std::size_t n, std::size_t r, Seed seed,
                                       std::size_t max_attempts) {
  if (r < 5) throw InvalidInput("rc_random_regular needs r >= 5");
  if ((n * r) % 2 != 0) throw InvalidInput("n*r must be even");
  RegularRainbowResult out;

  std::vector<GeneratorSpec> parts;
  enum class Layout { kTwoRegular, kTwoCyclesAndMatching, kThreeCycles } layout;
  if (r == 5) {
    layout = Layout::kTwoCyclesAndMatching;
    parts = {GeneratorSpec::hamiltonian_cycle(), GeneratorSpec::hamiltonian_cycle(),
             GeneratorSpec::matching(n / 2)};
    out.construction = "(hamcycle+matching)*2";
  } else if (r == 6 && n % 2 == 1) {
    layout = Layout::kThreeCycles;
    parts = {GeneratorSpec::hamiltonian_cycle(), GeneratorSpec::hamiltonian_cycle(),
             GeneratorSpec::hamiltonian_cycle()};
    out.construction = "hamcycle*3";
  } else {
    layout = Layout::kTwoRegular;
    std::size_t r1, r2;
    if (r % 2 == 1) {
      r1 = (r + 1) / 2;
      r2 = (r - 1) / 2;
    } else if ((n * (r / 2)) % 2 == 0) {
      r1 = r2 = r / 2;
    } else {
      r1 = r / 2 + 1;
      r2 = r / 2 - 1;
    }
    parts = {GeneratorSpec::simple_regular(r1), GeneratorSpec::simple_regular(r2)};
    out.construction = "regular(" + std::to_string(r1) + ")+regular(" + std::to_string(r2) + ")";
    // Two random parts collide in about r1*r2/2 edges, so whole-union
    // rejection needs ~e^(r1 r2 / 2) draws. Past e^8 the second part is
    // drawn directly among graphs avoiding the first.
    out.sequential = r1 * r2 > 16;
  }

  // Regular parts can be disconnected at small n; such draws are rejected
  // as a whole, like a disjointness failure.
  for (std::uint64_t round = 0;; ++round) {
    if (out.union_attempts >= max_attempts) {
      throw AttemptsExhausted("no union with connected parts within " +
                              std::to_string(max_attempts) + " attempts");
    }
    auto draw = [&] {
      if (!out.sequential) {
        return oplus_union(n, parts, derive_seed(seed, {round}), max_attempts - out.union_attempts);
      }
      const Graph first = sample_simple_regular(n, parts[0].r, derive_seed(seed, {round, 1}));
      return disjoint_pair(first, sample_simple_regular_avoiding(n, parts[1].r, first,
                                                                 derive_seed(seed, {round, 2})));
    };
    auto joined = draw();
    out.union_attempts += joined.attempts;
    EdgeSplit split;
    switch (layout) {
      case Layout::kTwoRegular:
        split = {joined.parts[0], joined.parts[1]};
        break;
      case Layout::kTwoCyclesAndMatching: {
        auto matching = joined.parts[2];
        Rng rng(derive_seed(seed, {round, 0x5EED}));
        rng.shuffle(matching);
        const auto cut = matching.begin() + static_cast<std::ptrdiff_t>(n / 4);
        EdgeSubset first(matching.begin(), cut), rest(cut, matching.end());
        std::sort(first.begin(), first.end());
        std::sort(rest.begin(), rest.end());
        split.edges1 = merge(joined.parts[0], first);
        split.edges2 = merge(joined.parts[1], rest);
        break;
      }
      case Layout::kThreeCycles: {
        const auto order = cycle_order(joined.graph, joined.parts[2]);
        EdgeSubset even, odd;
        for (std::size_t pos = 0; pos < order.size(); ++pos) {
          ((pos + 1) % 2 == 0 ? even : odd).push_back(order[pos]);
        }
        std::sort(even.begin(), even.end());
        std::sort(odd.begin(), odd.end());
        split.edges1 = merge(joined.parts[0], even);
        split.edges2 = merge(joined.parts[1], odd);
        break;
      }
    }
    if (!is_connected(spanning_subgraph(joined.graph, split.edges1)) ||
        !is_connected(spanning_subgraph(joined.graph, split.edges2))) {
      continue;
    }
    out.graph = std::move(joined.graph);
    out.split = std::move(split);
    out.layered = split_colouring(out.graph, out.split);
    return out;
  }
}

}  // namespace rainbow
