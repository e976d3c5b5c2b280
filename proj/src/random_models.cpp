#include "rainbow/random_models.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include "rainbow/errors.hpp"

namespace rainbow {

namespace {

void require_even_points(std::size_t n, std::size_t r) {
  if ((n * r) % 2 != 0) {
    throw InvalidInput("n*r must be even (n=" + std::to_string(n) + ", r=" + std::to_string(r) +
                       ")");
  }
}

std::uint64_t pair_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// One rejection attempt: builds the pairing point by point and gives up at
// the first loop or repeated pair. Equivalent to drawing a whole uniform
// pairing and testing simplicity.
std::optional<std::vector<Edge>> try_simple_pairing(std::size_t n, std::size_t r, Rng& rng,
                                                    std::vector<std::uint32_t>& points,
                                                    std::vector<std::vector<Vertex>>& nbrs) {
  const std::size_t total = n * r;
  std::iota(points.begin(), points.end(), 0U);
  for (auto& list : nbrs) list.clear();
  std::vector<Edge> edges;
  edges.reserve(total / 2);
  for (std::size_t i = 0; i < total; i += 2) {
    const std::size_t j = i + 1 + rng.below(total - i - 1);
    std::swap(points[i + 1], points[j]);
    const auto a = static_cast<Vertex>(points[i] / r);
    const auto b = static_cast<Vertex>(points[i + 1] / r);
    if (a == b) return std::nullopt;
    auto& na = nbrs[a];
    if (std::find(na.begin(), na.end(), b) != na.end()) return std::nullopt;
    na.push_back(b);
    nbrs[b].push_back(a);
    edges.push_back({a, b});
  }
  return edges;
}

// Steger-Wormald: shuffle the free stubs, pair them off, keep every
// suitable pair and retry the rest; restart when no suitable pair remains.
// Pairs in `forbidden` count as present and are never produced.
std::optional<std::vector<Edge>> try_steger_wormald(std::size_t n, std::size_t r, Rng& rng,
                                                    const std::unordered_set<std::uint64_t>& forbidden = {}) {
  std::unordered_set<std::uint64_t> present = forbidden;
  std::vector<Edge> edges;
  std::vector<Vertex> stubs;
  stubs.reserve(n * r);
  for (Vertex v = 0; v < n; ++v) {
    for (std::size_t k = 0; k < r; ++k) stubs.push_back(v);
  }
  while (!stubs.empty()) {
    rng.shuffle(stubs);
    std::map<Vertex, std::size_t> potential;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      const Vertex a = stubs[i];
      const Vertex b = stubs[i + 1];
      if (a != b && present.insert(pair_key(a, b)).second) {
        edges.push_back({a, b});
      } else {
        ++potential[a];
        ++potential[b];
      }
    }
    if (potential.empty()) break;
    bool suitable = false;
    for (auto it = potential.begin(); it != potential.end() && !suitable; ++it) {
      for (auto jt = std::next(it); jt != potential.end(); ++jt) {
        if (!present.count(pair_key(it->first, jt->first))) {
          suitable = true;
          break;
        }
      }
    }
    if (!suitable) return std::nullopt;
    stubs.clear();
    for (const auto& [v, count] : potential) {
      for (std::size_t k = 0; k < count; ++k) stubs.push_back(v);
    }
  }
  return edges;
}

}  // namespace

Multigraph PairingState::to_multigraph() const {
  Multigraph g(n);
  for (std::uint32_t p = 0; p < mate.size(); ++p) {
    if (p < mate[p]) g.add_edge(cell(p), cell(mate[p]));
  }
  return g;
}

PairingState sample_pairing(std::size_t n, std::size_t r, Seed seed) {
  require_even_points(n, r);
  if (r == 0) throw InvalidInput("pairing needs r >= 1");
  Rng rng(seed);
  const std::size_t total = n * r;
  std::vector<std::uint32_t> points(total);
  std::iota(points.begin(), points.end(), 0U);
  PairingState state{n, r, std::vector<std::uint32_t>(total)};
  for (std::size_t i = 0; i < total; i += 2) {
    const std::size_t j = i + 1 + rng.below(total - i - 1);
    std::swap(points[i + 1], points[j]);
    state.mate[points[i]] = points[i + 1];
    state.mate[points[i + 1]] = points[i];
  }
  return state;
}

Graph sample_simple_regular(std::size_t n, std::size_t r, Seed seed, std::size_t max_attempts,
                            RegularSampler sampler) {
  require_even_points(n, r);
  if (r >= n) {
    throw InvalidInput("simple r-regular graph needs r < n (n=" + std::to_string(n) +
                       ", r=" + std::to_string(r) + ")");
  }
  if (r == 0) return build_graph(n, {});
  if (sampler == RegularSampler::kAuto) {
    sampler = r <= 6 ? RegularSampler::kRejection : RegularSampler::kStegerWormald;
  }
  Rng rng(seed);
  std::vector<std::uint32_t> points(n * r);
  std::vector<std::vector<Vertex>> nbrs(n);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    auto edges = sampler == RegularSampler::kRejection ? try_simple_pairing(n, r, rng, points, nbrs)
                                                       : try_steger_wormald(n, r, rng);
    if (edges) return build_graph(n, *edges);
  }
  throw AttemptsExhausted("no simple " + std::to_string(r) + "-regular graph on " +
                          std::to_string(n) + " vertices after " + std::to_string(max_attempts) +
                          " attempts");
}

Graph sample_simple_regular_avoiding(std::size_t n, std::size_t r, const Graph& avoid, Seed seed,
                                     std::size_t max_attempts) {
  require_even_points(n, r);
  if (avoid.vertex_count() != n) throw InvalidInput("avoided graph has a different vertex count");
  if (r + avoid.max_degree() >= n) throw InvalidInput("degree too large to avoid the given graph");
  std::unordered_set<std::uint64_t> forbidden;
  for (const Edge& e : avoid.edges()) forbidden.insert(pair_key(e.u, e.v));
  Rng rng(seed);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    if (auto edges = try_steger_wormald(n, r, rng, forbidden)) return build_graph(n, *edges);
  }
  throw AttemptsExhausted("no " + std::to_string(r) + "-regular graph avoiding the given edges after " +
                          std::to_string(max_attempts) + " attempts");
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InvalidInput("a cycle needs n >= 3");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.push_back({v, static_cast<Vertex>((v + 1) % n)});
  return build_graph(n, edges);
}

Graph random_hamiltonian_cycle(std::size_t n, Seed seed) {
  if (n < 3) throw InvalidInput("a Hamiltonian cycle needs n >= 3");
  Rng rng(seed);
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  rng.shuffle(perm);
  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) edges.push_back({perm[i], perm[(i + 1) % n]});
  return build_graph(n, edges);
}

Graph random_matching(std::size_t n, std::size_t m, Seed seed) {
  if (2 * m > n) {
    throw InvalidInput("matching of " + std::to_string(m) + " edges needs 2m <= n=" +
                       std::to_string(n));
  }
  Rng rng(seed);
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  // The first 2m entries of a partial Fisher-Yates shuffle, paired in order.
  for (std::size_t i = 0; i < 2 * m; ++i) std::swap(perm[i], perm[i + rng.below(n - i)]);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m; ++i) edges.push_back({perm[2 * i], perm[2 * i + 1]});
  return build_graph(n, edges);
}

std::string GeneratorSpec::describe() const {
  switch (kind) {
    case Kind::kHamiltonianCycle:
      return "hamcycle";
    case Kind::kMatching:
      return "matching(" + std::to_string(m) + ")";
    case Kind::kSimpleRegular:
      return "regular(" + std::to_string(r) + ")";
    case Kind::kFixed:
      return "fixed(" + std::to_string(fixed.edge_count()) + " edges)";
  }
  return "?";
}

Graph generate(const GeneratorSpec& spec, std::size_t n, Seed seed) {
  switch (spec.kind) {
    case GeneratorSpec::Kind::kHamiltonianCycle:
      return random_hamiltonian_cycle(n, seed);
    case GeneratorSpec::Kind::kMatching:
      return random_matching(n, spec.m, seed);
    case GeneratorSpec::Kind::kSimpleRegular:
      return sample_simple_regular(n, spec.r, seed);
    case GeneratorSpec::Kind::kFixed:
      if (spec.fixed.vertex_count() != n) {
        throw InvalidInput("fixed part has " + std::to_string(spec.fixed.vertex_count()) +
                           " vertices, expected " + std::to_string(n));
      }
      return spec.fixed;
  }
  throw InvalidInput("unknown generator kind");
}

OplusResult oplus_union(std::size_t n, std::span<const GeneratorSpec> parts, Seed seed,
                        std::size_t max_attempts) {
  if (parts.size() < 2) throw InvalidInput("oplus_union needs at least 2 parts");
  const bool all_fixed =
      std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.deterministic(); });
  std::vector<Graph> drawn(parts.size());
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    std::unordered_set<std::uint64_t> seen;
    bool disjoint = true;
    for (std::size_t i = 0; i < parts.size() && disjoint; ++i) {
      drawn[i] = generate(parts[i], n, derive_seed(seed, {attempt, i}));
      for (const Edge& e : drawn[i].edges()) {
        if (!seen.insert(pair_key(e.u, e.v)).second) {
          disjoint = false;
          break;
        }
      }
    }
    if (disjoint) {
      std::vector<Edge> all;
      for (const auto& part : drawn) all.insert(all.end(), part.edges().begin(), part.edges().end());
      OplusResult result;
      result.graph = build_graph(n, all);
      result.attempts = attempt + 1;
      for (const auto& part : drawn) {
        EdgeSubset ids;
        for (const Edge& e : part.edges()) ids.push_back(*result.graph.find_edge(e.u, e.v));
        std::sort(ids.begin(), ids.end());
        result.parts.push_back(std::move(ids));
      }
      return result;
    }
    if (all_fixed) {
      throw AttemptsExhausted("fixed parts share an edge; they can never be disjoint");
    }
  }
  throw AttemptsExhausted("parts not edge-disjoint after " + std::to_string(max_attempts) +
                          " attempts");
}

GapSequence gap_sequence_from_subset(std::span<const std::size_t> subset, std::size_t n) {
  if (subset.empty() || subset.size() % 2 != 0) {
    throw InvalidInput("gap sequence needs a non-empty subset of even size");
  }
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] < 1 || subset[i] > n) throw InvalidInput("subset value outside 1..n");
    if (i > 0 && subset[i] <= subset[i - 1]) {
      throw InvalidInput("subset must be strictly increasing");
    }
  }
  GapSequence seq{n, {}};
  seq.gaps.reserve(subset.size() + 1);
  seq.gaps.push_back(subset.front());
  for (std::size_t i = 1; i < subset.size(); ++i) seq.gaps.push_back(subset[i] - subset[i - 1]);
  seq.gaps.push_back(n - subset.back());
  return seq;
}

std::vector<std::size_t> subset_from_gap_sequence(const GapSequence& seq) {
  const auto& y = seq.gaps;
  if (y.size() < 3 || y.size() % 2 == 0) {
    throw InvalidInput("gap sequence must have length 2m+1 with m >= 1");
  }
  std::size_t sum = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i + 1 < y.size() && y[i] < 1) throw InvalidInput("gap Y_i < 1 for i < 2m");
    sum += y[i];
  }
  if (sum != seq.n) throw InvalidInput("gaps do not sum to n");
  std::vector<std::size_t> subset;
  std::size_t pos = 0;
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    pos += y[i];
    subset.push_back(pos);
  }
  return subset;
}

std::vector<std::size_t> random_subset(std::size_t n, std::size_t k, Rng& rng) {
  if (k > n) throw InvalidInput("subset larger than ground set");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{1});
  for (std::size_t i = 0; i < k; ++i) std::swap(perm[i], perm[i + rng.below(n - i)]);
  perm.resize(k);
  std::sort(perm.begin(), perm.end());
  return perm;
}

Graph subdivide_cycle(const GapSequence& gaps, const IndexMatching& matching) {
  const auto subset = subset_from_gap_sequence(gaps);
  const std::size_t n = gaps.n;
  if (n < 3) throw InvalidInput("subdivided cycle needs n >= 3");
  std::vector<Edge> edges;
  // Segment b_i .. b_{i+1} contributes Y_i consecutive edges, the wrap
  // segment b_2m .. n, 1 .. b_1 contributes Y_2m + Y_0; together: the n-cycle.
  for (std::size_t i = 0; i + 1 < subset.size(); ++i) {
    for (std::size_t x = subset[i]; x < subset[i + 1]; ++x) {
      edges.push_back({static_cast<Vertex>(x - 1), static_cast<Vertex>(x)});
    }
  }
  for (std::size_t x = subset.back(); x < n + subset.front(); ++x) {
    edges.push_back({static_cast<Vertex>((x - 1) % n), static_cast<Vertex>(x % n)});
  }
  for (const auto& [i, j] : matching) {
    if (i < 1 || j < 1 || i > subset.size() || j > subset.size() || i == j) {
      throw InvalidInput("matching index outside 1..2m");
    }
    edges.push_back({static_cast<Vertex>(subset[i - 1] - 1), static_cast<Vertex>(subset[j - 1] - 1)});
  }
  return build_graph(n, edges);
}

CycleMatchingModel subdivide_cycle_model(std::size_t n, Seed seed, std::size_t max_attempts) {
  if (n < 8) throw InvalidInput("cycle-plus-quarter-matching model needs n >= 8");
  const std::size_t m = n / 4;
  Rng rng(seed);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    auto subset = random_subset(n, 2 * m, rng);
    std::vector<std::size_t> positions(2 * m);
    std::iota(positions.begin(), positions.end(), std::size_t{1});
    rng.shuffle(positions);
    IndexMatching matching;
    bool clash = false;
    for (std::size_t k = 0; k < m; ++k) {
      auto i = positions[2 * k];
      auto j = positions[2 * k + 1];
      if (i > j) std::swap(i, j);
      const std::size_t a = subset[i - 1];
      const std::size_t b = subset[j - 1];
      if (b - a == 1 || (a == 1 && b == n)) clash = true;
      matching.emplace_back(i, j);
    }
    if (clash) continue;
    std::sort(matching.begin(), matching.end());
    auto gaps = gap_sequence_from_subset(subset, n);
    CycleMatchingModel model;
    model.graph = subdivide_cycle(gaps, matching);
    model.record = {std::move(subset), std::move(matching), std::move(gaps), attempt + 1};
    return model;
  }
  throw AttemptsExhausted("matching kept hitting cycle edges");
}

Graph cycle_plus_matching(std::size_t n, std::size_t m, Seed seed, std::size_t max_attempts) {
  const std::vector<GeneratorSpec> parts{GeneratorSpec::fixed_graph(cycle_graph(n)),
                                         GeneratorSpec::matching(m)};
  return oplus_union(n, parts, seed, max_attempts).graph;
}

}  // namespace rainbow
