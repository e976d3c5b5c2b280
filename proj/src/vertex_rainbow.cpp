#include "rainbow/vertex_rainbow.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <sstream>

#include "rainbow/random_models.hpp"

namespace rainbow {

namespace {

std::vector<Vertex> normalized_side(std::vector<Vertex> side, std::size_t n, const char* name) {
  std::sort(side.begin(), side.end());
  side.erase(std::unique(side.begin(), side.end()), side.end());
  if (!side.empty() && side.back() >= n) {
    throw InvalidInput(std::string(name) + " contains a vertex out of range");
  }
  return side;
}

std::vector<Vertex> intersect(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Vertex> merge(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::vector<Vertex> VertexSplit::shared() const {
  auto a = side1, b = side2;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return intersect(a, b);
}

std::size_t VertexColouring::colours_used() const {
  if (colour.empty()) return 0;
  return *std::max_element(colour.begin(), colour.end()) + std::size_t{1};
}

LayeredVertexColouring vertex_split_colouring(const Graph& g, const VertexSplit& split,
                                              std::optional<std::size_t> max_shared) {
  const std::size_t n = g.vertex_count();
  const auto side1 = normalized_side(split.side1, n, "side1");
  const auto side2 = normalized_side(split.side2, n, "side2");
  std::vector<char> in1(n, 0), in2(n, 0);
  for (Vertex v : side1) in1[v] = 1;
  for (Vertex v : side2) in2[v] = 1;

  for (Vertex v = 0; v < n; ++v) {
    if (!in1[v] && !in2[v]) {
      throw SplitConditionError(1, "vertex " + std::to_string(v) + " is in neither side");
    }
  }
  const auto shared = intersect(side1, side2);
  if (max_shared && shared.size() > *max_shared) {
    throw SplitConditionError(2, std::to_string(shared.size()) + " shared vertices exceed " +
                                     std::to_string(*max_shared));
  }
  auto has_neighbour_in = [&](Vertex v, const std::vector<char>& in) {
    const auto nb = g.neighbours(v);
    return std::any_of(nb.begin(), nb.end(), [&](Vertex u) { return in[u] != 0; });
  };
  for (Vertex v : side1) {
    if (!has_neighbour_in(v, in2)) {
      throw SplitConditionError(3, "vertex " + std::to_string(v) + " of side1 has no neighbour in side2");
    }
  }
  for (Vertex v : side2) {
    if (!has_neighbour_in(v, in1)) {
      throw SplitConditionError(3, "vertex " + std::to_string(v) + " of side2 has no neighbour in side1");
    }
  }
  const auto h1 = induced_subgraph(g, side1);
  const auto h2 = induced_subgraph(g, side2);
  auto side_ecc = [](const InducedSubgraph& h, const char* name) {
    try {
      return eccentricities(h.graph);
    } catch (const InvalidInput&) {
      throw SplitConditionError(4, std::string(name) + " does not induce a connected subgraph");
    }
  };
  const auto ecc1 = side_ecc(h1, "side1");
  const auto ecc2 = side_ecc(h2, "side2");

  Vertex root1 = kUnreachable, root2 = kUnreachable;
  std::uint32_t best = kUnreachable;
  for (std::size_t i = 0; i < side1.size(); ++i) {
    for (Vertex u : g.neighbours(side1[i])) {
      if (!in2[u]) continue;
      const std::uint32_t score = ecc1[i] + ecc2[h2.from_parent[u]];
      if (score < best) {
        best = score;
        root1 = side1[i];
        root2 = u;
      }
    }
  }

  if (root1 == kUnreachable) throw SplitConditionError(3, "no edge joins side1 to side2");
  const auto l1 = bfs_layers(h1.graph, h1.from_parent[root1]);
  const auto l2 = bfs_layers(h2.graph, h2.from_parent[root2]);
  VertexCertificate cert;
  cert.root1 = root1;
  cert.root2 = root2;
  cert.side1 = side1;
  cert.side2 = side2;
  cert.shared = shared;
  cert.layers1.assign(n, kUnreachable);
  cert.layers2.assign(n, kUnreachable);
  for (std::size_t i = 0; i < side1.size(); ++i) cert.layers1[side1[i]] = l1.dist[i];
  for (std::size_t i = 0; i < side2.size(); ++i) cert.layers2[side2[i]] = l2.dist[i];

  // Raw palette: shared 0..|B|-1, a_0..a_depth1, b_0..b_depth2.
  const std::size_t base_a = shared.size();
  const std::size_t base_b = base_a + l1.eccentricity + 1;
  const std::size_t raw_count = base_b + l2.eccentricity + 1;
  std::vector<std::size_t> raw(n);
  std::vector<char> is_shared(n, 0);
  for (std::size_t i = 0; i < shared.size(); ++i) {
    raw[shared[i]] = i;
    is_shared[shared[i]] = 1;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (is_shared[v]) continue;
    raw[v] = in1[v] ? base_a + cert.layers1[v] : base_b + cert.layers2[v];
  }
  std::vector<int> compact(raw_count, kUnusedColour);
  for (std::size_t c : raw) compact[c] = 0;
  int next = 0;
  for (auto& c : compact) {
    if (c == 0) c = next++;
  }

  LayeredVertexColouring out;
  out.colouring.colour.resize(n);
  for (Vertex v = 0; v < n; ++v) out.colouring.colour[v] = static_cast<std::uint32_t>(compact[raw[v]]);
  for (Vertex v : shared) cert.shared_colours.push_back(static_cast<int>(out.colouring.colour[v]));
  for (std::size_t j = 0; j <= l1.eccentricity; ++j) cert.palette_a.push_back(compact[base_a + j]);
  for (std::size_t j = 0; j <= l2.eccentricity; ++j) cert.palette_b.push_back(compact[base_b + j]);
  out.colouring.certificate = std::move(cert);
  out.diam1 = *std::max_element(ecc1.begin(), ecc1.end());
  out.diam2 = *std::max_element(ecc2.begin(), ecc2.end());
  out.shared_count = shared.size();
  return out;
}

std::size_t PartitionParams::threshold(std::size_t r) const {
  return static_cast<std::size_t>(std::ceil(gamma * static_cast<double>(r) - 1e-9));
}

double lll_condition_value(std::size_t r, double gamma) {
  const double rr = static_cast<double>(r);
  const double dev = 0.5 - gamma;
  return (rr * rr + 1.0) * 2.0 * std::exp(1.0 - 2.0 * dev * dev * rr);
}

PartitionResult lll_partition(const Graph& g, const PartitionParams& params, Seed seed) {
  const std::size_t n = g.vertex_count();
  if (!(params.gamma > 0.0 && params.gamma < 0.5)) throw InvalidInput("gamma must lie in (0, 1/2)");
  if (n == 0) throw InvalidInput("lll_partition of the empty graph");
  const std::size_t r = g.max_degree();
  if (g.min_degree() != r) throw InvalidInput("lll_partition needs a regular graph");

  PartitionResult out;
  out.lll_value = lll_condition_value(r, params.gamma);
  out.threshold = params.threshold(r);
  if (out.lll_value >= 1.0 && !params.best_effort) {
    std::ostringstream msg;
    msg << "local lemma condition fails for r=" << r << ", gamma=" << params.gamma
        << " (value " << out.lll_value << " >= 1); pass best_effort to try anyway";
    throw InvalidInput(msg.str());
  }
  const std::size_t budget = params.max_resamples.value_or(50 * n);
  const std::size_t t = out.threshold;

  Rng rng(seed);
  std::vector<char> side(n);
  for (auto& s : side) s = rng.coin() ? 1 : 0;
  std::vector<std::size_t> ones(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u : g.neighbours(v)) ones[v] += side[u];
  }
  auto violating = [&](Vertex v) { return ones[v] < t || r - ones[v] < t; };

  std::deque<Vertex> queue;
  std::vector<char> queued(n, 0);
  auto enqueue = [&](Vertex v) {
    if (!queued[v] && violating(v)) {
      queued[v] = 1;
      queue.push_back(v);
    }
  };
  for (Vertex v = 0; v < n; ++v) enqueue(v);

  std::vector<Vertex> touched;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    queued[v] = 0;
    if (!violating(v)) continue;
    if (out.resamples == budget) {
      std::vector<Vertex> bad;
      for (Vertex x = 0; x < n; ++x) {
        if (violating(x)) bad.push_back(x);
      }
      std::ostringstream msg;
      msg << "partition still has " << bad.size() << " violating vertices after " << budget
          << " resamples; first:";
      for (std::size_t i = 0; i < std::min<std::size_t>(bad.size(), 10); ++i) msg << ' ' << bad[i];
      throw AttemptsExhausted(msg.str());
    }
    ++out.resamples;
    touched.clear();
    auto recoin = [&](Vertex x) {
      const char fresh = rng.coin() ? 1 : 0;
      if (fresh == side[x]) return;
      side[x] = fresh;
      for (Vertex y : g.neighbours(x)) {
        if (fresh) {
          ++ones[y];
        } else {
          --ones[y];
        }
        touched.push_back(y);
      }
    };
    recoin(v);
    for (Vertex u : g.neighbours(v)) recoin(u);
    enqueue(v);
    for (Vertex y : touched) enqueue(y);
  }
  for (Vertex v = 0; v < n; ++v) (side[v] ? out.part1 : out.part2).push_back(v);
  return out;
}

std::vector<Vertex> stitch_components(const Graph& g, const std::vector<Vertex>& u) {
  const std::size_t n = g.vertex_count();
  std::vector<char> in(n, 0);
  for (Vertex v : u) {
    if (v >= n) throw InvalidInput("stitch_components: vertex out of range");
    in[v] = 1;
  }
  std::vector<Vertex> added;
  if (u.empty()) return added;

  std::vector<std::uint32_t> label(n);
  std::vector<Vertex> parent(n);
  std::vector<Vertex> queue;
  queue.reserve(n);
  while (true) {
    std::fill(label.begin(), label.end(), kUnreachable);
    std::uint32_t comps = 0;
    for (Vertex s = 0; s < n; ++s) {
      if (!in[s] || label[s] != kUnreachable) continue;
      queue.assign(1, s);
      label[s] = comps;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        for (Vertex y : g.neighbours(queue[head])) {
          if (in[y] && label[y] == kUnreachable) {
            label[y] = comps;
            queue.push_back(y);
          }
        }
      }
      ++comps;
    }
    if (comps <= 1) break;

    // Multi-source BFS from component 0 to the nearest vertex of another.
    std::fill(parent.begin(), parent.end(), kUnreachable);
    queue.clear();
    for (Vertex v = 0; v < n; ++v) {
      if (label[v] == 0) {
        parent[v] = v;
        queue.push_back(v);
      }
    }
    Vertex hit = kUnreachable;
    for (std::size_t head = 0; head < queue.size() && hit == kUnreachable; ++head) {
      for (Vertex y : g.neighbours(queue[head])) {
        if (parent[y] != kUnreachable) continue;
        parent[y] = queue[head];
        if (in[y]) {
          hit = y;
          break;
        }
        queue.push_back(y);
      }
    }
    if (hit == kUnreachable) throw InvalidInput("stitch_components needs a connected graph");
    for (Vertex x = parent[hit]; label[x] != 0; x = parent[x]) {
      in[x] = 1;
      added.push_back(x);
    }
  }
  std::sort(added.begin(), added.end());
  return added;
}

RvcResult rvc_pipeline(const Graph& g, const PartitionParams& params, Seed seed) {
  if (!is_connected(g)) throw InvalidInput("rvc pipeline needs a connected graph");
  RvcResult out;
  out.partition = lll_partition(g, params, derive_seed(seed, {1}));
  out.stitch1 = stitch_components(g, out.partition.part1);
  out.stitch2 = stitch_components(g, out.partition.part2);
  out.split.side1 = merge(out.partition.part1, out.stitch1);
  out.split.side2 = merge(out.partition.part2, out.stitch2);
  out.layered = vertex_split_colouring(g, out.split);
  out.graph = g;
  return out;
}

RvcResult rvc_random_regular(std::size_t n, std::size_t r, Seed seed, const PartitionParams& params) {
  if (r < 28) throw InvalidInput("rvc_random_regular needs r >= 28");
  if ((n * r) % 2 != 0) throw InvalidInput("n*r must be even");
  for (std::uint64_t round = 0; round < 1000; ++round) {
    Graph g = sample_simple_regular(n, r, derive_seed(seed, {0, round}));
    if (!is_connected(g)) continue;
    return rvc_pipeline(g, params, derive_seed(seed, {1}));
  }
  throw AttemptsExhausted("no connected regular graph sampled");
}

NeighbourhoodAudit neighbourhood_expansion_audit(const Graph& g, std::size_t max_size, double factor) {
  const std::size_t n = g.vertex_count();
  if (n > 20) throw InfeasibleInstance("neighbourhood audit is exhaustive and needs n <= 20");
  std::vector<std::uint32_t> closed(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    closed[v] = 1U << v;
    for (Vertex u : g.neighbours(v)) closed[v] |= 1U << u;
  }
  NeighbourhoodAudit audit;
  audit.worst_ratio = std::numeric_limits<double>::infinity();
  std::uint32_t worst = 0;
  for (std::uint32_t set = 1; set < (1U << n); ++set) {
    const auto size = static_cast<std::size_t>(std::popcount(set));
    if (size > max_size) continue;
    std::uint32_t nb = 0;
    for (std::uint32_t rest = set; rest != 0; rest &= rest - 1) nb |= closed[std::countr_zero(rest)];
    const double ratio = static_cast<double>(std::popcount(nb)) / static_cast<double>(size);
    ++audit.sets_checked;
    if (ratio < audit.worst_ratio) {
      audit.worst_ratio = ratio;
      worst = set;
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if ((worst >> v) & 1U) audit.worst_set.push_back(v);
  }
  audit.holds = audit.sets_checked == 0 || audit.worst_ratio + 1e-12 >= factor;
  return audit;
}

}  // namespace rainbow
