#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/edge_rainbow.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

/// Two vertex sets covering V. Both must induce connected subgraphs and
/// every vertex of one side needs a neighbour on the other.
struct VertexSplit {
  std::vector<Vertex> side1;
  std::vector<Vertex> side2;

  std::vector<Vertex> shared() const;
};

/// A VertexSplit violating one of the four split conditions:
/// 1 cover, 2 overlap size, 3 cross neighbours, 4 connectivity.
class SplitConditionError : public InvalidInput {
 public:
  SplitConditionError(int condition, const std::string& what)
      : InvalidInput("split condition " + std::to_string(condition) + ": " + what),
        condition(condition) {}
  int condition;
};

struct VertexCertificate {
  Vertex root1 = 0;  // root1 in side1, root2 in side2, adjacent in g
  Vertex root2 = 0;
  std::vector<Vertex> side1;
  std::vector<Vertex> side2;
  std::vector<Vertex> shared;
  std::vector<int> shared_colours;     // parallel to `shared`
  std::vector<std::uint32_t> layers1;  // distance from root1 in g[side1]; kUnreachable outside
  std::vector<std::uint32_t> layers2;
  /// palette_a[j]: colour of side1-only vertices at distance j (j from 0).
  std::vector<int> palette_a;
  std::vector<int> palette_b;
};

struct VertexColouring {
  std::vector<std::uint32_t> colour;  // per vertex, dense ids
  std::optional<VertexCertificate> certificate;

  std::size_t colours_used() const;
};

struct LayeredVertexColouring {
  VertexColouring colouring;
  std::uint32_t diam1 = 0;  // diam(g[side1])
  std::uint32_t diam2 = 0;
  std::size_t shared_count = 0;

  std::size_t bound() const { return diam1 + diam2 + shared_count + 2; }
};

/// Two-sided layered vertex colouring. Shared vertices keep unique colours;
/// other side-i vertices are coloured by distance from root_i in g[side_i].
/// The root edge minimises ecc1(root1) + ecc2(root2), ties broken by the
/// lexicographically smallest (root1, root2).
LayeredVertexColouring vertex_split_colouring(const Graph& g, const VertexSplit& split,
                                              std::optional<std::size_t> max_shared = std::nullopt);

struct PartitionParams {
  double gamma = 0.11;
  /// Defaults to 50 * n when unset.
  std::optional<std::size_t> max_resamples;
  /// Run even when the local-lemma condition fails for (r, gamma).
  bool best_effort = false;

  /// ceil(gamma * r), computed with a small tolerance so that exact
  /// products such as 0.11 * 100 are not rounded up.
  std::size_t threshold(std::size_t r) const;
};

/// (r^2 + 1) * 2 * e^(1 - 2 (1/2 - gamma)^2 r); the partition is guaranteed
/// to exist when this is below 1.
double lll_condition_value(std::size_t r, double gamma);

struct PartitionResult {
  std::vector<Vertex> part1;
  std::vector<Vertex> part2;
  std::size_t threshold = 0;
  std::size_t resamples = 0;
  double lll_value = 0;
};

/// Moser-Tardos resampling: fair coin per vertex, then while some vertex
/// has fewer than ceil(gamma r) neighbours on a side, re-coin its closed
/// neighbourhood. g must be r-regular.
PartitionResult lll_partition(const Graph& g, const PartitionParams& params, Seed seed);

/// Vertices W outside U with g[U + W] connected: repeatedly joins the
/// component of the smallest vertex to the nearest other component along a
/// shortest path in g.
std::vector<Vertex> stitch_components(const Graph& g, const std::vector<Vertex>& u);

struct RvcResult {
  Graph graph;
  PartitionResult partition;
  std::vector<Vertex> stitch1;
  std::vector<Vertex> stitch2;
  VertexSplit split;
  LayeredVertexColouring layered;
};

/// Partition, stitch each part, colour. g must be r-regular and connected.
RvcResult rvc_pipeline(const Graph& g, const PartitionParams& params, Seed seed);

/// Samples a random r-regular graph (r >= 28) and runs rvc_pipeline.
RvcResult rvc_random_regular(std::size_t n, std::size_t r, Seed seed,
                             const PartitionParams& params = {});

struct NeighbourhoodAudit {
  bool holds = true;
  std::vector<Vertex> worst_set;  // vertex ids of the audited graph
  double worst_ratio = 0;         // |N[T]| / |T|
  std::size_t sets_checked = 0;
};

/// Exhaustive check that every T with 1 <= |T| <= max_size has closed
/// neighbourhood |N[T]| >= factor * |T|. Limited to 20 vertices.
NeighbourhoodAudit neighbourhood_expansion_audit(const Graph& g, std::size_t max_size,
                                                 double factor);

}  // namespace rainbow
