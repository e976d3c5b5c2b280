#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rainbow/errors.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

/// Two spanning subgraphs (V, edges1) and (V, edges2) of a graph. Both must
/// be connected; their overlap B is derived, not stored.
struct EdgeSplit {
  EdgeSubset edges1;
  EdgeSubset edges2;

  EdgeSubset shared() const;
};

inline constexpr int kUnusedColour = -1;

/// Construction record of a layered edge colouring. With it, the path
/// argument can be replayed for any pair in time linear in the path.
struct EdgeCertificate {
  Vertex root = 0;
  EdgeSubset edges1;
  EdgeSubset edges2;
  EdgeSubset shared;
  std::vector<int> shared_colours;      // parallel to `shared`
  std::vector<std::uint32_t> layers1;   // BFS distance from root in (V, edges1)
  std::vector<std::uint32_t> layers2;
  /// palette_a[j] is the colour of G1 edges between layers j-1 and j
  /// (index 0 unused); kUnusedColour when every such edge is shared.
  std::vector<int> palette_a;
  std::vector<int> palette_b;
};

struct EdgeColouring {
  /// Indexed by edge id; ids are dense 0..k-1.
  std::vector<std::uint32_t> colour;
  std::optional<EdgeCertificate> certificate;

  std::size_t colours_used() const;
};

struct LayeredEdgeColouring {
  EdgeColouring colouring;
  std::uint32_t diam1 = 0;
  std::uint32_t diam2 = 0;
  std::size_t shared_count = 0;

  /// diam(G1) + diam(G2) + |B|.
  std::size_t bound() const { return diam1 + diam2 + shared_count; }
};

/// Layered colouring of g from a split. Shared edges get unique colours;
/// edges of G1 between BFS layers j-1 and j get a_j, likewise b_j for G2;
/// every other edge reuses a_1. The root minimises ecc_G1 + ecc_G2 (lowest
/// id on ties). Unused palette entries are compacted away.
/// Throws InvalidInput when a side is disconnected or an edge id is invalid.
LayeredEdgeColouring split_colouring(const Graph& g, const EdgeSplit& split);

/// Alternating halves of an Euler circuit of g plus an auxiliary matching
/// on its odd-degree vertices (paired in increasing id order). The halves
/// partition E(g) and each vertex of degree d keeps >= floor((d-1)/2) edges
/// in each.
std::pair<EdgeSubset, EdgeSubset> euler_degree_split(const Graph& g);

/// Edges of g, one per extra component of (V, f), whose addition connects
/// (V, f): a spanning tree of the component contraction, scanned in edge-id
/// order.
EdgeSubset connect_components(const Graph& g, const EdgeSubset& f);

struct MinDegreeResult {
  LayeredEdgeColouring layered;
  EdgeSplit split;
  EdgeSubset half1;
  EdgeSubset half2;
  EdgeSubset added1;
  EdgeSubset added2;
  std::size_t min_degree = 0;
  std::size_t colour_bound = 0;  // ceil(16n/delta)
  double diameter_bound = 0;     // 6n/delta
  /// False when diam(G_i) > 6n/delta was observed (reported, not thrown).
  bool diameter_bound_ok = true;
};

/// Min-degree pipeline: Euler split, connect each half, split colouring.
/// Requires g connected with minimum degree >= 4.
MinDegreeResult rc_min_degree(const Graph& g);

struct ExpanderSplitResult {
  EdgeSplit split;
  Rational expansion;   // of g
  Rational expansion1;  // of (V, edges1)
  Rational expansion2;
  double target = 0;    // (1 - lambda) * expansion / 2
  std::size_t attempts = 0;
};

/// Retries exhausted; carries the best attempt's expansions.
class ExpanderSplitFailed : public AttemptsExhausted {
 public:
  ExpanderSplitFailed(const std::string& what, Rational best1, Rational best2)
      : AttemptsExhausted(what), best1(best1), best2(best2) {}
  Rational best1;
  Rational best2;
};

/// Las Vegas edge 2-colouring: uniform coin per edge, accepted when both
/// halves have exact edge expansion >= (1-lambda)/2 times that of g.
/// Exact validation limits n to `cap`.
ExpanderSplitResult expander_split(const Graph& g, double lambda, Seed seed,
                                   std::size_t max_retries,
                                   std::size_t cap = kDefaultExpansionCap);

struct RegularRainbowResult {
  Graph graph;
  EdgeSplit split;
  LayeredEdgeColouring layered;
  /// e.g. "regular(3)+regular(3)", "hamcycle*3", "(hamcycle+matching)*2".
  std::string construction;
  std::size_t union_attempts = 0;
  /// The second regular part was drawn avoiding the first instead of by
  /// whole-union rejection (r1 * r2 > 16).
  bool sequential = false;
};

/// Random r-regular graph (r >= 5) built as a disjoint union of two random
/// parts, coloured through the split those parts give:
///   r odd, r != 5: G(n,(r+1)/2) + G(n,(r-1)/2)
///   r = 5:         two Hamiltonian cycles + a perfect matching, the matching
///                  split at random into halves of floor(n/4) and ceil(n/4)
///   r even:        G(n,r/2) twice, or r/2 +- 1 when n*r/2 is odd
///   r = 6, n odd:  three Hamiltonian cycles, the third split alternately
/// Unions are rejection-sampled until edge-disjoint, except two regular
/// parts with r1 * r2 > 16, where the second part avoids the first.
RegularRainbowResult rc_random_regular(std::size_t n, std::size_t r, Seed seed,
                                       std::size_t max_attempts = 1'000'000);

}  // namespace rainbow
