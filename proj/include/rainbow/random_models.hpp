#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rainbow/graph.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

/// Configuration-model state: n cells of r points each and a perfect
/// matching on the n*r points. Point p lives in cell p / r.
struct PairingState {
  std::size_t n = 0;
  std::size_t r = 0;
  std::vector<std::uint32_t> mate;

  Vertex cell(std::uint32_t point) const { return static_cast<Vertex>(point / r); }

  /// Cells become vertices and pairs become edges, in order of each pair's
  /// lower point.
  Multigraph to_multigraph() const;
};

/// Uniform random pairing. Throws InvalidInput when n*r is odd.
PairingState sample_pairing(std::size_t n, std::size_t r, Seed seed);

enum class RegularSampler {
  /// Rejection for r <= 6, Steger-Wormald above.
  kAuto,
  /// Pairing model, rejecting non-simple outcomes. Exactly uniform.
  kRejection,
  /// Steger-Wormald pairing with suitable-pair restarts. Asymptotically
  /// uniform; usable for degrees where rejection would never succeed.
  kStegerWormald,
};

inline constexpr std::size_t kDefaultRegularAttempts = 1'000'000;

/// Simple r-regular graph on n vertices. Throws InvalidInput for odd n*r
/// or r >= n, AttemptsExhausted after max_attempts failed tries.
Graph sample_simple_regular(std::size_t n, std::size_t r, Seed seed,
                            std::size_t max_attempts = kDefaultRegularAttempts,
                            RegularSampler sampler = RegularSampler::kAuto);

/// Simple r-regular graph edge-disjoint from `avoid`: the Steger-Wormald
/// process with the edges of `avoid` treated as already present.
Graph sample_simple_regular_avoiding(std::size_t n, std::size_t r, const Graph& avoid, Seed seed,
                                     std::size_t max_attempts = kDefaultRegularAttempts);

/// Cycle through a uniform random permutation of 0..n-1 (n >= 3).
Graph random_hamiltonian_cycle(std::size_t n, Seed seed);

/// The fixed cycle 0-1-...-(n-1)-0 (n >= 3).
Graph cycle_graph(std::size_t n);

/// Uniform random m-edge matching on n vertices (2m <= n).
Graph random_matching(std::size_t n, std::size_t m, Seed seed);

/// One part of a disjoint union.
struct GeneratorSpec {
  enum class Kind { kHamiltonianCycle, kMatching, kSimpleRegular, kFixed };

  Kind kind = Kind::kFixed;
  std::size_t m = 0;  // kMatching
  std::size_t r = 0;  // kSimpleRegular
  Graph fixed;        // kFixed

  static GeneratorSpec hamiltonian_cycle() { return {Kind::kHamiltonianCycle, 0, 0, {}}; }
  static GeneratorSpec matching(std::size_t m) { return {Kind::kMatching, m, 0, {}}; }
  static GeneratorSpec simple_regular(std::size_t r) { return {Kind::kSimpleRegular, 0, r, {}}; }
  static GeneratorSpec fixed_graph(Graph g) { return {Kind::kFixed, 0, 0, std::move(g)}; }

  bool deterministic() const { return kind == Kind::kFixed; }
  std::string describe() const;
};

Graph generate(const GeneratorSpec& spec, std::size_t n, Seed seed);

struct OplusResult {
  Graph graph;
  /// Each part's edges as ids of `graph`.
  std::vector<EdgeSubset> parts;
  std::size_t attempts = 0;
};

/// Union of independently generated parts conditioned on pairwise edge
/// disjointness, by full rejection: every part is redrawn on any collision.
OplusResult oplus_union(std::size_t n, std::span<const GeneratorSpec> parts, Seed seed,
                        std::size_t max_attempts);

/// (Y_0, ..., Y_2m) spacing encoding of a 2m-subset b_1 < ... < b_2m of
/// {1..n}: Y_0 = b_1, Y_i = b_{i+1} - b_i, Y_2m = n - b_2m.
struct GapSequence {
  std::size_t n = 0;
  std::vector<std::size_t> gaps;

  std::size_t m() const { return (gaps.size() - 1) / 2; }
  friend bool operator==(const GapSequence&, const GapSequence&) = default;
};

/// `subset` is sorted, 1-based, non-empty, of even size.
GapSequence gap_sequence_from_subset(std::span<const std::size_t> subset, std::size_t n);
std::vector<std::size_t> subset_from_gap_sequence(const GapSequence& gaps);

/// Uniform random k-subset of {1..n}, sorted.
std::vector<std::size_t> random_subset(std::size_t n, std::size_t k, Rng& rng);

/// Matching on positions 1..2m of B.
using IndexMatching = std::vector<std::pair<std::size_t, std::size_t>>;

/// Graph on [n] (0-based output) built from H(M) by subdividing each cycle
/// edge b_i b_{i+1} into Y_i edges and b_2m b_1 into Y_2m + Y_0 edges. The
/// result is the cycle 0..n-1 plus the matching mapped through B.
Graph subdivide_cycle(const GapSequence& gaps, const IndexMatching& matching);

struct CycleMatchingRecord {
  std::vector<std::size_t> subset;  // B, 1-based
  IndexMatching matching;           // on positions of B, 1-based
  GapSequence gaps;
  std::size_t attempts = 0;
};

struct CycleMatchingModel {
  Graph graph;
  CycleMatchingRecord record;
};

/// Cycle (1..n, 1) plus a uniform floor(n/4)-edge matching edge-disjoint
/// from the cycle, built in two steps (random B, random matching on B) and
/// then by subdivision. (B, M) is redrawn jointly whenever a matching edge
/// would coincide with a cycle edge. Requires n >= 8.
CycleMatchingModel subdivide_cycle_model(std::size_t n, Seed seed, std::size_t max_attempts = 10'000);

/// Fixed n-cycle plus a uniform m-edge matching disjoint from it, sampled
/// directly through oplus_union.
Graph cycle_plus_matching(std::size_t n, std::size_t m, Seed seed, std::size_t max_attempts = 100'000);

}  // namespace rainbow
