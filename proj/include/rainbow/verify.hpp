#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/edge_rainbow.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/vertex_rainbow.hpp"

namespace rainbow {

enum class VerifyMethod { kExact, kCertificate, kSampled };

const char* to_string(VerifyMethod method);

struct Witness {
  Vertex x = 0;
  Vertex y = 0;
  std::string explanation;
  /// The constructed path (certificate modes) when one was built.
  std::vector<Vertex> path;
};

struct VerifyReport {
  bool verdict = true;
  VerifyMethod method = VerifyMethod::kExact;
  std::size_t pairs_checked = 0;
  std::optional<Witness> witness;  // present iff verdict is false
};

/// Exact rainbow-path search guards: n <= 14 or at most 20 colours, and
/// never more than 128 colours.
inline constexpr std::size_t kExactMaxVertices = 14;
inline constexpr std::size_t kExactMaxColours = 20;

/// Decides, for every vertex pair, whether a path with pairwise distinct
/// edge colours exists. Searches (vertex, used-colour set) states from each
/// source; sound and complete. Throws InfeasibleInstance past the guard.
VerifyReport is_rainbow_edge_connected_exact(const Graph& g, const EdgeColouring& colouring);

/// As above for vertex colourings: a path qualifies when its internal
/// vertices carry distinct colours (single edges always qualify).
VerifyReport is_rainbow_vertex_connected_exact(const Graph& g, const VertexColouring& colouring);

/// Which vertex pairs a certificate check replays.
struct PairSelection {
  bool all = true;
  std::size_t count = 0;
  Seed seed = 0;

  static PairSelection every_pair() { return {}; }
  static PairSelection sample(std::size_t count, Seed seed) { return {false, count, seed}; }
};

/// Validates the certificate against g and the colouring (layers equal BFS
/// distances, palettes match colours), then for each selected pair builds
/// the path of the layered construction and checks its colours. Throws
/// CertificateError on a missing or inconsistent certificate.
VerifyReport check_certificate(const Graph& g, const EdgeColouring& colouring, PairSelection pairs);
VerifyReport check_certificate(const Graph& g, const VertexColouring& colouring, PairSelection pairs);

/// Path the edge certificate prescribes for (x, y), loops removed.
std::vector<Vertex> certificate_path(const Graph& g, const EdgeCertificate& cert, Vertex x, Vertex y);
/// Path the vertex certificate prescribes for (x, y), loops removed.
std::vector<Vertex> certificate_path(const Graph& g, const VertexCertificate& cert, Vertex x, Vertex y);

struct DensityAudit {
  /// True when every checked S has edges(S) < d|S|/2.
  bool verdict = true;
  bool exhaustive = true;
  std::vector<Vertex> worst_set;  // maximises edges(S) - d|S|/2
  std::size_t worst_edges = 0;
  double worst_excess = 0;
  std::size_t sets_checked = 0;
};

inline constexpr std::size_t kDensityExhaustiveMaxSize = 22;

/// Worst subset S (1 <= |S| <= max_size) by edges(S) - d|S|/2. Ties prefer
/// smaller, then lexicographically smaller sets. Exhaustive when
/// max_size <= 22 and the number of candidate sets is at most
/// `exhaustive_limit`; otherwise grows `samples` random connected sets.
DensityAudit density_audit(const Graph& g, double d, std::size_t max_size,
                           std::size_t samples = 100'000, Seed seed = 0,
                           std::uint64_t exhaustive_limit = 200'000'000);

struct MonteCarloReport {
  std::size_t trials = 0;
  std::size_t hits = 0;
  double estimate = 0;
  double sigma = 0;     // binomial standard error
  double ci_low = 0;    // Wilson interval, z = 3
  double ci_high = 0;
  double bound = 0;
  /// False only when estimate - 3 sigma > bound.
  bool consistent = true;
};

/// Frequency of E0 being contained in the edge set of G(P) for a uniform
/// pairing P, against the bound 2 (2r/n)^m. Requires |E0| <= nr/4 and at
/// least 10^4 trials.
MonteCarloReport mc_pairing_edge_probability(std::size_t n, std::size_t r,
                                             const std::vector<Edge>& e0, std::size_t trials,
                                             Seed seed);

/// Exact Pr[E0 in E(G(P))] by enumerating every pairing (n*r <= 16).
Rational exact_pairing_edge_probability(std::size_t n, std::size_t r, const std::vector<Edge>& e0);

struct GapTailReport {
  MonteCarloReport tail;            // Pr[sum of Y at indices > 10 s], bound e^{-2s}
  double last_gap_over_ln = 0;      // Pr[Y_2m > ln n]
  double last_gap_over_log2 = 0;    // Pr[Y_2m > log2 n]
};

/// Gap sequences of uniform 2m-subsets of [n]. `indices` are distinct
/// values in 0..2m-1.
GapTailReport mc_gap_tail(std::size_t n, std::size_t m, const std::vector<std::size_t>& indices,
                          std::size_t trials, Seed seed);

struct ExactGapTail {
  Rational tail;
  Rational last_gap_over_ln;
  Rational last_gap_over_log2;
  double bound = 0;
};

/// Same quantities by enumerating all C(n, 2m) subsets (at most 10^7).
ExactGapTail exact_gap_tail(std::size_t n, std::size_t m, const std::vector<std::size_t>& indices);

enum class DiameterModel { kCyclePerfectMatching, kCycleQuarterMatching, kRegular };

const char* to_string(DiameterModel model);

struct DiameterRow {
  DiameterModel model = DiameterModel::kRegular;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint32_t min = 0;
  double median = 0;
  std::uint32_t max = 0;
  double median_over_log2 = 0;
  double median_over_ln = 0;
};

/// Sample graph for a diameter model. `r` is only used by kRegular.
Graph sample_diameter_model(DiameterModel model, std::size_t n, std::size_t r, Seed seed);

std::vector<DiameterRow> diameter_statistics(DiameterModel model, const std::vector<std::size_t>& n_grid,
                                             std::size_t trials, Seed seed, std::size_t r = 3);

/// Diameter -> number of perfect matchings of [n] disjoint from the n-cycle
/// whose union with the cycle has that diameter (n even, n <= 14).
std::map<std::uint32_t, std::size_t> exact_cycle_matching_diameters(std::size_t n);

double median(std::vector<double> values);

}  // namespace rainbow
