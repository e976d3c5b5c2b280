#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "rainbow/edge_rainbow.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/verify.hpp"
#include "rainbow/vertex_rainbow.hpp"

using namespace rainbow;

namespace {

Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.push_back({u, v});
  return build_graph(n, e);
}

std::vector<std::uint32_t> random_colours(std::size_t count, std::size_t palette, std::mt19937_64& rng) {
  std::vector<std::uint32_t> c(count);
  for (auto& x : c) x = static_cast<std::uint32_t>(rng() % palette);
  return c;
}

LayeredEdgeColouring layered_k6() {
  const Graph g = complete(6);
  std::vector<EdgeId> all(g.edge_count());
  std::iota(all.begin(), all.end(), 0U);
  EdgeSplit split{{}, {}};
  for (EdgeId id : all) (g.edge(id).u == 0 || id % 2 ? split.edges1 : split.edges2).push_back(id);
  split.edges2.push_back(*g.find_edge(0, 1));
  for (Vertex v = 2; v < 6; ++v) split.edges2.push_back(*g.find_edge(1, v));
  std::sort(split.edges2.begin(), split.edges2.end());
  split.edges2.erase(std::unique(split.edges2.begin(), split.edges2.end()), split.edges2.end());
  return split_colouring(g, split);
}

}  // namespace

TEST_CASE("exact edge search agrees with simple-path enumeration") {
  std::mt19937_64 rng(8);
  int pass = 0, fail = 0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + rng() % 7;
    const Graph g = oracle::random_connected_graph(n, rng() % 12, rng);
    EdgeColouring c{random_colours(g.edge_count(), 1 + rng() % 6, rng), std::nullopt};
    const bool expected = oracle::rainbow_edge_connected(n, oracle::edge_list(g), c.colour);
    const auto report = is_rainbow_edge_connected_exact(g, c);
    CHECK(report.verdict == expected);
    CHECK(report.witness.has_value() == !expected);
    (expected ? pass : fail)++;
  }
  CHECK(pass > 20);
  CHECK(fail > 20);
}

TEST_CASE("exact vertex search agrees with simple-path enumeration") {
  std::mt19937_64 rng(9);
  int pass = 0, fail = 0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + rng() % 8;
    const Graph g = oracle::random_connected_graph(n, rng() % 8, rng);
    VertexColouring c{random_colours(n, 1 + rng() % 4, rng), std::nullopt};
    const bool expected = oracle::rainbow_vertex_connected(n, oracle::edge_list(g), c.colour);
    CHECK(is_rainbow_vertex_connected_exact(g, c).verdict == expected);
    (expected ? pass : fail)++;
  }
  CHECK(pass > 20);
  CHECK(fail > 20);
}

TEST_CASE("exact search reports disconnected graphs and enforces its guard") {
  const std::vector<Edge> two{{0, 1}, {2, 3}};
  const Graph g = build_graph(4, two);
  const auto report = is_rainbow_edge_connected_exact(g, {{0, 1}, std::nullopt});
  CHECK_FALSE(report.verdict);
  REQUIRE(report.witness);
  CHECK(report.witness->x == 0);
  CHECK(report.witness->y == 2);

  const Graph big = complete(15);
  std::vector<std::uint32_t> many(big.edge_count());
  std::iota(many.begin(), many.end(), 0U);
  CHECK_THROWS_AS(is_rainbow_edge_connected_exact(big, {many, std::nullopt}), InfeasibleInstance);
  std::vector<std::uint32_t> few(big.edge_count(), 0);
  for (std::size_t i = 0; i < few.size(); ++i) few[i] = static_cast<std::uint32_t>(i % 20);
  CHECK_NOTHROW(is_rainbow_edge_connected_exact(big, {few, std::nullopt}));
  CHECK_THROWS_AS(is_rainbow_edge_connected_exact(big, {{0}, std::nullopt}), InvalidInput);
}

TEST_CASE("certificate paths are simple paths joining the pair") {
  const auto lay = layered_k6();
  const Graph g = complete(6);
  REQUIRE(lay.colouring.certificate);
  for (Vertex x = 0; x < 6; ++x)
    for (Vertex y = 0; y < 6; ++y) {
      if (x == y) continue;
      const auto path = certificate_path(g, *lay.colouring.certificate, x, y);
      REQUIRE(path.size() >= 2);
      CHECK(path.front() == x);
      CHECK(path.back() == y);
      std::set<Vertex> distinct(path.begin(), path.end());
      CHECK(distinct.size() == path.size());
    }
  const auto report = check_certificate(g, lay.colouring, PairSelection::every_pair());
  CHECK(report.verdict);
  CHECK(report.pairs_checked == 15);
  CHECK(report.method == VerifyMethod::kCertificate);
  const auto sampled = check_certificate(g, lay.colouring, PairSelection::sample(40, 1));
  CHECK(sampled.pairs_checked == 40);
  CHECK(sampled.method == VerifyMethod::kSampled);
}

TEST_CASE("tampered certificates are rejected") {
  const Graph g = complete(6);
  auto lay = layered_k6();
  auto missing = lay.colouring;
  missing.certificate.reset();
  CHECK_THROWS_AS(check_certificate(g, missing, PairSelection::every_pair()), CertificateError);

  auto layers = lay.colouring;
  layers.certificate->layers1[3] += 1;
  CHECK_THROWS_AS(check_certificate(g, layers, PairSelection::every_pair()), CertificateError);

  auto recoloured = lay.colouring;
  for (auto& c : recoloured.colour) c = 0;
  CHECK_THROWS_AS(check_certificate(g, recoloured, PairSelection::every_pair()), CertificateError);

  auto root = lay.colouring;
  root.certificate->root = 9;
  CHECK_THROWS_AS(check_certificate(g, root, PairSelection::every_pair()), CertificateError);
}

TEST_CASE("vertex certificate check on a path split") {
  // Path 0-1-2-3-4-5 split into {0,...,4} and {1,...,5}.
  std::vector<Edge> path;
  for (Vertex v = 0; v < 5; ++v) path.push_back({v, v + 1});
  const Graph g = build_graph(6, path);
  const auto lay = vertex_split_colouring(g, {{0, 1, 2, 3, 4}, {1, 2, 3, 4, 5}});
  CHECK(check_certificate(g, lay.colouring, PairSelection::every_pair()).verdict);
  CHECK(is_rainbow_vertex_connected_exact(g, lay.colouring).verdict);
  auto broken = lay.colouring;
  broken.certificate->root2 = 5;
  CHECK_THROWS_AS(check_certificate(g, broken, PairSelection::every_pair()), CertificateError);
}

TEST_CASE("density audit matches bitmask enumeration") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + rng() % 13;
    const Graph g = oracle::random_connected_graph(n, rng() % 30, rng);
    const double d = 1.0 + static_cast<double>(rng() % 40) / 10.0;
    const std::size_t k = 1 + rng() % n;
    const auto audit = density_audit(g, d, k);
    CHECK(audit.exhaustive);
    const double expected = oracle::max_density_excess(n, oracle::edge_list(g), d, k);
    CHECK(audit.worst_excess == doctest::Approx(expected));
    CHECK(audit.verdict == (expected < 0));
    CHECK(audit.worst_set.size() <= k);
  }
}

TEST_CASE("density audit tie-break and sampling fallback") {
  // Path 0-1-2 with d = 2: singletons, edges and the whole path all have
  // excess -1; the tie goes to the smallest, then first, set {0}.
  const std::vector<Edge> p3{{0, 1}, {1, 2}};
  const auto audit = density_audit(build_graph(3, p3), 2.0, 3);
  CHECK(audit.worst_excess == doctest::Approx(-1.0));
  CHECK(audit.worst_set == std::vector<Vertex>{0});
  CHECK(audit.verdict);
  // d = 1 on the same path: the whole path is worst (2 - 1.5).
  const auto loose = density_audit(build_graph(3, p3), 1.0, 3);
  CHECK(loose.worst_excess == doctest::Approx(0.5));
  CHECK(loose.worst_set == std::vector<Vertex>{0, 1, 2});
  CHECK_FALSE(loose.verdict);

  const Graph big = complete(40);
  const auto sampled = density_audit(big, 100.0, 30, 500, 3);
  CHECK_FALSE(sampled.exhaustive);
  CHECK(sampled.verdict);
  CHECK(sampled.sets_checked > 500);
}

TEST_CASE("pairing edge probability: exact enumeration") {
  // n=2, r=2: points {0,1 | 2,3}; two of the three pairings join the cells.
  CHECK(exact_pairing_edge_probability(2, 2, {{0, 1}}) == Rational(2, 3));
  // Independent count for n=4, r=2 with two prescribed edges.
  const std::vector<Edge> e0{{0, 1}, {2, 3}};
  std::int64_t hits = 0, total = 0;
  oracle::for_each_perfect_matching(8, [&](const std::vector<int>& mate) {
    ++total;
    bool all = true;
    for (const Edge& e : e0) {
      bool found = false;
      for (int p = 0; p < 8; ++p) found = found || (p / 2 == static_cast<int>(e.u) && mate[p] / 2 == static_cast<int>(e.v));
      all = all && found;
    }
    hits += all;
  });
  CHECK(exact_pairing_edge_probability(4, 2, e0) == Rational(hits, total));
  CHECK_THROWS_AS(exact_pairing_edge_probability(9, 2, {{0, 1}}), InfeasibleInstance);
  CHECK_THROWS_AS(exact_pairing_edge_probability(2, 2, {{0, 0}}), InvalidInput);
}

TEST_CASE("pairing edge probability: Monte Carlo") {
  const auto report = mc_pairing_edge_probability(40, 4, {{0, 1}, {2, 3}, {4, 5}}, 10'000, 1);
  CHECK(report.consistent);
  CHECK(report.bound == doctest::Approx(2 * std::pow(0.2, 3)));
  CHECK(report.ci_low <= report.estimate);
  CHECK(report.estimate <= report.ci_high);
  // Exact reference at n=4, r=2 (8 points) against the sampler.
  const Rational exact = exact_pairing_edge_probability(4, 2, {{0, 1}});
  const auto small = mc_pairing_edge_probability(4, 2, {{0, 1}}, 20'000, 2);
  const double p = boost::rational_cast<double>(exact);
  CHECK(std::abs(small.estimate - p) < 4 * std::sqrt(p * (1 - p) / 20'000));
  CHECK_THROWS_AS(mc_pairing_edge_probability(40, 4, {{0, 1}}, 100, 0), InvalidInput);
}

TEST_CASE("gap tail: exact enumeration against a bitmask oracle") {
  const std::size_t n = 12, m = 3;
  const std::vector<std::size_t> idx{0, 5};
  std::int64_t hits = 0, total = 0, over_ln = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != 2 * m) continue;
    std::vector<std::size_t> b;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1) b.push_back(i + 1);
    std::vector<std::size_t> y{b[0]};
    for (std::size_t i = 1; i < b.size(); ++i) y.push_back(b[i] - b[i - 1]);
    y.push_back(n - b.back());
    ++total;
    hits += y[0] + y[5] > 20;
    over_ln += static_cast<double>(y[6]) > std::log(12.0);
  }
  const auto exact = exact_gap_tail(n, m, idx);
  CHECK(exact.tail == Rational(hits, total));
  CHECK(exact.last_gap_over_ln == Rational(over_ln, total));
  CHECK(exact.bound == doctest::Approx(std::exp(-4.0)));
  CHECK_THROWS_AS(exact_gap_tail(12, 3, {6}), InvalidInput);
}

TEST_CASE("gap tail: Monte Carlo agrees with enumeration") {
  const std::size_t n = 12, m = 3;
  const auto exact = exact_gap_tail(n, m, {2});
  const auto mc = mc_gap_tail(n, m, {2}, 40'000, 5);
  const double p = boost::rational_cast<double>(exact.last_gap_over_ln);
  CHECK(std::abs(mc.last_gap_over_ln - p) < 4 * std::sqrt(p * (1 - p) / 40'000));
  const double q = boost::rational_cast<double>(exact.last_gap_over_log2);
  CHECK(std::abs(mc.last_gap_over_log2 - q) < 4 * std::sqrt(q * (1 - q) / 40'000));
}

TEST_CASE("cycle plus perfect matching diameters at n=6 and n=8") {
  for (std::size_t n : {6, 8}) {
    std::map<std::uint32_t, std::size_t> expected;
    oracle::for_each_perfect_matching(n, [&](const std::vector<int>& mate) {
      std::vector<Edge> edges;
      for (Vertex v = 0; v < n; ++v) {
        const auto w = static_cast<Vertex>(mate[v]);
        const auto d = v > w ? v - w : w - v;
        if (d == 1 || d == n - 1) return;
        edges.push_back({v, static_cast<Vertex>((v + 1) % n)});
        if (v < w) edges.push_back({v, w});
      }
      ++expected[static_cast<std::uint32_t>(oracle::diameter(n, edges))];
    });
    CHECK(exact_cycle_matching_diameters(n) == expected);
  }
}

TEST_CASE("diameter statistics and median") {
  CHECK(median({3, 1, 2}) == 2);
  CHECK(median({4, 1, 2, 3}) == 2.5);
  const auto rows = diameter_statistics(DiameterModel::kCyclePerfectMatching, {64, 128}, 5, 1);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].min <= rows[0].median);
  CHECK(rows[0].median <= rows[0].max);
  CHECK(rows[1].median_over_log2 == doctest::Approx(rows[1].median / 7.0));
  const auto quarter = sample_diameter_model(DiameterModel::kCycleQuarterMatching, 64, 0, 3);
  CHECK(quarter.edge_count() == 64 + 16);
}
