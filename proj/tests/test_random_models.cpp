#include <boost/math/distributions/chi_squared.hpp>
#include <map>

#include "doctest.h"
#include "oracles.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/random_models.hpp"

using namespace rainbow;

namespace {

// Pearson statistic against expected probabilities; bins with expected
// count below 5 are pooled. Returns (statistic, critical value at 1e-3).
template <typename Key>
std::pair<double, double> chi_square(const std::map<Key, double>& probability,
                                     const std::map<Key, std::size_t>& observed, std::size_t trials) {
  double stat = 0, pooled_expected = 0, pooled_observed = 0;
  std::size_t bins = 0;
  for (const auto& [key, p] : probability) {
    const double expected = p * static_cast<double>(trials);
    const auto it = observed.find(key);
    const double seen = it == observed.end() ? 0.0 : static_cast<double>(it->second);
    if (expected < 5) {
      pooled_expected += expected;
      pooled_observed += seen;
      continue;
    }
    stat += (seen - expected) * (seen - expected) / expected;
    ++bins;
  }
  if (pooled_expected > 0) {
    stat += (pooled_observed - pooled_expected) * (pooled_observed - pooled_expected) / pooled_expected;
    ++bins;
  }
  for (const auto& [key, count] : observed) REQUIRE(probability.count(key) == 1);
  const boost::math::chi_squared dist(static_cast<double>(bins - 1));
  return {stat, boost::math::quantile(boost::math::complement(dist, 1e-3))};
}

std::vector<std::size_t> chord_lengths(const Graph& g, std::size_t n) {
  std::vector<std::size_t> lengths;
  for (const Edge& e : g.edges()) {
    const std::size_t d = e.v - e.u;
    const std::size_t cyc = std::min(d, n - d);
    if (cyc > 1) lengths.push_back(cyc);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

}  // namespace

TEST_CASE("pairing is a perfect matching on n*r points") {
  const auto p = sample_pairing(7, 4, 3);
  REQUIRE(p.mate.size() == 28);
  for (std::uint32_t i = 0; i < 28; ++i) {
    CHECK(p.mate[i] != i);
    CHECK(p.mate[p.mate[i]] == i);
  }
  const auto mg = p.to_multigraph();
  for (Vertex v = 0; v < 7; ++v) CHECK(mg.degree(v) == 4);
  CHECK_THROWS_AS(sample_pairing(3, 3, 0), InvalidInput);
}

TEST_CASE("pairing is uniform over the 15 matchings of 6 points") {
  std::map<std::vector<std::uint32_t>, double> probability;
  oracle::for_each_perfect_matching(6, [&](const std::vector<int>& mate) {
    probability[{mate.begin(), mate.end()}] = 1.0 / 15;
  });
  REQUIRE(probability.size() == 15);
  std::map<std::vector<std::uint32_t>, std::size_t> observed;
  const std::size_t trials = 30'000;
  for (std::size_t t = 0; t < trials; ++t) ++observed[sample_pairing(2, 3, derive_seed(17, {t})).mate];
  const auto [stat, critical] = chi_square(probability, observed, trials);
  CHECK(stat < critical);
}

TEST_CASE("rejection sampler is uniform over labelled cubic graphs on 6 vertices") {
  // Oracle: every 9-edge subset of K6 that is 3-regular.
  std::vector<Edge> all;
  for (Vertex u = 0; u < 6; ++u)
    for (Vertex v = u + 1; v < 6; ++v) all.push_back({u, v});
  std::map<std::vector<Edge>, double> probability;
  for (std::uint32_t mask = 0; mask < (1u << 15); ++mask) {
    if (__builtin_popcount(mask) != 9) continue;
    std::vector<int> deg(6, 0);
    std::vector<Edge> chosen;
    for (int i = 0; i < 15; ++i) {
      if ((mask >> i) & 1) {
        ++deg[all[i].u];
        ++deg[all[i].v];
        chosen.push_back(all[i]);
      }
    }
    if (std::all_of(deg.begin(), deg.end(), [](int d) { return d == 3; })) probability[chosen] = 0;
  }
  REQUIRE(probability.size() == 70);
  for (auto& [key, p] : probability) p = 1.0 / 70;
  std::map<std::vector<Edge>, std::size_t> observed;
  const std::size_t trials = 14'000;
  for (std::size_t t = 0; t < trials; ++t) {
    const Graph g = sample_simple_regular(6, 3, derive_seed(23, {t}), 1000, RegularSampler::kRejection);
    ++observed[oracle::edge_list(g)];
  }
  const auto [stat, critical] = chi_square(probability, observed, trials);
  CHECK(stat < critical);
}

TEST_CASE("simple regular samplers give simple regular graphs") {
  for (auto sampler : {RegularSampler::kRejection, RegularSampler::kStegerWormald, RegularSampler::kAuto}) {
    for (std::size_t r : {3, 4, 6}) {
      const Graph g = sample_simple_regular(50, r, 9, kDefaultRegularAttempts, sampler);
      CHECK(g.min_degree() == r);
      CHECK(g.max_degree() == r);
      CHECK(g.edge_count() == 25 * r);
    }
  }
  const Graph dense = sample_simple_regular(100, 28, 4);
  CHECK(dense.min_degree() == 28);
  CHECK(dense.max_degree() == 28);
  CHECK_THROWS_AS(sample_simple_regular(5, 3, 0), InvalidInput);
  CHECK_THROWS_AS(sample_simple_regular(4, 4, 0), InvalidInput);
}

TEST_CASE("samplers are deterministic per seed") {
  CHECK(sample_simple_regular(40, 5, 1) == sample_simple_regular(40, 5, 1));
  CHECK_FALSE(sample_simple_regular(40, 5, 1) == sample_simple_regular(40, 5, 2));
  CHECK(random_hamiltonian_cycle(30, 8) == random_hamiltonian_cycle(30, 8));
}

TEST_CASE("Hamiltonian cycles and matchings") {
  const Graph h = random_hamiltonian_cycle(25, 4);
  CHECK(h.edge_count() == 25);
  CHECK(h.min_degree() == 2);
  CHECK(h.max_degree() == 2);
  CHECK(is_connected(h));
  const Graph m = random_matching(25, 12, 4);
  CHECK(m.edge_count() == 12);
  CHECK(m.max_degree() == 1);
  CHECK_THROWS_AS(random_matching(5, 3, 0), InvalidInput);
  CHECK_THROWS_AS(cycle_graph(2), InvalidInput);
}

TEST_CASE("oplus union is edge-disjoint and records its parts") {
  const std::vector<GeneratorSpec> parts{GeneratorSpec::hamiltonian_cycle(), GeneratorSpec::hamiltonian_cycle(),
                                         GeneratorSpec::matching(10)};
  const auto result = oplus_union(40, parts, 5, 100'000);
  CHECK(result.graph.edge_count() == 90);
  CHECK(result.graph.min_degree() >= 4);
  std::vector<EdgeId> all;
  for (const auto& p : result.parts) all.insert(all.end(), p.begin(), p.end());
  std::sort(all.begin(), all.end());
  CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
  CHECK(all.size() == result.graph.edge_count());

  const std::vector<GeneratorSpec> clash{GeneratorSpec::fixed_graph(cycle_graph(6)),
                                         GeneratorSpec::fixed_graph(cycle_graph(6))};
  CHECK_THROWS_AS(oplus_union(6, clash, 0, 1'000'000), AttemptsExhausted);
}

TEST_CASE("gap sequences are a bijection on even subsets of [12]") {
  std::size_t count = 0;
  for (std::uint32_t mask = 1; mask < (1u << 12); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size % 2 != 0) continue;
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < 12; ++i)
      if ((mask >> i) & 1) subset.push_back(i + 1);
    const auto gaps = gap_sequence_from_subset(subset, 12);
    REQUIRE(gaps.gaps.size() == subset.size() + 1);
    std::size_t sum = 0;
    for (auto y : gaps.gaps) sum += y;
    CHECK(sum == 12);
    CHECK(subset_from_gap_sequence(gaps) == subset);
    ++count;
  }
  CHECK(count == 2047);
  const std::vector<std::size_t> odd{1, 2, 3};
  CHECK_THROWS_AS(gap_sequence_from_subset(odd, 12), InvalidInput);
}

TEST_CASE("subdivided cycle is the n-cycle plus the mapped matching") {
  const std::vector<std::size_t> subset{2, 5, 7, 11};
  const auto gaps = gap_sequence_from_subset(subset, 12);
  const Graph g = subdivide_cycle(gaps, {{1, 3}, {2, 4}});
  CHECK(g.edge_count() == 14);
  for (Vertex v = 0; v < 12; ++v) CHECK(g.has_edge(v, (v + 1) % 12));
  CHECK(g.has_edge(1, 6));
  CHECK(g.has_edge(4, 10));
}

TEST_CASE("two-step model matches cycle plus a uniform quarter matching at n=12") {
  // Exact law of the sorted chord lengths over all 3-matchings avoiding
  // the cycle edges.
  const std::size_t n = 12;
  std::map<std::vector<std::size_t>, double> probability;
  std::size_t total = 0;
  std::vector<Edge> chords;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (v - u != 1 && v - u != n - 1) chords.push_back({u, v});
  for (std::size_t a = 0; a < chords.size(); ++a)
    for (std::size_t b = a + 1; b < chords.size(); ++b)
      for (std::size_t c = b + 1; c < chords.size(); ++c) {
        std::set<Vertex> ends{chords[a].u, chords[a].v, chords[b].u, chords[b].v, chords[c].u, chords[c].v};
        if (ends.size() != 6) continue;
        std::vector<std::size_t> lengths;
        for (const Edge& e : {chords[a], chords[b], chords[c]}) lengths.push_back(std::min<std::size_t>(e.v - e.u, n - (e.v - e.u)));
        std::sort(lengths.begin(), lengths.end());
        probability[lengths] += 1;
        ++total;
      }
  for (auto& [key, p] : probability) p /= static_cast<double>(total);

  const std::size_t trials = 20'000;
  std::map<std::vector<std::size_t>, std::size_t> two_step, direct;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto model = subdivide_cycle_model(n, derive_seed(31, {t}));
    REQUIRE(model.graph.edge_count() == n + 3);
    ++two_step[chord_lengths(model.graph, n)];
    ++direct[chord_lengths(cycle_plus_matching(n, 3, derive_seed(37, {t})), n)];
  }
  const auto [s1, c1] = chi_square(probability, two_step, trials);
  const auto [s2, c2] = chi_square(probability, direct, trials);
  CHECK(s1 < c1);
  CHECK(s2 < c2);
  CHECK_THROWS_AS(subdivide_cycle_model(7, 0), InvalidInput);
}

TEST_CASE("random subsets are sorted, distinct and in range") {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto s = random_subset(20, 8, rng);
    REQUIRE(s.size() == 8);
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
    CHECK(s.front() >= 1);
    CHECK(s.back() <= 20);
  }
}
