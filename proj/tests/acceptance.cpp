// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "rainbow/edge_rainbow.hpp"
#include "rainbow/experiment.hpp"
#include "rainbow/random_models.hpp"
#include "rainbow/verify.hpp"
#include "rainbow/vertex_rainbow.hpp"

using namespace rainbow;

namespace {

// Pinned limits.
constexpr double kSplitSeconds = 10;
constexpr double kMinDegreeSeconds = 60;
constexpr double kScalingSeconds = 300;
constexpr double kDiameterSeconds = 120;
constexpr double kPartitionSeconds = 120;
constexpr std::size_t kAllPairsMaxN = 512;     // larger instances replay sampled pairs
constexpr std::size_t kSampledPairs = 20'000;
constexpr double kDiameterSpreadLimit = 0.25;  // (max - min) / min of median diam / ln n
constexpr double kGapSlack = 0;                // enumeration is exact

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x, int digits = 3) {
  std::ostringstream out;
  out.precision(digits);
  out << x;
  return out.str();
}

Graph random_connected(std::size_t n, std::size_t extra, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back({static_cast<Vertex>(rng() % v), v});
  for (std::size_t i = 0; i < extra; ++i) {
    const auto a = static_cast<Vertex>(rng() % n), b = static_cast<Vertex>(rng() % n);
    if (a != b) edges.push_back({a, b});
  }
  return build_graph(n, edges);
}

// Uniformly shuffled Kruskal tree.
EdgeSubset random_tree(const Graph& g, std::mt19937_64& rng) {
  std::vector<EdgeId> order(g.edge_count());
  std::iota(order.begin(), order.end(), EdgeId{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Vertex> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  EdgeSubset tree;
  for (EdgeId id : order) {
    const Vertex a = find(g.edge(id).u), b = find(g.edge(id).v);
    if (a == b) continue;
    parent[a] = b;
    tree.push_back(id);
  }
  return tree;
}

// A random spanning tree per side; every edge also joins side 1, side 2 or
// both at random.
EdgeSplit random_split(const Graph& g, std::mt19937_64& rng) {
  EdgeSplit split{random_tree(g, rng), random_tree(g, rng)};
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const auto pick = rng() % 4;
    if (pick == 0 || pick == 2) split.edges1.push_back(id);
    if (pick == 1 || pick == 2) split.edges2.push_back(id);
  }
  for (auto* side : {&split.edges1, &split.edges2}) {
    std::sort(side->begin(), side->end());
    side->erase(std::unique(side->begin(), side->end()), side->end());
  }
  return split;
}

Outcome split_bound() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1);
  std::size_t violations = 0, max_n = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + rng() % 49;
    max_n = std::max(max_n, n);
    const Graph g = random_connected(n, rng() % (3 * n), rng);
    const EdgeSplit split = random_split(g, rng);
    const auto lay = split_colouring(g, split);
    const std::size_t bound = diameter(spanning_subgraph(g, split.edges1)) +
                              diameter(spanning_subgraph(g, split.edges2)) + split.shared().size();
    if (lay.colouring.colours_used() > bound || lay.bound() != bound) ++violations;
  }
  const double secs = seconds_since(start);
  return {violations == 0 && secs < kSplitSeconds,
          "500 instances, n <= " + std::to_string(max_n) + ", violations=" + std::to_string(violations) +
              ", " + fmt(secs) + "s"};
}

// Every labelled graph on n vertices with minimum degree >= 4, via its
// complement (maximum degree <= n - 5).
void for_each_dense_graph(std::size_t n, const std::function<void(const Graph&)>& visit) {
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) pairs.push_back({u, v});
  const std::size_t cap = n - 5;
  std::vector<std::size_t> deg(n, 0);
  std::vector<char> removed(pairs.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == pairs.size()) {
      std::vector<Edge> kept;
      for (std::size_t k = 0; k < pairs.size(); ++k)
        if (!removed[k]) kept.push_back(pairs[k]);
      visit(build_graph(n, kept));
      return;
    }
    rec(i + 1);
    const Edge& e = pairs[i];
    if (deg[e.u] < cap && deg[e.v] < cap) {
      ++deg[e.u], ++deg[e.v];
      removed[i] = 1;
      rec(i + 1);
      removed[i] = 0;
      --deg[e.u], --deg[e.v];
    }
  };
  rec(0);
}

Outcome rainbow_soundness() {
  std::size_t checked = 0, failures = 0;
  auto check = [&](const Graph& g) {
    if (!is_connected(g) || g.min_degree() < 4) return;
    ++checked;
    try {
      const auto result = rc_min_degree(g);
      if (!is_rainbow_edge_connected_exact(g, result.layered.colouring).verdict) ++failures;
    } catch (const std::exception&) {
      ++failures;
    }
  };
  std::size_t exhaustive = 0;
  for (std::size_t n : {5, 6, 7}) for_each_dense_graph(n, check);
  exhaustive = checked;
  // n = 8: random complements of maximum degree <= 3.
  std::mt19937_64 rng(8);
  std::size_t random = 0;
  while (random < 10'000) {
    std::vector<std::vector<char>> adj(8, std::vector<char>(8, 1));
    std::vector<int> deg(8, 7);
    for (int k = 0; k < 14; ++k) {
      const auto a = static_cast<Vertex>(rng() % 8), b = static_cast<Vertex>(rng() % 8);
      if (a == b || !adj[a][b] || deg[a] == 4 || deg[b] == 4) continue;
      adj[a][b] = adj[b][a] = 0;
      --deg[a], --deg[b];
    }
    std::vector<Edge> edges;
    for (Vertex u = 0; u < 8; ++u)
      for (Vertex v = u + 1; v < 8; ++v)
        if (adj[u][v]) edges.push_back({u, v});
    check(build_graph(8, edges));
    ++random;
  }
  return {failures == 0, std::to_string(exhaustive) + " labelled graphs (n=5..7, all) + " +
                             std::to_string(random) + " random (n=8), failures=" + std::to_string(failures)};
}

Graph connected_regular(std::size_t n, std::size_t r, Seed seed) {
  for (std::uint64_t round = 0;; ++round) {
    Graph g = sample_simple_regular(n, r, derive_seed(seed, {round}));
    if (is_connected(g)) return g;
  }
}

Outcome mindeg_bound() {
  const auto start = Clock::now();
  std::size_t failures = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const std::size_t n = 60 + 240 * i / 99;
    const Graph g = connected_regular(n, 6, derive_seed(3, {i}));
    try {
      const auto result = rc_min_degree(g);
      const bool ok = result.layered.colouring.colours_used() <= (16 * n + 5) / 6 &&
                      check_certificate(g, result.layered.colouring, PairSelection::every_pair()).verdict;
      if (!ok) ++failures;
    } catch (const std::exception&) {
      ++failures;
    }
  }
  const double secs = seconds_since(start);
  return {failures == 0 && secs < kMinDegreeSeconds,
          "100 graphs, n=60..300, failures=" + std::to_string(failures) + ", " + fmt(secs) + "s"};
}

Outcome regular_scaling() {
  const auto start = Clock::now();
  std::size_t failures = 0;
  std::ostringstream detail;
  bool trend_ok = true;
  for (std::size_t r : {6, 5}) {
    std::vector<double> ratio, logs, medians;
    detail << "r=" << r << " colours/ln n:";
    for (std::size_t k = 7; k <= 13; ++k) {
      const std::size_t n = (std::size_t{1} << k) + (r == 6 ? 1 : 0);
      std::vector<double> colours;
      for (std::size_t t = 0; t < 10; ++t) {
        try {
          const auto result = rc_random_regular(n, r, derive_seed(4, {n, r, t}));
          const auto pairs = n <= kAllPairsMaxN ? PairSelection::every_pair()
                                                : PairSelection::sample(kSampledPairs, derive_seed(5, {n, t}));
          if (!check_certificate(result.graph, result.layered.colouring, pairs).verdict) ++failures;
          colours.push_back(static_cast<double>(result.layered.colouring.colours_used()));
        } catch (const std::exception&) {
          ++failures;
        }
      }
      logs.push_back(std::log(static_cast<double>(n)));
      medians.push_back(median(colours));
      ratio.push_back(medians.back() / logs.back());
      detail << ' ' << fmt(ratio.back());
    }
    // Top three doublings: the last four grid points.
    for (std::size_t i = ratio.size() - 3; i < ratio.size(); ++i) trend_ok = trend_ok && ratio[i] <= ratio[i - 1];
    // Least-squares fit median = a ln n + b; b < 0 means the ratio rises towards a.
    const double k = static_cast<double>(logs.size());
    const double sx = std::accumulate(logs.begin(), logs.end(), 0.0);
    const double sy = std::accumulate(medians.begin(), medians.end(), 0.0);
    const double sxy = std::inner_product(logs.begin(), logs.end(), medians.begin(), 0.0);
    const double sxx = std::inner_product(logs.begin(), logs.end(), logs.begin(), 0.0);
    const double a = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    detail << " (fit a=" << fmt(a) << ", b=" << fmt((sy - a * sx) / k) << "); ";
  }
  const double secs = seconds_since(start);
  detail << "failures=" << failures << ", " << fmt(secs) << "s";
  return {failures == 0 && trend_ok && secs < kScalingSeconds, detail.str()};
}

Outcome diameter_empirics() {
  const auto start = Clock::now();
  std::ostringstream detail;
  const auto perfect = diameter_statistics(DiameterModel::kCyclePerfectMatching, {4096}, 50, 6);
  const double log2n = 12;
  const bool in_window = perfect[0].median >= log2n && perfect[0].median <= 1.5 * log2n;
  detail << "cycle+perfect matching n=4096 median diam " << fmt(perfect[0].median) << " in [12, 18]";
  const auto quarter = diameter_statistics(DiameterModel::kCycleQuarterMatching, {512, 1024, 2048, 4096}, 50, 7);
  double lo = 1e9, hi = 0;
  detail << "; quarter matching diam/ln n:";
  for (const auto& row : quarter) {
    lo = std::min(lo, row.median_over_ln);
    hi = std::max(hi, row.median_over_ln);
    detail << ' ' << fmt(row.median_over_ln);
  }
  const double spread = (hi - lo) / lo;
  const double secs = seconds_since(start);
  detail << " (spread " << fmt(spread) << " < " << kDiameterSpreadLimit << "), " << fmt(secs) << "s";
  return {in_window && spread < kDiameterSpreadLimit && secs < kDiameterSeconds, detail.str()};
}

Outcome partition_check() {
  const auto start = Clock::now();
  std::size_t violations = 0, max_resamples = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const Graph g = sample_simple_regular(500, 28, derive_seed(9, {i}));
    try {
      const auto part = lll_partition(g, {}, derive_seed(10, {i}));
      max_resamples = std::max(max_resamples, part.resamples);
      std::vector<char> side(500, 0);
      for (Vertex v : part.part1) side[v] = 1;
      for (Vertex v = 0; v < 500; ++v) {
        std::size_t ones = 0;
        for (Vertex u : g.neighbours(v)) ones += side[u];
        if (ones < 4 || 28 - ones < 4) ++violations;
      }
      if (part.resamples > 50 * 500) ++violations;
    } catch (const std::exception&) {
      ++violations;
    }
  }
  const double secs = seconds_since(start);
  return {violations == 0 && secs < kPartitionSeconds,
          "100 graphs n=500 r=28, max resamples=" + std::to_string(max_resamples) +
              ", violations=" + std::to_string(violations) + ", " + fmt(secs) + "s"};
}

Outcome vertex_bound() {
  std::size_t bound_failures = 0, rvc_count = 0;
  for (std::size_t n : {60, 120}) {
    for (std::size_t t = 0; t < 10; ++t) {
      try {
        const auto result = rvc_random_regular(n, 28, derive_seed(11, {n, t}));
        const auto& split = result.split;
        const std::size_t shared = split.shared().size();
        const std::size_t bound = diameter(induced_subgraph(result.graph, split.side1).graph) +
                                  diameter(induced_subgraph(result.graph, split.side2).graph) + shared + 2;
        if (result.layered.colouring.colours_used() > bound || result.layered.bound() != bound) ++bound_failures;
      } catch (const std::exception&) {
        ++bound_failures;
      }
      ++rvc_count;
    }
  }
  // Synthetic splits on small graphs: every valid one is checked exactly.
  std::mt19937_64 rng(12);
  std::size_t small = 0, small_failures = 0;
  for (int t = 0; t < 5000; ++t) {
    const std::size_t n = 3 + rng() % 8;
    const Graph g = random_connected(n, rng() % 15, rng);
    VertexSplit split;
    for (Vertex v = 0; v < n; ++v) {
      const auto pick = rng() % 5;  // 0,1: side 1 only; 2,3: side 2 only; 4: both
      if (pick != 2 && pick != 3) split.side1.push_back(v);
      if (pick >= 2) split.side2.push_back(v);
    }
    LayeredVertexColouring lay;
    try {
      lay = vertex_split_colouring(g, split);
    } catch (const SplitConditionError&) {
      continue;
    }
    ++small;
    if (lay.colouring.colours_used() > lay.bound() ||
        !is_rainbow_vertex_connected_exact(g, lay.colouring).verdict) {
      ++small_failures;
    }
  }
  return {bound_failures == 0 && small_failures == 0 && small > 0,
          std::to_string(rvc_count) + " rvc instances (n=60,120, r=28), bound failures=" +
              std::to_string(bound_failures) + "; " + std::to_string(small) +
              " synthetic splits n<=10, exact failures=" + std::to_string(small_failures)};
}

Outcome pairing_probability() {
  const Rational exact = exact_pairing_edge_probability(2, 2, {{0, 1}});
  const double exact_bound = 2 * std::pow(2.0 * 2 / 2, 1);
  const auto mc = mc_pairing_edge_probability(40, 4, {{0, 1}, {2, 3}, {4, 5}}, 100'000, 13);
  const bool ok = exact == Rational(2, 3) && boost::rational_cast<double>(exact) <= exact_bound &&
                  mc.estimate - 3 * mc.sigma <= mc.bound;
  return {ok, "exact n=2 r=2: " + std::to_string(exact.numerator()) + "/" + std::to_string(exact.denominator()) +
                  " <= " + fmt(exact_bound) + "; MC n=40 r=4 m=3: " + fmt(mc.estimate) + " - 3*" +
                  fmt(mc.sigma) + " <= " + fmt(mc.bound)};
}

Outcome gap_sequences() {
  std::size_t roundtrip_failures = 0, subsets = 0;
  for (std::uint32_t mask = 1; mask < (1u << 12); ++mask) {
    if (std::popcount(mask) % 2 != 0) continue;
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < 12; ++i)
      if ((mask >> i) & 1) subset.push_back(i + 1);
    ++subsets;
    if (subset_from_gap_sequence(gap_sequence_from_subset(subset, 12)) != subset) ++roundtrip_failures;
  }
  const auto exact = exact_gap_tail(12, 3, {1, 2});
  const double exact_tail = boost::rational_cast<double>(exact.tail);
  bool ok = roundtrip_failures == 0 && exact_tail <= exact.bound + kGapSlack;
  std::ostringstream detail;
  detail << subsets << " subsets round-tripped; exact tail n=12 m=3 s=2: " << exact.tail.numerator() << "/"
         << exact.tail.denominator() << " <= e^-4; MC n=1000 m=250:";
  for (std::size_t s : {1, 2, 5}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 1; i <= s; ++i) idx.push_back(i);
    const auto mc = mc_gap_tail(1000, 250, idx, 100'000, derive_seed(14, {s}));
    ok = ok && mc.tail.estimate - 3 * mc.tail.sigma <= mc.tail.bound;
    detail << " s=" << s << ": " << fmt(mc.tail.estimate) << " vs " << fmt(mc.tail.bound) << ";";
  }
  return {ok, detail.str()};
}

Outcome expander_splitter() {
  std::vector<Edge> k16;
  for (Vertex u = 0; u < 16; ++u)
    for (Vertex v = u + 1; v < 16; ++v) k16.push_back({u, v});
  const auto result = expander_split(build_graph(16, k16), 0.5, 15, 100);
  const bool halves = result.expansion1 >= Rational(2) && result.expansion2 >= Rational(2);
  bool exhausted = false;
  const std::vector<Edge> c4{{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  try {
    expander_split(build_graph(4, c4), 0.5, 15, 100);
  } catch (const ExpanderSplitFailed&) {
    exhausted = true;
  }
  std::ostringstream detail;
  detail << "K16: " << result.attempts << " attempts, halves " << result.expansion1 << " and "
         << result.expansion2 << "; C4 exhausted 100 retries: " << (exhausted ? "yes" : "no");
  return {halves && result.attempts <= 100 && exhausted, detail.str()};
}

Outcome determinism() {
  const std::vector<Json> configs{
      {{"id", "det-mindeg"}, {"kind", "mindeg"}, {"n", {50, 80}}, {"r", {6}}, {"trials", 3}, {"seed", 21}},
      {{"id", "det-regular"}, {"kind", "regular"}, {"n", {64, 65}}, {"r", {5, 6, 7}}, {"trials", 2}, {"seed", 22}},
      {{"id", "det-rvc"}, {"kind", "rvc"}, {"n", {60}}, {"r", {28}}, {"trials", 2}, {"seed", 23}},
      {{"id", "det-diam"}, {"kind", "diameter"}, {"model", "cycle-quarter-matching"}, {"n", {64, 128}},
       {"trials", 3}, {"seed", 24}}};
  std::size_t identical = 0;
  for (const auto& doc : configs) {
    auto config = config_from_json(doc);
    std::ostringstream a, b;
    write_csv(a, run_experiment(config).rows);
    config.threads = 2;
    write_csv(b, run_experiment(config).rows);
    identical += a.str() == b.str();
  }
  return {identical == configs.size(),
          std::to_string(identical) + "/" + std::to_string(configs.size()) + " configs byte-identical on rerun"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 layered edge colouring bound", split_bound},
      {"2 min-degree rainbow soundness", rainbow_soundness},
      {"3 min-degree colour bound on 6-regular graphs", mindeg_bound},
      {"4 random regular scaling", regular_scaling},
      {"5 cycle-plus-matching diameters", diameter_empirics},
      {"6 local lemma partition", partition_check},
      {"7 vertex colouring bound and soundness", vertex_bound},
      {"8 pairing edge probability", pairing_probability},
      {"9 gap sequences", gap_sequences},
      {"10 expander splitter", expander_splitter},
      {"11 experiment determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failed += outcome.pass ? 0 : 1;
    std::printf("[%s] %s: %s\n", outcome.pass ? "PASS" : "FAIL", name, outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failed;
}
