#include "rainbow/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "rainbow/edge_rainbow.hpp"
#include "rainbow/random_models.hpp"
#include "rainbow/verify.hpp"
#include "rainbow/vertex_rainbow.hpp"

namespace rainbow {

namespace {

constexpr const char* kCsvHeader =
    "experiment,kind,model,n,r,trial,seed,colours_used,bound,diam1,diam2,shared,verdict,note,replay";

ExperimentKind parse_kind(const std::string& s) {
  if (s == "mindeg") return ExperimentKind::kMinDegree;
  if (s == "regular") return ExperimentKind::kRegular;
  if (s == "rvc") return ExperimentKind::kVertex;
  if (s == "diameter") return ExperimentKind::kDiameter;
  throw ConfigError("kind", "expected mindeg, regular, rvc or diameter, got \"" + s + "\"");
}

VerifyMode parse_verify(const std::string& s) {
  if (s == "certificate") return VerifyMode::kCertificate;
  if (s == "sample") return VerifyMode::kSample;
  if (s == "exact") return VerifyMode::kExact;
  if (s == "none") return VerifyMode::kNone;
  throw ConfigError("verify", "expected certificate, sample, exact or none, got \"" + s + "\"");
}

DiameterModel parse_diameter_model(const std::string& s) {
  if (s == "cycle-perfect-matching") return DiameterModel::kCyclePerfectMatching;
  if (s == "cycle-quarter-matching") return DiameterModel::kCycleQuarterMatching;
  if (s == "regular") return DiameterModel::kRegular;
  throw ConfigError("model", "unknown diameter model \"" + s + "\"");
}

Graph connected_regular(std::size_t n, std::size_t r, Seed seed) {
  for (std::uint64_t round = 0;; ++round) {
    Graph g = sample_simple_regular(n, r, derive_seed(seed, {round}));
    if (is_connected(g)) return g;
  }
}

template <typename Colouring>
VerifyReport verify_colouring(const Graph& g, const Colouring& colouring, const CellSpec& cell) {
  const Seed pair_seed = derive_seed(cell.seed, {0x7665726966ULL});
  switch (cell.verify) {
    case VerifyMode::kCertificate:
      return check_certificate(g, colouring, PairSelection::every_pair());
    case VerifyMode::kSample:
      return check_certificate(g, colouring, PairSelection::sample(cell.pairs, pair_seed));
    case VerifyMode::kExact:
      if constexpr (std::is_same_v<Colouring, EdgeColouring>) {
        return is_rainbow_edge_connected_exact(g, colouring);
      } else {
        return is_rainbow_vertex_connected_exact(g, colouring);
      }
    case VerifyMode::kNone:
      break;
  }
  return {};
}

void record_verdict(ResultRow& row, const CellSpec& cell, const VerifyReport& report) {
  if (cell.verify == VerifyMode::kNone) {
    row.verdict = "unverified";
    return;
  }
  row.verdict = report.verdict ? "pass" : "fail";
  if (report.witness) {
    row.note = "pair (" + std::to_string(report.witness->x) + "," + std::to_string(report.witness->y) +
               "): " + report.witness->explanation;
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw InvalidInput("unterminated quote in csv line");
  return fields;
}

std::uint64_t parse_u64(const std::string& s, const char* column) {
  std::size_t used = 0;
  std::uint64_t value = 0;
  try {
    value = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw InvalidInput(std::string("csv column ") + column + ": not an unsigned integer: \"" + s + "\"");
  }
  return value;
}

Json flags_for(const std::vector<double>& series) {
  double lo = series.front(), hi = series.front();
  bool increasing = true;
  for (std::size_t i = 1; i < series.size(); ++i) {
    lo = std::min(lo, series[i]);
    hi = std::max(hi, series[i]);
    increasing = increasing && series[i] > series[i - 1];
  }
  // Last three doublings: the final four points, or fewer when absent.
  const std::size_t from = series.size() > 4 ? series.size() - 4 : 0;
  bool tail_non_increasing = true;
  for (std::size_t i = from + 1; i < series.size(); ++i) {
    tail_non_increasing = tail_non_increasing && series[i] <= series[i - 1];
  }
  return {{"monotone_increasing", increasing},
          {"tail_non_increasing", tail_non_increasing},
          {"relative_spread", lo > 0 ? (hi - lo) / lo : 0.0}};
}

}  // namespace

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kMinDegree:
      return "mindeg";
    case ExperimentKind::kRegular:
      return "regular";
    case ExperimentKind::kVertex:
      return "rvc";
    case ExperimentKind::kDiameter:
      return "diameter";
  }
  return "?";
}

const char* to_string(VerifyMode mode) {
  switch (mode) {
    case VerifyMode::kCertificate:
      return "certificate";
    case VerifyMode::kSample:
      return "sample";
    case VerifyMode::kExact:
      return "exact";
    case VerifyMode::kNone:
      return "none";
  }
  return "?";
}

Seed ExperimentConfig::cell_seed(std::size_t n, std::size_t r, std::size_t trial) const {
  return derive_seed(seed, {n, r, trial});
}

CellSpec ExperimentConfig::cell(std::size_t n, std::size_t r, std::size_t trial) const {
  return {kind, model, n, r, cell_seed(n, r, trial), verify, pairs, gamma};
}

ExperimentConfig config_from_json(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("(root)", "config must be a JSON object");
  ExperimentConfig c;
  auto get = [&](const char* field, auto& target, bool required) {
    if (!doc.contains(field)) {
      if (required) throw ConfigError(field, "missing");
      return;
    }
    try {
      doc.at(field).get_to(target);
    } catch (const Json::exception& e) {
      throw ConfigError(field, std::string("wrong type: ") + e.what());
    }
  };
  std::string kind, verify = "certificate";
  get("id", c.id, true);
  get("kind", kind, true);
  c.kind = parse_kind(kind);
  get("model", c.model, false);
  get("n", c.n_values, true);
  get("r", c.r_values, false);
  get("trials", c.trials, false);
  get("seed", c.seed, false);
  get("verify", verify, false);
  c.verify = parse_verify(verify);
  get("pairs", c.pairs, false);
  get("gamma", c.gamma, false);
  get("threads", c.threads, false);

  if (c.id.empty() || c.id.find_first_of(",\"\n") != std::string::npos) {
    throw ConfigError("id", "must be non-empty without commas, quotes or newlines");
  }
  if (c.n_values.empty()) throw ConfigError("n", "n-list is empty");
  if (c.trials == 0) throw ConfigError("trials", "must be positive");
  if (c.threads == 0) throw ConfigError("threads", "must be positive");
  if (c.kind == ExperimentKind::kDiameter) {
    parse_diameter_model(c.model);
    if (c.r_values.empty()) {
      if (c.model == "regular") throw ConfigError("r", "regular diameter model needs an r-list");
      c.r_values = {0};
    }
  } else {
    if (c.r_values.empty()) throw ConfigError("r", "r-list is empty");
    if (c.model.empty()) c.model = "random-regular";
    if (c.model != "random-regular") throw ConfigError("model", "only random-regular is supported for this kind");
  }
  if (c.kind == ExperimentKind::kVertex && (c.gamma <= 0 || c.gamma >= 0.5)) {
    throw ConfigError("gamma", "must lie in (0, 1/2)");
  }
  if (c.verify == VerifyMode::kSample && c.pairs == 0) throw ConfigError("pairs", "must be positive");
  return c;
}

Json to_json(const ExperimentConfig& c) {
  return {{"id", c.id},       {"kind", to_string(c.kind)}, {"model", c.model},
          {"n", c.n_values},  {"r", c.r_values},           {"trials", c.trials},
          {"seed", c.seed},   {"verify", to_string(c.verify)}, {"pairs", c.pairs},
          {"gamma", c.gamma}, {"threads", c.threads}};
}

std::string replay_command(const CellSpec& cell) {
  std::ostringstream out;
  out << "rainbow replay --kind " << to_string(cell.kind);
  if (!cell.model.empty()) out << " --model " << cell.model;
  out << " --n " << cell.n << " --r " << cell.r << " --seed " << cell.seed << " --verify "
      << to_string(cell.verify);
  if (cell.verify == VerifyMode::kSample) out << " --pairs " << cell.pairs;
  if (cell.kind == ExperimentKind::kVertex) out << " --gamma " << cell.gamma;
  return out.str();
}

ResultRow run_cell(const CellSpec& cell) {
  ResultRow row;
  row.kind = to_string(cell.kind);
  row.model = cell.model;
  row.n = cell.n;
  row.r = cell.r;
  row.seed = cell.seed;
  try {
    switch (cell.kind) {
      case ExperimentKind::kMinDegree: {
        const Graph g = connected_regular(cell.n, cell.r, cell.seed);
        const auto result = rc_min_degree(g);
        const auto& lay = result.layered;
        row.colours_used = lay.colouring.colours_used();
        row.bound = result.colour_bound;
        row.diam1 = lay.diam1;
        row.diam2 = lay.diam2;
        row.shared = lay.shared_count;
        record_verdict(row, cell, verify_colouring(g, lay.colouring, cell));
        if (!result.diameter_bound_ok) row.note += (row.note.empty() ? "" : "; ") + std::string("diam > 6n/delta");
        break;
      }
      case ExperimentKind::kRegular: {
        const auto result = rc_random_regular(cell.n, cell.r, cell.seed);
        const auto& lay = result.layered;
        row.colours_used = lay.colouring.colours_used();
        row.bound = lay.bound();
        row.diam1 = lay.diam1;
        row.diam2 = lay.diam2;
        row.shared = lay.shared_count;
        record_verdict(row, cell, verify_colouring(result.graph, lay.colouring, cell));
        break;
      }
      case ExperimentKind::kVertex: {
        PartitionParams params;
        params.gamma = cell.gamma;
        const auto result = rvc_random_regular(cell.n, cell.r, cell.seed, params);
        const auto& lay = result.layered;
        row.colours_used = lay.colouring.colours_used();
        row.bound = lay.bound();
        row.diam1 = lay.diam1;
        row.diam2 = lay.diam2;
        row.shared = lay.shared_count;
        record_verdict(row, cell, verify_colouring(result.graph, lay.colouring, cell));
        break;
      }
      case ExperimentKind::kDiameter: {
        const Graph g = sample_diameter_model(parse_diameter_model(cell.model), cell.n, cell.r, cell.seed);
        row.diam1 = diameter(g);
        row.verdict = "unverified";
        break;
      }
    }
    if (row.verdict == "pass" && row.colours_used > row.bound) {
      row.verdict = "fail";
      row.note = "colours_used exceeds bound";
    }
  } catch (const std::exception& e) {
    row.verdict = "error";
    row.note = e.what();
  }
  if (row.verdict == "fail" || row.verdict == "error") row.replay = replay_command(cell);
  return row;
}

ExperimentRun run_experiment(const ExperimentConfig& config) {
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> grid;
  for (auto n : config.n_values) {
    for (auto r : config.r_values) {
      for (std::size_t t = 0; t < config.trials; ++t) grid.emplace_back(n, r, t);
    }
  }
  ExperimentRun run;
  run.rows.resize(grid.size());
  run.seconds.resize(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      const auto [n, r, t] = grid[i];
      const auto start = std::chrono::steady_clock::now();
      ResultRow row = run_cell(config.cell(n, r, t));
      run.seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      row.experiment = config.id;
      row.trial = t;
      run.rows[i] = std::move(row);
    }
  };
  const std::size_t workers = std::min(config.threads, std::max<std::size_t>(grid.size(), 1));
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  return run;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvVersionLine << '\n' << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << csv_field(r.experiment) << ',' << r.kind << ',' << csv_field(r.model) << ',' << r.n << ','
        << r.r << ',' << r.trial << ',' << r.seed << ',' << r.colours_used << ',' << r.bound << ','
        << r.diam1 << ',' << r.diam2 << ',' << r.shared << ',' << r.verdict << ',' << csv_field(r.note)
        << ',' << csv_field(r.replay) << '\n';
  }
}

std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvVersionLine) {
    throw InvalidInput("csv does not start with \"" + std::string(kCsvVersionLine) + "\"");
  }
  if (!std::getline(in, line) || line != kCsvHeader) throw InvalidInput("csv header does not match v1 columns");
  std::vector<ResultRow> rows;
  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 15) {
      throw InvalidInput("csv line " + std::to_string(line_no) + ": expected 15 fields, got " +
                         std::to_string(f.size()));
    }
    ResultRow r;
    r.experiment = f[0];
    r.kind = f[1];
    r.model = f[2];
    r.n = parse_u64(f[3], "n");
    r.r = parse_u64(f[4], "r");
    r.trial = parse_u64(f[5], "trial");
    r.seed = parse_u64(f[6], "seed");
    r.colours_used = parse_u64(f[7], "colours_used");
    r.bound = parse_u64(f[8], "bound");
    r.diam1 = static_cast<std::uint32_t>(parse_u64(f[9], "diam1"));
    r.diam2 = static_cast<std::uint32_t>(parse_u64(f[10], "diam2"));
    r.shared = parse_u64(f[11], "shared");
    r.verdict = f[12];
    r.note = f[13];
    r.replay = f[14];
    if (r.verdict != "pass" && r.verdict != "fail" && r.verdict != "error" && r.verdict != "unverified") {
      throw InvalidInput("csv line " + std::to_string(line_no) + ": unknown verdict \"" + r.verdict + "\"");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

Json scaling_report(const std::vector<ResultRow>& rows) {
  using SeriesKey = std::tuple<std::string, std::string, std::string, std::size_t>;
  std::map<SeriesKey, std::map<std::size_t, std::vector<const ResultRow*>>> series;
  for (const auto& row : rows) series[{row.experiment, row.kind, row.model, row.r}][row.n].push_back(&row);

  Json report = Json::array();
  for (const auto& [key, by_n] : series) {
    const auto& [experiment, kind, model, r] = key;
    Json cells = Json::array();
    std::map<std::string, std::vector<double>> columns;
    for (const auto& [n, list] : by_n) {
      std::vector<double> colours, diams;
      std::size_t failures = 0;
      for (const auto* row : list) {
        if (row->verdict == "fail" || row->verdict == "error") {
          ++failures;
          continue;
        }
        colours.push_back(static_cast<double>(row->colours_used));
        diams.push_back(static_cast<double>(std::max(row->diam1, row->diam2)));
      }
      const double ln_n = std::log(static_cast<double>(n));
      const double log2_n = std::log2(static_cast<double>(n));
      const double mc = median(colours), md = median(diams);
      Json cell{{"n", n},
                {"rows", list.size()},
                {"failures", failures},
                {"median_colours", mc},
                {"median_diameter", md},
                {"colours_over_ln_n", mc / ln_n},
                {"diam_over_log2_n", md / log2_n},
                {"diam_over_ln_n", md / ln_n}};
      columns["colours_over_ln_n"].push_back(mc / ln_n);
      columns["diam_over_log2_n"].push_back(md / log2_n);
      columns["diam_over_ln_n"].push_back(md / ln_n);
      if (r > 1) {
        const double scaled = mc / (ln_n / std::log(static_cast<double>(r)));
        cell["colours_over_ln_n_over_ln_r"] = scaled;
        columns["colours_over_ln_n_over_ln_r"].push_back(scaled);
      }
      cells.push_back(std::move(cell));
    }
    Json trends = nullptr;
    if (by_n.size() >= 2) {
      trends = Json::object();
      for (const auto& [name, values] : columns) trends[name] = flags_for(values);
    }
    report.push_back({{"experiment", experiment},
                      {"kind", kind},
                      {"model", model},
                      {"r", r},
                      {"cells", std::move(cells)},
                      {"trends", std::move(trends)}});
  }
  return {{"format", "rainbow-report v1"}, {"series", std::move(report)}};
}

}  // namespace rainbow
