#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/colouring_io.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

enum class ExperimentKind { kMinDegree, kRegular, kVertex, kDiameter };
enum class VerifyMode { kCertificate, kSample, kExact, kNone };

const char* to_string(ExperimentKind kind);
const char* to_string(VerifyMode mode);

/// Invalid config field; `field` names it.
class ConfigError : public InvalidInput {
 public:
  ConfigError(std::string field, const std::string& what)
      : InvalidInput("config field \"" + field + "\": " + what), field(std::move(field)) {}
  std::string field;
};

/// Everything a single cell needs. Rows store the derived seed, so a cell
/// can be rerun on its own.
struct CellSpec {
  ExperimentKind kind = ExperimentKind::kRegular;
  std::string model;
  std::size_t n = 0;
  std::size_t r = 0;
  Seed seed = 0;
  VerifyMode verify = VerifyMode::kCertificate;
  std::size_t pairs = 1000;
  double gamma = 0.11;
};

/// JSON fields: id, kind (mindeg|regular|rvc|diameter), model, n, r,
/// trials, seed, verify (certificate|sample|exact|none), pairs, gamma,
/// threads.
///   mindeg:   random simple r-regular input, min-degree colouring
///   regular:  random-regular union construction
///   rvc:      random r-regular graph, vertex colouring
///   diameter: model is cycle-perfect-matching | cycle-quarter-matching |
///             regular; only the diameter is recorded
struct ExperimentConfig {
  std::string id;
  ExperimentKind kind = ExperimentKind::kRegular;
  std::string model;
  std::vector<std::size_t> n_values;
  std::vector<std::size_t> r_values;
  std::size_t trials = 1;
  Seed seed = 0;
  VerifyMode verify = VerifyMode::kCertificate;
  std::size_t pairs = 1000;
  double gamma = 0.11;
  std::size_t threads = 1;

  /// Cell seed: derived from (seed, n, r, trial) alone, so growing the grid
  /// leaves existing cells untouched.
  Seed cell_seed(std::size_t n, std::size_t r, std::size_t trial) const;
  CellSpec cell(std::size_t n, std::size_t r, std::size_t trial) const;
};

ExperimentConfig config_from_json(const Json& doc);
Json to_json(const ExperimentConfig& config);

struct ResultRow {
  std::string experiment;
  std::string kind;
  std::string model;
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t trial = 0;
  Seed seed = 0;
  std::size_t colours_used = 0;
  std::size_t bound = 0;
  std::uint32_t diam1 = 0;
  std::uint32_t diam2 = 0;
  std::size_t shared = 0;
  /// pass | fail | error | unverified
  std::string verdict;
  std::string note;
  /// Command reproducing the cell; filled for fail and error rows.
  std::string replay;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

/// Runs one cell. Construction and verification failures become rows with
/// verdict fail or error instead of exceptions.
ResultRow run_cell(const CellSpec& cell);

std::string replay_command(const CellSpec& cell);

struct ExperimentRun {
  std::vector<ResultRow> rows;     // grid order: n, then r, then trial
  std::vector<double> seconds;     // wall time per row
};

/// Cells run on `threads` workers; rows come back in grid order.
ExperimentRun run_experiment(const ExperimentConfig& config);

inline constexpr const char* kCsvVersionLine = "# rainbow-results v1";

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
/// Throws InvalidInput on a missing version line, wrong header or bad field.
std::vector<ResultRow> read_csv(std::istream& in);

/// Per (experiment, kind, model, r, n) medians with ratio columns
/// colours/(ln n / ln r), colours/ln n, diam/log2 n and diam/ln n, where
/// diam is max(diam1, diam2). Each series with two or more n values gets
/// trend flags; a single n suppresses them.
Json scaling_report(const std::vector<ResultRow>& rows);

}  // namespace rainbow
