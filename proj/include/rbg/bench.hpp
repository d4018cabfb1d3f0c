#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rbg/optimizer.hpp"
#include "rbg/reasoner.hpp"
#include "rbg/rng.hpp"

namespace rbg {

struct BenchConfig {
  std::filesystem::path game;
  double seconds = 10.0;
  /// Run exactly this many playouts instead of until `seconds` have passed.
  std::optional<std::uint64_t> playouts;
  RngMethod rng = RngMethod::standard;
  std::uint64_t seed = 1;
  OptimizerConfig optimizer;

  /// Throws std::invalid_argument on a non-positive duration or monotonic
  /// classes requested without shift tables.
  void validate() const;
};

/// Average final score of each player over the playouts that began with one
/// particular initial move.
struct FirstMoveStats {
  std::string move;
  std::uint64_t playouts = 0;
  std::vector<double> average_scores;
};

struct BenchReport {
  std::string game;
  BenchConfig config;
  std::vector<std::string> players;
  std::uint64_t playouts = 0;
  std::uint64_t states = 0;  // moves applied
  double wall_seconds = 0.0;
  std::vector<FirstMoveStats> first_moves;

  double playouts_per_second() const { return wall_seconds > 0 ? playouts / wall_seconds : 0.0; }
  double states_per_second() const { return wall_seconds > 0 ? states / wall_seconds : 0.0; }
  double average_depth() const { return playouts > 0 ? static_cast<double>(states) / playouts : 0.0; }
};

/// Flat Monte-Carlo: uniformly random playouts from the initial state. The
/// game is compiled in the constructor, outside any measured time. Runs can
/// be resumed, so several instances can share a time budget in slices.
class FlatMc {
 public:
  FlatMc(const GameDescription& game, const BenchConfig& config);
  ~FlatMc();

  /// Plays until `seconds` have passed; the clock is read once per
  /// completed playout, so the last playout always finishes.
  void run_for(double seconds);
  void run_playouts(std::uint64_t count);
  BenchReport report() const;
  const CompiledGame& game() const { return *compiled_; }

 private:
  struct Impl;
  std::shared_ptr<const CompiledGame> compiled_;
  std::unique_ptr<Impl> impl_;
};

BenchReport flat_mc(const BenchConfig& config);

/// The columns of an ablation table, left to right; the last one is the
/// all-on baseline.
struct AblationColumn {
  std::string label;
  OptimizerConfig config;
};
std::vector<AblationColumn> ablation_columns();

/// Whether turning `column` off changes anything for the game, judged from
/// the all-on optimizer report.
bool ablation_applicable(const OptimizerReport& all_on, const OptimizerConfig& column);

struct AblationCell {
  std::string label;
  bool applicable = true;
  BenchReport report;
  double ratio = 1.0;  // throughput relative to the all-on column
};

struct AblationRow {
  std::string game;
  std::vector<AblationCell> cells;
};

/// Measures every applicable column of every game for `base.seconds` each.
/// The columns of a game alternate in slices of about `slice_seconds`, so
/// drift in machine speed affects them alike. Inapplicable columns reuse the
/// baseline measurement.
std::vector<AblationRow> run_ablation(const std::vector<std::filesystem::path>& games,
                                      const BenchConfig& base, double slice_seconds = 0.5);

/// Throughput of several configurations of one game, measured in
/// alternating slices as in run_ablation.
std::vector<BenchReport> measure_interleaved(const std::vector<BenchConfig>& configs,
                                             double slice_seconds = 0.5);

struct VariantRow {
  BenchReport report;
  double speedup = 1.0;  // throughput relative to the first variant
};

/// The first game is the reference every other row is compared to.
std::vector<VariantRow> run_variant_comparison(const std::vector<std::filesystem::path>& variants,
                                               const BenchConfig& base, double slice_seconds = 0.5);

nlohmann::json to_json(const BenchConfig& config);
nlohmann::json to_json(const BenchReport& report);
nlohmann::json to_json(const std::vector<AblationRow>& rows);
nlohmann::json to_json(const std::vector<VariantRow>& rows);

std::string format_text(const BenchReport& report);
std::string format_text(const std::vector<AblationRow>& rows);
std::string format_text(const std::vector<VariantRow>& rows);

}  // namespace rbg
