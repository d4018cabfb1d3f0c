#include "rbg/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "rbg/oracle.hpp"

namespace rbg {

void BenchConfig::validate() const {
  if (!playouts && !(seconds > 0)) throw std::invalid_argument("duration must be positive");
  if (!optimizer.valid()) throw std::invalid_argument("monotonic classes require shift tables");
}

struct FlatMc::Impl {
  BenchConfig config;
  Reasoner reasoner;
  AnyRng rng;
  GameState initial;
  std::vector<Move> first_moves;
  GameState state;
  MoveList moves;
  std::uint64_t playouts = 0;
  std::uint64_t states = 0;
  double wall_seconds = 0.0;
  std::vector<std::uint64_t> first_count;
  std::vector<std::int64_t> first_score_sums;  // first move x player
  int players = 0;

  Impl(std::shared_ptr<const CompiledGame> game, const BenchConfig& c)
      : config(c), reasoner(std::move(game)), rng(make_rng(c.rng, c.seed)) {
    initial = reasoner.initial_state();
    first_moves = reasoner.legal_moves(initial);
    players = reasoner.game().player_count();
    first_count.assign(first_moves.size(), 0);
    first_score_sums.assign(first_moves.size() * players, 0);
  }

  template <typename Rng>
  void playout(Rng& r) {
    state = initial;
    std::uint64_t depth = 0;
    std::size_t first = 0;
    if (!first_moves.empty()) {
      first = r.next_bounded(static_cast<std::uint32_t>(first_moves.size()));
      reasoner.apply_move(state, first_moves[first]);
      ++depth;
      while (true) {
        reasoner.legal_moves(state, moves);
        if (moves.empty()) break;
        reasoner.apply_move(state, moves[r.next_bounded(static_cast<std::uint32_t>(moves.size()))]);
        ++depth;
      }
      ++first_count[first];
      for (int p = 0; p < players; ++p) first_score_sums[first * players + p] += state.variables[p];
    }
    ++playouts;
    states += depth;
  }

  template <typename Rng>
  void timed(Rng& r, double seconds) {
    const auto start = std::chrono::steady_clock::now();
    const auto deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                      std::chrono::duration<double>(seconds));
    auto now = start;
    do {
      playout(r);
      now = std::chrono::steady_clock::now();
    } while (now < deadline);
    wall_seconds += std::chrono::duration<double>(now - start).count();
  }

  template <typename Rng>
  void counted(Rng& r, std::uint64_t count) {
    const auto start = std::chrono::steady_clock::now();
    for (std::uint64_t i = 0; i < count; ++i) playout(r);
    wall_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

FlatMc::FlatMc(const GameDescription& game, const BenchConfig& config) {
  config.validate();
  compiled_ = CompiledGame::compile(game, config.optimizer);
  impl_ = std::make_unique<Impl>(compiled_, config);
}

FlatMc::~FlatMc() = default;

void FlatMc::run_for(double seconds) {
  std::visit([&](auto& r) { impl_->timed(r, seconds); }, impl_->rng);
}

void FlatMc::run_playouts(std::uint64_t count) {
  std::visit([&](auto& r) { impl_->counted(r, count); }, impl_->rng);
}

BenchReport FlatMc::report() const {
  const Impl& m = *impl_;
  BenchReport r;
  r.game = m.config.game.stem().string();
  r.config = m.config;
  for (const PlayerDecl& p : compiled_->description().players) r.players.push_back(p.name);
  r.playouts = m.playouts;
  r.states = m.states;
  r.wall_seconds = m.wall_seconds;
  for (std::size_t i = 0; i < m.first_moves.size(); ++i) {
    FirstMoveStats f;
    f.move = describe_move(compiled_->description(), compiled_->source_rules(), m.first_moves[i]);
    f.playouts = m.first_count[i];
    for (int p = 0; p < m.players; ++p) {
      f.average_scores.push_back(f.playouts > 0 ? static_cast<double>(m.first_score_sums[i * m.players + p]) /
                                                      static_cast<double>(f.playouts)
                                                : 0.0);
    }
    r.first_moves.push_back(std::move(f));
  }
  return r;
}

BenchReport flat_mc(const BenchConfig& config) {
  config.validate();
  FlatMc mc(load_game_file(config.game), config);
  if (config.playouts) {
    mc.run_playouts(*config.playouts);
  } else {
    mc.run_for(config.seconds);
  }
  return mc.report();
}

std::vector<AblationColumn> ablation_columns() {
  auto make = [](bool shift, bool skip, bool bound, bool mono) {
    OptimizerConfig c;
    c.shift_tables = shift;
    c.visited_skip = skip;
    c.length_bound = bound;
    c.monotonic = mono;
    return c;
  };
  return {
      {"No optimizations", make(false, false, false, false)},
      {"No shift tables", make(false, true, true, false)},
      {"No visited check skipping", make(true, false, true, true)},
      {"No length bound", make(true, true, false, true)},
      {"No monotonic classes", make(true, true, true, false)},
      {"All", make(true, true, true, true)},
  };
}

bool ablation_applicable(const OptimizerReport& all_on, const OptimizerConfig& column) {
  bool changes = false;
  if (!column.shift_tables) changes = changes || all_on.shift_tables > 0;
  if (!column.visited_skip) changes = changes || all_on.skippable_nodes > 0;
  if (!column.length_bound) changes = changes || all_on.move_length_bound.has_value();
  if (!column.monotonic) changes = changes || all_on.monotonic_classes > 0;
  return changes;
}

namespace {

// Runs every instance for `seconds` in total, alternating between them.
void run_sliced(const std::vector<FlatMc*>& runs, double seconds, double slice_seconds) {
  const int rounds = std::max(1, static_cast<int>(std::lround(seconds / slice_seconds)));
  for (int round = 0; round < rounds; ++round) {
    for (FlatMc* run : runs) run->run_for(seconds / rounds);
  }
}

std::vector<BenchReport> measure_group(const GameDescription& game, const std::vector<BenchConfig>& configs,
                                       double slice_seconds) {
  std::vector<std::unique_ptr<FlatMc>> runs;
  std::vector<FlatMc*> ptrs;
  for (const BenchConfig& c : configs) {
    runs.push_back(std::make_unique<FlatMc>(game, c));
    ptrs.push_back(runs.back().get());
  }
  if (!configs.empty() && configs.front().playouts) {
    for (FlatMc* run : ptrs) run->run_playouts(*configs.front().playouts);
  } else if (!configs.empty()) {
    run_sliced(ptrs, configs.front().seconds, slice_seconds);
  }
  std::vector<BenchReport> out;
  for (FlatMc* run : ptrs) out.push_back(run->report());
  return out;
}

}  // namespace

std::vector<BenchReport> measure_interleaved(const std::vector<BenchConfig>& configs, double slice_seconds) {
  if (configs.empty()) return {};
  for (const BenchConfig& c : configs) c.validate();
  return measure_group(load_game_file(configs.front().game), configs, slice_seconds);
}

std::vector<AblationRow> run_ablation(const std::vector<std::filesystem::path>& games, const BenchConfig& base,
                                      double slice_seconds) {
  base.validate();
  const std::vector<AblationColumn> columns = ablation_columns();
  std::vector<AblationRow> rows;
  for (const auto& path : games) {
    const GameDescription game = load_game_file(path);
    BenchConfig all = base;
    all.game = path;
    all.optimizer = columns.back().config;
    all.optimizer.assume_straight = base.optimizer.assume_straight;
    const OptimizerReport report = CompiledGame::compile(game, all.optimizer)->optimizer_report();

    std::vector<BenchConfig> configs;
    std::vector<int> slot(columns.size(), -1);
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const bool baseline = i + 1 == columns.size();
      if (!baseline && !ablation_applicable(report, columns[i].config)) continue;
      BenchConfig c = all;
      c.optimizer = columns[i].config;
      c.optimizer.assume_straight = base.optimizer.assume_straight;
      slot[i] = static_cast<int>(configs.size());
      configs.push_back(c);
    }
    const std::vector<BenchReport> reports = measure_group(game, configs, slice_seconds);
    const BenchReport& baseline = reports[slot.back()];

    AblationRow row;
    row.game = path.stem().string();
    for (std::size_t i = 0; i < columns.size(); ++i) {
      AblationCell cell;
      cell.label = columns[i].label;
      cell.applicable = slot[i] >= 0;
      cell.report = cell.applicable ? reports[slot[i]] : baseline;
      if (!cell.applicable) {
        cell.report.config.optimizer = columns[i].config;
        cell.report.config.optimizer.assume_straight = base.optimizer.assume_straight;
      }
      const double base_rate = baseline.playouts_per_second();
      cell.ratio = cell.applicable && base_rate > 0 ? cell.report.playouts_per_second() / base_rate : 1.0;
      row.cells.push_back(std::move(cell));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<VariantRow> run_variant_comparison(const std::vector<std::filesystem::path>& variants,
                                               const BenchConfig& base, double slice_seconds) {
  base.validate();
  std::vector<std::unique_ptr<FlatMc>> runs;
  std::vector<FlatMc*> ptrs;
  for (const auto& path : variants) {
    BenchConfig c = base;
    c.game = path;
    runs.push_back(std::make_unique<FlatMc>(load_game_file(path), c));
    ptrs.push_back(runs.back().get());
  }
  if (base.playouts) {
    for (FlatMc* run : ptrs) run->run_playouts(*base.playouts);
  } else {
    run_sliced(ptrs, base.seconds, slice_seconds);
  }
  std::vector<VariantRow> rows;
  for (FlatMc* run : ptrs) {
    VariantRow row;
    row.report = run->report();
    rows.push_back(std::move(row));
  }
  if (!rows.empty()) {
    const double reference = rows.front().report.playouts_per_second();
    for (VariantRow& row : rows) row.speedup = reference > 0 ? row.report.playouts_per_second() / reference : 0.0;
  }
  return rows;
}

nlohmann::json to_json(const BenchConfig& config) {
  nlohmann::json j;
  j["game"] = config.game.string();
  j["seconds"] = config.seconds;
  j["playout_limit"] = config.playouts ? nlohmann::json(*config.playouts) : nlohmann::json(nullptr);
  j["rng"] = std::string(to_string(config.rng));
  j["seed"] = config.seed;
  j["optimizations"] = {
      {"shift_tables", config.optimizer.shift_tables},
      {"visited_skip", config.optimizer.visited_skip},
      {"length_bound", config.optimizer.length_bound},
      {"monotonic", config.optimizer.monotonic},
  };
  j["assume_straight"] = config.optimizer.assume_straight;
  return j;
}

nlohmann::json to_json(const BenchReport& report) {
  nlohmann::json j;
  j["game"] = report.game;
  j["config"] = to_json(report.config);
  j["players"] = report.players;
  j["playouts"] = report.playouts;
  j["states"] = report.states;
  j["wall_seconds"] = report.wall_seconds;
  j["playouts_per_second"] = report.playouts_per_second();
  j["states_per_second"] = report.states_per_second();
  j["average_depth"] = report.average_depth();
  nlohmann::json moves = nlohmann::json::array();
  for (const FirstMoveStats& f : report.first_moves) {
    moves.push_back({{"move", f.move}, {"playouts", f.playouts}, {"average_scores", f.average_scores}});
  }
  j["first_moves"] = moves;
  return j;
}

nlohmann::json to_json(const std::vector<AblationRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const AblationRow& row : rows) {
    for (const AblationCell& cell : row.cells) {
      nlohmann::json j = to_json(cell.report);
      j["column"] = cell.label;
      j["applicable"] = cell.applicable;
      j["relative_throughput"] = cell.ratio;
      out.push_back(std::move(j));
    }
  }
  return out;
}

nlohmann::json to_json(const std::vector<VariantRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const VariantRow& row : rows) {
    nlohmann::json j = to_json(row.report);
    j["relative_throughput"] = row.speedup;
    out.push_back(std::move(j));
  }
  return out;
}

namespace {

std::string fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
  return buffer;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string format_text(const BenchReport& report) {
  std::ostringstream out;
  out << "game            " << report.game << "\n"
      << "optimizations   " << report.config.optimizer.label() << "\n"
      << "rng             " << to_string(report.config.rng) << " (seed " << report.config.seed << ")\n"
      << "wall time       " << fixed(report.wall_seconds, 3) << " s\n"
      << "playouts        " << report.playouts << "\n"
      << "playouts/sec    " << fixed(report.playouts_per_second(), 1) << "\n"
      << "states/sec      " << fixed(report.states_per_second(), 1) << "\n"
      << "average depth   " << fixed(report.average_depth(), 2) << "\n";
  out << "first moves     " << report.first_moves.size() << "\n";
  for (const FirstMoveStats& f : report.first_moves) {
    out << "  " << pad(f.move, 40) << " " << pad(std::to_string(f.playouts), 10);
    for (std::size_t p = 0; p < f.average_scores.size(); ++p) {
      out << " " << (p < report.players.size() ? report.players[p] : "?") << "=" << fixed(f.average_scores[p], 2);
    }
    out << "\n";
  }
  return out.str();
}

std::string format_text(const std::vector<AblationRow>& rows) {
  std::ostringstream out;
  const std::vector<AblationColumn> columns = ablation_columns();
  out << pad("Game", 22);
  for (const AblationColumn& c : columns) out << " | " << pad(c.label, 26);
  out << "\n";
  for (const AblationRow& row : rows) {
    out << pad(row.game, 22);
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
      const AblationCell& cell = row.cells[i];
      std::string text;
      if (i + 1 == row.cells.size()) {
        text = fixed(cell.report.playouts_per_second(), 0);
      } else if (!cell.applicable) {
        text = "(0%)";
      } else {
        const long delta = std::lround((cell.ratio - 1.0) * 100.0);
        text = fixed(cell.report.playouts_per_second(), 0) + " (" + (delta > 0 ? "+" : "") +
               std::to_string(delta) + "%)";
      }
      out << " | " << pad(text, 26);
    }
    out << "\n";
  }
  return out.str();
}

std::string format_text(const std::vector<VariantRow>& rows) {
  std::ostringstream out;
  out << pad("Variant", 24) << " | " << pad("Playouts/sec", 14) << " | " << pad("Avg depth", 10) << " | Speedup\n";
  for (const VariantRow& row : rows) {
    out << pad(row.report.game, 24) << " | " << pad(fixed(row.report.playouts_per_second(), 0), 14) << " | "
        << pad(fixed(row.report.average_depth(), 2), 10) << " | " << std::lround(row.speedup * 100.0) << "%\n";
  }
  return out.str();
}

}  // namespace rbg
