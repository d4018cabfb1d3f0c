// Acceptance run: one PASS or FAIL line per criterion. Throughput criteria
// measure 30 s per configuration, so the whole run takes several minutes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rbg/bench.hpp"
#include "rbg/oracle.hpp"
#include "support.hpp"

using namespace rbg;

namespace {

constexpr std::uint64_t kCrossCheckSamples = 1000;
constexpr double kThroughputSeconds = 30.0;
constexpr double kSliceSeconds = 0.5;
constexpr std::uint64_t kRngSamples = 1'000'000;
constexpr double kRngSigmas = 5.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, bool counts, const std::function<Outcome()>& check) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (counts && !o.pass) ++failures;
  std::printf("%s %d %s%s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(),
              counts ? "" : " [informational]", o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string percent(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", ratio * 100.0);
  return buf;
}

BenchConfig bench_config(const std::string& game, OptimizerConfig optimizer) {
  BenchConfig c;
  c.game = test::game_path(game);
  c.seconds = kThroughputSeconds;
  c.optimizer = test::metadata(game).config(optimizer);
  return c;
}

OptimizerConfig column(const std::string& label) {
  for (const AblationColumn& c : ablation_columns()) {
    if (c.label == label) return c.config;
  }
  throw std::runtime_error("no ablation column " + label);
}

// Throughput of the ablated configuration relative to everything on,
// measured in alternating slices.
double ablation_ratio(const std::string& game, const std::string& label) {
  const auto reports =
      measure_interleaved({bench_config(game, OptimizerConfig{}), bench_config(game, column(label))}, kSliceSeconds);
  return reports[1].playouts_per_second() / reports[0].playouts_per_second();
}

Outcome crosscheck() {
  std::uint64_t samples = 0, divergences = 0, runs = 0;
  std::ostringstream bad;
  for (const char* name : test::kAllGames) {
    const GameDescription g = load_game_file(test::game_path(name));
    std::vector<OptimizerConfig> configs;
    for (const OptimizerConfig& c : all_valid_configs()) configs.push_back(test::metadata(name).config(c));
    for (RngMethod m : {RngMethod::standard, RngMethod::java, RngMethod::lemire}) {
      const CrossCheckReport rep = cross_check(g, configs, kCrossCheckSamples, 1, m);
      samples += rep.samples;
      divergences += rep.divergences.size();
      ++runs;
      for (const Divergence& d : rep.divergences) bad << " " << name << "[" << d.config << "]";
    }
  }
  std::ostringstream out;
  out << runs << " runs of " << kCrossCheckSamples << " states x 12 configurations, " << samples
      << " states, " << divergences << " divergences" << bad.str();
  return {divergences == 0, out.str()};
}

Outcome perft_tables() {
  std::ostringstream out;
  bool ok = true;
  for (const char* name : {"tictactoe", "connect4", "breakthrough", "englishDraughts"}) {
    const GameMetadata meta = test::metadata(name);
    Reasoner r(test::compile(name));
    const PerftResult p = perft(r, static_cast<int>(meta.perft_nodes.size()) - 1);
    bool match = p.nodes == meta.perft_nodes;
    if (!meta.perft_terminals.empty()) match = match && p.terminals == meta.perft_terminals;
    ok = ok && match;
    out << name << " depth " << p.depth << " " << (match ? "match" : "MISMATCH") << "; ";
  }
  Reasoner ttt(test::compile("tictactoe"));
  const PerftResult full = perft(ttt, 9);
  const bool complete = full.total_terminals() == 255168 && full.nodes.back() == full.terminals.back();
  ok = ok && complete;
  out << "tictactoe games " << full.total_terminals();
  return {ok, out.str()};
}

Outcome rng_checks() {
  std::ostringstream out;
  bool ok = true;
  double worst = 0.0;
  for (RngMethod m : {RngMethod::standard, RngMethod::java, RngMethod::lemire}) {
    for (std::uint32_t n : {2u, 7u, 100u}) {
      const double s = test::max_bucket_sigma(m, 2024, n, kRngSamples);
      worst = std::max(worst, s);
      ok = ok && s <= kRngSigmas;
    }
    ok = ok && test::draws(m, 99, 1000, 1000) == test::draws(m, 99, 1000, 1000);
    BenchConfig c;
    c.game = test::game_path("breakthrough");
    c.playouts = 300;
    c.rng = m;
    c.seed = 99;
    const BenchReport a = flat_mc(c), b = flat_mc(c);
    bool same = a.states == b.states && a.first_moves.size() == b.first_moves.size();
    for (std::size_t i = 0; same && i < a.first_moves.size(); ++i) {
      same = a.first_moves[i].playouts == b.first_moves[i].playouts &&
             a.first_moves[i].average_scores == b.first_moves[i].average_scores;
    }
    ok = ok && same;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "largest bucket deviation %.2f sigma over %llu draws; seeded runs repeat", worst,
                static_cast<unsigned long long>(kRngSamples));
  out << buf;
  return {ok, out.str()};
}

}  // namespace

int main() {
  report(1, "crosscheck against the reference interpreter", true, crosscheck);

  report(2, "amazons initial moves", true, [] {
    Reasoner r(test::compile("amazons"));
    GameState s = r.initial_state();
    const std::size_t got = r.legal_moves(s).size();
    const NaiveInterpreter oracle(load_game_file(test::game_path("amazons")));
    const std::size_t expected = oracle.legal_moves(oracle.initial_state()).size();
    return Outcome{got == 2176 && expected == 2176,
                   "reasoner " + std::to_string(got) + ", reference " + std::to_string(expected)};
  });

  report(3, "move length bounds", true, [] {
    const auto bt = test::compile("breakthrough")->optimizer_report().move_length_bound;
    const auto dr = test::compile("englishDraughts")->optimizer_report().move_length_bound;
    return Outcome{bt == 2 && !dr.has_value(), "breakthrough " + (bt ? std::to_string(*bt) : "none") +
                                                  ", englishDraughts " + (dr ? std::to_string(*dr) : "none")};
  });

  report(4, "monotonic class counts", true, [] {
    std::ostringstream out;
    bool ok = true;
    for (auto [name, expected] : std::vector<std::pair<const char*, int>>{
             {"connect4", 2}, {"gomoku", 2}, {"hex", 2}, {"amazons", 0}, {"breakthrough", 0}}) {
      const int got = test::compile(name)->optimizer_report().monotonic_classes;
      ok = ok && got == expected;
      out << name << " " << got << "; ";
    }
    return Outcome{ok, out.str()};
  });

  report(5, "ablation ratios", true, [] {
    struct Case {
      const char* game;
      const char* column;
      double limit;
    };
    const Case cases[] = {{"gomoku", "No shift tables", 0.20},
                          {"breakthrough", "No visited check skipping", 0.85},
                          {"connect4", "No monotonic classes", 0.80},
                          {"knightthrough", "No length bound", 0.95}};
    std::ostringstream out;
    bool ok = true;
    for (const Case& c : cases) {
      const double ratio = ablation_ratio(c.game, c.column);
      ok = ok && ratio <= c.limit;
      out << c.game << " " << c.column << " " << percent(ratio) << " (limit " << percent(c.limit) << "); ";
    }
    return Outcome{ok, out.str()};
  });

  report(6, "amazons split variants", true, [] {
    BenchConfig base;
    base.seconds = kThroughputSeconds;
    const auto rows = run_variant_comparison(
        {test::game_path("amazons"), test::game_path("amazons_split2"), test::game_path("amazons_split5")}, base,
        kSliceSeconds);
    const double split2 = rows[1].speedup, split5 = rows[2].speedup;
    std::ostringstream out;
    out << "split2 " << split2 << "x orthodox, split5 " << split5 << "x orthodox";
    return Outcome{split2 >= 4.0 && split5 >= split2, out.str()};
  });

  report(7, "frozen perft tables", true, perft_tables);

  report(8, "random number generation", true, rng_checks);

  report(9, "playout throughput above 1e5/s", false, [] {
    std::ostringstream out;
    bool ok = true;
    for (const char* name : {"connect4", "tictactoe"}) {
      BenchConfig c = bench_config(name, OptimizerConfig{});
      c.seconds = 5.0;
      const double rate = flat_mc(c).playouts_per_second();
      ok = ok && rate > 1e5;
      out << name << " " << static_cast<long long>(rate) << "/s; ";
    }
    return Outcome{ok, out.str()};
  });

  std::printf("%s: %d of 8 criteria failed\n", failures == 0 ? "PASS" : "FAIL", failures);
  return failures == 0 ? 0 : 1;
}
