#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rbg/bench.hpp"
#include "rbg/corpus.hpp"
#include "rbg/errors.hpp"
#include "rbg/oracle.hpp"

namespace {

using namespace rbg;

struct OptFlags {
  bool no_shift = false;
  bool no_skip = false;
  bool no_bound = false;
  bool no_mono = false;
  bool assume_straight = false;

  void add(CLI::App* app) {
    app->add_flag("--no-shift-tables", no_shift, "Disable shift tables (implies --no-monotonic)");
    app->add_flag("--no-visited-skip", no_skip, "Keep the visited check at every node");
    app->add_flag("--no-length-bound", no_bound, "Ignore the static move length bound");
    app->add_flag("--no-monotonic", no_mono, "Disable monotonic move caches");
    app->add_flag("--assume-straight", assume_straight, "Skip the straightness check");
  }
  bool any() const { return no_shift || no_skip || no_bound || no_mono; }
  // Whitelisted corpus games load without --assume-straight.
  OptimizerConfig config(const std::filesystem::path& game) const {
    OptimizerConfig c;
    c.shift_tables = !no_shift;
    c.visited_skip = !no_skip;
    c.length_bound = !no_bound;
    c.monotonic = !no_mono && !no_shift;
    c.assume_straight = assume_straight;
    if (auto meta = metadata_for(game)) c = meta->config(c);
    return c;
  }
};

struct Common {
  std::vector<std::string> games;
  double seconds = 10.0;
  std::uint64_t seed = 1;
  std::string rng = "standard";
  std::string format = "text";
  OptFlags opt;

  RngMethod rng_method() const { return *parse_rng_method(rng); }
  bool json() const { return format == "json"; }
};

void add_game(CLI::App* app, Common& c, bool many) {
  auto* o = app->add_option("--game", c.games, many ? "Game files (repeatable)" : "Game file")
                ->required()
                ->check(CLI::ExistingFile);
  if (!many) o->expected(1);
}

void add_format(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

void add_rng(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "Random seed");
  app->add_option("--rng", c.rng, "Random number method")->check(CLI::IsMember({"standard", "java", "lemire"}));
}

void print_perft(const PerftResult& p, const std::string& game, bool json) {
  if (json) {
    nlohmann::json j{{"game", game}, {"depth", p.depth}, {"nodes", p.nodes}, {"terminals", p.terminals}};
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << "depth  nodes  terminals\n";
  for (std::size_t d = 0; d < p.nodes.size(); ++d) {
    std::cout << d << "  " << p.nodes[d] << "  " << p.terminals[d] << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regular Boardgames interpreter and benchmark harness"};
  app.require_subcommand(1);

  Common bench;
  std::uint64_t bench_playouts = 0;
  auto* bench_cmd = app.add_subcommand("bench", "Flat Monte-Carlo throughput benchmark");
  add_game(bench_cmd, bench, false);
  bench_cmd->add_option("--seconds", bench.seconds, "Duration")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--playouts", bench_playouts, "Run a fixed number of playouts instead");
  add_rng(bench_cmd, bench);
  add_format(bench_cmd, bench);
  bench.opt.add(bench_cmd);

  Common ablate;
  double ablate_slice = 0.5;
  auto* ablate_cmd = app.add_subcommand("ablate", "Throughput with each optimization turned off");
  add_game(ablate_cmd, ablate, true);
  ablate_cmd->add_option("--seconds", ablate.seconds, "Duration per configuration")->check(CLI::PositiveNumber);
  ablate_cmd->add_option("--slice", ablate_slice, "Seconds per alternation slice")->check(CLI::PositiveNumber);
  add_rng(ablate_cmd, ablate);
  add_format(ablate_cmd, ablate);
  ablate_cmd->add_flag("--assume-straight", ablate.opt.assume_straight, "Skip the straightness check");

  Common variants;
  double variants_slice = 0.5;
  auto* variants_cmd = app.add_subcommand("variants", "Throughput of rule variants relative to the first");
  add_game(variants_cmd, variants, true);
  variants_cmd->add_option("--seconds", variants.seconds, "Duration per variant")->check(CLI::PositiveNumber);
  variants_cmd->add_option("--slice", variants_slice, "Seconds per alternation slice")->check(CLI::PositiveNumber);
  add_rng(variants_cmd, variants);
  add_format(variants_cmd, variants);
  variants.opt.add(variants_cmd);

  Common perft_opts;
  int depth = 3;
  bool use_oracle = false;
  auto* perft_cmd = app.add_subcommand("perft", "Count game tree nodes per depth");
  add_game(perft_cmd, perft_opts, false);
  perft_cmd->add_option("--depth", depth, "Depth")->check(CLI::NonNegativeNumber);
  perft_cmd->add_flag("--oracle", use_oracle, "Use the naive reference interpreter");
  add_format(perft_cmd, perft_opts);
  perft_opts.opt.add(perft_cmd);

  Common cross;
  std::uint64_t samples = 1000;
  auto* cross_cmd = app.add_subcommand(
      "crosscheck", "Compare legal moves with the reference interpreter under every optimization setting");
  add_game(cross_cmd, cross, true);
  cross_cmd->add_option("--samples", samples, "States compared per game");
  add_rng(cross_cmd, cross);
  add_format(cross_cmd, cross);
  cross.opt.add(cross_cmd);
  cross_cmd->footer("With any --no-* flag only that configuration is checked.");

  Common dump;
  bool optimized = false;
  auto* dump_cmd = app.add_subcommand("dump-nfa", "Print the rules automaton in DOT format");
  add_game(dump_cmd, dump, false);
  dump_cmd->add_flag("--optimized", optimized, "Print the optimized automaton");
  dump.opt.add(dump_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (bench_cmd->parsed()) {
      BenchConfig c;
      c.game = bench.games.front();
      c.seconds = bench.seconds;
      if (bench_playouts > 0) c.playouts = bench_playouts;
      c.rng = bench.rng_method();
      c.seed = bench.seed;
      c.optimizer = bench.opt.config(c.game);
      const BenchReport r = flat_mc(c);
      std::cout << (bench.json() ? to_json(r).dump(2) + "\n" : format_text(r));
    } else if (ablate_cmd->parsed()) {
      BenchConfig c;
      c.seconds = ablate.seconds;
      c.rng = ablate.rng_method();
      c.seed = ablate.seed;
      std::vector<std::filesystem::path> games(ablate.games.begin(), ablate.games.end());
      std::vector<AblationRow> rows;
      for (const auto& g : games) {
        c.optimizer.assume_straight = ablate.opt.config(g).assume_straight;
        auto row = run_ablation({g}, c, ablate_slice);
        rows.insert(rows.end(), row.begin(), row.end());
      }
      std::cout << (ablate.json() ? to_json(rows).dump(2) + "\n" : format_text(rows));
    } else if (variants_cmd->parsed()) {
      BenchConfig c;
      c.seconds = variants.seconds;
      c.rng = variants.rng_method();
      c.seed = variants.seed;
      c.optimizer = variants.opt.config(variants.games.front());
      std::vector<std::filesystem::path> games(variants.games.begin(), variants.games.end());
      const auto rows = run_variant_comparison(games, c, variants_slice);
      std::cout << (variants.json() ? to_json(rows).dump(2) + "\n" : format_text(rows));
    } else if (perft_cmd->parsed()) {
      const std::filesystem::path path = perft_opts.games.front();
      GameDescription game = load_game_file(path);
      PerftResult p;
      if (use_oracle) {
        p = perft(NaiveInterpreter(std::move(game)), depth);
      } else {
        Reasoner r(CompiledGame::compile(std::move(game), perft_opts.opt.config(path)));
        p = perft(r, depth);
      }
      print_perft(p, path.stem().string(), perft_opts.json());
    } else if (cross_cmd->parsed()) {
      bool ok = true;
      nlohmann::json all = nlohmann::json::array();
      for (const std::string& g : cross.games) {
        const GameDescription game = load_game_file(g);
        const OptimizerConfig flags = cross.opt.config(g);
        std::vector<OptimizerConfig> configs;
        if (cross.opt.any()) {
          configs.push_back(flags);
        } else {
          for (OptimizerConfig c : all_valid_configs()) {
            c.assume_straight = flags.assume_straight;
            configs.push_back(c);
          }
        }
        const auto start = std::chrono::steady_clock::now();
        const CrossCheckReport rep = cross_check(game, configs, samples, cross.seed, cross.rng_method());
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        ok = ok && rep.ok();
        if (cross.json()) {
          nlohmann::json j{{"game", g},           {"samples", rep.samples},
                           {"playouts", rep.playouts}, {"configs", rep.configs},
                           {"seconds", secs},     {"divergences", nlohmann::json::array()}};
          for (const Divergence& d : rep.divergences) {
            j["divergences"].push_back({{"config", d.config},
                                        {"sample", d.sample},
                                        {"detail", d.detail},
                                        {"state", d.state},
                                        {"missing", d.missing},
                                        {"extra", d.extra}});
          }
          all.push_back(std::move(j));
          continue;
        }
        std::cout << g << ": " << rep.samples << " states, " << rep.playouts << " finished playouts, "
                  << rep.configs.size() << " configurations, " << rep.divergences.size() << " divergences ("
                  << secs << " s)\n";
        for (const Divergence& d : rep.divergences) {
          std::cout << "  [" << d.config << "] sample " << d.sample << ": " << d.detail << "\n" << d.state;
          for (const auto& m : d.missing) std::cout << "    missing " << m << "\n";
          for (const auto& m : d.extra) std::cout << "    extra   " << m << "\n";
        }
      }
      if (cross.json()) std::cout << all.dump(2) << "\n";
      return ok ? 0 : 1;
    } else if (dump_cmd->parsed()) {
      const std::filesystem::path path = dump.games.front();
      auto compiled = CompiledGame::compile(load_game_file(path), dump.opt.config(path));
      const RulesNfa& nfa = optimized ? compiled->rules() : compiled->source_rules();
      std::cout << nfa.to_dot(compiled->description());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
