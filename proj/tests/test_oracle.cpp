#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "rbg/oracle.hpp"
#include "support.hpp"

using namespace rbg;

TEST_SUITE("oracle") {
  TEST_CASE("reference interpreter initial moves") {
    CHECK(NaiveInterpreter(load_game_file(test::game_path("amazons"))).legal_moves(
              NaiveInterpreter(load_game_file(test::game_path("amazons"))).initial_state()).size() == 2176);
    const NaiveInterpreter bt(load_game_file(test::game_path("breakthrough")));
    CHECK(bt.legal_moves(bt.initial_state()).size() == 22);
    const NaiveInterpreter ttt(load_game_file(test::game_path("tictactoe")));
    const auto s = ttt.initial_state();
    CHECK(ttt.legal_moves(s).size() == 9);
    CHECK(ttt.scores(s) == std::vector<int>{50, 50});
  }

  TEST_CASE("reference interpreter counts every tic-tac-toe game") {
    const NaiveInterpreter ttt(load_game_file(test::game_path("tictactoe")));
    const PerftResult p = perft(ttt, 9);
    CHECK(p.nodes == std::vector<std::uint64_t>{1, 9, 72, 504, 3024, 15120, 54720, 148176, 200448, 127872});
    CHECK(p.total_terminals() == 255168);
  }

  TEST_CASE("reference and reasoner perft agree") {
    for (const char* name : {"breakthrough", "connect4", "reversi", "amazons_split5"}) {
      const std::string game_name = name;
      CAPTURE(game_name);
      const NaiveInterpreter oracle(load_game_file(test::game_path(name)));
      Reasoner r(test::compile(name));
      const int depth = std::string(name) == "breakthrough" ? 3 : 4;
      CHECK(perft(oracle, depth) == perft(r, depth));
    }
  }

  TEST_CASE("perft does not depend on the configuration") {
    PerftResult reference;
    for (const OptimizerConfig& c : all_valid_configs()) {
      CAPTURE(c.label());
      Reasoner r(test::compile("englishDraughts", c));
      const PerftResult p = perft(r, 5);
      if (reference.nodes.empty()) reference = p;
      CHECK(p == reference);
    }
    CHECK(reference.nodes == std::vector<std::uint64_t>{1, 7, 49, 302, 1469, 7361});
  }

  TEST_CASE("crosscheck agrees on small games across configurations") {
    for (const char* name : {"tictactoe", "connect4", "breakthrough", "amazons_split2"}) {
      const std::string game_name = name;
      CAPTURE(game_name);
      const GameDescription g = load_game_file(test::game_path(name));
      std::vector<OptimizerConfig> configs;
      for (OptimizerConfig c : all_valid_configs()) configs.push_back(test::metadata(name).config(c));
      const CrossCheckReport rep = cross_check(g, configs, 200, 9);
      CHECK(rep.ok());
      CHECK(rep.samples >= 200);
      CHECK(rep.configs.size() == 12);
      CHECK(rep.moves_compared > 0);
    }
  }

  TEST_CASE("crosscheck runs until enough playouts finished") {
    const GameDescription g = load_game_file(test::game_path("tictactoe"));
    const CrossCheckReport rep = cross_check(g, std::vector<OptimizerConfig>{OptimizerConfig{}}, 1, 3,
                                             RngMethod::java, 25);
    CHECK(rep.ok());
    CHECK(rep.playouts >= 25);
  }

  TEST_CASE("crosscheck is reproducible") {
    const GameDescription g = load_game_file(test::game_path("breakthrough"));
    const std::vector<OptimizerConfig> configs{OptimizerConfig{}, OptimizerConfig::all_off()};
    const CrossCheckReport a = cross_check(g, configs, 300, 42, RngMethod::lemire);
    const CrossCheckReport b = cross_check(g, configs, 300, 42, RngMethod::lemire);
    CHECK(a.samples == b.samples);
    CHECK(a.playouts == b.playouts);
    CHECK(a.moves_compared == b.moves_compared);
  }

  TEST_CASE("crosscheck catches a corrupted shift table") {
    const GameDescription g = load_game_file(test::game_path("connect4"));
    const auto good = CompiledGame::compile(g);
    RulesNfa broken = good->rules();
    bool changed = false;
    // Drop the last destination of every source in one multi-target table.
    for (ShiftTable& t : broken.shift_tables) {
      if (changed || t.destinations.size() < 2) continue;
      std::vector<std::vector<VertexId>> sets;
      for (VertexId v = 0; v + 1 < static_cast<VertexId>(t.offsets.size()); ++v) {
        auto d = t.from(v);
        std::vector<VertexId> kept(d.begin(), d.end());
        if (!kept.empty()) kept.pop_back();
        sets.push_back(kept);
      }
      const int entry = t.entry_node, exit = t.exit_node;
      t = ShiftTable::from_sets(sets);
      t.entry_node = entry;
      t.exit_node = exit;
      changed = true;
    }
    REQUIRE(changed);
    broken.monotonic_class.clear();
    broken.monotonic_class_count = 0;
    const auto bad = CompiledGame::with_rules(*good, broken);
    const CrossCheckReport rep = cross_check(g, {good, bad}, 200, 1);
    REQUIRE(rep.divergences.size() == 1);
    CHECK(rep.divergences[0].config == rep.configs[1]);
    CHECK_FALSE(rep.divergences[0].missing.empty());
    CHECK(rep.divergences[0].extra.empty());
  }

  TEST_CASE("the reference interpreter plays the keeper") {
    const NaiveInterpreter oracle(load_game_file(test::game_path("amazons")));
    auto s = oracle.initial_state();
    const Move m = *oracle.legal_moves(s).begin();
    s = oracle.apply(s, m);
    CHECK(s.role == oracle.description().player_index("black"));
    const int arrows = static_cast<int>(std::count(s.pieces.begin(), s.pieces.end(),
                                                   oracle.description().piece_index("x")));
    CHECK(arrows == 1);
  }
}
