#include <doctest.h>

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbg/bench.hpp"
#include "support.hpp"

using namespace rbg;

namespace {

BenchConfig config_for(const std::string& name, double seconds = 0.2) {
  BenchConfig c;
  c.game = test::game_path(name);
  c.seconds = seconds;
  c.optimizer = test::metadata(name).config();
  return c;
}

}  // namespace

TEST_SUITE("bench") {
  TEST_CASE("rng method names") {
    for (RngMethod m : {RngMethod::standard, RngMethod::java, RngMethod::lemire}) {
      CHECK(parse_rng_method(to_string(m)) == m);
    }
    CHECK_FALSE(parse_rng_method("mersenne").has_value());
  }

  TEST_CASE("a single choice always draws zero") {
    for (RngMethod m : {RngMethod::standard, RngMethod::java, RngMethod::lemire}) {
      for (std::uint32_t d : test::draws(m, 5, 1, 100)) CHECK(d == 0);
    }
  }

  TEST_CASE("java generator reproduces java.util.Random") {
    CHECK(test::draws(RngMethod::java, 42, 7, 10) == std::vector<std::uint32_t>{1, 5, 6, 3, 5, 4, 1, 3, 6, 3});
    CHECK(test::draws(RngMethod::java, 42, 10, 5) == std::vector<std::uint32_t>{0, 3, 8, 4, 0});
    CHECK(test::draws(RngMethod::java, 42, 16, 5) == std::vector<std::uint32_t>{11, 0, 10, 0, 4});
    CHECK(test::draws(RngMethod::java, 0, 100, 5) == std::vector<std::uint32_t>{60, 48, 29, 47, 15});
  }

  TEST_CASE("draws are uniform") {
    for (RngMethod m : {RngMethod::standard, RngMethod::java, RngMethod::lemire}) {
      for (std::uint32_t n : {2u, 7u, 100u}) {
        CAPTURE(to_string(m));
        CAPTURE(n);
        CHECK(test::max_bucket_sigma(m, 12345, n, 200000) <= 5.0);
      }
    }
  }

  TEST_CASE("draws stay in range and depend on the seed") {
    for (RngMethod m : {RngMethod::standard, RngMethod::java, RngMethod::lemire}) {
      CAPTURE(to_string(m));
      const auto a = test::draws(m, 1, 1000003, 50);
      CHECK(a == test::draws(m, 1, 1000003, 50));
      CHECK(a != test::draws(m, 2, 1000003, 50));
      for (std::uint32_t d : a) CHECK(d < 1000003u);
    }
  }

  TEST_CASE("flat monte carlo report") {
    BenchConfig c = config_for("tictactoe");
    c.playouts = 2000;
    const BenchReport r = flat_mc(c);
    CHECK(r.game == "tictactoe");
    CHECK(r.players == std::vector<std::string>{"xplayer", "oplayer"});
    CHECK(r.playouts == 2000);
    CHECK(r.average_depth() >= 5.0);
    CHECK(r.average_depth() <= 9.0);
    CHECK(r.wall_seconds > 0.0);
    CHECK(r.playouts_per_second() == doctest::Approx(r.playouts / r.wall_seconds));
    CHECK(r.states_per_second() == doctest::Approx(r.states / r.wall_seconds));
    REQUIRE(r.first_moves.size() == 9);
    std::uint64_t total = 0;
    for (const FirstMoveStats& f : r.first_moves) {
      total += f.playouts;
      REQUIRE(f.average_scores.size() == 2);
      CHECK(f.average_scores[0] + f.average_scores[1] == doctest::Approx(100.0));
    }
    CHECK(total == 2000);
  }

  TEST_CASE("fixed playout runs are reproducible") {
    for (RngMethod m : {RngMethod::standard, RngMethod::java, RngMethod::lemire}) {
      BenchConfig c = config_for("breakthrough");
      c.playouts = 200;
      c.rng = m;
      c.seed = 77;
      const BenchReport a = flat_mc(c), b = flat_mc(c);
      CHECK(a.states == b.states);
      for (std::size_t i = 0; i < a.first_moves.size(); ++i) {
        CHECK(a.first_moves[i].playouts == b.first_moves[i].playouts);
        CHECK(a.first_moves[i].average_scores == b.first_moves[i].average_scores);
      }
      c.seed = 78;
      CHECK(flat_mc(c).states != a.states);
    }
  }

  TEST_CASE("timed runs and resumption") {
    const BenchConfig c = config_for("connect4", 0.3);
    const BenchReport r = flat_mc(c);
    CHECK(r.playouts > 0);
    CHECK(r.wall_seconds >= 0.3);
    CHECK(r.wall_seconds < 2.0);

    FlatMc mc(load_game_file(c.game), c);
    mc.run_playouts(10);
    mc.run_playouts(15);
    CHECK(mc.report().playouts == 25);
    mc.run_for(0.05);
    CHECK(mc.report().playouts > 25);
  }

  TEST_CASE("configuration validation") {
    BenchConfig c = config_for("tictactoe");
    CHECK_NOTHROW(c.validate());
    c.seconds = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.playouts = 10;
    CHECK_NOTHROW(c.validate());
    c.optimizer.shift_tables = false;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    CHECK_THROWS_AS(flat_mc(c), std::invalid_argument);
  }

  TEST_CASE("ablation columns") {
    const auto cols = ablation_columns();
    REQUIRE(cols.size() == 6);
    CHECK(cols.front().config == OptimizerConfig::all_off());
    CHECK(cols.back().config == OptimizerConfig{});
    CHECK_FALSE(cols[1].config.shift_tables);
    CHECK_FALSE(cols[1].config.monotonic);
    for (const auto& c : cols) CHECK(c.config.valid());
  }

  TEST_CASE("ablation marks optimizations a game does not use") {
    BenchConfig base;
    base.seconds = 0.4;
    const auto rows = run_ablation({test::game_path("amazons")}, base, 0.1);
    REQUIRE(rows.size() == 1);
    const auto& cells = rows[0].cells;
    REQUIRE(cells.size() == 6);
    CHECK_FALSE(cells[4].applicable);  // no monotonic classes
    CHECK(cells[5].ratio == doctest::Approx(1.0));
    const std::string text = format_text(rows);
    CHECK(text.find("(0%)") != std::string::npos);
    CHECK(text.find("amazons") != std::string::npos);
  }

  TEST_CASE("connect four loses most without any optimization") {
    BenchConfig base;
    base.seconds = 1.0;
    const auto rows = run_ablation({test::game_path("connect4")}, base, 0.1);
    const auto& cells = rows.at(0).cells;
    for (std::size_t i = 1; i + 1 < cells.size(); ++i) CHECK(cells[0].ratio < cells[i].ratio);
    CHECK(cells[0].ratio < 0.7);
  }

  TEST_CASE("variant comparison is relative to the first game") {
    BenchConfig base;
    base.seconds = 0.3;
    const auto rows = run_variant_comparison({test::game_path("amazons"), test::game_path("amazons_split2")}, base,
                                             0.1);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].speedup == doctest::Approx(1.0));
    CHECK(rows[1].speedup > 1.0);
    CHECK(format_text(rows).find("100%") != std::string::npos);
  }

  TEST_CASE("json output") {
    BenchConfig c = config_for("tictactoe");
    c.playouts = 50;
    const nlohmann::json j = to_json(flat_mc(c));
    for (const char* key : {"game", "config", "players", "playouts", "states", "wall_seconds", "playouts_per_second",
                            "states_per_second", "average_depth", "first_moves"}) {
      CAPTURE(key);
      CHECK(j.contains(key));
    }
    CHECK(j["playouts"] == 50);
    CHECK(j["config"]["playout_limit"] == 50);
    CHECK(j["config"]["rng"] == "standard");
    CHECK(j["config"]["optimizations"]["shift_tables"] == true);
    CHECK(j["first_moves"].size() == 9);
    CHECK(j["first_moves"][0].contains("average_scores"));
  }

  TEST_CASE("json ablation rows") {
    BenchConfig base;
    base.seconds = 0.2;
    const nlohmann::json j = to_json(run_ablation({test::game_path("tictactoe")}, base, 0.05));
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 6);
    for (const auto& row : j) {
      CHECK(row.contains("column"));
      CHECK(row.contains("applicable"));
      CHECK(row.contains("relative_throughput"));
    }
  }
}
