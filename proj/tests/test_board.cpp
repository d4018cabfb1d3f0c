#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "rbg/board.hpp"
#include "rbg/errors.hpp"
#include "rbg/game.hpp"
#include "support.hpp"

using namespace rbg;

namespace {

const std::array<std::string, 4> kDirs{"up", "down", "left", "right"};

BoardGraph blank(int rows, int cols) {
  return build_rectangle(kDirs, std::vector<std::vector<std::string>>(rows, std::vector<std::string>(cols, "e")),
                         {"e"});
}

}  // namespace

TEST_SUITE("board") {
  TEST_CASE("amazons starting position") {
    const GameDescription g = load_game_file(test::game_path("amazons"));
    const BoardGraph& b = g.board;
    const int w = g.piece_index("w"), bl = g.piece_index("b"), e = g.piece_index("e");
    std::set<std::string> whites, blacks;
    for (VertexId v = 0; v < b.vertex_count(); ++v) {
      if (b.initial_pieces()[v] == w) whites.insert(b.vertex_name(v));
      if (b.initial_pieces()[v] == bl) blacks.insert(b.vertex_name(v));
    }
    CHECK(whites == std::set<std::string>{"rx0y6", "rx9y6", "rx3y9", "rx6y9"});
    CHECK(blacks == std::set<std::string>{"rx3y0", "rx6y0", "rx0y3", "rx9y3"});
    CHECK(b.initial_pieces()[*b.find_vertex("rx4y4")] == e);
  }

  TEST_CASE("single square board has no edges") {
    const BoardGraph b = blank(1, 1);
    CHECK(b.vertex_count() == 1);
    CHECK(b.edge_count() == 0);
    for (int d = 0; d < 4; ++d) CHECK_FALSE(b.neighbor(0, d).has_value());
  }

  TEST_CASE("vertex naming and indexing") {
    const BoardGraph b = blank(3, 4);
    CHECK(b.vertex_name(0) == "rx0y0");
    CHECK(b.vertex_name(1 * 4 + 2) == "rx2y1");
    CHECK(*b.find_vertex("rx3y2") == 11);
    CHECK_FALSE(b.find_vertex("rx4y0").has_value());
  }

  TEST_CASE("neighbors on a rectangle") {
    const BoardGraph b = blank(3, 4);
    const int up = b.direction_index("up"), down = b.direction_index("down");
    const int left = b.direction_index("left"), right = b.direction_index("right");
    const VertexId centre = *b.find_vertex("rx1y1");
    CHECK(b.vertex_name(*b.neighbor(centre, up)) == "rx1y0");
    CHECK(b.vertex_name(*b.neighbor(centre, down)) == "rx1y2");
    CHECK(b.vertex_name(*b.neighbor(centre, left)) == "rx0y1");
    CHECK(b.vertex_name(*b.neighbor(centre, right)) == "rx2y1");
    CHECK_FALSE(b.neighbor(*b.find_vertex("rx0y0"), up).has_value());
    CHECK_FALSE(b.neighbor(*b.find_vertex("rx0y0"), left).has_value());
    CHECK_FALSE(b.neighbor(*b.find_vertex("rx3y2"), down).has_value());
    CHECK_FALSE(b.neighbor(*b.find_vertex("rx3y2"), right).has_value());
    CHECK(b.direction_index("north") == -1);
  }

  TEST_CASE("opposite directions are inverse and edge count matches the grid") {
    for (int rows = 1; rows <= 6; ++rows) {
      for (int cols = 1; cols <= 6; ++cols) {
        const BoardGraph b = blank(rows, cols);
        CHECK(b.edge_count() == static_cast<std::size_t>(2 * (rows - 1) * cols + 2 * rows * (cols - 1)));
        const std::pair<int, int> opposite[] = {{0, 1}, {1, 0}, {2, 3}, {3, 2}};
        for (VertexId v = 0; v < b.vertex_count(); ++v) {
          for (auto [d, o] : opposite) {
            if (auto n = b.neighbor(v, d)) CHECK(b.neighbor(*n, o) == v);
          }
        }
      }
    }
  }

  TEST_CASE("custom direction labels keep their order") {
    const BoardGraph b = build_rectangle({"n", "s", "w", "e"}, {{"x", "x"}}, {"x"});
    CHECK(b.directions() == std::vector<std::string>{"n", "s", "w", "e"});
    CHECK(b.vertex_name(*b.neighbor(0, b.direction_index("e"))) == "rx1y0");
  }

  TEST_CASE("rectangle errors") {
    auto kind = [](auto&& fn) {
      try {
        fn();
      } catch (const BoardError& e) {
        return static_cast<int>(e.kind());
      }
      return -1;
    };
    CHECK(kind([] { build_rectangle(kDirs, {{"e", "e"}, {"e"}}, {"e"}); }) ==
          static_cast<int>(BoardError::Kind::ragged_rows));
    CHECK(kind([] { build_rectangle(kDirs, {{"e", "q"}}, {"e"}); }) ==
          static_cast<int>(BoardError::Kind::unknown_piece));
    CHECK(kind([] { build_rectangle(kDirs, {}, {"e"}); }) == static_cast<int>(BoardError::Kind::empty_board));
  }

  TEST_CASE("ragged rows in a game file fail to load") {
    CHECK_THROWS_AS(load_game_text("#players = a(1)\n#pieces = e\n#variables =\n"
                                   "#board = rectangle(up,down,left,right,[e, e][e])\n#rules = ->a"),
                    RbgError);
  }

  TEST_CASE("general graph boards") {
    const BoardGraph b = build_graph({{"a", "e", {{"next", "b"}}},
                                      {"b", "x", {{"next", "c"}, {"back", "a"}}},
                                      {"c", "e", {{"back", "b"}, {"loop", "c"}}}},
                                     {"e", "x"});
    CHECK(b.vertex_count() == 3);
    CHECK(b.directions() == std::vector<std::string>{"next", "back", "loop"});
    CHECK(b.edge_count() == 5);
    CHECK(b.initial_pieces() == std::vector<PieceId>{0, 1, 0});
    CHECK(b.vertex_name(*b.neighbor(0, 0)) == "b");
    CHECK(b.vertex_name(*b.neighbor(2, 2)) == "c");
    CHECK_FALSE(b.neighbor(0, 1).has_value());
  }

  TEST_CASE("general graph errors") {
    CHECK_THROWS_AS(build_graph({{"a", "e", {{"d", "nowhere"}}}}, {"e"}), BoardError);
    CHECK_THROWS_AS(build_graph({{"a", "e", {}}, {"a", "e", {}}}, {"e"}), BoardError);
    CHECK_THROWS_AS(build_graph({{"a", "q", {}}}, {"e"}), BoardError);
    CHECK_THROWS_AS(build_graph({}, {"e"}), BoardError);
  }

  TEST_CASE("general graph syntax in a game file") {
    const GameDescription g = load_game_text(
        "#players = a(1)\n#pieces = e, x\n#variables =\n"
        "#board = p[e]{go: q} q[x]{go: p, stay: q}\n#rules = ->a go {x} ->a");
    CHECK(g.board.vertex_count() == 2);
    CHECK(g.board.vertex_name(0) == "p");
    CHECK(g.board.edge_count() == 3);
  }

  TEST_CASE("hex board is a consistent rhombus") {
    const GameDescription g = load_game_file(test::game_path("hex"));
    const BoardGraph& b = g.board;
    CHECK(b.vertex_count() == 81);
    std::size_t corners = 0;
    for (VertexId v = 0; v < b.vertex_count(); ++v) {
      int degree = 0;
      for (int d = 0; d < b.direction_count(); ++d) degree += b.neighbor(v, d).has_value();
      CHECK(degree >= 2);
      CHECK(degree <= 6);
      corners += degree <= 3;
    }
    CHECK(corners == 4);
  }
}
