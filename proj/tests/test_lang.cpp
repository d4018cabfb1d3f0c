#include <doctest.h>

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "rbg/errors.hpp"
#include "rbg/game.hpp"
#include "rbg/macros.hpp"
#include "support.hpp"

using namespace rbg;

namespace {

std::vector<std::string> texts(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const Token& t : tokens) out.push_back(t.text);
  return out;
}

// Tokens of the expanded #rules section, without the `#rules =` header.
std::vector<std::string> expanded_rules(const std::string& source) {
  const std::vector<Token> out = expand_macros(tokenize(source));
  std::vector<std::string> rules;
  bool in_rules = false;
  for (const Token& t : out) {
    if (t.kind == TokenKind::section_keyword) {
      in_rules = t.text == "#rules";
      continue;
    }
    if (in_rules) rules.push_back(t.text);
  }
  if (!rules.empty() && rules.front() == "=") rules.erase(rules.begin());
  return rules;
}

bool contains_run(const std::vector<std::string>& haystack, const std::vector<std::string>& needle) {
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    if (std::equal(needle.begin(), needle.end(), haystack.begin() + i)) return true;
  }
  return false;
}

void collect_actions(const RulesExpr& e, std::vector<const ActionNode*>& out) {
  if (e.kind == RulesExpr::Kind::action) out.push_back(&e.action);
  for (const RulesExpr& c : e.children) collect_actions(c, out);
}

const std::string kHeader =
    "#players = white(100), black(100)\n#pieces = e, w\n#variables = turn(100)\n"
    "#board = rectangle(up,down,left,right,[e, w][e, e])\n";

}  // namespace

TEST_SUITE("lang") {
  TEST_CASE("switch tokenizes as arrow and role") {
    const auto tokens = tokenize("->black");
    REQUIRE(tokens.size() == 2);
    CHECK(tokens[0].kind == TokenKind::symbol);
    CHECK(tokens[0].text == "->");
    CHECK(tokens[1].kind == TokenKind::identifier);
    CHECK(tokens[1].text == "black");
  }

  TEST_CASE("empty source has no tokens") { CHECK(tokenize("").empty()); }

  TEST_CASE("assignment list tokens") {
    const auto tokens = tokenize("[$ me=100, opp=0]");
    CHECK(texts(tokens) == std::vector<std::string>{"[$", "me", "=", "100", ",", "opp", "=", "0", "]"});
    CHECK(tokens[3].kind == TokenKind::integer);
    CHECK(tokens[7].kind == TokenKind::integer);
  }

  TEST_CASE("all surface symbols tokenize") {
    const auto tokens = tokenize("-> ->> { } [ ] {? {! {$ [$ * + ( ) ; , = #x");
    CHECK(texts(tokens) == std::vector<std::string>{"->", "->>", "{", "}", "[", "]", "{?", "{!", "{$", "[$", "*",
                                                    "+", "(", ")", ";", ",", "=", "#x"});
    CHECK(tokens.back().kind == TokenKind::section_keyword);
  }

  TEST_CASE("comments are dropped and positions kept") {
    const auto tokens = tokenize("// heading\n  up // trailing\n down");
    REQUIRE(tokens.size() == 2);
    CHECK(tokens[0].position == SourcePosition{2, 3});
    CHECK(tokens[1].position == SourcePosition{3, 2});
  }

  TEST_CASE("a character that starts no token is a lex error") {
    CHECK_THROWS_AS(tokenize("up @ down"), LexError);
    try {
      tokenize("up\n  %");
    } catch (const LexError& e) {
      CHECK(e.position() == SourcePosition{2, 3});
    }
  }

  TEST_CASE("token offsets reproduce the source text") {
    const std::string source = "#rules = ->white {e} [w]  // done\n(up* + down)";
    for (const Token& t : tokenize(source)) CHECK(source.substr(t.offset, t.text.size()) == t.text);
  }

  TEST_CASE("macro substitution") {
    CHECK(expanded_rules(kHeader + "#f(x) = (x x)\n#rules = f(up)") ==
          std::vector<std::string>{"(", "up", "up", ")"});
  }

  TEST_CASE("multi-token argument is one parameter") {
    CHECK(expanded_rules(kHeader + "#directedShift(dir) = (dir {e})\n#rules = directedShift(up left)") ==
          std::vector<std::string>{"(", "up", "left", "{", "e", "}", ")"});
  }

  TEST_CASE("amazons turn macro expands to the role switch and the queen write") {
    const std::string source = R"(
#players = white(100), black(100)
#pieces = e, w, b, x
#variables =
#board = rectangle(up,down,left,right,[e])
#turn(piece; me; opp) = (->me {piece} [e] [piece] ->> [$ me=100, opp=0])
#rules = (turn(w; white; black) turn(b; black; white))*
)";
    const auto rules = expanded_rules(source);
    CHECK(contains_run(rules, {"->", "white"}));
    CHECK(contains_run(rules, {"[", "w", "]"}));
    CHECK(contains_run(rules, {"[$", "white", "=", "100", ",", "black", "=", "0", "]"}));
  }

  TEST_CASE("parameter names do not matter") {
    CHECK(expanded_rules(kHeader + "#f(a; b) = (a b a)\n#rules = f(up; down)") ==
          expanded_rules(kHeader + "#f(first; second) = (first second first)\n#rules = f(up; down)"));
  }

  TEST_CASE("parameterless macros and nesting") {
    CHECK(expanded_rules(kHeader + "#g = up\n#f(x) = (g x)\n#rules = f(down)") ==
          std::vector<std::string>{"(", "up", "down", ")"});
  }

  TEST_CASE("macro errors") {
    auto kind_of = [](const std::string& text) {
      try {
        expand_macros(tokenize(text));
      } catch (const MacroError& e) {
        return static_cast<int>(e.kind());
      }
      return -1;
    };
    CHECK(kind_of(kHeader + "#rules = nothere(up; down)") == static_cast<int>(MacroError::Kind::unknown_macro));
    CHECK(kind_of(kHeader + "#f(x) = x\n#rules = f(up; down)") == static_cast<int>(MacroError::Kind::arity_mismatch));
    CHECK(kind_of(kHeader + "#f(x) = (f(x))\n#rules = f(up)") == static_cast<int>(MacroError::Kind::recursion_limit));
    CHECK(kind_of(kHeader + "#f = up\n#f = down\n#rules = f") ==
          static_cast<int>(MacroError::Kind::duplicate_definition));
  }

  TEST_CASE("amazons description shape") {
    const GameDescription g = load_game_file(test::game_path("amazons"));
    CHECK(g.players.size() == 2);
    CHECK(g.players[0].name == "white");
    CHECK(g.players[0].max_score == 100);
    CHECK(g.pieces.size() == 4);
    CHECK(g.variables.empty());
    CHECK(g.board.vertex_count() == 100);
  }

  TEST_CASE("undeclared piece is rejected") {
    CHECK_THROWS_AS(load_game_text(kHeader + "#rules = ->white {q} ->black"), ValidationError);
  }

  TEST_CASE("undeclared direction, role and variable are rejected") {
    CHECK_THROWS_AS(load_game_text(kHeader + "#rules = ->white north ->black"), ValidationError);
    CHECK_THROWS_AS(load_game_text(kHeader + "#rules = ->red"), ValidationError);
    CHECK_THROWS_AS(load_game_text(kHeader + "#rules = ->white [$ moves=1] ->black"), ValidationError);
  }

  TEST_CASE("duplicate and overlapping declarations are rejected") {
    CHECK_THROWS_AS(load_game_text("#players = white(100), white(100)\n#pieces = e\n#variables =\n"
                                   "#board = rectangle(up,down,left,right,[e])\n#rules = ->white"),
                    ValidationError);
    CHECK_THROWS_AS(load_game_text("#players = white(100)\n#pieces = e, white\n#variables =\n"
                                   "#board = rectangle(up,down,left,right,[e])\n#rules = ->white"),
                    ValidationError);
  }

  TEST_CASE("modifiers inside patterns are rejected") {
    CHECK_THROWS(load_game_text(kHeader + "#rules = ->white {? [w]} ->black"));
  }

  TEST_CASE("syntax errors carry a position") {
    try {
      load_game_text(kHeader + "#rules = ->white (up ->black");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.position().line == 5);
    }
  }

  TEST_CASE("comparison parses into an expression tree") {
    const GameDescription g = load_game_text(kHeader + "#rules = ->white {$ turn==100} ->black");
    std::vector<const ActionNode*> actions;
    collect_actions(g.rules, actions);
    const ActionNode* cmp = nullptr;
    for (const ActionNode* a : actions) {
      if (a->type == ActionType::compare) cmp = a;
    }
    REQUIRE(cmp != nullptr);
    CHECK(cmp->lhs == ArithExpr::variable("turn"));
    CHECK(cmp->op == CompareOp::eq);
    CHECK(cmp->rhs == ArithExpr::constant(100));
  }

  TEST_CASE("all comparison operators and arithmetic") {
    const GameDescription g = load_game_text(
        kHeader + "#rules = ->white {$ turn != 1} {$ turn < 2} {$ turn <= white - 3} {$ turn > 4} "
                  "{$ turn >= 5 + black} [$ turn = turn + 1] ->black");
    std::vector<const ActionNode*> actions;
    collect_actions(g.rules, actions);
    std::vector<CompareOp> ops;
    for (const ActionNode* a : actions) {
      if (a->type == ActionType::compare) ops.push_back(a->op);
    }
    CHECK(ops == std::vector<CompareOp>{CompareOp::ne, CompareOp::lt, CompareOp::le, CompareOp::gt, CompareOp::ge});
    const ActionNode* third = nullptr;
    for (const ActionNode* a : actions) {
      if (a->type == ActionType::compare && a->op == CompareOp::le) third = a;
    }
    REQUIRE(third != nullptr);
    CHECK(third->rhs.kind == ArithExpr::Kind::subtract);
  }

  TEST_CASE("assignment list becomes a sequence in list order") {
    const GameDescription g = load_game_text(kHeader + "#rules = ->white [$ white=100, black=0] ->black");
    std::vector<const ActionNode*> actions;
    collect_actions(g.rules, actions);
    std::vector<std::string> assigned;
    for (const ActionNode* a : actions) {
      if (a->type == ActionType::assign) assigned.push_back(a->variable);
    }
    CHECK(assigned == std::vector<std::string>{"white", "black"});
  }

  TEST_CASE("precedence of postfix, juxtaposition and sum") {
    const GameDescription g = load_game_text(kHeader + "#rules = ->white (up down* + left) ->black");
    REQUIRE(g.rules.kind == RulesExpr::Kind::sequence);
    const RulesExpr& sum = g.rules.children[1];
    REQUIRE(sum.kind == RulesExpr::Kind::sum);
    REQUIRE(sum.children.size() == 2);
    CHECK(sum.children[0].kind == RulesExpr::Kind::sequence);
    CHECK(sum.children[0].children[1].kind == RulesExpr::Kind::star);
    CHECK(sum.children[1].kind == RulesExpr::Kind::action);
  }

  TEST_CASE("postfix plus before a closing parenthesis") {
    const GameDescription g = load_game_text(kHeader + "#rules = ->white (up+) ->black");
    CHECK(g.rules.children[1].kind == RulesExpr::Kind::plus);
    const GameDescription h = load_game_text(kHeader + "#rules = ->white (up + down) ->black");
    CHECK(h.rules.children[1].kind == RulesExpr::Kind::sum);
  }

  TEST_CASE("piece sets in checks") {
    const GameDescription g = load_game_text(kHeader + "#rules = ->white {e, w} ->black");
    std::vector<const ActionNode*> actions;
    collect_actions(g.rules, actions);
    bool found = false;
    for (const ActionNode* a : actions) {
      if (a->type == ActionType::on) found = a->pieces == std::vector<std::string>{"e", "w"};
    }
    CHECK(found);
  }

  TEST_CASE("empty rules are rejected") {
    CHECK_THROWS(load_game_text(kHeader + "#rules = "));
  }

  TEST_CASE("corpus parses deterministically and declares what it uses") {
    for (const char* name : test::kAllGames) {
      const std::string game_name = name;
      CAPTURE(game_name);
      const GameDescription a = load_game_file(test::game_path(name));
      const GameDescription b = load_game_file(test::game_path(name));
      CHECK(a == b);
      std::vector<const ActionNode*> actions;
      collect_actions(a.rules, actions);
      const std::set<std::string> pieces(a.pieces.begin(), a.pieces.end());
      const std::set<std::string> directions(a.board.directions().begin(), a.board.directions().end());
      for (const ActionNode* act : actions) {
        for (const std::string& p : act->pieces) CHECK(pieces.count(p) == 1);
        if (act->type == ActionType::shift) CHECK(directions.count(act->direction) == 1);
        if (act->type == ActionType::assign) CHECK(a.variable_index(act->variable) >= 0);
        if (act->type == ActionType::switch_turn && !act->role.empty()) CHECK(a.player_index(act->role) >= 0);
      }
    }
  }

  TEST_CASE("unreadable file names the file") {
    try {
      load_game_file("/nonexistent/game.rbg");
      FAIL("expected a load error");
    } catch (const LoadError& e) {
      CHECK(std::string(e.what()).find("game.rbg") != std::string::npos);
    }
  }
}
