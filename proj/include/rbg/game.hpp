#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rbg/board.hpp"
#include "rbg/lexer.hpp"

namespace rbg {

/// Arithmetic over variables and integer constants (`+` and `-` only).
struct ArithExpr {
  enum class Kind { constant, variable, add, subtract };

  Kind kind = Kind::constant;
  int value = 0;
  std::string name;
  std::vector<ArithExpr> operands;

  static ArithExpr constant(int v) { return ArithExpr{Kind::constant, v, {}, {}}; }
  static ArithExpr variable(std::string n) { return ArithExpr{Kind::variable, 0, std::move(n), {}}; }

  bool operator==(const ArithExpr&) const = default;
};

enum class CompareOp { eq, ne, lt, le, gt, ge };
std::string_view to_string(CompareOp op);

enum class ActionType { shift, on, off, compare, assign, switch_turn, pattern };

/// True for offs, assignments and switches: the actions recorded in moves.
constexpr bool is_modifier(ActionType t) {
  return t == ActionType::off || t == ActionType::assign || t == ActionType::switch_turn;
}

struct ActionNode {
  ActionType type = ActionType::shift;
  std::string direction;            // shift
  std::vector<std::string> pieces;  // on: accepted set; off: exactly one
  std::string variable;             // assign target
  ArithExpr lhs;                    // compare
  ArithExpr rhs;                    // compare, assign value
  CompareOp op = CompareOp::eq;
  std::string role;                 // switch; empty means the keeper
  bool positive = true;             // pattern polarity
  SourcePosition position;

  bool operator==(const ActionNode&) const = default;
};

/// Rules regular expression. A pattern action keeps its body in children[0].
struct RulesExpr {
  enum class Kind { action, sequence, sum, star, plus };

  Kind kind = Kind::action;
  ActionNode action;
  std::vector<RulesExpr> children;

  bool operator==(const RulesExpr&) const = default;
};

/// Number of action leaves, pattern bodies included.
std::size_t count_actions(const RulesExpr& expr);

struct PlayerDecl {
  std::string name;
  int max_score = 0;
  bool operator==(const PlayerDecl&) const = default;
};

struct VariableDecl {
  std::string name;
  int bound = 0;
  bool operator==(const VariableDecl&) const = default;
};

/// A parsed and validated game. Every player owns a score variable with the
/// player's name; variable indices put those first, then declared variables.
struct GameDescription {
  std::vector<PlayerDecl> players;
  std::vector<std::string> pieces;
  std::vector<VariableDecl> variables;
  BoardGraph board;
  RulesExpr rules;

  int player_index(std::string_view name) const;
  int piece_index(std::string_view name) const;
  /// Index into the full valuation (players first); -1 if unknown.
  int variable_index(std::string_view name) const;
  int variable_count() const { return static_cast<int>(players.size() + variables.size()); }
  int variable_bound(int index) const;
  std::string variable_name(int index) const;

  bool operator==(const GameDescription&) const = default;
};

inline constexpr int kMaxPieces = 64;

/// Parses fully macro-expanded tokens. Throws ParseError or ValidationError.
GameDescription parse_game(const std::vector<Token>& tokens);

/// tokenize + expand_macros + parse_game.
GameDescription load_game_text(std::string_view source);
/// Reads and loads a file; any failure is rethrown as LoadError naming the file.
GameDescription load_game_file(const std::filesystem::path& path);

}  // namespace rbg
