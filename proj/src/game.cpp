#include "rbg/game.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "rbg/errors.hpp"
#include "rbg/macros.hpp"

namespace rbg {

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::eq: return "==";
    case CompareOp::ne: return "!=";
    case CompareOp::lt: return "<";
    case CompareOp::le: return "<=";
    case CompareOp::gt: return ">";
    case CompareOp::ge: return ">=";
  }
  return "?";
}

std::size_t count_actions(const RulesExpr& expr) {
  std::size_t n = expr.kind == RulesExpr::Kind::action ? 1 : 0;
  for (const RulesExpr& child : expr.children) n += count_actions(child);
  return n;
}

int GameDescription::player_index(std::string_view name) const {
  for (std::size_t i = 0; i < players.size(); ++i) {
    if (players[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

int GameDescription::piece_index(std::string_view name) const {
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i] == name) return static_cast<int>(i);
  }
  return -1;
}

int GameDescription::variable_index(std::string_view name) const {
  const int p = player_index(name);
  if (p >= 0) return p;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i].name == name) return static_cast<int>(players.size() + i);
  }
  return -1;
}

int GameDescription::variable_bound(int index) const {
  const auto np = static_cast<int>(players.size());
  return index < np ? players[index].max_score : variables[index - np].bound;
}

std::string GameDescription::variable_name(int index) const {
  const auto np = static_cast<int>(players.size());
  return index < np ? players[index].name : variables[index - np].name;
}

namespace {

std::string describe(const Token* t) { return t == nullptr ? "end of input" : "'" + t->text + "'"; }

// Cursor over the tokens of a single section body.
class Cursor {
 public:
  Cursor(const std::vector<Token>& tokens, std::size_t begin, std::size_t end, SourcePosition anchor)
      : tokens_(tokens), pos_(begin), end_(end), anchor_(anchor) {}

  const Token* peek(std::size_t ahead = 0) const {
    return pos_ + ahead < end_ ? &tokens_[pos_ + ahead] : nullptr;
  }
  bool at_end() const { return pos_ >= end_; }
  bool peek_symbol(std::string_view s) const {
    const Token* t = peek();
    return t != nullptr && t->is_symbol(s);
  }
  bool accept_symbol(std::string_view s) {
    if (!peek_symbol(s)) return false;
    ++pos_;
    return true;
  }
  const Token& expect_symbol(std::string_view s) {
    if (!peek_symbol(s)) fail("'" + std::string(s) + "'");
    return tokens_[pos_++];
  }
  const Token& expect_identifier(const std::string& what) {
    const Token* t = peek();
    if (t == nullptr || !t->is_identifier()) fail(what);
    ++pos_;
    return *t;
  }
  int expect_integer(const std::string& what) {
    const Token* t = peek();
    if (t == nullptr || t->kind != TokenKind::integer) fail(what);
    ++pos_;
    try {
      return std::stoi(t->text);
    } catch (const std::out_of_range&) {
      throw ParseError(t->position, "an integer that fits in 32 bits", t->text);
    }
  }
  SourcePosition position() const {
    const Token* t = peek();
    if (t != nullptr) return t->position;
    return pos_ > 0 && pos_ - 1 < tokens_.size() ? tokens_[pos_ - 1].position : anchor_;
  }
  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(position(), expected, describe(peek()));
  }

 private:
  const std::vector<Token>& tokens_;
  std::size_t pos_;
  std::size_t end_;
  SourcePosition anchor_;
};

bool starts_primary(const Token* t) {
  if (t == nullptr) return false;
  if (t->is_identifier()) return true;
  static const std::set<std::string> openers = {"(", "{", "[", "{$", "[$", "{?", "{!", "->", "->>"};
  return t->kind == TokenKind::symbol && openers.count(t->text) != 0;
}

class RulesParser {
 public:
  RulesParser(Cursor& cursor, const GameDescription& game) : in_(cursor), game_(game) {}

  RulesExpr parse_sum() {
    std::vector<RulesExpr> alternatives;
    alternatives.push_back(parse_sequence());
    while (in_.peek_symbol("+")) {
      in_.accept_symbol("+");
      alternatives.push_back(parse_sequence());
    }
    if (alternatives.size() == 1) return std::move(alternatives.front());
    return RulesExpr{RulesExpr::Kind::sum, {}, std::move(alternatives)};
  }

 private:
  RulesExpr parse_sequence() {
    std::vector<RulesExpr> items;
    if (!starts_primary(in_.peek())) in_.fail("a rules expression");
    while (starts_primary(in_.peek())) {
      RulesExpr item = parse_postfix();
      if (item.kind == RulesExpr::Kind::sequence) {
        for (auto& c : item.children) items.push_back(std::move(c));
      } else {
        items.push_back(std::move(item));
      }
    }
    if (items.size() == 1) return std::move(items.front());
    return RulesExpr{RulesExpr::Kind::sequence, {}, std::move(items)};
  }

  RulesExpr parse_postfix() {
    RulesExpr expr = parse_primary();
    while (true) {
      if (in_.peek_symbol("*")) {
        in_.accept_symbol("*");
        expr = RulesExpr{RulesExpr::Kind::star, {}, {std::move(expr)}};
      } else if (in_.peek_symbol("+") && !starts_primary(in_.peek(1))) {
        // A '+' that cannot be followed by an operand is the postfix
        // one-or-more operator rather than a sum.
        in_.accept_symbol("+");
        expr = RulesExpr{RulesExpr::Kind::plus, {}, {std::move(expr)}};
      } else {
        return expr;
      }
    }
  }

  RulesExpr parse_primary() {
    const Token* t = in_.peek();
    if (t == nullptr) in_.fail("a rules expression");
    const SourcePosition where = t->position;
    if (t->is_symbol("(")) {
      in_.accept_symbol("(");
      RulesExpr inner = parse_sum();
      in_.expect_symbol(")");
      return inner;
    }
    ActionNode action;
    action.position = where;
    if (t->is_identifier()) {
      const Token& name = in_.expect_identifier("a direction");
      if (game_.board.direction_index(name.text) < 0) {
        throw ValidationError(where, "undeclared identifier '" + name.text + "' (not a direction)");
      }
      action.type = ActionType::shift;
      action.direction = name.text;
      return leaf(std::move(action));
    }
    if (in_.accept_symbol("{")) {
      action.type = ActionType::on;
      do {
        action.pieces.push_back(piece_name());
      } while (in_.accept_symbol(","));
      in_.expect_symbol("}");
      return leaf(std::move(action));
    }
    if (in_.accept_symbol("[")) {
      action.type = ActionType::off;
      action.pieces.push_back(piece_name());
      in_.expect_symbol("]");
      return leaf(std::move(action));
    }
    if (in_.accept_symbol("{$")) {
      action.type = ActionType::compare;
      action.lhs = parse_arith();
      action.op = parse_compare_op();
      action.rhs = parse_arith();
      in_.expect_symbol("}");
      return leaf(std::move(action));
    }
    if (in_.accept_symbol("[$")) {
      std::vector<RulesExpr> assignments;
      do {
        ActionNode assign;
        assign.type = ActionType::assign;
        assign.position = in_.position();
        const Token& var = in_.expect_identifier("a variable name");
        if (game_.variable_index(var.text) < 0) {
          throw ValidationError(var.position, "undeclared variable '" + var.text + "'");
        }
        assign.variable = var.text;
        in_.expect_symbol("=");
        assign.rhs = parse_arith();
        assignments.push_back(leaf(std::move(assign)));
      } while (in_.accept_symbol(","));
      in_.expect_symbol("]");
      if (assignments.size() == 1) return std::move(assignments.front());
      return RulesExpr{RulesExpr::Kind::sequence, {}, std::move(assignments)};
    }
    if (in_.accept_symbol("->>")) {
      action.type = ActionType::switch_turn;
      return leaf(std::move(action));
    }
    if (in_.accept_symbol("->")) {
      action.type = ActionType::switch_turn;
      const Token& role = in_.expect_identifier("a player name");
      if (game_.player_index(role.text) < 0) {
        throw ValidationError(role.position, "undeclared player '" + role.text + "'");
      }
      action.role = role.text;
      return leaf(std::move(action));
    }
    if (t->is_symbol("{?") || t->is_symbol("{!")) {
      in_.accept_symbol(t->text);
      action.type = ActionType::pattern;
      action.positive = t->text == "{?";
      RulesExpr body = parse_sum();
      in_.expect_symbol("}");
      reject_modifiers(body);
      RulesExpr node = leaf(std::move(action));
      node.children.push_back(std::move(body));
      return node;
    }
    in_.fail("a rules expression");
  }

  static RulesExpr leaf(ActionNode action) {
    return RulesExpr{RulesExpr::Kind::action, std::move(action), {}};
  }

  static void reject_modifiers(const RulesExpr& body) {
    if (body.kind == RulesExpr::Kind::action && is_modifier(body.action.type)) {
      throw ValidationError(body.action.position,
                            "patterns may not contain offs, assignments or switches");
    }
    for (const RulesExpr& c : body.children) reject_modifiers(c);
  }

  std::string piece_name() {
    const Token& t = in_.expect_identifier("a piece name");
    if (game_.piece_index(t.text) < 0) {
      throw ValidationError(t.position, "undeclared piece '" + t.text + "'");
    }
    return t.text;
  }

  CompareOp parse_compare_op() {
    static const std::pair<std::string_view, CompareOp> ops[] = {
        {"==", CompareOp::eq}, {"!=", CompareOp::ne}, {"<=", CompareOp::le},
        {">=", CompareOp::ge}, {"<", CompareOp::lt},  {">", CompareOp::gt}};
    for (const auto& [text, op] : ops) {
      if (in_.accept_symbol(text)) return op;
    }
    in_.fail("a comparison operator");
  }

  ArithExpr parse_arith() {
    ArithExpr left = parse_term();
    while (in_.peek_symbol("+") || in_.peek_symbol("-")) {
      const bool add = in_.accept_symbol("+");
      if (!add) in_.accept_symbol("-");
      ArithExpr right = parse_term();
      ArithExpr combined;
      combined.kind = add ? ArithExpr::Kind::add : ArithExpr::Kind::subtract;
      combined.operands.push_back(std::move(left));
      combined.operands.push_back(std::move(right));
      left = std::move(combined);
    }
    return left;
  }

  ArithExpr parse_term() {
    const Token* t = in_.peek();
    if (t != nullptr && t->kind == TokenKind::integer) {
      return ArithExpr::constant(in_.expect_integer("an integer"));
    }
    if (t != nullptr && t->is_identifier()) {
      in_.expect_identifier("a variable");
      if (game_.variable_index(t->text) < 0) {
        throw ValidationError(t->position, "undeclared variable '" + t->text + "'");
      }
      return ArithExpr::variable(t->text);
    }
    if (in_.accept_symbol("(")) {
      ArithExpr inner = parse_arith();
      in_.expect_symbol(")");
      return inner;
    }
    in_.fail("an integer, a variable or '('");
  }

  Cursor& in_;
  const GameDescription& game_;
};

struct SectionRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  SourcePosition position;
  bool present = false;
};

template <typename Fn>
void parse_list(Cursor& in, Fn&& item) {
  if (in.at_end()) return;
  do {
    item();
  } while (in.accept_symbol(","));
}

void check_unique_names(const GameDescription& game) {
  std::map<std::string, std::string> owner;
  auto claim = [&](const std::string& name, const std::string& what) {
    auto [it, inserted] = owner.emplace(name, what);
    if (!inserted) {
      throw ValidationError("duplicate declaration of '" + name + "' (" + it->second + " and " +
                            what + ")");
    }
  };
  for (const auto& p : game.players) claim(p.name, "player");
  for (const auto& p : game.pieces) claim(p, "piece");
  for (const auto& v : game.variables) claim(v.name, "variable");
}

BoardGraph parse_board(Cursor& in, const std::vector<std::string>& pieces) {
  const Token* first = in.peek();
  if (first != nullptr && first->is_identifier() && first->text == "rectangle" &&
      in.peek(1) != nullptr && in.peek(1)->is_symbol("(")) {
    in.expect_identifier("rectangle");
    in.expect_symbol("(");
    std::array<std::string, 4> dirs;
    for (std::size_t i = 0; i < 4; ++i) {
      dirs[i] = in.expect_identifier("a direction label").text;
      in.expect_symbol(",");
    }
    std::vector<std::vector<std::string>> rows;
    while (in.accept_symbol("[")) {
      std::vector<std::string> row;
      do {
        row.push_back(in.expect_identifier("a piece name").text);
      } while (in.accept_symbol(","));
      in.expect_symbol("]");
      rows.push_back(std::move(row));
      in.accept_symbol(",");
    }
    in.expect_symbol(")");
    if (!in.at_end()) in.fail("end of board section");
    return build_rectangle(dirs, rows, pieces);
  }
  std::vector<VertexSpec> vertices;
  while (!in.at_end()) {
    VertexSpec spec;
    spec.name = in.expect_identifier("a vertex name").text;
    in.expect_symbol("[");
    spec.piece = in.expect_identifier("a piece name").text;
    in.expect_symbol("]");
    in.expect_symbol("{");
    if (!in.peek_symbol("}")) {
      do {
        std::string direction = in.expect_identifier("a direction label").text;
        in.expect_symbol(":");
        std::string target = in.expect_identifier("a vertex name").text;
        spec.edges.emplace_back(std::move(direction), std::move(target));
      } while (in.accept_symbol(","));
    }
    in.expect_symbol("}");
    vertices.push_back(std::move(spec));
  }
  return build_graph(vertices, pieces);
}

}  // namespace

GameDescription parse_game(const std::vector<Token>& tokens) {
  std::map<std::string, SectionRange> sections;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const Token& keyword = tokens[i];
    if (keyword.kind != TokenKind::section_keyword) {
      throw ParseError(keyword.position, "a section keyword", describe(&keyword));
    }
    const std::string name = keyword.text.substr(1);
    if (!is_reserved_section(name)) {
      throw ParseError(keyword.position, "a reserved section (macros must be expanded first)",
                       describe(&keyword));
    }
    if (i + 1 >= tokens.size() || !tokens[i + 1].is_symbol("=")) {
      throw ParseError(keyword.position, "'=' after " + keyword.text,
                       describe(i + 1 < tokens.size() ? &tokens[i + 1] : nullptr));
    }
    SectionRange range;
    range.position = keyword.position;
    range.present = true;
    range.begin = i + 2;
    i += 2;
    while (i < tokens.size() && tokens[i].kind != TokenKind::section_keyword) ++i;
    range.end = i;
    if (sections.count(name) != 0) {
      throw ValidationError(keyword.position, "duplicate section " + keyword.text);
    }
    sections[name] = range;
  }
  for (const char* required : {"players", "pieces", "board", "rules"}) {
    if (sections.count(required) == 0) {
      throw ValidationError(std::string("missing section #") + required);
    }
  }
  auto cursor = [&](const std::string& name) {
    const SectionRange& r = sections.at(name);
    return Cursor(tokens, r.begin, r.end, r.position);
  };

  GameDescription game;
  {
    Cursor in = cursor("players");
    parse_list(in, [&] {
      PlayerDecl p;
      p.name = in.expect_identifier("a player name").text;
      in.expect_symbol("(");
      p.max_score = in.expect_integer("a maximum score");
      in.expect_symbol(")");
      game.players.push_back(std::move(p));
    });
    if (!in.at_end()) in.fail("',' or end of #players");
    if (game.players.empty()) throw ValidationError("a game needs at least one player");
  }
  {
    Cursor in = cursor("pieces");
    parse_list(in, [&] { game.pieces.push_back(in.expect_identifier("a piece name").text); });
    if (!in.at_end()) in.fail("',' or end of #pieces");
    if (game.pieces.empty()) throw ValidationError("a game needs at least one piece");
    if (game.pieces.size() > static_cast<std::size_t>(kMaxPieces)) {
      throw ValidationError("at most " + std::to_string(kMaxPieces) + " pieces are supported");
    }
  }
  if (sections.count("variables") != 0) {
    Cursor in = cursor("variables");
    parse_list(in, [&] {
      VariableDecl v;
      v.name = in.expect_identifier("a variable name").text;
      in.expect_symbol("(");
      v.bound = in.expect_integer("a variable bound");
      in.expect_symbol(")");
      game.variables.push_back(std::move(v));
    });
    if (!in.at_end()) in.fail("',' or end of #variables");
  }
  check_unique_names(game);
  {
    Cursor in = cursor("board");
    try {
      game.board = parse_board(in, game.pieces);
    } catch (const BoardError& e) {
      throw ValidationError(sections.at("board").position, e.what());
    }
  }
  {
    Cursor in = cursor("rules");
    if (in.at_end()) throw ValidationError(sections.at("rules").position, "empty #rules");
    RulesParser parser(in, game);
    game.rules = parser.parse_sum();
    if (!in.at_end()) in.fail("end of #rules");
  }
  return game;
}

GameDescription load_game_text(std::string_view source) {
  return parse_game(expand_macros(tokenize(source)));
}

GameDescription load_game_file(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw LoadError(path.string() + ": cannot open file");
  std::stringstream buffer;
  buffer << file.rdbuf();
  try {
    return load_game_text(buffer.str());
  } catch (const RbgError& e) {
    throw LoadError(path.string() + ":" + e.what());
  }
}

}  // namespace rbg
