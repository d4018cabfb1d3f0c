#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "rbg/game.hpp"

namespace rbg {

enum class EdgeKind : std::uint8_t {
  epsilon,
  shift,
  on,
  off,
  compare,
  assign,
  switch_turn,
  pattern,
  shift_table,
};

constexpr bool is_modifier(EdgeKind k) {
  return k == EdgeKind::off || k == EdgeKind::assign || k == EdgeKind::switch_turn;
}

/// constant + sum(coefficient * variable). Every arithmetic expression of the
/// language has this form.
struct LinearExpr {
  int constant = 0;
  std::vector<std::pair<int, int>> terms;  // (variable index, coefficient)

  bool is_constant() const { return terms.empty(); }
  int evaluate(const int* variables) const {
    int value = constant;
    for (const auto& [var, coef] : terms) value += coef * variables[var];
    return value;
  }
  bool operator==(const LinearExpr&) const = default;
};

LinearExpr linearize(const ArithExpr& expr, const GameDescription& game);

inline bool compare_holds(int difference, CompareOp op) {
  switch (op) {
    case CompareOp::eq: return difference == 0;
    case CompareOp::ne: return difference != 0;
    case CompareOp::lt: return difference < 0;
    case CompareOp::le: return difference <= 0;
    case CompareOp::gt: return difference > 0;
    case CompareOp::ge: return difference >= 0;
  }
  return false;
}

struct NfaEdge {
  EdgeKind kind = EdgeKind::epsilon;
  CompareOp op = CompareOp::eq;
  int source = 0;
  int target = 0;
  // shift: direction; off: piece; assign: variable; switch: player or -1 for
  // the keeper; pattern: pattern id; shift_table: table id.
  int arg = -1;
  int expr = -1;  // compare (lhs - rhs) or assigned value
  int action_index = -1;
  std::uint64_t pieces = 0;  // on
};

struct PatternAutomaton {
  bool positive = true;
  int start = 0;
  int accept = 0;
  int action_index = -1;
};

/// Destinations of a collapsed shift segment, per source vertex.
struct ShiftTable {
  std::vector<int> offsets;  // CSR over source vertices
  std::vector<VertexId> destinations;
  bool deterministic = false;
  bool position_independent = false;
  std::vector<VertexId> single;  // deterministic: per source, kNoVertex if empty
  std::vector<VertexId> shared;  // position independent: the common set
  int entry_node = -1;           // segment bounds in the uncompiled-table NFA
  int exit_node = -1;

  std::span<const VertexId> from(VertexId v) const {
    return {destinations.data() + offsets[v], destinations.data() + offsets[v + 1]};
  }
  static ShiftTable from_sets(const std::vector<std::vector<VertexId>>& sets);
};

struct ActionInfo {
  ActionType type = ActionType::shift;
  std::string text;
  SourcePosition position;
};

/// The rules automaton. Edges are stored grouped by source (CSR); pattern
/// bodies live in the same node space with their own start and accept nodes.
struct RulesNfa {
  int node_count = 0;
  int initial = 0;
  int final_node = 0;
  std::vector<NfaEdge> edges;
  std::vector<int> edge_begin;
  std::vector<PatternAutomaton> patterns;
  std::vector<LinearExpr> expressions;
  std::vector<ShiftTable> shift_tables;
  std::vector<ActionInfo> actions;  // by action index

  // Optimizer annotations.
  std::vector<std::uint8_t> skip_visited;  // per node; empty = check everywhere
  std::optional<int> move_length_bound;
  std::vector<int> monotonic_class;  // per node, -1 for none; empty = no classes
  int monotonic_class_count = 0;

  /// Sorts edges by source (stable) and rebuilds edge_begin.
  void finalize();
  std::span<const NfaEdge> out(int node) const {
    return {edges.data() + edge_begin[node], edges.data() + edge_begin[node + 1]};
  }
  std::size_t non_epsilon_edge_count() const;
  std::string to_dot(const GameDescription& game) const;
};

RulesNfa compile_rules(const GameDescription& game);

std::string describe_action(const ActionNode& action);

struct StraightnessReport {
  bool is_straight = true;
  std::vector<int> offending_cycle;  // node list, first == last
  /// Largest number of offs and assignments in a move; the closing switch is
  /// not counted.
  std::optional<int> bound;
  /// Largest modifier count along any switch-free path, dead ends included.
  int scratch_capacity = 0;
};

/// Sufficient syntactic check: no cycle avoiding switches contains an off or
/// an assignment.
StraightnessReport check_straightness(const RulesNfa& nfa);

/// True when the pattern body uses only epsilons, shifts, shift tables and
/// shift-only patterns.
bool is_shift_only_pattern(const RulesNfa& nfa, int pattern);
/// Evaluates a shift-only pattern at a vertex.
bool shift_pattern_holds(const RulesNfa& nfa, const BoardGraph& board, int pattern, VertexId v);

/// For each node, the vertices at which it can be reached from the initial
/// node started on any vertex. Shift-only patterns are evaluated exactly;
/// other conditions are assumed to pass.
std::vector<boost::dynamic_bitset<>> joint_reachability(const RulesNfa& nfa,
                                                        const BoardGraph& board);

}  // namespace rbg
