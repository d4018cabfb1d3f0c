#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rbg/nfa.hpp"

namespace rbg {

struct OptimizerConfig {
  bool shift_tables = true;
  bool visited_skip = true;
  bool length_bound = true;
  bool monotonic = true;
  bool assume_straight = false;

  static OptimizerConfig all_off() { return {false, false, false, false, false}; }
  /// Monotonic classes need shift tables to decide position independence.
  bool valid() const { return shift_tables || !monotonic; }
  std::string label() const;

  bool operator==(const OptimizerConfig&) const = default;
};

/// The twelve valid on/off combinations of the four optimizations.
std::vector<OptimizerConfig> all_valid_configs();

struct OptimizerReport {
  int shift_tables = 0;
  int deterministic_tables = 0;
  int position_independent_tables = 0;
  int nodes_before = 0;
  int nodes_after = 0;
  int skippable_nodes = 0;
  std::optional<int> move_length_bound;
  int monotonic_classes = 0;
};

/// Collapses shift-only segments into shift-table edges, then removes
/// unreachable nodes. The result's tables remember the segment bounds in the
/// input automaton.
RulesNfa build_shift_tables(const RulesNfa& nfa, const BoardGraph& board);

/// Per-node flags: true when the visited check can be omitted at that node.
std::vector<std::uint8_t> analyze_visited_skip(const RulesNfa& nfa, const BoardGraph& board);

/// Per-node class ids (states resting at a class node share a cache) and the
/// number of classes. Requires shift tables; nodes outside any class get -1.
struct MonotonicClasses {
  std::vector<int> node_class;
  int count = 0;
};
MonotonicClasses detect_monotonic_classes(const RulesNfa& nfa, const GameDescription& game,
                                          const BoardGraph& board);

/// Runs the enabled passes in order: shift tables, visited skip, length
/// bound, monotonic classes.
RulesNfa optimize(const RulesNfa& nfa, const GameDescription& game,
                  const StraightnessReport& straightness, const OptimizerConfig& config,
                  OptimizerReport* report = nullptr);

}  // namespace rbg
