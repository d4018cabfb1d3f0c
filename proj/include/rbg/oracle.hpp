#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "rbg/nfa.hpp"
#include "rbg/reasoner.hpp"
#include "rbg/rng.hpp"

namespace rbg {

/// Reference interpreter: walks the unoptimized automaton, copies the state
/// at every modifier and keeps explicit visited sets. Shares no move
/// generation code with Reasoner.
class NaiveInterpreter {
 public:
  struct State {
    std::vector<int> pieces;
    std::vector<int> variables;
    int role = kKeeper;
    int node = 0;
    VertexId vertex = 0;
  };

  explicit NaiveInterpreter(GameDescription game);

  const GameDescription& description() const { return game_; }
  const RulesNfa& rules() const { return nfa_; }

  State initial_state() const;
  /// All legal moves, sorted. Empty once the keeper is left without moves.
  std::set<Move> legal_moves(const State& state) const;
  /// Plays the move and then the keeper's first move in search order until a
  /// player is to move or the keeper is stuck.
  State apply(const State& state, const Move& move) const;
  std::vector<int> scores(const State& state) const;

 private:
  struct Search;
  std::vector<Move> moves_in_order(const State& state, bool first_only) const;
  void play(State& state, const Move& move) const;
  void apply_steps(State& state, const Move& move) const;

  GameDescription game_;
  RulesNfa nfa_;
  std::vector<int> edge_of_action_;
};

struct PerftResult {
  int depth = 0;
  std::vector<std::uint64_t> nodes;      // per depth, nodes[0] == 1
  std::vector<std::uint64_t> terminals;  // terminal nodes per depth

  std::uint64_t total_terminals() const;
  bool operator==(const PerftResult&) const = default;
};

PerftResult perft(const NaiveInterpreter& oracle, int depth);
/// The same count over the optimized reasoner.
PerftResult perft(Reasoner& reasoner, int depth);

struct Divergence {
  std::string config;
  std::uint64_t sample = 0;
  std::string state;  // readable dump
  std::vector<std::string> missing;  // oracle moves the reasoner lacks
  std::vector<std::string> extra;    // reasoner moves the oracle lacks
  std::string detail;
};

struct CrossCheckReport {
  std::uint64_t samples = 0;
  std::uint64_t playouts = 0;
  std::uint64_t moves_compared = 0;
  std::vector<std::string> configs;
  std::vector<Divergence> divergences;

  bool ok() const { return divergences.empty(); }
};

/// Plays seeded random trajectories with the oracle and, at each of
/// `samples` states, compares its move set with each compiled game's
/// reasoner, then compares the states after the chosen move. Keeps going
/// until `min_playouts` trajectories have also ended. Stops a configuration
/// at its first divergence.
CrossCheckReport cross_check(const GameDescription& game,
                             const std::vector<std::shared_ptr<const CompiledGame>>& compiled,
                             std::uint64_t samples, std::uint64_t seed,
                             RngMethod method = RngMethod::standard,
                             std::uint64_t min_playouts = 0);
CrossCheckReport cross_check(const GameDescription& game,
                             const std::vector<OptimizerConfig>& configs,
                             std::uint64_t samples, std::uint64_t seed,
                             RngMethod method = RngMethod::standard,
                             std::uint64_t min_playouts = 0);

std::string describe_move(const GameDescription& game, const RulesNfa& nfa, const Move& move);

}  // namespace rbg
