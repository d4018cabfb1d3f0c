#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "rbg/nfa.hpp"
#include "rbg/optimizer.hpp"

namespace rbg {

/// Modifier count at which a move of a game without a static bound is
/// considered runaway.
inline constexpr int kDynamicMoveLimit = 4096;

/// A game ready to be played: the description, the automaton as compiled,
/// and the optimized automaton the reasoner runs on. Immutable and shared.
class CompiledGame {
 public:
  /// Throws NotStraight unless the game passes the syntactic check or
  /// `config.assume_straight` is set.
  static std::shared_ptr<const CompiledGame> compile(GameDescription game,
                                                     OptimizerConfig config = {});

  /// A copy of `base` running `rules` instead of its optimized automaton.
  /// For tests that feed the reasoner a deliberately broken automaton.
  static std::shared_ptr<const CompiledGame> with_rules(const CompiledGame& base, RulesNfa rules);

  const GameDescription& description() const { return game_; }
  const BoardGraph& board() const { return game_.board; }
  const RulesNfa& rules() const { return optimized_; }
  const RulesNfa& source_rules() const { return source_; }
  const StraightnessReport& straightness() const { return straightness_; }
  const OptimizerConfig& config() const { return config_; }
  const OptimizerReport& optimizer_report() const { return report_; }
  int player_count() const { return static_cast<int>(game_.players.size()); }
  /// Edge of rules() carrying a modifier action.
  int modifier_edge(int action_index) const { return modifier_edge_[action_index]; }

 private:
  CompiledGame() = default;

  GameDescription game_;
  OptimizerConfig config_;
  RulesNfa source_;
  RulesNfa optimized_;
  StraightnessReport straightness_;
  OptimizerReport report_;
  std::vector<int> modifier_edge_;
};

/// One modifier of a move: its action index and the vertex it applies at.
struct MoveStep {
  int action = -1;
  VertexId vertex = kNoVertex;

  auto operator<=>(const MoveStep&) const = default;
};
using Move = std::vector<MoveStep>;

/// Output buffer of legal_moves. With a static move-length bound the moves
/// sit in one flat array with a fixed stride; otherwise every move owns its
/// own heap vector. A list filled from a monotonic cache only refers to the
/// cache kept in the state, so it is valid until that state is modified or
/// passed to legal_moves again.
class MoveList {
 public:
  std::size_t size() const { return view_ != nullptr ? view_->count_ : count_; }
  bool empty() const { return size() == 0; }
  std::span<const MoveStep> operator[](std::size_t i) const {
    const MoveList& m = view_ != nullptr ? *view_ : *this;
    if (m.stride_ > 0) return {m.flat_.data() + i * m.stride_, m.lengths_[i]};
    return m.dynamic_[i];
  }
  Move move(std::size_t i) const {
    const auto s = (*this)[i];
    return Move(s.begin(), s.end());
  }
  std::vector<Move> to_vector() const;

 private:
  friend class Reasoner;
  friend struct MonotonicCache;

  void reset(std::size_t stride) {
    view_ = nullptr;
    stride_ = stride;
    count_ = 0;
    lengths_.clear();
    dynamic_.clear();
  }
  void push(const MoveStep* steps, int length) {
    if (stride_ > 0) {
      if (flat_.size() < (count_ + 1) * stride_) flat_.resize((count_ + 1) * stride_ * 2);
      std::copy(steps, steps + length, flat_.data() + count_ * stride_);
      lengths_.push_back(static_cast<std::uint16_t>(length));
    } else {
      dynamic_.emplace_back(steps, steps + length);
    }
    ++count_;
  }
  // Keeps entry i iff keep[i], preserving order.
  void compact(const std::vector<char>& keep) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < count_; ++i) {
      if (!keep[i]) continue;
      if (k != i) {
        if (stride_ > 0) {
          std::copy_n(flat_.data() + i * stride_, lengths_[i], flat_.data() + k * stride_);
          lengths_[k] = lengths_[i];
        } else {
          dynamic_[k] = std::move(dynamic_[i]);
        }
      }
      ++k;
    }
    count_ = k;
    if (stride_ > 0) {
      lengths_.resize(k);
    } else {
      dynamic_.resize(k);
    }
  }

  const MoveList* view_ = nullptr;
  std::size_t stride_ = 0;
  std::size_t count_ = 0;
  std::vector<MoveStep> flat_;
  std::vector<std::uint16_t> lengths_;
  std::vector<Move> dynamic_;
};

/// Per-class move cache of the monotonic optimization: the moves found at the
/// last state of the class, each with the piece checks it depends on.
struct MonotonicCache {
  struct Guard {
    VertexId vertex;
    std::uint64_t pieces;
  };
  bool valid = false;
  MoveList moves;
  std::vector<Guard> guards;
  std::vector<std::uint32_t> guard_begin;  // per move, plus the end

  std::size_t size() const { return moves.size(); }
  void clear() {
    valid = false;
    moves.reset(0);
    guards.clear();
    guard_begin.assign(1, 0);
  }
};

inline constexpr int kKeeper = -1;

struct GameState {
  std::vector<std::uint8_t> pieces;  // per vertex
  std::vector<int> variables;        // players' scores first
  int role = kKeeper;
  int node = 0;
  VertexId vertex = 0;
  std::vector<MonotonicCache> caches;

  /// Equality of the game position; caches are ignored.
  bool same_position(const GameState& other) const {
    return pieces == other.pieces && variables == other.variables && role == other.role &&
           node == other.node && vertex == other.vertex;
  }
};

struct PlayoutStats {
  std::uint64_t playouts = 0;
  std::uint64_t states = 0;
  std::uint64_t moves = 0;
  std::vector<std::int64_t> score_sums;
  std::map<int, std::uint64_t> depth_histogram;
};

/// Legal-move generator and state transition function. Holds search scratch
/// space, so one Reasoner must not run two searches at once; create one per
/// thread of execution.
class Reasoner {
 public:
  explicit Reasoner(std::shared_ptr<const CompiledGame> game);

  const CompiledGame& game() const { return *game_; }

  GameState initial_state();
  /// Fills `out` in DFS discovery order. Empty for a state left with the
  /// keeper, which means the game is over. The state is only modified in its
  /// monotonic caches.
  void legal_moves(GameState& state, MoveList& out);
  std::vector<Move> legal_moves(GameState& state);
  /// Plays a move obtained from legal_moves, then resolves keeper turns.
  void apply_move(GameState& state, std::span<const MoveStep> move);
  /// As apply_move, but first checks membership in legal_moves.
  void apply_move_checked(GameState& state, std::span<const MoveStep> move);
  void resolve_keeper(GameState& state);
  bool is_terminal(GameState& state);
  std::vector<int> scores(const GameState& state) const;
  /// Highest modifier count seen in a generated move so far.
  int longest_move_seen() const { return longest_move_; }

  template <typename Rng>
  void run_playout(GameState& state, Rng& rng, PlayoutStats* stats = nullptr) {
    int depth = 0;
    while (true) {
      legal_moves(state, scratch_moves_);
      if (stats != nullptr) ++stats->states;
      if (scratch_moves_.empty()) break;
      const auto pick = rng.next_bounded(static_cast<std::uint32_t>(scratch_moves_.size()));
      apply_move(state, scratch_moves_[pick]);
      ++depth;
    }
    if (stats != nullptr) record(*stats, state, depth);
  }

 private:
  void record(PlayoutStats& stats, const GameState& state, int depth) const;
  void replay(GameState& state, std::span<const MoveStep> move) const;
  void begin_search(GameState& state);
  void search(int node, VertexId v, int depth);
  bool pattern_holds(int pattern, VertexId v, int level);
  bool pattern_search(int pattern, VertexId v, int level);
  void touch_state() {
    if (++version_ == 0) {
      std::fill(memo_stamp_.begin(), memo_stamp_.end(), 0);
      version_ = 1;
    }
  }
  void emit(int length);
  void new_segment(int depth);
  bool class_cached_moves(GameState& state, int cls, MoveList& out);

  struct PatternFrame {
    int node;
    VertexId v;
  };
  // A run of branch-free steps starting at some edge, taken in one go.
  struct Chain {
    int begin = 0;
    int length = 0;
    int target = -1;
  };
  void build_chains();
  // One chain step: an optional move through `move[v * stride]`, then the
  // piece check, or a comparison when expr >= 0.
  struct ChainOp {
    const VertexId* move = nullptr;
    int stride = 1;
    int expr = -1;
    CompareOp op = CompareOp::eq;
    std::uint64_t pieces = ~std::uint64_t{0};
  };
  bool run_chain(const Chain& c, VertexId& v) const {
    for (const ChainOp* o = chain_ops_.data() + c.begin, *end = o + c.length; o != end; ++o) {
      if (o->move != nullptr) {
        v = o->move[static_cast<std::size_t>(v) * o->stride];
        if (v == kNoVertex) return false;
      }
      if (o->expr >= 0) {
        if (!compare_holds(nfa_->expressions[o->expr].evaluate(variables_), o->op)) return false;
      } else if (!((o->pieces >> pieces_[v]) & 1)) {
        return false;
      }
    }
    return true;
  }

  std::shared_ptr<const CompiledGame> game_;
  const RulesNfa* nfa_ = nullptr;
  const NfaEdge* edges_ = nullptr;
  const int* edge_begin_ = nullptr;
  const VertexId* neighbors_ = nullptr;
  const std::uint8_t* skip_ = nullptr;
  bool track_visited_ = true;
  int directions_ = 0;
  int vertices_ = 0;
  std::size_t pairs_ = 0;
  int stride_ = 0;
  int limit_ = 0;
  std::vector<int> bounds_;

  // Search scratch, valid while a search runs.
  std::uint8_t* pieces_ = nullptr;
  int* variables_ = nullptr;
  MoveList* out_ = nullptr;
  bool first_only_ = false;
  bool stop_ = false;
  MonotonicCache* recording_ = nullptr;
  std::vector<MoveStep> current_;
  std::vector<char> written_;
  std::vector<MonotonicCache::Guard> guard_stack_;
  std::vector<std::vector<std::uint32_t>> visited_;
  std::vector<std::uint32_t> epoch_;
  std::vector<std::vector<std::uint32_t>> pattern_visited_;
  std::vector<std::uint32_t> pattern_epoch_;
  std::vector<std::vector<PatternFrame>> pattern_stacks_;
  // Pattern results for the current state. Patterns with identical bodies
  // share an entry, so {? p} and {! p} at one square are decided once.
  std::vector<int> body_of_;
  int bodies_ = 0;
  std::uint32_t version_ = 1;
  std::vector<std::uint32_t> memo_stamp_;
  std::vector<char> memo_value_;
  std::vector<Chain> chains_;  // per edge; length 0 when not fused
  std::vector<ChainOp> chain_ops_;
  std::vector<char> keep_;
  std::vector<MoveStep> keeper_move_;
  int keeper_length_ = 0;
  MoveList scratch_moves_;
  int longest_move_ = 0;
};

}  // namespace rbg
