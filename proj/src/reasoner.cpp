#include "rbg/reasoner.hpp"

#include <algorithm>
#include <map>

#include "rbg/errors.hpp"

namespace rbg {

std::shared_ptr<const CompiledGame> CompiledGame::compile(GameDescription game,
                                                          OptimizerConfig config) {
  if (!config.shift_tables) config.monotonic = false;
  std::shared_ptr<CompiledGame> out(new CompiledGame());
  out->game_ = std::move(game);
  out->config_ = config;
  out->source_ = compile_rules(out->game_);
  out->straightness_ = check_straightness(out->source_);
  if (!out->straightness_.is_straight && !config.assume_straight) {
    std::string cycle;
    for (int n : out->straightness_.offending_cycle) {
      cycle += (cycle.empty() ? "" : " -> ") + std::to_string(n);
    }
    throw NotStraight("a cycle without a switch contains a modifier (nodes " + cycle +
                      "); pass --assume-straight if moves are bounded anyway");
  }
  out->optimized_ = optimize(out->source_, out->game_, out->straightness_, config, &out->report_);
  out->modifier_edge_.assign(out->source_.actions.size(), -1);
  const RulesNfa& r = out->optimized_;
  for (std::size_t i = 0; i < r.edges.size(); ++i) {
    if (is_modifier(r.edges[i].kind)) out->modifier_edge_[r.edges[i].action_index] = static_cast<int>(i);
  }
  return out;
}

std::shared_ptr<const CompiledGame> CompiledGame::with_rules(const CompiledGame& base, RulesNfa rules) {
  std::shared_ptr<CompiledGame> out(new CompiledGame(base));
  out->optimized_ = std::move(rules);
  out->modifier_edge_.assign(out->source_.actions.size(), -1);
  const RulesNfa& r = out->optimized_;
  for (std::size_t i = 0; i < r.edges.size(); ++i) {
    if (is_modifier(r.edges[i].kind)) out->modifier_edge_[r.edges[i].action_index] = static_cast<int>(i);
  }
  return out;
}

namespace {

[[noreturn, gnu::cold, gnu::noinline]] void move_limit_exceeded(int limit) {
  throw MoveLimitExceeded("a move exceeded " + std::to_string(limit) + " modifiers");
}

template <class T>
[[gnu::cold, gnu::noinline]] void grow(std::vector<T>& v) {
  v.resize(v.size() * 2);
}

// Structural identity of pattern bodies: two patterns get the same id when
// their automata match edge for edge, nested patterns and shift table
// contents included. Polarity is not part of the body.
std::vector<int> pattern_body_ids(const RulesNfa& nfa, int& count) {
  std::map<std::pair<std::vector<int>, std::vector<VertexId>>, int> table_ids;
  std::vector<int> table_id(nfa.shift_tables.size());
  for (std::size_t t = 0; t < nfa.shift_tables.size(); ++t) {
    const ShiftTable& st = nfa.shift_tables[t];
    table_id[t] = table_ids.try_emplace({st.offsets, st.destinations}, static_cast<int>(table_ids.size()))
                      .first->second;
  }
  std::map<std::vector<long long>, int> ids;
  std::vector<int> body(nfa.patterns.size(), -1);
  auto visit = [&](auto&& self, int p) -> int {
    if (body[p] >= 0) return body[p];
    const PatternAutomaton& pa = nfa.patterns[p];
    std::vector<long long> key;
    std::map<int, int> local;
    std::vector<int> order{pa.start};
    local[pa.start] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const int n = order[i];
      key.push_back(-1);
      key.push_back(n == pa.accept);
      for (const NfaEdge& e : nfa.out(n)) {
        auto [it, fresh] = local.try_emplace(e.target, static_cast<int>(order.size()));
        if (fresh) order.push_back(e.target);
        key.push_back(static_cast<int>(e.kind));
        key.push_back(it->second);
        switch (e.kind) {
          case EdgeKind::shift: key.push_back(e.arg); break;
          case EdgeKind::shift_table: key.push_back(table_id[e.arg]); break;
          case EdgeKind::on: key.push_back(static_cast<long long>(e.pieces)); break;
          case EdgeKind::pattern:
            key.push_back(self(self, e.arg) * 2 + (nfa.patterns[e.arg].positive ? 1 : 0));
            break;
          case EdgeKind::compare: {
            const LinearExpr& x = nfa.expressions[e.expr];
            key.push_back(static_cast<int>(e.op));
            key.push_back(x.constant);
            for (const auto& [var, coef] : x.terms) {
              key.push_back(var);
              key.push_back(coef);
            }
            key.push_back(-2);
            break;
          }
          default: break;
        }
      }
    }
    return body[p] = ids.try_emplace(std::move(key), static_cast<int>(ids.size())).first->second;
  };
  for (std::size_t p = 0; p < nfa.patterns.size(); ++p) visit(visit, static_cast<int>(p));
  count = static_cast<int>(ids.size());
  return body;
}

}  // namespace

std::vector<Move> MoveList::to_vector() const {
  std::vector<Move> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(move(i));
  return out;
}

Reasoner::Reasoner(std::shared_ptr<const CompiledGame> game) : game_(std::move(game)) {
  nfa_ = &game_->rules();
  edges_ = nfa_->edges.data();
  edge_begin_ = nfa_->edge_begin.data();
  neighbors_ = game_->board().neighbor_table().data();
  skip_ = nfa_->skip_visited.empty() ? nullptr : nfa_->skip_visited.data();
  // With every node skippable the visited sets are never read.
  track_visited_ = skip_ == nullptr || std::find(nfa_->skip_visited.begin(), nfa_->skip_visited.end(), 0) !=
                                           nfa_->skip_visited.end();
  directions_ = game_->board().direction_count();
  vertices_ = game_->board().vertex_count();
  pairs_ = static_cast<std::size_t>(nfa_->node_count) * vertices_;
  const GameDescription& d = game_->description();
  for (int i = 0; i < d.variable_count(); ++i) bounds_.push_back(d.variable_bound(i));

  if (nfa_->move_length_bound) {
    stride_ = *nfa_->move_length_bound + 1;
  }
  limit_ = game_->straightness().is_straight ? game_->straightness().scratch_capacity + 1
                                             : kDynamicMoveLimit;
  current_.resize(game_->straightness().is_straight ? limit_ + 1 : 64);
  written_.assign(vertices_, 0);
  // Pattern nesting depth never exceeds the number of patterns.
  const std::size_t levels = nfa_->patterns.size() + 1;
  pattern_visited_.resize(levels);
  pattern_epoch_.assign(levels, 0);
  pattern_stacks_.resize(levels);
  body_of_ = pattern_body_ids(*nfa_, bodies_);
  memo_stamp_.assign(static_cast<std::size_t>(bodies_) * vertices_, 0);
  memo_value_.assign(memo_stamp_.size(), 0);
  keeper_move_.resize(current_.size());
  build_chains();
}

namespace {

bool fusable(const NfaEdge& e, const RulesNfa& nfa) {
  switch (e.kind) {
    case EdgeKind::epsilon:
    case EdgeKind::shift:
    case EdgeKind::on:
    case EdgeKind::compare:
      return true;
    case EdgeKind::shift_table:
      return nfa.shift_tables[e.arg].deterministic;
    default:
      return false;
  }
}

}  // namespace

void Reasoner::build_chains() {
  const RulesNfa& r = *nfa_;
  std::vector<int> in_degree(r.node_count, 0);
  for (const NfaEdge& e : r.edges) ++in_degree[e.target];
  // Nodes of pattern bodies. Inside them visited checks only prune, so a
  // chain may pass any node; elsewhere only nodes needing no check.
  std::vector<char> in_pattern(r.node_count, 0);
  for (const PatternAutomaton& p : r.patterns) {
    std::vector<int> stack{p.start};
    in_pattern[p.start] = 1;
    while (!stack.empty()) {
      const int n = stack.back();
      stack.pop_back();
      for (const NfaEdge& e : r.out(n)) {
        if (!in_pattern[e.target]) {
          in_pattern[e.target] = 1;
          stack.push_back(e.target);
        }
      }
    }
  }
  auto passable = [&](int n) {
    if (in_degree[n] != 1 || r.edge_begin[n + 1] - r.edge_begin[n] != 1) return false;
    if (!in_pattern[n] && (skip_ == nullptr || !skip_[n])) return false;
    return fusable(r.edges[r.edge_begin[n]], r);
  };
  chains_.assign(r.edges.size(), Chain{});
  int start = 0;
  auto add = [&](const NfaEdge& e) {
    const bool fresh_move = static_cast<int>(chain_ops_.size()) > start &&
                            chain_ops_.back().expr < 0 && chain_ops_.back().pieces == ~std::uint64_t{0};
    switch (e.kind) {
      case EdgeKind::shift:
        chain_ops_.push_back(ChainOp{neighbors_ + e.arg, directions_});
        break;
      case EdgeKind::shift_table:
        chain_ops_.push_back(ChainOp{nfa_->shift_tables[e.arg].single.data(), 1});
        break;
      case EdgeKind::on:
        // A check right after a move shares its op.
        if (fresh_move) {
          chain_ops_.back().pieces = e.pieces;
        } else {
          chain_ops_.push_back(ChainOp{nullptr, 1, -1, CompareOp::eq, e.pieces});
        }
        break;
      case EdgeKind::compare:
        chain_ops_.push_back(ChainOp{nullptr, 1, e.expr, e.op});
        break;
      default:
        break;
    }
  };
  for (std::size_t i = 0; i < r.edges.size(); ++i) {
    const NfaEdge& e = r.edges[i];
    if (!fusable(e, r) || !passable(e.target)) continue;
    start = static_cast<int>(chain_ops_.size());
    add(e);
    int n = e.target;
    for (int steps = 1; passable(n) && steps < 64; ++steps) {
      const NfaEdge& next = r.edges[r.edge_begin[n]];
      add(next);
      n = next.target;
      if (n == e.target) break;
    }
    chains_[i] = Chain{start, static_cast<int>(chain_ops_.size()) - start, n};
  }
}

GameState Reasoner::initial_state() {
  GameState s;
  const auto& initial = game_->board().initial_pieces();
  s.pieces.assign(initial.begin(), initial.end());
  s.variables.assign(bounds_.size(), 0);
  s.role = kKeeper;
  s.node = nfa_->initial;
  s.vertex = 0;
  s.caches.resize(nfa_->monotonic_class_count);
  for (MonotonicCache& c : s.caches) c.clear();
  resolve_keeper(s);
  // A class's moves only lose legality as the game goes on, so caches built
  // here stay valid supersets for every later state.
  if (nfa_->monotonic_class_count > 0) {
    const int role = s.role, node = s.node;
    const VertexId vertex = s.vertex;
    MoveList scratch;
    for (int n = 0; n < nfa_->node_count; ++n) {
      const int cls = nfa_->monotonic_class[n];
      if (cls < 0 || s.caches[cls].valid) continue;
      s.role = 0;
      s.node = n;
      s.vertex = 0;
      legal_moves(s, scratch);
    }
    s.role = role;
    s.node = node;
    s.vertex = vertex;
  }
  return s;
}

void Reasoner::new_segment(int depth) {
  if (!track_visited_) return;
  if (static_cast<int>(visited_.size()) <= depth) {
    visited_.resize(depth + 1);
    epoch_.resize(depth + 1, 0);
  }
  if (visited_[depth].empty()) visited_[depth].assign(pairs_, 0);
  if (++epoch_[depth] == 0) {
    std::fill(visited_[depth].begin(), visited_[depth].end(), 0);
    epoch_[depth] = 1;
  }
}

void Reasoner::begin_search(GameState& state) {
  pieces_ = state.pieces.data();
  variables_ = state.variables.data();
  stop_ = false;
  touch_state();
  guard_stack_.clear();
  new_segment(0);
}

void Reasoner::emit(int length) {
  longest_move_ = std::max(longest_move_, length - 1);
  if (first_only_) {
    if (keeper_move_.size() < current_.size()) keeper_move_.resize(current_.size());
    std::copy(current_.begin(), current_.begin() + length, keeper_move_.begin());
    keeper_length_ = length;
    stop_ = true;
    return;
  }
  out_->push(current_.data(), length);
  if (recording_ != nullptr) {
    MonotonicCache& c = *recording_;
    c.moves.push(current_.data(), length);
    c.guards.insert(c.guards.end(), guard_stack_.begin(), guard_stack_.end());
    c.guard_begin.push_back(static_cast<std::uint32_t>(c.guards.size()));
  }
}

void Reasoner::search(int node, VertexId v, int depth) {
  // The last successor of a node is followed in this loop instead of by a
  // call; modifiers and guarded checks still recurse because they undo.
  while (true) {
    if (skip_ == nullptr || !skip_[node]) {
      std::uint32_t& mark = visited_[depth][static_cast<std::size_t>(node) * vertices_ + v];
      if (mark == epoch_[depth]) return;
      mark = epoch_[depth];
    }
    const NfaEdge* end = edges_ + edge_begin_[node + 1];
    int next = -1;
    VertexId next_v = kNoVertex;
    for (const NfaEdge* e = edges_ + edge_begin_[node]; e != end; ++e) {
      const bool last = e + 1 == end;
      auto follow = [&](int n, VertexId w) {
        if (last) {
          next = n;
          next_v = w;
        } else {
          search(n, w, depth);
        }
      };
      const Chain& chain = chains_[e - edges_];
      // Fused steps carry no guards, so recording takes them one by one.
      if (chain.length > 0 && recording_ == nullptr) {
        VertexId w = v;
        if (run_chain(chain, w)) follow(chain.target, w);
        if (stop_) return;
        continue;
      }
      switch (e->kind) {
        case EdgeKind::epsilon:
          follow(e->target, v);
          break;
        case EdgeKind::shift: {
          const VertexId w = neighbors_[static_cast<std::size_t>(v) * directions_ + e->arg];
          if (w != kNoVertex) follow(e->target, w);
          break;
        }
        case EdgeKind::shift_table: {
          const ShiftTable& t = nfa_->shift_tables[e->arg];
          if (t.deterministic) {
            const VertexId w = t.single[v];
            if (w != kNoVertex) follow(e->target, w);
          } else {
            const std::span<const VertexId> targets =
                t.position_independent ? std::span<const VertexId>(t.shared) : t.from(v);
            for (std::size_t i = 0; i < targets.size(); ++i) {
              if (i + 1 == targets.size()) {
                follow(e->target, targets[i]);
              } else {
                search(e->target, targets[i], depth);
                if (stop_) return;
              }
            }
          }
          break;
        }
        case EdgeKind::on:
          if ((e->pieces >> pieces_[v]) & 1) {
            // A check of a square this move already wrote is decided by the
            // move itself and needs no guard.
            if (recording_ != nullptr && !written_[v]) {
              guard_stack_.push_back({v, e->pieces});
              search(e->target, v, depth);
              guard_stack_.pop_back();
            } else {
              follow(e->target, v);
            }
          }
          break;
        case EdgeKind::compare:
          if (compare_holds(nfa_->expressions[e->expr].evaluate(variables_), e->op)) {
            follow(e->target, v);
          }
          break;
        case EdgeKind::pattern: {
          const PatternAutomaton& p = nfa_->patterns[e->arg];
          if (pattern_holds(e->arg, v, 0) == p.positive) follow(e->target, v);
          break;
        }
        case EdgeKind::off: {
          if (depth + 1 >= limit_) {
            move_limit_exceeded(limit_);
          }
          if (static_cast<int>(current_.size()) <= depth + 1) grow(current_);
          const std::uint8_t old = pieces_[v];
          const char old_written = written_[v];
          pieces_[v] = static_cast<std::uint8_t>(e->arg);
          written_[v] = 1;
          current_[depth] = {e->action_index, v};
          if (track_visited_) new_segment(depth + 1);
          touch_state();
          search(e->target, v, depth + 1);
          pieces_[v] = old;
          written_[v] = old_written;
          touch_state();
          break;
        }
        case EdgeKind::assign: {
          const int value = nfa_->expressions[e->expr].evaluate(variables_);
          if (value < 0 || value > bounds_[e->arg]) break;
          if (depth + 1 >= limit_) {
            move_limit_exceeded(limit_);
          }
          if (static_cast<int>(current_.size()) <= depth + 1) grow(current_);
          const int old = variables_[e->arg];
          variables_[e->arg] = value;
          current_[depth] = {e->action_index, v};
          if (track_visited_) new_segment(depth + 1);
          touch_state();
          search(e->target, v, depth + 1);
          variables_[e->arg] = old;
          touch_state();
          break;
        }
        case EdgeKind::switch_turn:
          current_[depth] = {e->action_index, v};
          emit(depth + 1);
          break;
      }
      if (stop_) return;
    }
    if (next < 0) return;
    node = next;
    v = next_v;
  }
}

bool Reasoner::pattern_holds(int pattern, VertexId v, int level) {
  const std::size_t key = static_cast<std::size_t>(body_of_[pattern]) * vertices_ + v;
  if (memo_stamp_[key] == version_) return memo_value_[key] != 0;
  const bool holds = pattern_search(pattern, v, level);
  memo_stamp_[key] = version_;
  memo_value_[key] = holds ? 1 : 0;
  return holds;
}

bool Reasoner::pattern_search(int pattern, VertexId start, int level) {
  std::vector<std::uint32_t>& visited = pattern_visited_[level];
  if (visited.empty()) visited.assign(pairs_, 0);
  std::uint32_t epoch = ++pattern_epoch_[level];
  if (epoch == 0) {
    std::fill(visited.begin(), visited.end(), 0);
    epoch = pattern_epoch_[level] = 1;
  }
  const int accept = nfa_->patterns[pattern].accept;

  // Iterative DFS: patterns never modify the state.
  std::vector<PatternFrame>& stack = pattern_stacks_[level];
  stack.clear();
  stack.push_back(PatternFrame{nfa_->patterns[pattern].start, start});
  while (!stack.empty()) {
    const PatternFrame f = stack.back();
    stack.pop_back();
    if (skip_ == nullptr || !skip_[f.node]) {
      std::uint32_t& mark = visited[static_cast<std::size_t>(f.node) * vertices_ + f.v];
      if (mark == epoch) continue;
      mark = epoch;
    }
    if (f.node == accept) return true;
    const NfaEdge* end = edges_ + edge_begin_[f.node + 1];
    // Push in reverse so edges are explored in their stored order.
    for (const NfaEdge* e = end; e != edges_ + edge_begin_[f.node];) {
      --e;
      const Chain& chain = chains_[e - edges_];
      if (chain.length > 0) {
        VertexId w = f.v;
        if (run_chain(chain, w)) stack.push_back(PatternFrame{chain.target, w});
        continue;
      }
      switch (e->kind) {
        case EdgeKind::epsilon:
          stack.push_back(PatternFrame{e->target, f.v});
          break;
        case EdgeKind::shift: {
          const VertexId w = neighbors_[static_cast<std::size_t>(f.v) * directions_ + e->arg];
          if (w != kNoVertex) stack.push_back(PatternFrame{e->target, w});
          break;
        }
        case EdgeKind::shift_table: {
          const ShiftTable& t = nfa_->shift_tables[e->arg];
          if (t.deterministic) {
            if (t.single[f.v] != kNoVertex) stack.push_back(PatternFrame{e->target, t.single[f.v]});
          } else {
            for (VertexId w : t.position_independent ? std::span<const VertexId>(t.shared) : t.from(f.v)) {
              stack.push_back(PatternFrame{e->target, w});
            }
          }
          break;
        }
        case EdgeKind::on:
          if ((e->pieces >> pieces_[f.v]) & 1) stack.push_back(PatternFrame{e->target, f.v});
          break;
        case EdgeKind::compare:
          if (compare_holds(nfa_->expressions[e->expr].evaluate(variables_), e->op)) {
            stack.push_back(PatternFrame{e->target, f.v});
          }
          break;
        case EdgeKind::pattern: {
          const bool positive = nfa_->patterns[e->arg].positive;
          if (pattern_holds(e->arg, f.v, level + 1) == positive) stack.push_back(PatternFrame{e->target, f.v});
          break;
        }
        default:
          break;
      }
    }
  }
  return false;
}

bool Reasoner::class_cached_moves(GameState& state, int cls, MoveList& out) {
  MonotonicCache& c = state.caches[cls];
  const std::uint8_t* pieces = state.pieces.data();
  const std::size_t n = c.size();
  std::size_t kept = 0;
  keep_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool ok = true;
    for (std::uint32_t g = c.guard_begin[i]; g < c.guard_begin[i + 1]; ++g) {
      if (!((c.guards[g].pieces >> pieces[c.guards[g].vertex]) & 1)) {
        ok = false;
        break;
      }
    }
    keep_[i] = ok;
    kept += ok;
  }
  if (kept == 0) return false;
  if (kept != n) {
    std::size_t k = 0, write = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!keep_[i]) continue;
      const std::uint32_t g0 = c.guard_begin[i], g1 = c.guard_begin[i + 1];
      std::copy(c.guards.begin() + g0, c.guards.begin() + g1, c.guards.begin() + write);
      c.guard_begin[k] = static_cast<std::uint32_t>(write);
      write += g1 - g0;
      ++k;
    }
    c.guard_begin[k] = static_cast<std::uint32_t>(write);
    c.guard_begin.resize(k + 1);
    c.guards.resize(write);
    c.moves.compact(keep_);
  }
  out.view_ = &c.moves;
  return true;
}

void Reasoner::legal_moves(GameState& state, MoveList& out) {
  out.reset(stride_);
  if (state.role == kKeeper) return;
  int cls = -1;
  if (!nfa_->monotonic_class.empty()) {
    cls = nfa_->monotonic_class[state.node];
    if (state.caches.size() != static_cast<std::size_t>(nfa_->monotonic_class_count)) {
      state.caches.assign(nfa_->monotonic_class_count, MonotonicCache{});
      for (MonotonicCache& c : state.caches) c.clear();
    }
  }
  if (cls >= 0 && state.caches[cls].valid) {
    if (class_cached_moves(state, cls, out)) return;
    // Nothing survived: the full search below decides terminality.
  }
  if (cls >= 0) {
    state.caches[cls].clear();
    state.caches[cls].moves.reset(stride_);
    recording_ = &state.caches[cls];
  }
  out_ = &out;
  first_only_ = false;
  begin_search(state);
  try {
    search(state.node, state.vertex, 0);
  } catch (...) {
    recording_ = nullptr;
    throw;
  }
  if (cls >= 0) state.caches[cls].valid = true;
  recording_ = nullptr;
}

std::vector<Move> Reasoner::legal_moves(GameState& state) {
  MoveList list;
  legal_moves(state, list);
  return list.to_vector();
}

void Reasoner::replay(GameState& state, std::span<const MoveStep> move) const {
  for (const MoveStep& step : move) {
    const NfaEdge& e = edges_[game_->modifier_edge(step.action)];
    switch (e.kind) {
      case EdgeKind::off:
        state.pieces[step.vertex] = static_cast<std::uint8_t>(e.arg);
        break;
      case EdgeKind::assign:
        state.variables[e.arg] = nfa_->expressions[e.expr].evaluate(state.variables.data());
        break;
      case EdgeKind::switch_turn:
        state.role = e.arg;
        state.node = e.target;
        state.vertex = step.vertex;
        break;
      default:
        break;
    }
  }
}

void Reasoner::resolve_keeper(GameState& state) {
  long steps = 0;
  while (state.role == kKeeper) {
    keeper_length_ = 0;
    first_only_ = true;
    recording_ = nullptr;
    begin_search(state);
    try {
      search(state.node, state.vertex, 0);
    } catch (...) {
      first_only_ = false;
      throw;
    }
    first_only_ = false;
    if (keeper_length_ == 0) return;
    replay(state, {keeper_move_.data(), static_cast<std::size_t>(keeper_length_)});
    if (++steps > 1'000'000) throw MoveLimitExceeded("keeper did not hand over control");
  }
}

void Reasoner::apply_move(GameState& state, std::span<const MoveStep> move) {
#ifdef RBG_VERIFY_MOVES
  apply_move_checked(state, move);
#else
  replay(state, move);
  resolve_keeper(state);
#endif
}

void Reasoner::apply_move_checked(GameState& state, std::span<const MoveStep> move) {
  GameState probe = state;
  MoveList legal;
  legal_moves(probe, legal);
  bool found = false;
  for (std::size_t i = 0; i < legal.size() && !found; ++i) {
    const auto m = legal[i];
    found = std::equal(m.begin(), m.end(), move.begin(), move.end());
  }
  if (!found) throw IllegalMove("move is not legal in this state");
  replay(state, move);
  resolve_keeper(state);
}

bool Reasoner::is_terminal(GameState& state) {
  MoveList list;
  legal_moves(state, list);
  return list.empty();
}

std::vector<int> Reasoner::scores(const GameState& state) const {
  return std::vector<int>(state.variables.begin(), state.variables.begin() + game_->player_count());
}

void Reasoner::record(PlayoutStats& stats, const GameState& state, int depth) const {
  ++stats.playouts;
  stats.moves += static_cast<std::uint64_t>(depth);
  const int players = game_->player_count();
  if (static_cast<int>(stats.score_sums.size()) < players) stats.score_sums.resize(players, 0);
  for (int p = 0; p < players; ++p) stats.score_sums[p] += state.variables[p];
  ++stats.depth_histogram[depth];
}

}  // namespace rbg
