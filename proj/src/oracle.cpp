#include "rbg/oracle.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "rbg/errors.hpp"
#include "rbg/rng.hpp"

namespace rbg {

namespace {

int evaluate(const LinearExpr& e, const std::vector<int>& variables) {
  int value = e.constant;
  for (const auto& [var, coef] : e.terms) value += coef * variables[var];
  return value;
}

bool holds(int lhs_minus_rhs, CompareOp op) {
  switch (op) {
    case CompareOp::eq: return lhs_minus_rhs == 0;
    case CompareOp::ne: return lhs_minus_rhs != 0;
    case CompareOp::lt: return lhs_minus_rhs < 0;
    case CompareOp::le: return lhs_minus_rhs <= 0;
    case CompareOp::gt: return lhs_minus_rhs > 0;
    case CompareOp::ge: return lhs_minus_rhs >= 0;
  }
  return false;
}

}  // namespace

struct NaiveInterpreter::Search {
  const NaiveInterpreter& self;
  bool first_only = false;
  std::vector<Move> found;

  bool done() const { return first_only && !found.empty(); }

  // Explores one switch-free segment: the state is fixed until a modifier,
  // which copies it and starts a fresh segment.
  void segment(const State& state, int node, VertexId v, const Move& prefix) {
    std::set<std::pair<int, VertexId>> visited;
    walk(state, node, v, prefix, visited);
  }

  void walk(const State& state, int node, VertexId v, const Move& prefix,
            std::set<std::pair<int, VertexId>>& visited) {
    if (done() || !visited.insert({node, v}).second) return;
    const RulesNfa& nfa = self.nfa_;
    for (const NfaEdge& e : nfa.out(node)) {
      if (done()) return;
      switch (e.kind) {
        case EdgeKind::epsilon:
          walk(state, e.target, v, prefix, visited);
          break;
        case EdgeKind::shift: {
          auto w = self.game_.board.neighbor(v, e.arg);
          if (w) walk(state, e.target, *w, prefix, visited);
          break;
        }
        case EdgeKind::on:
          if (e.pieces & (std::uint64_t{1} << state.pieces[v])) walk(state, e.target, v, prefix, visited);
          break;
        case EdgeKind::compare:
          if (holds(evaluate(nfa.expressions[e.expr], state.variables), e.op)) {
            walk(state, e.target, v, prefix, visited);
          }
          break;
        case EdgeKind::pattern: {
          const PatternAutomaton& p = nfa.patterns[e.arg];
          if (matches(state, p.start, p.accept, v) == p.positive) walk(state, e.target, v, prefix, visited);
          break;
        }
        case EdgeKind::off:
        case EdgeKind::assign: {
          if (static_cast<int>(prefix.size()) >= kDynamicMoveLimit) {
            throw MoveLimitExceeded("oracle: move longer than " + std::to_string(kDynamicMoveLimit));
          }
          State next = state;
          if (e.kind == EdgeKind::off) {
            next.pieces[v] = e.arg;
          } else {
            const int value = evaluate(nfa.expressions[e.expr], state.variables);
            if (value < 0 || value > self.game_.variable_bound(e.arg)) break;
            next.variables[e.arg] = value;
          }
          Move longer = prefix;
          longer.push_back({e.action_index, v});
          segment(next, e.target, v, longer);
          break;
        }
        case EdgeKind::switch_turn: {
          Move complete = prefix;
          complete.push_back({e.action_index, v});
          found.push_back(std::move(complete));
          break;
        }
        case EdgeKind::shift_table:
          throw std::logic_error("oracle runs on unoptimized automata only");
      }
    }
  }

  bool matches(const State& state, int start, int accept, VertexId v) {
    std::set<std::pair<int, VertexId>> seen{{start, v}};
    std::vector<std::pair<int, VertexId>> todo{{start, v}};
    const RulesNfa& nfa = self.nfa_;
    while (!todo.empty()) {
      const auto [n, at] = todo.back();
      todo.pop_back();
      if (n == accept) return true;
      for (const NfaEdge& e : nfa.out(n)) {
        std::optional<std::pair<int, VertexId>> next;
        switch (e.kind) {
          case EdgeKind::epsilon: next = {e.target, at}; break;
          case EdgeKind::shift:
            if (auto w = self.game_.board.neighbor(at, e.arg)) next = {e.target, *w};
            break;
          case EdgeKind::on:
            if (e.pieces & (std::uint64_t{1} << state.pieces[at])) next = {e.target, at};
            break;
          case EdgeKind::compare:
            if (holds(evaluate(nfa.expressions[e.expr], state.variables), e.op)) next = {e.target, at};
            break;
          case EdgeKind::pattern: {
            const PatternAutomaton& p = nfa.patterns[e.arg];
            if (matches(state, p.start, p.accept, at) == p.positive) next = {e.target, at};
            break;
          }
          default:
            throw std::logic_error("modifier inside a pattern");
        }
        if (next && seen.insert(*next).second) todo.push_back(*next);
      }
    }
    return false;
  }
};

NaiveInterpreter::NaiveInterpreter(GameDescription game)
    : game_(std::move(game)), nfa_(compile_rules(game_)) {
  edge_of_action_.assign(nfa_.actions.size(), -1);
  for (std::size_t i = 0; i < nfa_.edges.size(); ++i) {
    if (nfa_.edges[i].action_index >= 0) edge_of_action_[nfa_.edges[i].action_index] = static_cast<int>(i);
  }
}

std::vector<Move> NaiveInterpreter::moves_in_order(const State& state, bool first_only) const {
  Search search{*this, first_only, {}};
  search.segment(state, state.node, state.vertex, {});
  return std::move(search.found);
}

void NaiveInterpreter::play(State& state, const Move& move) const {
  apply_steps(state, move);
  while (state.role == kKeeper) {
    const std::vector<Move> keeper = moves_in_order(state, true);
    if (keeper.empty()) return;
    apply_steps(state, keeper.front());
  }
}

void NaiveInterpreter::apply_steps(State& state, const Move& move) const {
  for (const MoveStep& step : move) {
    if (step.action < 0 || step.action >= static_cast<int>(edge_of_action_.size()) ||
        edge_of_action_[step.action] < 0) {
      throw IllegalMove("unknown action index " + std::to_string(step.action));
    }
    const NfaEdge* it = &nfa_.edges[edge_of_action_[step.action]];
    switch (it->kind) {
      case EdgeKind::off: state.pieces[step.vertex] = it->arg; break;
      case EdgeKind::assign: state.variables[it->arg] = evaluate(nfa_.expressions[it->expr], state.variables); break;
      case EdgeKind::switch_turn:
        state.role = it->arg;
        state.node = it->target;
        state.vertex = step.vertex;
        break;
      default: throw IllegalMove("move contains a non-modifier action");
    }
  }
}

NaiveInterpreter::State NaiveInterpreter::initial_state() const {
  State s;
  s.pieces.assign(game_.board.initial_pieces().begin(), game_.board.initial_pieces().end());
  s.variables.assign(game_.variable_count(), 0);
  s.role = kKeeper;
  s.node = nfa_.initial;
  s.vertex = 0;
  play(s, {});
  return s;
}

std::set<Move> NaiveInterpreter::legal_moves(const State& state) const {
  if (state.role == kKeeper) return {};
  const std::vector<Move> moves = moves_in_order(state, false);
  return std::set<Move>(moves.begin(), moves.end());
}

NaiveInterpreter::State NaiveInterpreter::apply(const State& state, const Move& move) const {
  State next = state;
  play(next, move);
  return next;
}

std::vector<int> NaiveInterpreter::scores(const State& state) const {
  return std::vector<int>(state.variables.begin(), state.variables.begin() + game_.players.size());
}

}  // namespace rbg

namespace rbg {

std::uint64_t PerftResult::total_terminals() const {
  std::uint64_t total = 0;
  for (std::uint64_t t : terminals) total += t;
  return total;
}

PerftResult perft(const NaiveInterpreter& oracle, int depth) {
  PerftResult result;
  result.depth = depth;
  result.nodes.assign(depth + 1, 0);
  result.terminals.assign(depth + 1, 0);
  std::function<void(const NaiveInterpreter::State&, int)> walk =
      [&](const NaiveInterpreter::State& s, int d) {
        ++result.nodes[d];
        const std::set<Move> moves = oracle.legal_moves(s);
        if (moves.empty()) {
          ++result.terminals[d];
          return;
        }
        if (d == depth) return;
        for (const Move& m : moves) walk(oracle.apply(s, m), d + 1);
      };
  walk(oracle.initial_state(), 0);
  return result;
}

PerftResult perft(Reasoner& reasoner, int depth) {
  PerftResult result;
  result.depth = depth;
  result.nodes.assign(depth + 1, 0);
  result.terminals.assign(depth + 1, 0);
  std::function<void(GameState&, int)> walk = [&](GameState& s, int d) {
    ++result.nodes[d];
    MoveList moves;
    reasoner.legal_moves(s, moves);
    if (moves.empty()) {
      ++result.terminals[d];
      return;
    }
    if (d == depth) return;
    for (std::size_t i = 0; i < moves.size(); ++i) {
      GameState child = s;
      reasoner.apply_move(child, moves[i]);
      walk(child, d + 1);
    }
  };
  GameState initial = reasoner.initial_state();
  walk(initial, 0);
  return result;
}

std::string describe_move(const GameDescription& game, const RulesNfa& nfa, const Move& move) {
  std::string out;
  for (const MoveStep& step : move) {
    if (!out.empty()) out += ' ';
    const std::string text = step.action >= 0 && step.action < static_cast<int>(nfa.actions.size())
                                 ? nfa.actions[step.action].text
                                 : "?";
    out += text + "#" + std::to_string(step.action) + "@" +
           (step.vertex >= 0 && step.vertex < game.board.vertex_count() ? game.board.vertex_name(step.vertex)
                                                                        : "?");
  }
  return out;
}

namespace {

std::string dump_state(const GameDescription& game, const NaiveInterpreter::State& s) {
  std::ostringstream os;
  os << "role=" << (s.role == kKeeper ? std::string("keeper") : game.players[s.role].name)
     << " vertex=" << game.board.vertex_name(s.vertex) << " variables={";
  for (int i = 0; i < game.variable_count(); ++i) {
    os << (i ? ", " : "") << game.variable_name(i) << "=" << s.variables[i];
  }
  os << "} board={";
  for (int v = 0; v < game.board.vertex_count(); ++v) {
    os << (v ? " " : "") << game.board.vertex_name(v) << ":" << game.pieces[s.pieces[v]];
  }
  os << "}";
  return os.str();
}

bool same_state(const NaiveInterpreter::State& a, const GameState& b) {
  if (a.role != b.role || a.vertex != b.vertex || a.variables != b.variables) return false;
  if (a.pieces.size() != b.pieces.size()) return false;
  for (std::size_t i = 0; i < a.pieces.size(); ++i) {
    if (a.pieces[i] != b.pieces[i]) return false;
  }
  return true;
}

}  // namespace

CrossCheckReport cross_check(const GameDescription& game,
                             const std::vector<std::shared_ptr<const CompiledGame>>& compiled,
                             std::uint64_t samples, std::uint64_t seed, RngMethod method,
                             std::uint64_t min_playouts) {
  CrossCheckReport report;
  NaiveInterpreter oracle(game);
  std::vector<Reasoner> reasoners;
  for (const auto& c : compiled) {
    reasoners.emplace_back(c);
    report.configs.push_back(c->config().label());
  }
  std::vector<GameState> states(compiled.size());
  std::vector<char> alive(compiled.size(), 1);
  AnyRng rng = make_rng(method, seed);

  auto diverge = [&](std::size_t i, const NaiveInterpreter::State& s, std::string detail) {
    Divergence d;
    d.config = report.configs[i];
    d.sample = report.samples;
    d.state = dump_state(game, s);
    d.detail = std::move(detail);
    alive[i] = 0;
    report.divergences.push_back(std::move(d));
    return &report.divergences.back();
  };
  auto any_alive = [&] { return std::find(alive.begin(), alive.end(), 1) != alive.end(); };

  NaiveInterpreter::State current;
  bool fresh = true;
  while ((report.samples < samples || report.playouts < min_playouts) && any_alive()) {
    if (fresh) {
      current = oracle.initial_state();
      for (std::size_t i = 0; i < reasoners.size(); ++i) {
        if (!alive[i]) continue;
        states[i] = reasoners[i].initial_state();
        if (!same_state(current, states[i])) diverge(i, current, "initial states differ");
      }
      fresh = false;
    }
    const std::set<Move> expected = oracle.legal_moves(current);
    for (std::size_t i = 0; i < reasoners.size(); ++i) {
      if (!alive[i]) continue;
      std::vector<Move> got_list = reasoners[i].legal_moves(states[i]);
      const std::set<Move> got(got_list.begin(), got_list.end());
      ++report.moves_compared;
      if (got == expected && got.size() == got_list.size()) continue;
      Divergence* d = diverge(i, current, got.size() != got_list.size() ? "duplicate moves generated"
                                                                        : "move sets differ");
      for (const Move& m : expected) {
        if (!got.count(m)) d->missing.push_back(describe_move(game, oracle.rules(), m));
      }
      for (const Move& m : got) {
        if (!expected.count(m)) d->extra.push_back(describe_move(game, oracle.rules(), m));
      }
    }
    ++report.samples;
    if (expected.empty()) {
      ++report.playouts;
      fresh = true;
      continue;
    }
    auto it = expected.begin();
    std::advance(it, std::visit([&](auto& r) { return r.next_bounded(static_cast<std::uint32_t>(expected.size())); }, rng));
    const NaiveInterpreter::State next = oracle.apply(current, *it);
    for (std::size_t i = 0; i < reasoners.size(); ++i) {
      if (!alive[i]) continue;
      reasoners[i].apply_move(states[i], *it);
      if (!same_state(next, states[i])) {
        diverge(i, current, "states differ after " + describe_move(game, oracle.rules(), *it));
      }
    }
    current = next;
  }
  return report;
}

CrossCheckReport cross_check(const GameDescription& game, const std::vector<OptimizerConfig>& configs,
                             std::uint64_t samples, std::uint64_t seed, RngMethod method,
                             std::uint64_t min_playouts) {
  std::vector<std::shared_ptr<const CompiledGame>> compiled;
  for (const OptimizerConfig& c : configs) compiled.push_back(CompiledGame::compile(game, c));
  return cross_check(game, compiled, samples, seed, method, min_playouts);
}

}  // namespace rbg
