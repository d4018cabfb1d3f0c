#include "rbg/nfa.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>

namespace rbg {

namespace {

void accumulate(const ArithExpr& expr, int sign, const GameDescription& game, LinearExpr& out) {
  switch (expr.kind) {
    case ArithExpr::Kind::constant:
      out.constant += sign * expr.value;
      return;
    case ArithExpr::Kind::variable: {
      const int var = game.variable_index(expr.name);
      auto it = std::find_if(out.terms.begin(), out.terms.end(),
                             [&](const auto& t) { return t.first == var; });
      if (it == out.terms.end()) {
        out.terms.emplace_back(var, sign);
      } else {
        it->second += sign;
      }
      return;
    }
    case ArithExpr::Kind::add:
      accumulate(expr.operands[0], sign, game, out);
      accumulate(expr.operands[1], sign, game, out);
      return;
    case ArithExpr::Kind::subtract:
      accumulate(expr.operands[0], sign, game, out);
      accumulate(expr.operands[1], -sign, game, out);
      return;
  }
}

void normalize(LinearExpr& e) {
  std::erase_if(e.terms, [](const auto& t) { return t.second == 0; });
  std::sort(e.terms.begin(), e.terms.end());
}

std::string describe_arith(const ArithExpr& e) {
  switch (e.kind) {
    case ArithExpr::Kind::constant: return std::to_string(e.value);
    case ArithExpr::Kind::variable: return e.name;
    case ArithExpr::Kind::add:
      return describe_arith(e.operands[0]) + "+" + describe_arith(e.operands[1]);
    case ArithExpr::Kind::subtract: {
      const ArithExpr& r = e.operands[1];
      const bool wrap = r.kind == ArithExpr::Kind::add || r.kind == ArithExpr::Kind::subtract;
      return describe_arith(e.operands[0]) + "-" + (wrap ? "(" + describe_arith(r) + ")" : describe_arith(r));
    }
  }
  return "?";
}

class Compiler {
 public:
  explicit Compiler(const GameDescription& game) : game_(game) {}

  RulesNfa run() {
    nfa_.initial = new_node();
    nfa_.final_node = build(game_.rules, nfa_.initial);
    nfa_.finalize();
    return std::move(nfa_);
  }

 private:
  int new_node() { return nfa_.node_count++; }

  void add_edge(NfaEdge edge) { nfa_.edges.push_back(edge); }

  void epsilon(int from, int to) {
    NfaEdge e;
    e.source = from;
    e.target = to;
    add_edge(e);
  }

  // Builds `expr` starting at `start` and returns its end node. No edge into
  // `start` is ever added and the returned end has no outgoing edges.
  int build(const RulesExpr& expr, int start) {
    switch (expr.kind) {
      case RulesExpr::Kind::action:
        return build_action(expr, start);
      case RulesExpr::Kind::sequence: {
        int at = start;
        for (const RulesExpr& c : expr.children) at = build(c, at);
        return at;
      }
      case RulesExpr::Kind::sum: {
        const int end = new_node();
        std::vector<int> ends;
        for (const RulesExpr& c : expr.children) ends.push_back(build(c, start));
        for (int e : ends) epsilon(e, end);
        return end;
      }
      case RulesExpr::Kind::star: {
        const int inner = new_node();
        epsilon(start, inner);
        const int child_end = build(expr.children[0], inner);
        const int end = new_node();
        epsilon(child_end, inner);
        epsilon(inner, end);
        return end;
      }
      case RulesExpr::Kind::plus: {
        const int inner = new_node();
        epsilon(start, inner);
        const int child_end = build(expr.children[0], inner);
        const int end = new_node();
        epsilon(child_end, inner);
        epsilon(child_end, end);
        return end;
      }
    }
    return start;
  }

  int build_action(const RulesExpr& expr, int start) {
    const ActionNode& a = expr.action;
    NfaEdge edge;
    edge.source = start;
    edge.action_index = static_cast<int>(nfa_.actions.size());
    nfa_.actions.push_back(ActionInfo{a.type, describe_action(a), a.position});
    switch (a.type) {
      case ActionType::shift:
        edge.kind = EdgeKind::shift;
        edge.arg = game_.board.direction_index(a.direction);
        break;
      case ActionType::on:
        edge.kind = EdgeKind::on;
        for (const std::string& p : a.pieces) edge.pieces |= std::uint64_t{1} << game_.piece_index(p);
        break;
      case ActionType::off:
        edge.kind = EdgeKind::off;
        edge.arg = game_.piece_index(a.pieces.front());
        break;
      case ActionType::compare: {
        edge.kind = EdgeKind::compare;
        edge.op = a.op;
        LinearExpr diff;
        accumulate(a.lhs, 1, game_, diff);
        accumulate(a.rhs, -1, game_, diff);
        normalize(diff);
        edge.expr = add_expression(std::move(diff));
        break;
      }
      case ActionType::assign:
        edge.kind = EdgeKind::assign;
        edge.arg = game_.variable_index(a.variable);
        edge.expr = add_expression(linearize(a.rhs, game_));
        break;
      case ActionType::switch_turn:
        edge.kind = EdgeKind::switch_turn;
        edge.arg = a.role.empty() ? -1 : game_.player_index(a.role);
        break;
      case ActionType::pattern: {
        edge.kind = EdgeKind::pattern;
        edge.arg = static_cast<int>(nfa_.patterns.size());
        nfa_.patterns.push_back({});
        const int body_start = new_node();
        const int body_end = build(expr.children[0], body_start);
        nfa_.patterns[edge.arg] = PatternAutomaton{a.positive, body_start, body_end, edge.action_index};
        break;
      }
    }
    edge.target = new_node();
    add_edge(edge);
    return edge.target;
  }

  int add_expression(LinearExpr e) {
    nfa_.expressions.push_back(std::move(e));
    return static_cast<int>(nfa_.expressions.size()) - 1;
  }

  const GameDescription& game_;
  RulesNfa nfa_;
};

// Main-automaton graph without pattern bodies, for the straightness analysis.
using Digraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;

}  // namespace

LinearExpr linearize(const ArithExpr& expr, const GameDescription& game) {
  LinearExpr out;
  accumulate(expr, 1, game, out);
  normalize(out);
  return out;
}

ShiftTable ShiftTable::from_sets(const std::vector<std::vector<VertexId>>& sets) {
  ShiftTable t;
  t.offsets.push_back(0);
  t.deterministic = true;
  t.position_independent = true;
  for (const auto& s : sets) {
    std::vector<VertexId> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    t.destinations.insert(t.destinations.end(), sorted.begin(), sorted.end());
    t.offsets.push_back(static_cast<int>(t.destinations.size()));
    if (sorted.size() > 1) t.deterministic = false;
    t.single.push_back(sorted.empty() ? kNoVertex : sorted.front());
    if (t.offsets.size() > 2 && !std::equal(sorted.begin(), sorted.end(),
                                            t.destinations.begin() + t.offsets[0],
                                            t.destinations.begin() + t.offsets[1])) {
      t.position_independent = false;
    }
  }
  if (t.position_independent && !sets.empty()) {
    t.shared.assign(t.destinations.begin(), t.destinations.begin() + t.offsets[1]);
  }
  if (!t.deterministic) t.single.clear();
  return t;
}

void RulesNfa::finalize() {
  std::stable_sort(edges.begin(), edges.end(),
                   [](const NfaEdge& a, const NfaEdge& b) { return a.source < b.source; });
  edge_begin.assign(node_count + 1, 0);
  for (const NfaEdge& e : edges) ++edge_begin[e.source + 1];
  for (int n = 0; n < node_count; ++n) edge_begin[n + 1] += edge_begin[n];
}

std::size_t RulesNfa::non_epsilon_edge_count() const {
  return static_cast<std::size_t>(std::count_if(
      edges.begin(), edges.end(), [](const NfaEdge& e) { return e.kind != EdgeKind::epsilon; }));
}

std::string describe_action(const ActionNode& a) {
  switch (a.type) {
    case ActionType::shift: return a.direction;
    case ActionType::on: {
      std::string s = "{";
      for (std::size_t i = 0; i < a.pieces.size(); ++i) s += (i ? "," : "") + a.pieces[i];
      return s + "}";
    }
    case ActionType::off: return "[" + a.pieces.front() + "]";
    case ActionType::compare:
      return "{$ " + describe_arith(a.lhs) + " " + std::string(to_string(a.op)) + " " +
             describe_arith(a.rhs) + "}";
    case ActionType::assign: return "[$ " + a.variable + "=" + describe_arith(a.rhs) + "]";
    case ActionType::switch_turn: return a.role.empty() ? "->>" : "->" + a.role;
    case ActionType::pattern: return a.positive ? "{? ...}" : "{! ...}";
  }
  return "?";
}

std::string RulesNfa::to_dot(const GameDescription& game) const {
  auto escape = [](std::string s) {
    std::string out;
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out;
  };
  std::ostringstream os;
  os << "digraph rules {\n  rankdir=LR;\n  node [shape=circle];\n";
  os << "  " << initial << " [shape=doublecircle];\n";
  for (const NfaEdge& e : edges) {
    std::string label;
    switch (e.kind) {
      case EdgeKind::epsilon: label = "e"; break;
      case EdgeKind::shift_table: {
        const ShiftTable& t = shift_tables[e.arg];
        label = "T" + std::to_string(e.arg) + (t.deterministic ? " det" : "") +
                (t.position_independent ? " pi" : "");
        break;
      }
      case EdgeKind::pattern: {
        const PatternAutomaton& p = patterns[e.arg];
        label = std::string(p.positive ? "{? " : "{! ") + "P" + std::to_string(e.arg) + "}";
        break;
      }
      case EdgeKind::switch_turn:
        label = e.arg < 0 ? "->>" : "->" + game.players[e.arg].name;
        break;
      default: label = actions[e.action_index].text; break;
    }
    os << "  " << e.source << " -> " << e.target << " [label=\"" << escape(label) << "\""
       << (e.kind == EdgeKind::epsilon ? ", style=dashed" : "") << "];\n";
  }
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    os << "  " << patterns[p].start << " [xlabel=\"P" << p << "\"];\n";
    os << "  " << patterns[p].accept << " [shape=doublecircle];\n";
  }
  os << "}\n";
  return os.str();
}

RulesNfa compile_rules(const GameDescription& game) { return Compiler(game).run(); }

StraightnessReport check_straightness(const RulesNfa& nfa) {
  Digraph g(nfa.node_count);
  for (const NfaEdge& e : nfa.edges) {
    if (e.kind != EdgeKind::switch_turn) boost::add_edge(e.source, e.target, g);
  }
  std::vector<int> component(nfa.node_count);
  const int count = boost::strong_components(g, component.data());

  StraightnessReport report;
  for (const NfaEdge& e : nfa.edges) {
    if (!is_modifier(e.kind) || e.kind == EdgeKind::switch_turn) continue;
    if (component[e.source] != component[e.target] && e.source != e.target) continue;
    // Recover a witness cycle: the edge plus a path back inside the component.
    report.is_straight = false;
    std::vector<int> parent(nfa.node_count, -1);
    std::deque<int> queue{e.target};
    parent[e.target] = e.target;
    while (!queue.empty() && parent[e.source] < 0) {
      const int n = queue.front();
      queue.pop_front();
      for (const NfaEdge& f : nfa.out(n)) {
        if (f.kind == EdgeKind::switch_turn || parent[f.target] >= 0) continue;
        if (component[f.target] != component[e.source]) continue;
        parent[f.target] = n;
        queue.push_back(f.target);
      }
    }
    std::vector<int> back;
    for (int n = e.source; n != e.target; n = parent[n]) back.push_back(n);
    report.offending_cycle.push_back(e.source);
    report.offending_cycle.push_back(e.target);
    for (auto it = back.rbegin(); it != back.rend(); ++it) report.offending_cycle.push_back(*it);
    return report;
  }

  // Longest modifier-weighted path over the condensation. Components are
  // numbered in reverse topological order, so process them from the highest.
  std::vector<std::vector<int>> members(count);
  for (int n = 0; n < nfa.node_count; ++n) members[component[n]].push_back(n);
  std::vector<int> dist(nfa.node_count, -1);
  dist[nfa.initial] = 0;
  for (const NfaEdge& e : nfa.edges) {
    if (e.kind == EdgeKind::switch_turn) dist[e.target] = 0;
  }
  int bound = -1;
  int capacity = 0;
  for (int c = count - 1; c >= 0; --c) {
    // Inside a component every edge has weight zero: share the maximum.
    int best = -1;
    for (int n : members[c]) best = std::max(best, dist[n]);
    if (best < 0) continue;
    for (int n : members[c]) dist[n] = best;
    capacity = std::max(capacity, best);
    for (int n : members[c]) {
      for (const NfaEdge& e : nfa.out(n)) {
        if (e.kind == EdgeKind::switch_turn) {
          bound = std::max(bound, best);
          continue;
        }
        const int w = best + (is_modifier(e.kind) ? 1 : 0);
        if (component[e.target] != c) dist[e.target] = std::max(dist[e.target], w);
      }
    }
  }
  if (bound >= 0) report.bound = bound;
  report.scratch_capacity = capacity;
  return report;
}

namespace {

bool shift_only_body(const RulesNfa& nfa, int pattern, std::vector<int>& state) {
  // state: 0 unknown, 1 in progress, 2 yes, 3 no
  if (state[pattern] == 2 || state[pattern] == 1) return true;
  if (state[pattern] == 3) return false;
  state[pattern] = 1;
  const PatternAutomaton& p = nfa.patterns[pattern];
  std::vector<char> seen(nfa.node_count, 0);
  std::vector<int> stack{p.start};
  seen[p.start] = 1;
  bool ok = true;
  while (!stack.empty() && ok) {
    const int n = stack.back();
    stack.pop_back();
    for (const NfaEdge& e : nfa.out(n)) {
      switch (e.kind) {
        case EdgeKind::epsilon:
        case EdgeKind::shift:
        case EdgeKind::shift_table:
          break;
        case EdgeKind::pattern:
          if (!shift_only_body(nfa, e.arg, state)) ok = false;
          break;
        default:
          ok = false;
      }
      if (!seen[e.target]) {
        seen[e.target] = 1;
        stack.push_back(e.target);
      }
    }
  }
  state[pattern] = ok ? 2 : 3;
  return ok;
}

}  // namespace

bool is_shift_only_pattern(const RulesNfa& nfa, int pattern) {
  std::vector<int> state(nfa.patterns.size(), 0);
  return shift_only_body(nfa, pattern, state);
}

bool shift_pattern_holds(const RulesNfa& nfa, const BoardGraph& board, int pattern, VertexId v) {
  const PatternAutomaton& p = nfa.patterns[pattern];
  const int vertices = board.vertex_count();
  std::vector<char> seen(static_cast<std::size_t>(nfa.node_count) * vertices, 0);
  std::vector<std::pair<int, VertexId>> stack{{p.start, v}};
  seen[static_cast<std::size_t>(p.start) * vertices + v] = 1;
  auto push = [&](int n, VertexId w) {
    char& s = seen[static_cast<std::size_t>(n) * vertices + w];
    if (!s) {
      s = 1;
      stack.emplace_back(n, w);
    }
  };
  while (!stack.empty()) {
    const auto [n, at] = stack.back();
    stack.pop_back();
    if (n == p.accept) return p.positive;
    for (const NfaEdge& e : nfa.out(n)) {
      switch (e.kind) {
        case EdgeKind::epsilon: push(e.target, at); break;
        case EdgeKind::shift: {
          const VertexId w = board.step(at, e.arg);
          if (w != kNoVertex) push(e.target, w);
          break;
        }
        case EdgeKind::shift_table:
          for (VertexId w : nfa.shift_tables[e.arg].from(at)) push(e.target, w);
          break;
        case EdgeKind::pattern:
          if (shift_pattern_holds(nfa, board, e.arg, at)) push(e.target, at);
          break;
        default: break;
      }
    }
  }
  return !p.positive;
}

std::vector<boost::dynamic_bitset<>> joint_reachability(const RulesNfa& nfa,
                                                        const BoardGraph& board) {
  const int vertices = board.vertex_count();
  std::vector<boost::dynamic_bitset<>> reach(nfa.node_count, boost::dynamic_bitset<>(vertices));
  std::vector<int> shift_only(nfa.patterns.size(), -1);
  // Pattern results depend only on the vertex for shift-only patterns.
  std::vector<std::vector<signed char>> memo(nfa.patterns.size());
  auto holds = [&](int p, VertexId v) {
    if (shift_only[p] < 0) shift_only[p] = is_shift_only_pattern(nfa, p) ? 1 : 0;
    if (shift_only[p] == 0) return true;
    if (memo[p].empty()) memo[p].assign(vertices, -1);
    if (memo[p][v] < 0) memo[p][v] = shift_pattern_holds(nfa, board, p, v) ? 1 : 0;
    return memo[p][v] == 1;
  };
  std::vector<std::pair<int, VertexId>> stack;
  auto push = [&](int n, VertexId w) {
    if (!reach[n].test(w)) {
      reach[n].set(w);
      stack.emplace_back(n, w);
    }
  };
  for (VertexId v = 0; v < vertices; ++v) push(nfa.initial, v);
  while (!stack.empty()) {
    const auto [n, at] = stack.back();
    stack.pop_back();
    for (const NfaEdge& e : nfa.out(n)) {
      switch (e.kind) {
        case EdgeKind::shift: {
          const VertexId w = board.step(at, e.arg);
          if (w != kNoVertex) push(e.target, w);
          break;
        }
        case EdgeKind::shift_table:
          for (VertexId w : nfa.shift_tables[e.arg].from(at)) push(e.target, w);
          break;
        case EdgeKind::pattern:
          push(nfa.patterns[e.arg].start, at);
          if (holds(e.arg, at)) push(e.target, at);
          break;
        default:
          push(e.target, at);
      }
    }
  }
  return reach;
}

}  // namespace rbg
