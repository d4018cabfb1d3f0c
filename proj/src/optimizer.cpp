#include "rbg/optimizer.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace rbg {

std::string OptimizerConfig::label() const {
  if (shift_tables && visited_skip && length_bound && monotonic) return "all";
  if (!shift_tables && !visited_skip && !length_bound && !monotonic) return "none";
  std::string s;
  auto add = [&](bool on, const char* name) {
    if (on) return;
    if (!s.empty()) s += ",";
    s += name;
  };
  add(shift_tables, "no-shift-tables");
  add(visited_skip, "no-visited-skip");
  add(length_bound, "no-length-bound");
  add(monotonic, "no-monotonic");
  return s;
}

std::vector<OptimizerConfig> all_valid_configs() {
  std::vector<OptimizerConfig> out;
  for (int bits = 15; bits >= 0; --bits) {
    OptimizerConfig c{(bits & 8) != 0, (bits & 4) != 0, (bits & 2) != 0, (bits & 1) != 0, false};
    if (c.valid()) out.push_back(c);
  }
  return out;
}

namespace {

class ShiftTableBuilder {
 public:
  ShiftTableBuilder(const RulesNfa& nfa, const BoardGraph& board)
      : nfa_(nfa), board_(board), vertices_(board.vertex_count()) {
    shift_only_.resize(nfa.patterns.size());
    for (std::size_t p = 0; p < nfa.patterns.size(); ++p) {
      shift_only_[p] = is_shift_only_pattern(nfa, static_cast<int>(p));
    }
    pattern_memo_.assign(nfa.patterns.size(), {});
  }

  RulesNfa run() {
    std::vector<char> entry(nfa_.node_count, 0), exit(nfa_.node_count, 0);
    entry[nfa_.initial] = 1;
    exit[nfa_.final_node] = 1;
    for (const NfaEdge& e : nfa_.edges) {
      if (!shift_like(e)) {
        entry[e.target] = 1;
        exit[e.source] = 1;
      }
    }
    for (std::size_t p = 0; p < nfa_.patterns.size(); ++p) {
      if (shift_only_[p]) continue;
      entry[nfa_.patterns[p].start] = 1;
      exit[nfa_.patterns[p].accept] = 1;
    }

    RulesNfa out = nfa_;
    out.edges.clear();
    for (const NfaEdge& e : nfa_.edges) {
      if (!shift_like(e)) out.edges.push_back(e);
    }
    std::vector<int> stamp(static_cast<std::size_t>(nfa_.node_count) * vertices_, -1);
    int epoch = 0;
    for (int s = 0; s < nfa_.node_count; ++s) {
      if (!entry[s]) continue;
      // sets[x][v]: destinations at exit x when starting from vertex v.
      std::map<int, std::vector<std::vector<VertexId>>> sets;
      for (VertexId v = 0; v < vertices_; ++v) {
        ++epoch;
        std::vector<std::pair<int, VertexId>> stack{{s, v}};
        stamp[index(s, v)] = epoch;
        auto arrive = [&](int n, VertexId w) {
          if (exit[n]) {
            auto& per_source = sets[n];
            if (per_source.empty()) per_source.resize(vertices_);
            per_source[v].push_back(w);
          }
          int& mark = stamp[index(n, w)];
          if (mark != epoch) {
            mark = epoch;
            stack.emplace_back(n, w);
          }
        };
        while (!stack.empty()) {
          const auto [n, at] = stack.back();
          stack.pop_back();
          for (const NfaEdge& e : nfa_.out(n)) {
            if (!shift_like(e)) continue;
            switch (e.kind) {
              case EdgeKind::epsilon: arrive(e.target, at); break;
              case EdgeKind::shift: {
                const VertexId w = board_.step(at, e.arg);
                if (w != kNoVertex) arrive(e.target, w);
                break;
              }
              case EdgeKind::shift_table:
                for (VertexId w : nfa_.shift_tables[e.arg].from(at)) arrive(e.target, w);
                break;
              case EdgeKind::pattern:
                if (pattern_holds(e.arg, at)) arrive(e.target, at);
                break;
              default: break;
            }
          }
        }
      }
      for (auto& [x, per_source] : sets) {
        ShiftTable table = ShiftTable::from_sets(per_source);
        if (table.destinations.empty()) continue;
        NfaEdge edge;
        edge.source = s;
        edge.target = x;
        if (is_identity(table)) {
          edge.kind = EdgeKind::epsilon;
        } else {
          edge.kind = EdgeKind::shift_table;
          table.entry_node = s;
          table.exit_node = x;
          edge.arg = static_cast<int>(out.shift_tables.size());
          out.shift_tables.push_back(std::move(table));
        }
        out.edges.push_back(edge);
      }
    }
    prune(out);
    return out;
  }

 private:
  std::size_t index(int n, VertexId v) const { return static_cast<std::size_t>(n) * vertices_ + v; }

  bool shift_like(const NfaEdge& e) const {
    switch (e.kind) {
      case EdgeKind::epsilon:
      case EdgeKind::shift:
      case EdgeKind::shift_table:
        return true;
      case EdgeKind::pattern:
        return shift_only_[e.arg];
      default:
        return false;
    }
  }

  bool pattern_holds(int p, VertexId v) {
    auto& memo = pattern_memo_[p];
    if (memo.empty()) memo.assign(vertices_, -1);
    if (memo[v] < 0) memo[v] = shift_pattern_holds(nfa_, board_, p, v) ? 1 : 0;
    return memo[v] == 1;
  }

  bool is_identity(const ShiftTable& t) const {
    for (VertexId v = 0; v < vertices_; ++v) {
      const auto d = t.from(v);
      if (d.size() != 1 || d[0] != v) return false;
    }
    return true;
  }

  // Drops nodes that are no longer reachable and unused patterns, then
  // renumbers everything densely in the old order.
  static void prune(RulesNfa& nfa) {
    nfa.finalize();
    std::vector<char> keep(nfa.node_count, 0);
    std::vector<char> pattern_used(nfa.patterns.size(), 0);
    std::vector<int> stack;
    auto visit = [&](int n) {
      if (!keep[n]) {
        keep[n] = 1;
        stack.push_back(n);
      }
    };
    visit(nfa.initial);
    visit(nfa.final_node);
    while (!stack.empty()) {
      const int n = stack.back();
      stack.pop_back();
      for (const NfaEdge& e : nfa.out(n)) {
        visit(e.target);
        if (e.kind == EdgeKind::pattern && !pattern_used[e.arg]) {
          pattern_used[e.arg] = 1;
          visit(nfa.patterns[e.arg].start);
          visit(nfa.patterns[e.arg].accept);
        }
      }
    }
    std::vector<int> node_map(nfa.node_count, -1);
    int next = 0;
    for (int n = 0; n < nfa.node_count; ++n) {
      if (keep[n]) node_map[n] = next++;
    }
    std::vector<int> pattern_map(nfa.patterns.size(), -1);
    std::vector<PatternAutomaton> patterns;
    for (std::size_t p = 0; p < nfa.patterns.size(); ++p) {
      if (!pattern_used[p]) continue;
      pattern_map[p] = static_cast<int>(patterns.size());
      PatternAutomaton pa = nfa.patterns[p];
      pa.start = node_map[pa.start];
      pa.accept = node_map[pa.accept];
      patterns.push_back(pa);
    }
    std::vector<NfaEdge> edges;
    for (NfaEdge e : nfa.edges) {
      if (!keep[e.source]) continue;
      e.source = node_map[e.source];
      e.target = node_map[e.target];
      if (e.kind == EdgeKind::pattern) e.arg = pattern_map[e.arg];
      edges.push_back(e);
    }
    nfa.edges = std::move(edges);
    nfa.patterns = std::move(patterns);
    nfa.node_count = next;
    nfa.initial = node_map[nfa.initial];
    nfa.final_node = node_map[nfa.final_node];
    nfa.finalize();
  }

  const RulesNfa& nfa_;
  const BoardGraph& board_;
  int vertices_;
  std::vector<bool> shift_only_;
  std::vector<std::vector<signed char>> pattern_memo_;
};

}  // namespace

RulesNfa build_shift_tables(const RulesNfa& nfa, const BoardGraph& board) {
  return ShiftTableBuilder(nfa, board).run();
}

std::vector<std::uint8_t> analyze_visited_skip(const RulesNfa& nfa, const BoardGraph& board) {
  const int vertices = board.vertex_count();
  std::vector<char> start(nfa.node_count, 0);
  start[nfa.initial] = 1;
  for (const NfaEdge& e : nfa.edges) {
    if (is_modifier(e.kind)) start[e.target] = 1;
  }
  for (const PatternAutomaton& p : nfa.patterns) start[p.start] = 1;

  // A node is skippable when, for every segment start and starting vertex,
  // each (node, vertex) pair is entered at most once. Conditions are assumed
  // to pass, which can only add entries.
  std::vector<std::uint8_t> skip(nfa.node_count, 1);
  std::vector<std::uint32_t> stamp(static_cast<std::size_t>(nfa.node_count) * vertices, 0);
  std::uint32_t epoch = 0;
  std::vector<std::pair<int, VertexId>> stack;
  for (int s = 0; s < nfa.node_count; ++s) {
    if (!start[s]) continue;
    for (VertexId v0 = 0; v0 < vertices; ++v0) {
      ++epoch;
      stack.clear();
      stack.emplace_back(s, v0);
      stamp[static_cast<std::size_t>(s) * vertices + v0] = epoch;
      auto arrive = [&](int n, VertexId w) {
        std::uint32_t& mark = stamp[static_cast<std::size_t>(n) * vertices + w];
        if (mark == epoch) {
          skip[n] = 0;
          return;
        }
        mark = epoch;
        stack.emplace_back(n, w);
      };
      while (!stack.empty()) {
        const auto [n, at] = stack.back();
        stack.pop_back();
        for (const NfaEdge& e : nfa.out(n)) {
          switch (e.kind) {
            case EdgeKind::off:
            case EdgeKind::assign:
            case EdgeKind::switch_turn:
              break;
            case EdgeKind::shift: {
              const VertexId w = board.step(at, e.arg);
              if (w != kNoVertex) arrive(e.target, w);
              break;
            }
            case EdgeKind::shift_table:
              for (VertexId w : nfa.shift_tables[e.arg].from(at)) arrive(e.target, w);
              break;
            default:
              arrive(e.target, at);
          }
        }
      }
    }
  }
  return skip;
}

MonotonicClasses detect_monotonic_classes(const RulesNfa& nfa, const GameDescription& game,
                                          const BoardGraph& board) {
  MonotonicClasses result;
  result.node_class.assign(nfa.node_count, -1);

  std::uint64_t written = 0;
  for (const NfaEdge& e : nfa.edges) {
    if (e.kind == EdgeKind::off) written |= std::uint64_t{1} << e.arg;
  }
  const std::uint64_t never_added = ~written;
  const std::vector<std::uint8_t> single_entry = analyze_visited_skip(nfa, board);
  (void)game;

  for (const NfaEdge& sw : nfa.edges) {
    if (sw.kind != EdgeKind::switch_turn || sw.arg < 0) continue;
    const int t = sw.target;
    if (result.node_class[t] >= 0) continue;

    // The move must start by jumping anywhere independently of the vertex.
    std::vector<char> closure(nfa.node_count, 0);
    std::vector<int> stack{t};
    closure[t] = 1;
    bool ok = true;
    while (!stack.empty() && ok) {
      const int n = stack.back();
      stack.pop_back();
      for (const NfaEdge& e : nfa.out(n)) {
        if (e.kind == EdgeKind::epsilon) {
          if (!closure[e.target]) {
            closure[e.target] = 1;
            stack.push_back(e.target);
          }
        } else if (e.kind != EdgeKind::shift_table ||
                   !nfa.shift_tables[e.arg].position_independent) {
          ok = false;
        }
      }
    }
    if (!ok) continue;

    // Everything up to the closing switches: only conditions that can turn
    // from true to false, plus unconditional modifiers.
    std::vector<char> seen(nfa.node_count, 0);
    stack = {t};
    seen[t] = 1;
    while (!stack.empty() && ok) {
      const int n = stack.back();
      stack.pop_back();
      if (!single_entry[n]) ok = false;
      for (const NfaEdge& e : nfa.out(n)) {
        switch (e.kind) {
          case EdgeKind::epsilon:
          case EdgeKind::shift:
          case EdgeKind::shift_table:
          case EdgeKind::off:
            break;
          case EdgeKind::on:
            if ((e.pieces & ~never_added) != 0) ok = false;
            break;
          case EdgeKind::assign:
            if (!nfa.expressions[e.expr].is_constant()) ok = false;
            break;
          case EdgeKind::switch_turn:
            continue;
          default:
            ok = false;
        }
        if (!seen[e.target]) {
          seen[e.target] = 1;
          stack.push_back(e.target);
        }
      }
    }
    if (!ok) continue;
    result.node_class[t] = result.count++;
  }
  return result;
}

RulesNfa optimize(const RulesNfa& nfa, const GameDescription& game,
                  const StraightnessReport& straightness, const OptimizerConfig& config,
                  OptimizerReport* report) {
  RulesNfa out = config.shift_tables ? build_shift_tables(nfa, game.board) : nfa;
  if (config.visited_skip) out.skip_visited = analyze_visited_skip(out, game.board);
  if (config.length_bound) out.move_length_bound = straightness.bound;
  if (config.monotonic && config.shift_tables) {
    MonotonicClasses classes = detect_monotonic_classes(out, game, game.board);
    if (classes.count > 0) {
      out.monotonic_class = std::move(classes.node_class);
      out.monotonic_class_count = classes.count;
    }
  }
  if (report != nullptr) {
    *report = OptimizerReport{};
    report->nodes_before = nfa.node_count;
    report->nodes_after = out.node_count;
    report->shift_tables = static_cast<int>(out.shift_tables.size());
    for (const ShiftTable& t : out.shift_tables) {
      report->deterministic_tables += t.deterministic ? 1 : 0;
      report->position_independent_tables += t.position_independent ? 1 : 0;
    }
    report->skippable_nodes = static_cast<int>(
        std::count(out.skip_visited.begin(), out.skip_visited.end(), std::uint8_t{1}));
    report->move_length_bound = out.move_length_bound;
    report->monotonic_classes = out.monotonic_class_count;
  }
  return out;
}

}  // namespace rbg
