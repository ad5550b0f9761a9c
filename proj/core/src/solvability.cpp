#include "thompson/solvability.hpp"

#include <deque>
#include <functional>

namespace thompson {

namespace {

// First self-trail from `edge` containing 0, in 0-before-1 preorder, which is
// the lexicographic minimum among them.
std::optional<BinaryWord> least_self_trail(const CoreAutomaton& core, int edge) {
  std::vector<int> visits(core.edge_count(), 0);
  visits[edge] = 1;
  BinaryWord label;
  std::function<std::optional<BinaryWord>(int, bool)> walk = [&](int e,
                                                                 bool has_zero) -> std::optional<BinaryWord> {
    const Cell* c = core.cell_of(e);
    if (c == nullptr) return std::nullopt;
    for (char digit : {'0', '1'}) {
      int next = digit == '0' ? c->left : c->right;
      if (visits[next] == 2) continue;
      bool zero = has_zero || digit == '0';
      label.push_back(digit);
      ++visits[next];
      if (next == edge) {
        if (zero) return label;
      } else if (auto found = walk(next, zero)) {
        return found;
      }
      --visits[next];
      label.pop_back();
    }
    return std::nullopt;
  };
  return walk(edge, false);
}

}  // namespace

std::set<int> periodic_edges(const CoreAutomaton& core) {
  std::set<int> out;
  for (int e = 0; e < core.edge_count(); ++e) {
    if (least_self_trail(core, e)) out.insert(e);
  }
  return out;
}

BinaryWord optimal_trail(const CoreAutomaton& core, int edge) {
  auto s = least_self_trail(core, edge);
  if (!s) throw PreconditionError("edge " + core.name(edge) + " is not periodic");
  return *s;
}

std::set<int> reachable_edges(const CoreAutomaton& core, int from) {
  std::set<int> seen{from};
  std::deque<int> queue{from};
  while (!queue.empty()) {
    const Cell* c = core.cell_of(queue.front());
    queue.pop_front();
    if (c == nullptr) continue;
    for (int next : {c->left, c->right}) {
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return seen;
}

PGraph p_graph(const CoreAutomaton& core) {
  PGraph g;
  for (int e = 0; e < core.edge_count(); ++e) {
    if (auto s = least_self_trail(core, e)) {
      g.vertices.push_back(e);
      g.trails[e] = *s;
    }
  }
  for (int e1 : g.vertices) {
    const BinaryWord& s = g.trails[e1];
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != '0') continue;
      auto branch = trace(core, s.substr(0, i) + '1', e1);
      if (!branch) continue;
      for (int e2 : reachable_edges(core, *branch)) {
        if (g.trails.count(e2) != 0) g.arcs.insert({e1, e2});
      }
    }
  }
  return g;
}

Solvability solvability(const PGraph& graph) {
  std::map<int, std::vector<int>> out;
  for (auto [a, b] : graph.arcs) out[a].push_back(b);
  // Longest path in vertices by memoized DFS; a grey vertex reached again is a cycle.
  std::map<int, int> state;  // 1 = on stack, 2 = done
  std::map<int, int> longest;
  bool cycle = false;
  std::function<int(int)> depth = [&](int v) -> int {
    if (state[v] == 2) return longest[v];
    if (state[v] == 1) {
      cycle = true;
      return 0;
    }
    state[v] = 1;
    int best = 0;
    for (int w : out[v]) best = std::max(best, depth(w));
    state[v] = 2;
    return longest[v] = best + 1;
  };
  int n = 0;
  for (int v : graph.vertices) n = std::max(n, depth(v));
  if (cycle) return Solvability::not_solvable();
  return Solvability::with_length(n);
}

Solvability solvability(const CoreAutomaton& core) { return solvability(p_graph(core)); }

}  // namespace thompson
