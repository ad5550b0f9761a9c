#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "thompson/core.hpp"

namespace thompson {

// Edges carrying a self-trail whose label contains 0, where a trail may visit
// each edge at most twice counting its first and last edge.
std::set<int> periodic_edges(const CoreAutomaton& core);
// The lexicographically least such self-trail. Throws PreconditionError if
// `edge` is not periodic.
BinaryWord optimal_trail(const CoreAutomaton& core, int edge);

struct PGraph {
  std::vector<int> vertices;
  std::set<std::pair<int, int>> arcs;
  std::map<int, BinaryWord> trails;
};
PGraph p_graph(const CoreAutomaton& core);

struct Solvability {
  bool solvable = false;
  int derived_length = 0;  // meaningful only when solvable
  friend bool operator==(const Solvability&, const Solvability&) = default;
  static Solvability not_solvable() { return {false, 0}; }
  static Solvability with_length(int n) { return {true, n}; }
};
Solvability solvability(const PGraph& graph);
Solvability solvability(const CoreAutomaton& core);

// Edges reachable from `from` by trails, including `from` itself.
std::set<int> reachable_edges(const CoreAutomaton& core, int from);

}  // namespace thompson
