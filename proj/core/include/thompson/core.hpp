#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "thompson/element.hpp"

namespace thompson {

// A positive cell: top edge over the bottom path left·right.
struct Cell {
  int top;
  int left;
  int right;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// A finite 2-automaton over the Dunce hat. Edge ids are canonical: 0 is the
// distinguished edge and the rest follow breadth-first discovery from it,
// descending left before right. Vertices are synthesized from cell coherence.
class CoreAutomaton {
 public:
  // Builds from raw edges and cells; renumbers edges canonically. Every edge
  // must be reachable from `distinguished` through cells. Throws
  // std::invalid_argument if two cells share a top edge.
  CoreAutomaton(int edge_count, std::vector<Cell> cells, int distinguished,
                std::vector<std::string> names = {});

  int edge_count() const { return static_cast<int>(iota_.size()); }
  int distinguished() const { return 0; }
  const std::vector<Cell>& cells() const { return cells_; }
  // The cell whose top is `edge`, if any.
  const Cell* cell_of(int edge) const;
  bool tops_cell(int edge) const { return cell_index_[edge] >= 0; }

  int iota(int edge) const { return iota_[edge]; }
  int tau(int edge) const { return tau_[edge]; }
  int vertex_count() const { return vertex_count_; }
  int initial_vertex() const { return iota_[0]; }
  int terminal_vertex() const { return tau_[0]; }
  bool is_inner_vertex(int v) const { return v != initial_vertex() && v != terminal_vertex(); }
  bool is_inner_edge(int e) const { return is_inner_vertex(iota_[e]) && is_inner_vertex(tau_[e]); }
  std::vector<int> inner_vertices() const;
  std::vector<int> inner_edges() const;

  const std::string& name(int edge) const { return names_[edge]; }
  std::optional<int> edge_named(std::string_view name) const;

  // No two cells share a top edge, and no two share a bottom path.
  bool is_folded() const;

  // Structural equality of edges and cells (names and vertices ignored).
  friend bool same_structure(const CoreAutomaton& a, const CoreAutomaton& b) {
    return a.edge_count() == b.edge_count() && a.cells_ == b.cells_;
  }

 private:
  std::vector<Cell> cells_;
  std::vector<int> cell_index_;
  std::vector<int> iota_;
  std::vector<int> tau_;
  int vertex_count_ = 0;
  std::vector<std::string> names_;
};

struct FoldOptions {
  bool type2 = true;
  // When set, the folding worklist is processed in a random order.
  std::optional<std::uint64_t> shuffle_seed;
};

CoreAutomaton build_core(const std::vector<Element>& generators, const FoldOptions& options = {});
// Type-1 foldings only.
CoreAutomaton build_semicore(const std::vector<Element>& generators,
                             const FoldOptions& options = {});

// Label-preserving map on edges from `from` to `to`, following paths from the
// distinguished edges. Throws std::invalid_argument if there is none.
std::vector<int> projection(const CoreAutomaton& from, const CoreAutomaton& to);

// Follows the trail labelled `word` from `from`, descending to the left
// bottom edge on 0 and the right one on 1.
std::optional<int> trace(const CoreAutomaton& core, std::string_view word, int from = 0);
// Length of the longest traceable prefix and the edge it ends on.
std::pair<std::size_t, int> trace_prefix(const CoreAutomaton& core, std::string_view word,
                                         int from = 0);
bool accepts(const CoreAutomaton& core, const Element& a);

struct GammaGraph {
  std::vector<int> vertices;
  std::vector<std::pair<int, int>> arcs;
};
GammaGraph gamma_graph(const CoreAutomaton& core);

// Infinite, or the number of orbits of the action on dyadic fractions in (0,1).
struct OrbitCount {
  bool infinite = false;
  int count = 0;
  friend bool operator==(const OrbitCount&, const OrbitCount&) = default;
  static OrbitCount finite(int n) { return {false, n}; }
  static OrbitCount infinitely_many() { return {true, 0}; }
};
OrbitCount dyadic_orbit_count(const CoreAutomaton& core);
// Weakly connected components of a digraph on the given vertices.
int weak_components(const std::vector<int>& vertices, const std::vector<std::pair<int, int>>& arcs);

// Whether .w1 and .w2 lie in one orbit; both words must end in 1.
bool same_dyadic_orbit(const CoreAutomaton& core, std::string_view w1, std::string_view w2);

bool contains_derived_in_closure(const CoreAutomaton& core);

// Arc e1 → e2 iff the trail labelled s from e1 ends on e2.
GammaGraph gamma_s_graph(const CoreAutomaton& core, std::string_view s);
// Transitivity on the orbit of rationals with minimal period s (s must
// contain both digits).
bool transitive_on_period_orbit(const CoreAutomaton& core, std::string_view s);

// A rooted binary tree whose vertices carry edge labels.
struct LabeledTree {
  struct Node {
    std::string label;
    int left = -1;
    int right = -1;
    bool is_leaf() const { return left < 0; }
  };
  std::vector<Node> nodes;  // nodes[0] is the root

  // Nested form "e(f(f,h),g(h,g))".
  std::string str() const;
  static LabeledTree parse(std::string_view text);
  // Distinct (top, left, right) label triples.
  std::vector<std::tuple<std::string, std::string, std::string>> carets() const;
  // Binary word addressing each node.
  std::vector<BinaryWord> paths() const;
};

LabeledTree minimal_tree(const CoreAutomaton& core);
// Throws std::invalid_argument on inconsistent carets, repeated inner labels or
// two carets with the same bottom labels.
CoreAutomaton core_from_tree(const LabeledTree& tree);

// The automaton given by a caret list such as "e(f,g) f(f,h) h(h,h) g(h,g)";
// the first caret's top is the distinguished edge.
CoreAutomaton core_from_carets(std::string_view text);

}  // namespace thompson
