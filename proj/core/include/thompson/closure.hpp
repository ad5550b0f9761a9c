#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thompson/core.hpp"
#include "thompson/element.hpp"
#include "thompson/forest.hpp"

namespace thompson {

// A word over the edges of an automaton, letters compared by edge id.
using EdgeWord = std::vector<int>;

bool shortlex_less(const EdgeWord& a, const EdgeWord& b);

// lhs -> rhs with lhs above rhs in ShortLex. The witness is a diagram over
// the automaton from lhs to rhs.
struct Rule {
  EdgeWord lhs;
  EdgeWord rhs;
  ForestDiagram witness;
};

struct Budget {
  std::size_t max_rules = 500;
  std::size_t max_word_length = 16;
  // Total rules ever added, including ones later discarded.
  std::size_t max_additions = 5000;
};

enum class CompletionStatus { complete, budget_exceeded };

struct RewriteSystem {
  std::vector<Rule> rules;
  CompletionStatus status = CompletionStatus::complete;
  bool complete() const { return status == CompletionStatus::complete; }
};

// One rule botL·botR -> top per cell.
std::vector<Rule> presentation(const CoreAutomaton& core);

// Knuth-Bendix completion under ShortLex. On budget exhaustion the partial
// system is returned with status budget_exceeded.
RewriteSystem complete(const std::vector<Rule>& rules, const Budget& budget = {});

struct Normalized {
  EdgeWord word;
  ForestDiagram witness;  // from the input word to `word`
};
// Leftmost-innermost rewriting: the match ending first wins, then the shortest.
Normalized normalize(const std::vector<Rule>& rules, const EdgeWord& w);
Normalized normalize(const RewriteSystem& rs, const EdgeWord& w);

// Every critical pair, including inclusions, resolves.
bool is_locally_confluent(const std::vector<Rule>& rules);

// Breadth-first search for a derivation from one word to another, applying
// rules in both directions and staying within `max_length` letters.
std::optional<ForestDiagram> derivation_search(const std::vector<Rule>& rules, const EdgeWord& from,
                                               const EdgeWord& to, std::size_t max_length,
                                               std::size_t max_words = 200000);

// The diagram is a (from, to)-diagram over the automaton: every leaf traces
// to the same edge from both sides.
bool witness_valid(const CoreAutomaton& core, const EdgeWord& from, const EdgeWord& to,
                   const ForestDiagram& witness);

struct BoundaryPaths {
  EdgeWord left;   // initial vertex to the inner vertex
  EdgeWord right;  // inner vertex to the terminal vertex
};
// Requires a complete system; throws PreconditionError otherwise.
std::map<int, BoundaryPaths> reduced_boundary_paths(const CoreAutomaton& core,
                                                    const RewriteSystem& rs);

struct GenTuple {
  EdgeWord u;
  Rule rule;
  EdgeWord v;
};
std::vector<GenTuple> gen_tuples(const CoreAutomaton& core, const RewriteSystem& rs);
Element generator_of(const CoreAutomaton& core, const RewriteSystem& rs, const GenTuple& t);
// Generators of the closure; possibly redundant.
std::vector<Element> closure_generators(const CoreAutomaton& core, const RewriteSystem& rs);
// Greedily drops generators whose removal leaves the core unchanged. The
// result is not guaranteed to be minimal.
std::vector<Element> prune_generators(std::vector<Element> generators, const CoreAutomaton& target);

// An element accepted by the core with a pair of branches u -> v.
Element witness_pair(const CoreAutomaton& core, const RewriteSystem& rs, const BinaryWord& u,
                     const BinaryWord& v);

enum class Answer { yes, no, unknown };
const char* to_string(Answer a);
// Throws std::invalid_argument on a malformed tree.
Answer is_core_automaton(const LabeledTree& tree, const Budget& budget = {});

// Edge words as space-separated edge names.
EdgeWord parse_edge_word(const CoreAutomaton& core, std::string_view text);
std::string format_edge_word(const CoreAutomaton& core, const EdgeWord& w);
// One "lhs -> rhs" per line.
std::string format_rules(const CoreAutomaton& core, const std::vector<Rule>& rules);

}  // namespace thompson
