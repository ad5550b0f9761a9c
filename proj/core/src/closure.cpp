#include "thompson/closure.hpp"

#include <algorithm>
#include <deque>
#include <list>
#include <set>
#include <sstream>

namespace thompson {

namespace {

EdgeWord slice(const EdgeWord& w, std::size_t from, std::size_t to) {
  return EdgeWord(w.begin() + static_cast<long>(from), w.begin() + static_cast<long>(to));
}

EdgeWord concat(std::initializer_list<const EdgeWord*> parts) {
  EdgeWord out;
  for (const EdgeWord* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

// The witness of rewriting w at `at` with a rule of the given shape.
ForestDiagram step_witness(std::size_t at, std::size_t lhs_length, std::size_t word_length,
                           const ForestDiagram& rule) {
  return sum(sum(ForestDiagram::identity(static_cast<int>(at)), rule),
             ForestDiagram::identity(static_cast<int>(word_length - at - lhs_length)));
}

bool occurs_at(const EdgeWord& w, const EdgeWord& pattern, std::size_t at) {
  return at + pattern.size() <= w.size() && std::equal(pattern.begin(), pattern.end(), w.begin() + static_cast<long>(at));
}

bool contains(const EdgeWord& w, const EdgeWord& pattern) {
  return std::search(w.begin(), w.end(), pattern.begin(), pattern.end()) != w.end();
}

struct Equation {
  EdgeWord a;
  EdgeWord b;
  ForestDiagram witness;  // a to b
};

Rule oriented(Normalized na, Normalized nb, const ForestDiagram& w) {
  // na.word -> a -> b -> nb.word
  ForestDiagram d = compose(compose(inverse(na.witness), w), nb.witness);
  if (shortlex_less(na.word, nb.word)) return {nb.word, na.word, inverse(d)};
  return {na.word, nb.word, d};
}

// Proper overlaps: a suffix of x.lhs equals a prefix of y.lhs.
void critical_pairs(const Rule& x, const Rule& y, std::vector<Equation>& out) {
  const std::size_t nx = x.lhs.size();
  const std::size_t ny = y.lhs.size();
  for (std::size_t k = 1; k < nx && k < ny; ++k) {
    if (!std::equal(x.lhs.end() - static_cast<long>(k), x.lhs.end(), y.lhs.begin())) continue;
    EdgeWord y_tail = slice(y.lhs, k, ny);
    EdgeWord x_head = slice(x.lhs, 0, nx - k);
    EdgeWord left = concat({&x.rhs, &y_tail});
    EdgeWord right = concat({&x_head, &y.rhs});
    ForestDiagram via_x = sum(x.witness, ForestDiagram::identity(static_cast<int>(ny - k)));
    ForestDiagram via_y = sum(ForestDiagram::identity(static_cast<int>(nx - k)), y.witness);
    out.push_back({std::move(left), std::move(right), compose(inverse(via_x), via_y)});
  }
}

// Inclusions: y.lhs occurs inside x.lhs (y distinct from x).
void inclusion_pairs(const Rule& x, const Rule& y, std::vector<Equation>& out) {
  if (y.lhs.size() > x.lhs.size()) return;
  for (std::size_t at = 0; at + y.lhs.size() <= x.lhs.size(); ++at) {
    if (!occurs_at(x.lhs, y.lhs, at)) continue;
    EdgeWord head = slice(x.lhs, 0, at);
    EdgeWord tail = slice(x.lhs, at + y.lhs.size(), x.lhs.size());
    EdgeWord right = concat({&head, &y.rhs, &tail});
    ForestDiagram via_y = step_witness(at, y.lhs.size(), x.lhs.size(), y.witness);
    out.push_back({x.rhs, std::move(right), compose(inverse(x.witness), via_y)});
  }
}

}  // namespace

bool shortlex_less(const EdgeWord& a, const EdgeWord& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::vector<Rule> presentation(const CoreAutomaton& core) {
  std::vector<Rule> rules;
  ForestDiagram cell =
      ForestDiagram::from_pairs(2, 1, {{{0, ""}, {0, "0"}}, {{1, ""}, {0, "1"}}});
  for (const Cell& c : core.cells()) rules.push_back({{c.left, c.right}, {c.top}, cell});
  return rules;
}

Normalized normalize(const std::vector<Rule>& rules, const EdgeWord& w) {
  Normalized out{w, ForestDiagram::identity(static_cast<int>(w.size()))};
  std::vector<std::size_t> order(rules.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rules[a].lhs.size() < rules[b].lhs.size();
  });
  for (;;) {
    const Rule* hit = nullptr;
    std::size_t at = 0;
    for (std::size_t end = 1; end <= out.word.size() && hit == nullptr; ++end) {
      for (std::size_t i : order) {
        const Rule& r = rules[i];
        if (r.lhs.size() > end) break;
        if (occurs_at(out.word, r.lhs, end - r.lhs.size())) {
          hit = &r;
          at = end - r.lhs.size();
          break;
        }
      }
    }
    if (hit == nullptr) return out;
    out.witness = compose(out.witness, step_witness(at, hit->lhs.size(), out.word.size(), hit->witness));
    EdgeWord head = slice(out.word, 0, at);
    EdgeWord tail = slice(out.word, at + hit->lhs.size(), out.word.size());
    out.word = concat({&head, &hit->rhs, &tail});
  }
}

Normalized normalize(const RewriteSystem& rs, const EdgeWord& w) { return normalize(rs.rules, w); }

RewriteSystem complete(const std::vector<Rule>& rules, const Budget& budget) {
  RewriteSystem rs;
  std::deque<Equation> queue;
  for (const auto& r : rules) queue.push_back({r.lhs, r.rhs, r.witness});
  std::size_t additions = 0;
  while (!queue.empty()) {
    Equation eq = std::move(queue.front());
    queue.pop_front();
    Normalized na = normalize(rs.rules, eq.a);
    Normalized nb = normalize(rs.rules, eq.b);
    if (na.word == nb.word) continue;
    Rule rule = oriented(std::move(na), std::move(nb), eq.witness);
    if (rule.lhs.size() > budget.max_word_length || ++additions > budget.max_additions) {
      rs.status = CompletionStatus::budget_exceeded;
      return rs;
    }
    // Interreduce against the new rule.
    std::vector<Rule> kept;
    for (auto& old : rs.rules) {
      if (contains(old.lhs, rule.lhs)) {
        queue.push_back({old.lhs, old.rhs, old.witness});
      } else {
        kept.push_back(std::move(old));
      }
    }
    kept.push_back(rule);
    for (auto& old : kept) {
      if (!contains(old.rhs, rule.lhs)) continue;
      Normalized n = normalize(kept, old.rhs);
      old.witness = compose(old.witness, n.witness);
      old.rhs = std::move(n.word);
    }
    rs.rules = std::move(kept);
    if (rs.rules.size() > budget.max_rules) {
      rs.status = CompletionStatus::budget_exceeded;
      return rs;
    }
    std::vector<Equation> pairs;
    const Rule& added = rs.rules.back();
    for (const auto& other : rs.rules) {
      critical_pairs(added, other, pairs);
      if (&other != &added) critical_pairs(other, added, pairs);
    }
    for (auto& p : pairs) queue.push_back(std::move(p));
  }
  return rs;
}

bool is_locally_confluent(const std::vector<Rule>& rules) {
  std::vector<Equation> pairs;
  for (const auto& x : rules) {
    for (const auto& y : rules) {
      critical_pairs(x, y, pairs);
      if (&x != &y) inclusion_pairs(x, y, pairs);
    }
  }
  for (const auto& p : pairs) {
    if (normalize(rules, p.a).word != normalize(rules, p.b).word) return false;
  }
  return true;
}

std::optional<ForestDiagram> derivation_search(const std::vector<Rule>& rules, const EdgeWord& from,
                                               const EdgeWord& to, std::size_t max_length,
                                               std::size_t max_words) {
  struct Node {
    EdgeWord word;
    int parent;
    ForestDiagram step;  // parent word to this word
  };
  std::vector<Node> nodes{{from, -1, ForestDiagram::identity(static_cast<int>(from.size()))}};
  std::set<EdgeWord> seen{from};
  const auto path_to = [&](int n) {
    std::vector<int> chain;
    for (; n > 0; n = nodes[n].parent) chain.push_back(n);
    ForestDiagram d = ForestDiagram::identity(static_cast<int>(from.size()));
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) d = compose(d, nodes[*it].step);
    return d;
  };
  if (from == to) return path_to(0);
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    const EdgeWord w = nodes[head].word;
    for (const auto& r : rules) {
      for (bool forward : {true, false}) {
        const EdgeWord& pattern = forward ? r.lhs : r.rhs;
        const EdgeWord& replacement = forward ? r.rhs : r.lhs;
        if (w.size() - pattern.size() + replacement.size() > max_length) continue;
        for (std::size_t at = 0; at + pattern.size() <= w.size(); ++at) {
          if (!occurs_at(w, pattern, at)) continue;
          EdgeWord head_part = slice(w, 0, at);
          EdgeWord tail = slice(w, at + pattern.size(), w.size());
          EdgeWord next = concat({&head_part, &replacement, &tail});
          if (!seen.insert(next).second) continue;
          ForestDiagram step = step_witness(at, r.lhs.size(), forward ? w.size() : next.size(), r.witness);
          if (!forward) step = inverse(step);
          nodes.push_back({std::move(next), static_cast<int>(head), std::move(step)});
          if (nodes.back().word == to) return path_to(static_cast<int>(nodes.size()) - 1);
          if (nodes.size() >= max_words) return std::nullopt;
        }
      }
    }
  }
  return std::nullopt;
}

bool witness_valid(const CoreAutomaton& core, const EdgeWord& from, const EdgeWord& to,
                   const ForestDiagram& witness) {
  if (witness.domain_arity() != static_cast<int>(from.size()) ||
      witness.range_arity() != static_cast<int>(to.size())) {
    return false;
  }
  for (const auto& p : witness.pairs()) {
    auto a = trace(core, p.domain.word, from[p.domain.root]);
    auto b = trace(core, p.range.word, to[p.range.root]);
    if (!a || !b || *a != *b) return false;
  }
  return true;
}

std::map<int, BoundaryPaths> reduced_boundary_paths(const CoreAutomaton& core,
                                                    const RewriteSystem& rs) {
  if (!rs.complete()) throw PreconditionError("boundary paths need a complete rewriting system");
  std::vector<std::vector<int>> out_edges(core.vertex_count());
  for (int e = 0; e < core.edge_count(); ++e) out_edges[core.iota(e)].push_back(e);
  // Shortest 1-path between two vertices, smallest edge ids first.
  const auto path = [&](int from, int to) {
    std::vector<int> via(core.vertex_count(), -2);
    via[from] = -1;
    std::deque<int> queue{from};
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int e : out_edges[x]) {
        if (via[core.tau(e)] != -2) continue;
        via[core.tau(e)] = e;
        queue.push_back(core.tau(e));
      }
    }
    if (via[to] == -2) throw std::logic_error("vertex unreachable by a 1-path");
    EdgeWord w;
    for (int x = to; via[x] >= 0; x = core.iota(via[x])) w.push_back(via[x]);
    std::reverse(w.begin(), w.end());
    return w;
  };
  std::map<int, BoundaryPaths> out;
  for (int x : core.inner_vertices()) {
    out[x] = {normalize(rs, path(core.initial_vertex(), x)).word,
              normalize(rs, path(x, core.terminal_vertex())).word};
  }
  return out;
}

std::vector<GenTuple> gen_tuples(const CoreAutomaton& core, const RewriteSystem& rs) {
  auto boundary = reduced_boundary_paths(core, rs);
  std::vector<GenTuple> out;
  for (const auto& rule : rs.rules) {
    bool path = !rule.lhs.empty();
    for (std::size_t i = 0; path && i + 1 < rule.lhs.size(); ++i) {
      path = core.tau(rule.lhs[i]) == core.iota(rule.lhs[i + 1]);
    }
    if (!path) continue;
    int start = core.iota(rule.lhs.front());
    int end = core.tau(rule.lhs.back());
    EdgeWord u = start == core.initial_vertex() ? EdgeWord{} : boundary.at(start).left;
    EdgeWord v = end == core.terminal_vertex() ? EdgeWord{} : boundary.at(end).right;
    out.push_back({std::move(u), rule, std::move(v)});
  }
  return out;
}

Element generator_of(const CoreAutomaton& core, const RewriteSystem& rs, const GenTuple& t) {
  (void)core;
  Normalized base = normalize(rs, EdgeWord{0});
  EdgeWord top = concat({&t.u, &t.rule.lhs, &t.v});
  EdgeWord bottom = concat({&t.u, &t.rule.rhs, &t.v});
  Normalized a = normalize(rs, top);
  Normalized b = normalize(rs, bottom);
  if (a.word != base.word || b.word != base.word) {
    throw std::logic_error("generator tuple does not normalize to the distinguished edge");
  }
  ForestDiagram step = step_witness(t.u.size(), t.rule.lhs.size(), top.size(), t.rule.witness);
  ForestDiagram d = compose(inverse(a.witness), compose(step, b.witness));
  d = compose(base.witness, compose(d, inverse(base.witness)));
  return d.to_element();
}

std::vector<Element> closure_generators(const CoreAutomaton& core, const RewriteSystem& rs) {
  std::vector<Element> out;
  std::set<Element> seen;
  for (const auto& t : gen_tuples(core, rs)) {
    Element g = generator_of(core, rs, t);
    if (g.is_identity() || !seen.insert(g).second) continue;
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<Element> prune_generators(std::vector<Element> generators, const CoreAutomaton& target) {
  for (std::size_t i = generators.size(); i-- > 0;) {
    std::vector<Element> rest = generators;
    rest.erase(rest.begin() + static_cast<long>(i));
    CoreAutomaton c = build_core(rest);
    if (same_structure(c, target) && accepts(c, generators[i])) generators = std::move(rest);
  }
  return generators;
}

namespace {

struct Flanks {
  std::vector<BinaryWord> left;   // left siblings, top down
  std::vector<BinaryWord> right;  // right siblings, bottom up
};

Flanks flanks_of(const BinaryWord& u) {
  Flanks f;
  for (std::size_t i = 0; i < u.size(); ++i) {
    BinaryWord sibling = u.substr(0, i) + (u[i] == '0' ? '1' : '0');
    (u[i] == '1' ? f.left : f.right).push_back(std::move(sibling));
  }
  std::reverse(f.right.begin(), f.right.end());
  return f;
}

EdgeWord traced(const CoreAutomaton& core, const std::vector<BinaryWord>& words) {
  EdgeWord out;
  for (const auto& w : words) {
    auto e = trace(core, w);
    if (!e) throw PreconditionError("sibling branch " + w + " is not traceable");
    out.push_back(*e);
  }
  return out;
}

// The tree diagram from the root down to the leaves beside u and u itself.
ForestDiagram tree_diagram(const BinaryWord& u, const Flanks& f) {
  std::vector<ForestPair> pairs;
  int j = 0;
  for (const auto& w : f.left) pairs.push_back({{0, w}, {j++, ""}});
  pairs.push_back({{0, u}, {j++, ""}});
  for (const auto& w : f.right) pairs.push_back({{0, w}, {j++, ""}});
  return ForestDiagram::from_pairs(1, j, std::move(pairs));
}

// A diagram between two words equal in the semigroup, or nothing if they
// could not be shown equal.
std::optional<ForestDiagram> bridge(const RewriteSystem& rs, const std::vector<Rule>& presentation_rules,
                                    const EdgeWord& a, const EdgeWord& b, const Budget& budget) {
  Normalized na = normalize(rs, a);
  Normalized nb = normalize(rs, b);
  if (na.word == nb.word) return compose(na.witness, inverse(nb.witness));
  if (rs.complete()) return std::nullopt;
  return derivation_search(presentation_rules, a, b, budget.max_word_length);
}

}  // namespace

Element witness_pair(const CoreAutomaton& core, const RewriteSystem& rs, const BinaryWord& u,
                     const BinaryWord& v) {
  auto eu = trace(core, u);
  auto ev = trace(core, v);
  if (!eu || !ev || *eu != *ev) throw PreconditionError("branches " + u + " and " + v + " end on different edges");
  Flanks fu = flanks_of(u);
  Flanks fv = flanks_of(v);
  const auto equal_in_s = [&](const EdgeWord& a, const EdgeWord& b) {
    auto d = bridge(rs, presentation(core), a, b, Budget{});
    if (!d) throw PreconditionError("flanking words of " + u + " and " + v + " differ in the semigroup");
    return *d;
  };
  ForestDiagram left = equal_in_s(traced(core, fu.left), traced(core, fv.left));
  ForestDiagram right = equal_in_s(traced(core, fu.right), traced(core, fv.right));
  ForestDiagram middle = sum(sum(left, ForestDiagram::identity(1)), right);
  return compose(compose(tree_diagram(u, fu), middle), inverse(tree_diagram(v, fv))).to_element();
}

const char* to_string(Answer a) {
  switch (a) {
    case Answer::yes:
      return "yes";
    case Answer::no:
      return "no";
    case Answer::unknown:
      return "unknown";
  }
  return "unknown";
}

Answer is_core_automaton(const LabeledTree& tree, const Budget& budget) {
  if (tree.nodes.empty()) throw std::invalid_argument("empty tree");
  std::map<std::string, int> inner_count;
  std::map<std::string, int> label_count;
  for (const auto& n : tree.nodes) {
    ++label_count[n.label];
    if (!n.is_leaf() && ++inner_count[n.label] > 1) {
      throw std::invalid_argument("label " + n.label + " is repeated on inner vertices");
    }
  }
  std::set<std::pair<std::string, std::string>> bottoms;
  for (const auto& [top, left, right] : tree.carets()) {
    if (!bottoms.insert({left, right}).second) return Answer::no;
  }
  CoreAutomaton core = core_from_tree(tree);

  // Brother leaves: one of them must share its label with another vertex.
  for (const auto& n : tree.nodes) {
    if (n.is_leaf()) continue;
    const auto& l = tree.nodes[n.left];
    const auto& r = tree.nodes[n.right];
    if (l.is_leaf() && r.is_leaf() && label_count[l.label] < 2 && label_count[r.label] < 2) {
      return Answer::no;
    }
  }

  std::vector<Rule> rules = presentation(core);
  RewriteSystem rs = complete(rules, budget);
  auto paths = tree.paths();
  std::map<std::string, std::size_t> first;
  bool unknown = false;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    auto [it, fresh] = first.try_emplace(tree.nodes[i].label, i);
    if (fresh) continue;
    Flanks fu = flanks_of(paths[it->second]);
    Flanks fv = flanks_of(paths[i]);
    for (auto [a, b] : {std::pair{traced(core, fu.left), traced(core, fv.left)},
                        std::pair{traced(core, fu.right), traced(core, fv.right)}}) {
      if (normalize(rs, a).word == normalize(rs, b).word) continue;
      if (rs.complete()) return Answer::no;
      if (!derivation_search(rules, a, b, budget.max_word_length)) unknown = true;
    }
  }
  return unknown ? Answer::unknown : Answer::yes;
}

EdgeWord parse_edge_word(const CoreAutomaton& core, std::string_view text) {
  std::istringstream in{std::string(text)};
  EdgeWord w;
  std::string token;
  while (in >> token) {
    auto e = core.edge_named(token);
    if (!e) throw ParseError("unknown edge name " + token);
    w.push_back(*e);
  }
  return w;
}

std::string format_edge_word(const CoreAutomaton& core, const EdgeWord& w) {
  std::string out;
  for (int e : w) {
    if (!out.empty()) out += ' ';
    out += core.name(e);
  }
  return out;
}

std::string format_rules(const CoreAutomaton& core, const std::vector<Rule>& rules) {
  std::string out;
  for (const auto& r : rules) {
    out += format_edge_word(core, r.lhs) + " -> " + format_edge_word(core, r.rhs) + '\n';
  }
  return out;
}

}  // namespace thompson
