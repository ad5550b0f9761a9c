#include "thompson/core.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace thompson {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Makes `child` point at `root`; both must be representatives.
  void attach(int child, int root) { parent_[child] = root; }

  int unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[b] = a;
    return a;
  }

 private:
  std::vector<int> parent_;
};

// Worklist folding over union-find on edges. A cell is re-examined whenever
// one of its edges is merged.
class Folder {
 public:
  Folder(int edge_count, std::vector<Cell> cells, const FoldOptions& options)
      : sets_(edge_count),
        cells_(std::move(cells)),
        alive_(cells_.size(), true),
        incident_(edge_count),
        type2_(options.type2) {
    if (options.shuffle_seed) rng_.emplace(*options.shuffle_seed);
    for (int c = 0; c < static_cast<int>(cells_.size()); ++c) {
      for (int e : {cells_[c].top, cells_[c].left, cells_[c].right}) incident_[e].push_back(c);
      work_.push_back(c);
    }
    if (rng_) std::shuffle(work_.begin(), work_.end(), *rng_);
  }

  void run() {
    while (!work_.empty()) {
      std::size_t pick = work_.size() - 1;
      if (rng_) pick = std::uniform_int_distribution<std::size_t>(0, work_.size() - 1)(*rng_);
      int c = work_[pick];
      work_[pick] = work_.back();
      work_.pop_back();
      process(c);
    }
  }

  int find(int e) { return sets_.find(e); }

  std::vector<Cell> live_cells() {
    std::set<Cell> out;
    for (std::size_t c = 0; c < cells_.size(); ++c) {
      if (alive_[c]) out.insert(canonical(static_cast<int>(c)));
    }
    return {out.begin(), out.end()};
  }

 private:
  Cell canonical(int c) {
    const Cell& k = cells_[c];
    return {find(k.top), find(k.left), find(k.right)};
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (incident_[a].size() < incident_[b].size()) std::swap(a, b);
    sets_.attach(b, a);
    for (int c : incident_[b]) {
      if (alive_[c]) work_.push_back(c);
    }
    incident_[a].insert(incident_[a].end(), incident_[b].begin(), incident_[b].end());
    incident_[b].clear();
    incident_[b].shrink_to_fit();
  }

  void process(int c) {
    if (!alive_[c]) return;
    Cell k = canonical(c);
    if (auto it = by_top_.find(k.top); it != by_top_.end() && it->second != c && alive_[it->second]) {
      Cell o = canonical(it->second);
      if (o.top == k.top) {
        alive_[c] = false;
        unite(k.left, o.left);
        unite(k.right, o.right);
        return;
      }
    }
    by_top_[k.top] = c;
    if (!type2_) return;
    std::pair<int, int> bottom{k.left, k.right};
    if (auto it = by_bottom_.find(bottom);
        it != by_bottom_.end() && it->second != c && alive_[it->second]) {
      Cell o = canonical(it->second);
      if (o.left == k.left && o.right == k.right) {
        alive_[c] = false;
        unite(k.top, o.top);
        return;
      }
    }
    by_bottom_[bottom] = c;
  }

  DisjointSets sets_;
  std::vector<Cell> cells_;
  std::vector<bool> alive_;
  std::vector<std::vector<int>> incident_;
  std::unordered_map<int, int> by_top_;
  std::map<std::pair<int, int>, int> by_bottom_;
  std::vector<int> work_;
  bool type2_;
  std::optional<std::mt19937_64> rng_;
};

// The bouquet: each generator's domain tree over its range tree, both roots
// glued to the distinguished edge 0 and leaf i of one glued to leaf i of the other.
std::pair<int, std::vector<Cell>> bouquet(const std::vector<Element>& generators) {
  int next = 1;
  std::vector<Cell> cells;
  for (const auto& g : generators) {
    std::map<std::string, int> dom{{"", 0}};
    std::map<std::string, int> ran{{"", 0}};
    for (const auto& p : g.pairs()) {
      int leaf = p.domain.empty() ? 0 : next++;
      dom[p.domain] = leaf;
      ran[p.range] = leaf;
    }
    const auto grow = [&](std::map<std::string, int>& tree, bool domain) {
      for (const auto& p : g.pairs()) {
        const std::string& w = domain ? p.domain : p.range;
        for (std::size_t n = 1; n < w.size(); ++n) {
          auto [it, fresh] = tree.try_emplace(w.substr(0, n), next);
          if (fresh) ++next;
        }
      }
      for (const auto& [w, id] : tree) {
        auto l = tree.find(w + '0');
        if (l != tree.end()) cells.push_back({id, l->second, tree.at(w + '1')});
      }
    };
    grow(dom, true);
    grow(ran, false);
  }
  return {next, std::move(cells)};
}

CoreAutomaton fold(const std::vector<Element>& generators, const FoldOptions& options) {
  auto [edge_count, cells] = bouquet(generators);
  Folder folder(edge_count, std::move(cells), options);
  folder.run();
  std::vector<Cell> live = folder.live_cells();
  // Compact representatives to 0..k-1 before handing over.
  std::map<int, int> compact;
  int root = folder.find(0);
  compact[root] = 0;
  for (const auto& c : live) {
    for (int e : {c.top, c.left, c.right}) compact.try_emplace(e, static_cast<int>(compact.size()));
  }
  for (auto& c : live) c = {compact[c.top], compact[c.left], compact[c.right]};
  return CoreAutomaton(static_cast<int>(compact.size()), std::move(live), 0);
}

}  // namespace

CoreAutomaton::CoreAutomaton(int edge_count, std::vector<Cell> cells, int distinguished,
                             std::vector<std::string> names) {
  if (edge_count <= 0 || distinguished < 0 || distinguished >= edge_count) {
    throw std::invalid_argument("automaton needs a distinguished edge");
  }
  std::vector<int> by_top(edge_count, -1);
  for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
    const Cell& c = cells[i];
    for (int e : {c.top, c.left, c.right}) {
      if (e < 0 || e >= edge_count) throw std::invalid_argument("cell refers to unknown edge");
    }
    if (by_top[c.top] >= 0) {
      if (cells[by_top[c.top]] == c) continue;
      throw std::invalid_argument("two cells share a top edge");
    }
    by_top[c.top] = i;
  }
  // Canonical breadth-first renumbering.
  std::vector<int> order;
  std::vector<int> renum(edge_count, -1);
  renum[distinguished] = 0;
  order.push_back(distinguished);
  for (std::size_t head = 0; head < order.size(); ++head) {
    int e = order[head];
    if (by_top[e] < 0) continue;
    for (int child : {cells[by_top[e]].left, cells[by_top[e]].right}) {
      if (renum[child] < 0) {
        renum[child] = static_cast<int>(order.size());
        order.push_back(child);
      }
    }
  }
  if (static_cast<int>(order.size()) != edge_count) {
    throw std::invalid_argument("some edge is unreachable from the distinguished edge");
  }
  cell_index_.assign(edge_count, -1);
  for (int e : order) {
    if (by_top[e] < 0) continue;
    const Cell& c = cells[by_top[e]];
    cell_index_[renum[e]] = static_cast<int>(cells_.size());
    cells_.push_back({renum[c.top], renum[c.left], renum[c.right]});
  }
  // Vertices: endpoints glued by cell coherence.
  DisjointSets ends(2 * static_cast<std::size_t>(edge_count));
  const auto start = [](int e) { return 2 * e; };
  const auto end = [](int e) { return 2 * e + 1; };
  for (const Cell& c : cells_) {
    ends.unite(start(c.top), start(c.left));
    ends.unite(end(c.left), start(c.right));
    ends.unite(end(c.right), end(c.top));
  }
  std::map<int, int> vertex_ids;
  iota_.resize(edge_count);
  tau_.resize(edge_count);
  const auto vertex = [&](int x) {
    auto [it, fresh] = vertex_ids.try_emplace(ends.find(x), static_cast<int>(vertex_ids.size()));
    return it->second;
  };
  for (int e = 0; e < edge_count; ++e) {
    iota_[e] = vertex(start(e));
    tau_[e] = vertex(end(e));
  }
  vertex_count_ = static_cast<int>(vertex_ids.size());
  names_.resize(edge_count);
  for (int old = 0; old < edge_count; ++old) {
    int e = renum[old];
    names_[e] = old < static_cast<int>(names.size()) ? names[old] : "e" + std::to_string(e);
  }
}

const Cell* CoreAutomaton::cell_of(int edge) const {
  int i = cell_index_[edge];
  return i < 0 ? nullptr : &cells_[i];
}

std::vector<int> CoreAutomaton::inner_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < vertex_count_; ++v) {
    if (is_inner_vertex(v)) out.push_back(v);
  }
  return out;
}

std::vector<int> CoreAutomaton::inner_edges() const {
  std::vector<int> out;
  for (int e = 0; e < edge_count(); ++e) {
    if (is_inner_edge(e)) out.push_back(e);
  }
  return out;
}

std::optional<int> CoreAutomaton::edge_named(std::string_view name) const {
  for (int e = 0; e < edge_count(); ++e) {
    if (names_[e] == name) return e;
  }
  return std::nullopt;
}

bool CoreAutomaton::is_folded() const {
  std::set<std::pair<int, int>> bottoms;
  for (const Cell& c : cells_) {
    if (!bottoms.insert({c.left, c.right}).second) return false;
  }
  return true;
}

CoreAutomaton build_core(const std::vector<Element>& generators, const FoldOptions& options) {
  return fold(generators, options);
}

CoreAutomaton build_semicore(const std::vector<Element>& generators, const FoldOptions& options) {
  FoldOptions o = options;
  o.type2 = false;
  return fold(generators, o);
}

std::vector<int> projection(const CoreAutomaton& from, const CoreAutomaton& to) {
  std::vector<int> image(from.edge_count(), -1);
  image[0] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int e = queue.front();
    queue.pop_front();
    const Cell* c = from.cell_of(e);
    if (c == nullptr) continue;
    const Cell* d = to.cell_of(image[e]);
    if (d == nullptr) throw std::invalid_argument("no label-preserving map between automata");
    for (auto [x, y] : {std::pair{c->left, d->left}, std::pair{c->right, d->right}}) {
      if (image[x] < 0) {
        image[x] = y;
        queue.push_back(x);
      } else if (image[x] != y) {
        throw std::invalid_argument("no label-preserving map between automata");
      }
    }
  }
  return image;
}

std::pair<std::size_t, int> trace_prefix(const CoreAutomaton& core, std::string_view word,
                                         int from) {
  int e = from;
  std::size_t i = 0;
  for (; i < word.size(); ++i) {
    const Cell* c = core.cell_of(e);
    if (c == nullptr) break;
    e = word[i] == '0' ? c->left : c->right;
  }
  return {i, e};
}

std::optional<int> trace(const CoreAutomaton& core, std::string_view word, int from) {
  auto [n, e] = trace_prefix(core, word, from);
  if (n != word.size()) return std::nullopt;
  return e;
}

bool accepts(const CoreAutomaton& core, const Element& a) {
  for (const auto& p : a.pairs()) {
    auto u = trace(core, p.domain);
    auto v = trace(core, p.range);
    if (!u || !v || *u != *v) return false;
  }
  return true;
}

GammaGraph gamma_graph(const CoreAutomaton& core) {
  GammaGraph g;
  for (int e = 0; e < core.edge_count(); ++e) {
    if (core.iota(e) == core.initial_vertex()) continue;
    g.vertices.push_back(e);
    if (const Cell* c = core.cell_of(e)) g.arcs.emplace_back(e, c->left);
  }
  return g;
}

int weak_components(const std::vector<int>& vertices, const std::vector<std::pair<int, int>>& arcs) {
  std::map<int, int> index;
  for (int v : vertices) index.try_emplace(v, static_cast<int>(index.size()));
  DisjointSets sets(index.size());
  int components = static_cast<int>(index.size());
  for (auto [a, b] : arcs) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end() || ib == index.end()) continue;
    int ra = sets.find(ia->second);
    int rb = sets.find(ib->second);
    if (ra != rb) {
      sets.unite(ra, rb);
      --components;
    }
  }
  return components;
}

OrbitCount dyadic_orbit_count(const CoreAutomaton& core) {
  for (int e = 0; e < core.edge_count(); ++e) {
    if (!core.tops_cell(e)) return OrbitCount::infinitely_many();
  }
  GammaGraph g = gamma_graph(core);
  int components = weak_components(g.vertices, g.arcs);
  int inner = static_cast<int>(core.inner_vertices().size());
  if (components != inner) {
    throw std::logic_error("Gamma components disagree with the inner vertex count");
  }
  return OrbitCount::finite(components);
}

bool same_dyadic_orbit(const CoreAutomaton& core, std::string_view w1, std::string_view w2) {
  for (auto w : {w1, w2}) {
    if (w.empty() || w.back() != '1' || !is_binary_word(w)) {
      throw std::invalid_argument("dyadic names are binary words ending in 1");
    }
  }
  auto [n1, e1] = trace_prefix(core, w1);
  auto [n2, e2] = trace_prefix(core, w2);
  bool full1 = n1 == w1.size();
  bool full2 = n2 == w2.size();
  if (!full1 && !full2) {
    return e1 == e2 && std::equal(w1.begin() + static_cast<long>(n1), w1.end(),
                                  w2.begin() + static_cast<long>(n2), w2.end());
  }
  if (full1 != full2) return false;
  // Both traceable: do the 0-extensions meet? The walk e ↦ left(cell(e)) is
  // deterministic, so |edges| steps decide it.
  std::set<int> seen;
  int e = e1;
  for (int step = 0; step <= core.edge_count(); ++step) {
    seen.insert(e);
    const Cell* c = core.cell_of(e);
    if (c == nullptr) break;
    e = c->left;
  }
  e = e2;
  for (int step = 0; step <= core.edge_count(); ++step) {
    if (seen.count(e) != 0) return true;
    const Cell* c = core.cell_of(e);
    if (c == nullptr) break;
    e = c->left;
  }
  return false;
}

bool contains_derived_in_closure(const CoreAutomaton& core) {
  for (int e = 0; e < core.edge_count(); ++e) {
    if (!core.tops_cell(e)) return false;
  }
  return core.inner_edges().size() == 1;
}

GammaGraph gamma_s_graph(const CoreAutomaton& core, std::string_view s) {
  GammaGraph g;
  std::set<int> inside;
  for (int e = 0; e < core.edge_count(); ++e) {
    if (core.iota(e) != core.initial_vertex()) {
      g.vertices.push_back(e);
      inside.insert(e);
    }
  }
  for (int e : g.vertices) {
    auto end = trace(core, s, e);
    if (end && inside.count(*end) != 0) g.arcs.emplace_back(e, *end);
  }
  return g;
}

bool transitive_on_period_orbit(const CoreAutomaton& core, std::string_view s) {
  if (!is_binary_word(s) || s.find('0') == std::string_view::npos ||
      s.find('1') == std::string_view::npos) {
    throw std::invalid_argument("a period must contain both digits");
  }
  for (int e = 0; e < core.edge_count(); ++e) {
    if (!core.tops_cell(e)) return false;
  }
  GammaGraph g = gamma_s_graph(core, s);
  return weak_components(g.vertices, g.arcs) == 1;
}

std::string LabeledTree::str() const {
  std::string out;
  const auto emit = [&](const auto& self, int n) -> void {
    out += nodes[n].label;
    if (nodes[n].is_leaf()) return;
    out += '(';
    self(self, nodes[n].left);
    out += ',';
    self(self, nodes[n].right);
    out += ')';
  };
  if (!nodes.empty()) emit(emit, 0);
  return out;
}

LabeledTree LabeledTree::parse(std::string_view text) {
  LabeledTree t;
  std::size_t pos = 0;
  const auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  const auto fail = [&](const char* what) {
    throw ParseError(std::string(what) + " at offset " + std::to_string(pos) + " in tree \"" +
                     std::string(text) + "\"");
  };
  const auto node = [&](const auto& self) -> int {
    skip();
    std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                 text[pos] == '_' || text[pos] == '\'')) {
      ++pos;
    }
    if (pos == start) fail("expected a label");
    int id = static_cast<int>(t.nodes.size());
    t.nodes.push_back({std::string(text.substr(start, pos - start))});
    skip();
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      int l = self(self);
      skip();
      if (pos >= text.size() || text[pos] != ',') fail("expected ','");
      ++pos;
      int r = self(self);
      skip();
      if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
      ++pos;
      t.nodes[id].left = l;
      t.nodes[id].right = r;
    }
    return id;
  };
  node(node);
  skip();
  if (pos != text.size()) fail("trailing characters");
  return t;
}

std::vector<std::tuple<std::string, std::string, std::string>> LabeledTree::carets() const {
  std::set<std::tuple<std::string, std::string, std::string>> out;
  for (const auto& n : nodes) {
    if (!n.is_leaf()) out.insert({n.label, nodes[n.left].label, nodes[n.right].label});
  }
  return {out.begin(), out.end()};
}

std::vector<BinaryWord> LabeledTree::paths() const {
  std::vector<BinaryWord> out(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].is_leaf()) continue;
    out[nodes[i].left] = out[i] + '0';
    out[nodes[i].right] = out[i] + '1';
  }
  return out;
}

LabeledTree minimal_tree(const CoreAutomaton& core) {
  LabeledTree t;
  std::vector<int> edge_of{0};
  t.nodes.push_back({core.name(0)});
  std::vector<bool> expanded(core.edge_count(), false);
  for (std::size_t head = 0; head < t.nodes.size(); ++head) {
    int e = edge_of[head];
    const Cell* c = core.cell_of(e);
    if (c == nullptr || expanded[e]) continue;
    expanded[e] = true;
    int base = static_cast<int>(t.nodes.size());
    t.nodes[head].left = base;
    t.nodes[head].right = base + 1;
    for (int child : {c->left, c->right}) {
      t.nodes.push_back({core.name(child)});
      edge_of.push_back(child);
    }
  }
  return t;
}

CoreAutomaton core_from_tree(const LabeledTree& tree) {
  if (tree.nodes.empty()) throw std::invalid_argument("empty tree");
  std::map<std::string, int> id;
  std::vector<std::string> names;
  const auto edge = [&](const std::string& label) {
    auto [it, fresh] = id.try_emplace(label, static_cast<int>(names.size()));
    if (fresh) names.push_back(label);
    return it->second;
  };
  edge(tree.nodes[0].label);
  std::map<int, Cell> by_top;
  std::map<std::pair<int, int>, int> by_bottom;
  std::vector<Cell> cells;
  for (const auto& n : tree.nodes) {
    if (n.is_leaf()) continue;
    Cell c{edge(n.label), edge(tree.nodes[n.left].label), edge(tree.nodes[n.right].label)};
    auto [it, fresh] = by_top.try_emplace(c.top, c);
    if (!fresh) {
      if (it->second == c) {
        throw std::invalid_argument("label " + n.label + " is repeated on inner vertices");
      }
      throw std::invalid_argument("carets with top " + n.label + " disagree");
    }
    auto [jt, fresh_bottom] = by_bottom.try_emplace({c.left, c.right}, c.top);
    if (!fresh_bottom) {
      throw std::invalid_argument("two carets share the bottom labels of " + n.label);
    }
    cells.push_back(c);
  }
  const int n = static_cast<int>(names.size());
  return CoreAutomaton(n, std::move(cells), 0, std::move(names));
}

CoreAutomaton core_from_carets(std::string_view text) {
  std::map<std::string, int> id;
  std::vector<std::string> names;
  std::vector<Cell> cells;
  const auto edge = [&](std::string_view label) {
    auto [it, fresh] = id.try_emplace(std::string(label), static_cast<int>(names.size()));
    if (fresh) names.emplace_back(label);
    return it->second;
  };
  std::size_t pos = 0;
  const auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  const auto label = [&] {
    skip();
    std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                 text[pos] == '_' || text[pos] == '\'')) {
      ++pos;
    }
    if (start == pos) throw ParseError("expected a label in caret list");
    return text.substr(start, pos - start);
  };
  const auto expect = [&](char ch) {
    skip();
    if (pos >= text.size() || text[pos] != ch) {
      throw ParseError(std::string("expected '") + ch + "' in caret list");
    }
    ++pos;
  };
  skip();
  while (pos < text.size()) {
    int top = edge(label());
    skip();
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      int l = edge(label());
      expect(',');
      int r = edge(label());
      expect(')');
      cells.push_back({top, l, r});
    }
    skip();
  }
  if (names.empty()) throw ParseError("empty caret list");
  const int n = static_cast<int>(names.size());
  return CoreAutomaton(n, std::move(cells), 0, std::move(names));
}

}  // namespace thompson
