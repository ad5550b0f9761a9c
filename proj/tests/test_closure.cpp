#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "thompson/closure.hpp"

using namespace thompson;
using test_support::fixture;
using test_support::fixtures;

namespace {

Element P(std::string_view text) { return parse_element(text); }

const char* kFCarets = "e(f,g) f(f,h) h(h,h) g(h,g)";
const char* kBrinNavasCarets = "e(f,g) f(m,l) m(f,h) l(l,a) g(h,k) h(a,h) a(h,l) k(l,g)";

EdgeWord W(const CoreAutomaton& c, std::string_view text) { return parse_edge_word(c, text); }

// f maps the interval [u] linearly onto [v].
bool maps_branch(const Element& f, const BinaryWord& u, const BinaryWord& v) {
  mpq_class lo = oracle::binary_value(u);
  mpq_class w = oracle::width(u);
  mpq_class ratio = oracle::width(v) / w;
  for (int k = 0; k <= 16; ++k) {
    mpq_class t = lo + w * oracle::fraction(k, 16);
    if (oracle::apply(f.pairs(), t) != oracle::binary_value(v) + (t - lo) * ratio) return false;
  }
  return true;
}

// Rewrites at a random applicable position until irreducible.
EdgeWord random_strategy(const std::vector<Rule>& rules, EdgeWord w, std::mt19937_64& rng) {
  for (;;) {
    std::vector<std::pair<std::size_t, std::size_t>> sites;
    for (std::size_t r = 0; r < rules.size(); ++r) {
      const auto& lhs = rules[r].lhs;
      for (std::size_t i = 0; i + lhs.size() <= w.size(); ++i) {
        if (std::equal(lhs.begin(), lhs.end(), w.begin() + static_cast<long>(i))) sites.emplace_back(r, i);
      }
    }
    if (sites.empty()) return w;
    auto [r, i] = sites[std::uniform_int_distribution<std::size_t>(0, sites.size() - 1)(rng)];
    EdgeWord next(w.begin(), w.begin() + static_cast<long>(i));
    next.insert(next.end(), rules[r].rhs.begin(), rules[r].rhs.end());
    next.insert(next.end(), w.begin() + static_cast<long>(i + rules[r].lhs.size()), w.end());
    w = std::move(next);
  }
}

// Edge sequences e1..ek with matching consecutive endpoints.
void one_paths(const CoreAutomaton& c, int from_vertex, std::size_t max_length, EdgeWord& prefix,
               std::vector<EdgeWord>& out) {
  if (!prefix.empty()) out.push_back(prefix);
  if (prefix.size() == max_length) return;
  for (int e = 0; e < c.edge_count(); ++e) {
    if (c.iota(e) != from_vertex) continue;
    prefix.push_back(e);
    one_paths(c, c.tau(e), max_length, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

TEST_CASE("forest diagrams") {
  auto a = ForestDiagram::from_pairs(2, 1, {{{0, ""}, {0, "0"}}, {{1, ""}, {0, "1"}}});
  CHECK(a.domain_arity() == 2);
  CHECK(a.range_arity() == 1);
  CHECK(compose(a, inverse(a)).is_identity());
  CHECK(compose(inverse(a), a).is_identity());
  CHECK(sum(a, ForestDiagram::identity(1)).domain_arity() == 3);
  auto x0 = ForestDiagram::from_pairs(1, 1, {{{0, "00"}, {0, "0"}}, {{0, "01"}, {0, "10"}}, {{0, "1"}, {0, "11"}}});
  CHECK(x0.to_element() == P("x0"));
  CHECK(compose(x0, x0).to_element() == P("x0^2"));
  CHECK_THROWS(ForestDiagram::from_pairs(1, 1, {{{0, "0"}, {0, "0"}}}));
}

TEST_CASE("presentations") {
  auto f = core_from_carets(kFCarets);
  CHECK(format_rules(f, presentation(f)) == "f g -> e\nf h -> f\nh g -> g\nh h -> h\n");
  CHECK(presentation(build_core({})).empty());
  auto empty = complete({});
  CHECK(empty.complete());
  CHECK(empty.rules.empty());
}

TEST_CASE("completion and normal forms on the core of F") {
  auto f = core_from_carets(kFCarets);
  auto rs = complete(presentation(f));
  REQUIRE(rs.complete());
  CHECK(is_locally_confluent(rs.rules));
  CHECK(normalize(rs, W(f, "f g")).word == W(f, "e"));
  auto single = normalize(rs, W(f, "g"));
  CHECK(single.word == W(f, "g"));
  CHECK(single.witness.is_identity());

  auto paths = reduced_boundary_paths(f, rs);
  REQUIRE(paths.size() == 1);
  int inner = f.iota(*f.edge_named("h"));
  CHECK(paths.at(inner).left == W(f, "f"));
  CHECK(paths.at(inner).right == W(f, "g"));
  CHECK(reduced_boundary_paths(build_core({}), complete({})).empty());
  RewriteSystem partial;
  partial.status = CompletionStatus::budget_exceeded;
  CHECK_THROWS_AS(reduced_boundary_paths(f, partial), PreconditionError);
}

TEST_CASE("an idempotent edge in the core of B1") {
  auto brin_navas = core_from_carets(kBrinNavasCarets);
  REQUIRE(same_structure(brin_navas, build_core(fixture("brin_navas"))));
  auto rs = complete(presentation(brin_navas));
  CHECK(rs.complete());
  CHECK(normalize(rs, W(brin_navas, "a")).word == normalize(rs, W(brin_navas, "a a")).word);
  auto w = derivation_search(presentation(brin_navas), W(brin_navas, "a"), W(brin_navas, "a a"), 4);
  REQUIRE(w.has_value());
  CHECK(witness_valid(brin_navas, W(brin_navas, "a"), W(brin_navas, "a a"), *w));
}

TEST_CASE("closure generators") {
  CHECK(closure_generators(build_core({}), complete({})).empty());
  for (const auto& fx : fixtures()) {
    CAPTURE(fx.name);
    auto core = build_core(test_support::parse_all(fx.generators));
    auto rs = complete(presentation(core));
    REQUIRE(rs.complete());
    auto tuples = gen_tuples(core, rs);
    std::set<std::pair<EdgeWord, EdgeWord>> rules_used;
    for (const auto& t : tuples) {
      CHECK(rules_used.insert({t.rule.lhs, t.rule.rhs}).second);
      EdgeWord left = t.u;
      left.insert(left.end(), t.rule.lhs.begin(), t.rule.lhs.end());
      left.insert(left.end(), t.v.begin(), t.v.end());
      EdgeWord right = t.u;
      right.insert(right.end(), t.rule.rhs.begin(), t.rule.rhs.end());
      right.insert(right.end(), t.v.begin(), t.v.end());
      CHECK(normalize(rs, left).word == normalize(rs, right).word);
      CHECK(normalize(rs, left).word == EdgeWord{0});
    }
    auto gens = closure_generators(core, rs);
    for (const auto& g : gens) CHECK(accepts(core, g));
    CHECK(same_structure(build_core(gens), core));
  }
  auto amenable_transitive = build_core(fixture("amenable_transitive"));
  auto pruned = prune_generators(closure_generators(amenable_transitive, complete(presentation(amenable_transitive))), amenable_transitive);
  CHECK(pruned.size() == 2);
  CHECK(same_structure(build_core(pruned), amenable_transitive));
  auto maximal = build_core(fixture("maximal"));
  auto pruned_maximal = prune_generators(closure_generators(maximal, complete(presentation(maximal))), maximal);
  CHECK(pruned_maximal.size() == 3);
  CHECK(same_structure(build_core(pruned_maximal), maximal));
}

TEST_CASE("witness pairs") {
  auto f = build_core(fixture("F"));
  auto rs = complete(presentation(f));
  auto w = witness_pair(f, rs, "0", "00");
  CHECK(maps_branch(w, "0", "00"));
  CHECK(accepts(f, w));
  auto same = witness_pair(f, rs, "01", "01");
  CHECK(maps_branch(same, "01", "01"));

  auto jones = build_core(fixture("jones"));
  CHECK_THROWS_AS(witness_pair(jones, complete(presentation(jones)), "1", "01"), PreconditionError);

  std::mt19937_64 rng(51);
  for (std::string name : {"amenable_transitive", "derived_proper", "maximal", "jones"}) {
    CAPTURE(name);
    auto core = build_core(fixture(name));
    auto sys = complete(presentation(core));
    int built = 0;
    for (int i = 0; i < 200 && built < 15; ++i) {
      std::string u;
      std::string v;
      for (int k = std::uniform_int_distribution<int>(1, 5)(rng); k > 0; --k) u += rng() & 1 ? '1' : '0';
      for (int k = std::uniform_int_distribution<int>(1, 5)(rng); k > 0; --k) v += rng() & 1 ? '1' : '0';
      auto a = trace(core, u);
      if (!a || a != trace(core, v)) continue;
      CAPTURE(u);
      CAPTURE(v);
      auto e = witness_pair(core, sys, u, v);
      CAPTURE(e.str());
      CHECK(maps_branch(e, u, v));
      CHECK(accepts(core, e));
      ++built;
    }
    CHECK(built > 0);
  }
}

TEST_CASE("core automaton recognition") {
  CHECK(is_core_automaton(LabeledTree::parse("e1(e2(e2,e4),e5(e4(e12,e13(e13,e4)),e5))")) == Answer::yes);
  CHECK(is_core_automaton(LabeledTree::parse("e(f(f,h(k,k)),g(h,g))")) == Answer::no);
  CHECK(is_core_automaton(minimal_tree(build_core(fixture("F")))) == Answer::yes);
  CHECK(is_core_automaton(minimal_tree(build_core(fixture("amenable_transitive")))) == Answer::yes);
  CHECK_THROWS_AS(is_core_automaton(LabeledTree::parse("e(f(a,b),f(a,c))")), std::invalid_argument);
  CHECK(std::string(to_string(Answer::unknown)) == "unknown");
}

// Property suites.

TEST_CASE("witnesses replay over the core") {
  std::mt19937_64 rng(52);
  for (const auto& fx : fixtures()) {
    CAPTURE(fx.name);
    auto core = build_core(test_support::parse_all(fx.generators));
    auto rs = complete(presentation(core));
    REQUIRE(rs.complete());
    for (const auto& r : rs.rules) REQUIRE(witness_valid(core, r.lhs, r.rhs, r.witness));
    if (core.edge_count() < 2) continue;
    std::vector<EdgeWord> paths;
    EdgeWord prefix;
    one_paths(core, core.initial_vertex(), 5, prefix, paths);
    for (const auto& w : paths) {
      auto n = normalize(rs, w);
      REQUIRE(witness_valid(core, w, n.word, n.witness));
    }
  }
}

TEST_CASE("normalize is idempotent and strategy independent") {
  std::mt19937_64 rng(53);
  for (const auto& fx : fixtures()) {
    CAPTURE(fx.name);
    auto core = build_core(test_support::parse_all(fx.generators));
    auto rs = complete(presentation(core));
    REQUIRE(rs.complete());
    CHECK(is_locally_confluent(rs.rules));
    std::uniform_int_distribution<int> edge(0, core.edge_count() - 1);
    std::uniform_int_distribution<int> len(1, 6);
    for (int i = 0; i < 100; ++i) {
      EdgeWord w;
      for (int k = len(rng); k > 0; --k) w.push_back(edge(rng));
      auto n = normalize(rs, w);
      auto again = normalize(rs, n.word);
      REQUIRE(again.word == n.word);
      REQUIRE(again.witness.is_identity());
      REQUIRE(random_strategy(rs.rules, w, rng) == n.word);
      REQUIRE(random_strategy(rs.rules, w, rng) == n.word);
    }
  }
}

TEST_CASE("boundary paths are unique") {
  for (const auto& fx : fixtures()) {
    CAPTURE(fx.name);
    auto core = build_core(test_support::parse_all(fx.generators));
    auto rs = complete(presentation(core));
    auto bounds = reduced_boundary_paths(core, rs);
    std::vector<EdgeWord> paths;
    EdgeWord prefix;
    one_paths(core, core.initial_vertex(), 4, prefix, paths);
    for (const auto& p : paths) {
      int end = core.tau(p.back());
      if (!core.is_inner_vertex(end)) continue;
      REQUIRE(bounds.count(end) == 1);
      CHECK(normalize(rs, p).word == bounds.at(end).left);
    }
  }
}
