// Runs every acceptance criterion and prints one PASS/FAIL line for each.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "support.hpp"
#include "thompson/closure.hpp"
#include "thompson/decision.hpp"
#include "thompson/solvability.hpp"

using namespace thompson;
using test_support::fixture;
using test_support::fixtures;

namespace {

struct Criterion {
  int id;
  const char* title;
  double seconds;  // time limit
  std::function<std::string()> run;  // empty string on success, else the reason
};

#define EXPECT(cond)                       \
  do {                                     \
    if (!(cond)) return std::string(#cond); \
  } while (0)

int named(const CoreAutomaton& c, const char* name) { return *c.edge_named(name); }

std::string rejects_x1_example() {
  auto core = build_core(fixture("rejects_x1"));
  EXPECT(!accepts(core, parse_element("x1")));
  EXPECT(core.edge_count() == 6);
  EXPECT(core.cells().size() == 5);
  EXPECT(same_structure(core, core_from_carets("e1(e2,e5) e2(e2,e4) e5(e4,e5) e4(e12,e13) e13(e13,e4)")));
  return {};
}

std::string jones_orbits() {
  auto core = build_core(fixture("jones"));
  EXPECT(dyadic_orbit_count(core) == OrbitCount::finite(2));
  std::vector<std::string> words;
  for (int len = 1; len <= 6; ++len) {
    for (int bits = 0; bits < (1 << (len - 1)); ++bits) {
      std::string w;
      for (int i = len - 2; i >= 0; --i) w += (bits >> i) & 1 ? '1' : '0';
      words.push_back(w + '1');
    }
  }
  auto parity = [](const std::string& w) { return std::count(w.begin(), w.end(), '1') % 2; };
  for (const auto& a : words) {
    for (const auto& b : words) {
      if (same_dyadic_orbit(core, a, b) != (parity(a) == parity(b))) return "orbit of ." + a + " vs ." + b;
    }
  }
  return {};
}

std::string amenable_transitive_subgroup() {
  auto gens = fixture("amenable_transitive");
  auto core = build_core(gens);
  EXPECT(dyadic_orbit_count(core) == OrbitCount::finite(1));
  Lattice2 ab;
  for (const auto& g : gens) {
    auto [a, b] = abelianization(g);
    ab.insert({a, b});
  }
  EXPECT(ab.rank() == 1);
  auto rs = complete(presentation(core));
  EXPECT(rs.complete());
  auto pruned = prune_generators(closure_generators(core, rs), core);
  EXPECT(pruned.size() == 2);
  EXPECT(same_structure(build_core(pruned), core));
  return {};
}

std::string generation_verdicts() {
  EXPECT(generates_F(fixture("F")).equals_F);
  EXPECT(!generates_F(fixture("maximal")).equals_F);
  auto k = generates_F(fixture("derived_proper"));
  EXPECT(k.contains_derived);
  EXPECT(!k.equals_F);
  return {};
}

std::string solvability_verdicts() {
  auto ex = core_from_carets("e(f,g) f(f,h) g(h,g) h(a,b) a(a,c) b(c,b)");
  EXPECT(same_structure(ex, build_core(fixture("metabelian"))));
  auto pg = p_graph(ex);
  EXPECT(pg.arcs == (std::set<std::pair<int, int>>{{named(ex, "f"), named(ex, "a")}}));
  EXPECT(solvability(pg) == Solvability::with_length(2));
  EXPECT(solvability(build_core(fixture("F"))) == Solvability::not_solvable());
  EXPECT(solvability(build_core(fixture("cyclic"))) == Solvability::with_length(1));
  EXPECT(solvability(build_core({Element{}})) == Solvability::with_length(0));
  return {};
}

std::string maximal_subgroup() {
  auto gens = fixture("dyadic_transitive");
  auto core = build_core(gens);
  EXPECT(dyadic_orbit_count(core) == OrbitCount::finite(1));
  EXPECT(!generates_F(gens).equals_F);
  EXPECT(!transitive_on_period_orbit(core, "01"));
  return {};
}

std::string slope_oracle() {
  int compared = 0;
  for (const auto& fx : fixtures()) {
    auto gens = test_support::parse_all(fx.generators);
    if (!contains_derived_in_closure(build_core(gens))) continue;
    auto expected = oracle::hermite_basis(oracle::harvest_slope_pairs(gens, 6));
    if (slope_lattice(gens).basis() != expected) return "lattice mismatch on " + fx.name;
    ++compared;
  }
  EXPECT(compared >= 3);
  return {};
}

std::string property_suites() {
  for (const auto& fx : fixtures()) {
    auto gens = test_support::parse_all(fx.generators);
    auto core = build_core(gens);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      if (!same_structure(build_core(gens, {true, seed}), core)) return "folding order on " + fx.name;
    }
    for (const auto& h : gens) {
      for (const auto& alpha : dyadic_fixed_points(h)) {
        auto [f1, f2] = components_at(h, alpha);
        if (!accepts(core, f1) || !accepts(core, f2)) return "components on " + fx.name;
      }
    }
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> len(1, 8);
    for (int i = 0; i < 30; ++i) {
      Element h = test_support::random_product(rng, gens, len(rng));
      for (const auto& p : h.pairs()) {
        auto a = trace(core, p.domain);
        if (!a || a != trace(core, p.range)) return "branch trace on " + fx.name;
      }
    }
  }
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> len(0, 12);
  for (int i = 0; i < 1000; ++i) {
    Element a = test_support::random_word(rng, len(rng));
    Element b = test_support::random_word(rng, len(rng));
    Element c = test_support::random_word(rng, len(rng));
    EXPECT(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
    EXPECT(multiply(a, invert(a)).is_identity());
    EXPECT(multiply(a, Element{}) == a);
  }
  for (int i = 0; i < 200; ++i) {
    Element a = test_support::random_word(rng, 6);
    EXPECT(Element::from_pairs(test_support::random_expansion(rng, a, 8)) == a);
  }
  return {};
}

std::string rewriting() {
  auto f = build_core(fixture("F"));
  auto rs = complete(presentation(f));
  EXPECT(rs.complete());
  EXPECT(is_locally_confluent(rs.rules));
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> edge(0, f.edge_count() - 1);
  for (int i = 0; i < 200; ++i) {
    EdgeWord w;
    for (int k = 1 + i % 6; k > 0; --k) w.push_back(edge(rng));
    auto n = normalize(rs, w);
    EXPECT(witness_valid(f, w, n.word, n.witness));
  }
  auto brin_navas = core_from_carets("e(f,g) f(m,l) m(f,h) l(l,a) g(h,k) h(a,h) a(h,l) k(l,g)");
  EXPECT(same_structure(brin_navas, build_core(fixture("brin_navas"))));
  EdgeWord a = parse_edge_word(brin_navas, "a");
  EdgeWord aa = parse_edge_word(brin_navas, "a a");
  auto rb = complete(presentation(brin_navas));
  bool by_completion = rb.complete() && normalize(rb, a).word == normalize(rb, aa).word;
  auto search = derivation_search(presentation(brin_navas), a, aa, 4);
  EXPECT(by_completion || search.has_value());
  if (search) EXPECT(witness_valid(brin_navas, a, aa, *search));
  return {};
}

std::string normal_form_round_trip() {
  const std::string text = "x0 x1^3 x4 (x0^2 x1 x2^2 x5)^-1";
  EXPECT(render(normal_form(parse_element(text))) == text);
  return {};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "worked example core and rejection of x1", 1.0, rejects_x1_example},
      {2, "two dyadic orbits and the digit-sum rule", 1.0, jones_orbits},
      {3, "transitive subgroup with cyclic abelian quotient", 5.0, amenable_transitive_subgroup},
      {4, "generation verdicts", 5.0, generation_verdicts},
      {5, "solvability and derived length", 1.0, solvability_verdicts},
      {6, "transitive on dyadics but not on the orbit of 1/3", 5.0, maximal_subgroup},
      {7, "slope lattice equals brute-force harvest", 30.0, slope_oracle},
      {8, "property suites", 60.0, property_suites},
      {9, "rewriting witnesses and an idempotent edge", 10.0, rewriting},
      {10, "normal form round trip", 1.0, normal_form_round_trip},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string reason;
    try {
      reason = c.run();
    } catch (const std::exception& e) {
      reason = std::string("exception: ") + e.what();
    }
    double took = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (reason.empty() && took > c.seconds) reason = "over time limit";
    if (!reason.empty()) ++failures;
    std::printf("%s %2d %-50s %8.3fs / %.0fs%s%s\n", reason.empty() ? "PASS" : "FAIL", c.id, c.title, took,
                c.seconds, reason.empty() ? "" : "  ", reason.c_str());
  }
  return failures == 0 ? 0 : 1;
}
