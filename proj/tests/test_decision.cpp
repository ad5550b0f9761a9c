#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "thompson/decision.hpp"

using namespace thompson;
using test_support::fixture;
using test_support::fixtures;

namespace {

Element P(std::string_view text) { return parse_element(text); }

// (m1 - m2, n1 - n2) for consecutive pairs, straight from the word splits.
std::pair<std::int64_t, std::int64_t> tuple_vector(const BranchPair& p1, const BranchPair& p2) {
  auto split = [](const std::string& w1, const std::string& w2) {
    std::size_t k = 0;
    while (k < w1.size() && k < w2.size() && w1[k] == w2[k]) ++k;
    // w1 = u 0 1^m, w2 = u 1 0^n
    return std::pair<std::int64_t, std::int64_t>(w1.size() - k - 1, w2.size() - k - 1);
  };
  auto [m1, n1] = split(p1.domain, p2.domain);
  auto [m2, n2] = split(p1.range, p2.range);
  return {m1 - m2, n1 - n2};
}

std::vector<std::pair<std::int64_t, std::int64_t>> lattice_rows(const Lattice2& l) { return l.basis(); }

}  // namespace

TEST_CASE("lattice normal form") {
  Lattice2 l;
  CHECK(l.rank() == 0);
  l.insert({2, 3});
  CHECK(l.rank() == 1);
  CHECK_FALSE(l.full());
  l.insert({0, 4});
  l.insert({1, 1});
  CHECK(l.rank() == 2);
  CHECK(l.contains({1, 1}));
  CHECK(l.contains({0, 1}));
  CHECK(l.full());
  CHECK(Lattice2::generated_by({{2, 0}, {0, 2}}) == Lattice2::generated_by({{2, 2}, {2, -2}, {0, 2}}));
  for (auto rows : {std::vector<Lattice2::Vector>{{6, 4}, {4, 10}, {0, 0}},
                    std::vector<Lattice2::Vector>{{0, 3}, {0, -6}},
                    std::vector<Lattice2::Vector>{{-3, 5}, {9, 1}, {12, -7}}}) {
    CHECK(Lattice2::generated_by(rows).basis() == oracle::hermite_basis(rows));
  }
}

TEST_CASE("abelianization image") {
  CHECK(abelianization_full(fixture("F")));
  CHECK_FALSE(abelianization_full(fixture("derived_proper")));
  CHECK_FALSE(abelianization_full({}));
}

TEST_CASE("tuples of a diagram") {
  auto semi = build_semicore({P("x0")});
  int eps = *trace(semi, "");
  auto id = tuples_from_pairs(semi, {{"0", "0"}, {"1", "1"}});
  REQUIRE(id.size() == 1);
  CHECK(id[0] == Tuple{0, 0, eps, eps});

  auto x0 = tuples_from_element(semi, P("x0"));
  REQUIRE(x0.size() == 2);
  // 00->0, 01->10: u = 0, v = empty.
  CHECK(x0[0] == Tuple{0, -1, *trace(semi, "0"), eps});
  // 01->10, 1->11: u = empty, v = 1.
  CHECK(x0[1] == Tuple{1, 0, eps, *trace(semi, "1")});

  CHECK(tuples_from_element(semi, Element{}).empty());
  CHECK_THROWS_AS(tuples_from_element(build_semicore({P("x0")}), P("x1 x2")), PreconditionError);
}

TEST_CASE("tuples agree with the word-split oracle and invert") {
  std::mt19937_64 rng(31);
  for (const auto& fx : fixtures()) {
    CAPTURE(fx.name);
    auto gens = test_support::parse_all(fx.generators);
    auto semi = build_semicore(gens);
    for (int i = 0; i < 20; ++i) {
      Element h = test_support::random_product(rng, gens, 3);
      auto t = tuples_from_element(semi, h);
      const auto& pairs = h.pairs();
      REQUIRE(t.size() + 1 == pairs.size());
      for (std::size_t k = 0; k + 1 < pairs.size(); ++k) {
        auto [a, b] = tuple_vector(pairs[k], pairs[k + 1]);
        REQUIRE(t[k].a == a);
        REQUIRE(t[k].b == b);
      }
      auto inv = tuples_from_element(semi, invert(h));
      REQUIRE(inv.size() == t.size());
      // Inverting swaps the columns but keeps the pairs in order.
      for (std::size_t k = 0; k < t.size(); ++k) REQUIRE(inv[k] == t[k].inverse());
    }
  }
}

TEST_CASE("slope lattice preconditions") {
  CHECK_THROWS_AS(slope_lattice(fixture("rejects_x1")), PreconditionError);
  CHECK_THROWS_AS(slope_lattice_fundamental_cycles(fixture("cyclic")), PreconditionError);
}

TEST_CASE("slope lattices of named subgroups") {
  CHECK(slope_lattice(fixture("F")).full());
  CHECK(slope_lattice(fixture("derived_proper")).full());
  // Its closure is itself, which does not contain the derived subgroup.
  CHECK_THROWS_AS(slope_lattice(fixture("amenable_transitive")), PreconditionError);
}

TEST_CASE("slope lattice equals the brute-force harvest") {
  int compared = 0;
  for (const auto& fx : fixtures()) {
    auto gens = test_support::parse_all(fx.generators);
    if (!contains_derived_in_closure(build_core(gens))) continue;
    CAPTURE(fx.name);
    auto harvested = oracle::hermite_basis(oracle::harvest_slope_pairs(gens, 6));
    CHECK(lattice_rows(slope_lattice(gens)) == harvested);
    CHECK(slope_lattice_fundamental_cycles(gens) == slope_lattice(gens));
    ++compared;
  }
  CHECK(compared >= 3);
}

TEST_CASE("slope lattice grows with the subgroup") {
  std::mt19937_64 rng(32);
  for (const auto& fx : fixtures()) {
    auto gens = test_support::parse_all(fx.generators);
    if (!contains_derived_in_closure(build_core(gens))) continue;
    CAPTURE(fx.name);
    auto base = slope_lattice(gens);
    for (int i = 0; i < 3; ++i) {
      auto more = gens;
      more.push_back(test_support::random_word(rng, 4));
      auto bigger = slope_lattice(more);
      for (auto v : base.basis()) CHECK(bigger.contains(v));
    }
  }
}

TEST_CASE("generation verdicts") {
  auto f = generates_F(fixture("F"));
  CHECK(f.equals_F);
  CHECK(f.contains_derived);
  auto maximal = generates_F(fixture("maximal"));
  CHECK_FALSE(maximal.equals_F);
  CHECK_FALSE(maximal.contains_derived);
  CHECK_FALSE(maximal.slope_lattice.has_value());
  auto k = generates_F(fixture("derived_proper"));
  CHECK(k.contains_derived);
  CHECK_FALSE(k.equals_F);
  CHECK(contains_derived(fixture("derived_proper")));
  CHECK_FALSE(contains_derived({}));
  CHECK_FALSE(generates_F({}).equals_F);
}

TEST_CASE("verdicts are consistent") {
  std::mt19937_64 rng(33);
  std::vector<std::vector<Element>> sets;
  for (const auto& fx : fixtures()) sets.push_back(test_support::parse_all(fx.generators));
  for (int i = 0; i < 20; ++i) {
    sets.push_back({test_support::random_word(rng, 3), test_support::random_word(rng, 3)});
  }
  for (const auto& gens : sets) {
    auto v = generates_F(gens);
    if (v.equals_F) {
      CHECK(v.contains_derived);
      auto c = build_core(gens);
      CHECK(accepts(c, P("x0")));
      CHECK(accepts(c, P("x1")));
    }
    if (v.contains_derived) CHECK(v.closure_contains_derived);
  }
}
