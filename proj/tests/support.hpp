#pragma once

#include <random>
#include <string>
#include <vector>

#include "thompson/core.hpp"
#include "thompson/element.hpp"

namespace test_support {

using thompson::Element;

inline std::vector<Element> parse_all(const std::vector<std::string>& texts) {
  std::vector<Element> out;
  for (const auto& t : texts) out.push_back(thompson::parse_element(t));
  return out;
}

struct Fixture {
  std::string name;
  std::vector<std::string> generators;
};

// The named subgroups used throughout; mirrors fixtures/*.txt.
inline const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = {
      {"F", {"x0", "x1"}},
      {"F_alt", {"x0", "x0 x1"}},
      {"jones", {"x0 x1", "x1 x2", "x2 x3"}},
      {"amenable_transitive", {"x0 x1 x2^-1 x0^-1", "x0 x1^-2"}},
      {"derived_proper", {"x0 x1^-2", "x1 x3^-1"}},
      {"rejects_x1", {"x0", "x1 x2 x1^-1"}},
      {"maximal", {"x0", "x1 x2 x1^-1", "x1^2 x2^-1"}},
      {"three_orbits", {"x0", "x1 x2 x1^-1", "x1^2 x2 x1^-3", "x1^3 x2 x1^-4"}},
      {"dyadic_transitive", {"x0", "x1 x2 x1^-3", "x1 x2 x3 x2^-3 x1^-1"}},
      {"brin_navas", {"x0 x1 x2 x3 x5^2 (x0 x1 x2 x4^3)^-1", "x0^3 x2 x6 (x0 x1^2 x3 x5^2 x7)^-1"}},
      {"metabelian", {"x0", "x1^2 x2^-1 x1^-1"}},
      {"cyclic", {"x0"}},
      {"trivial", {}},
  };
  return all;
}

inline std::vector<Element> fixture(const std::string& name) {
  for (const auto& f : fixtures()) {
    if (f.name == name) return parse_all(f.generators);
  }
  throw std::invalid_argument("no fixture " + name);
}

// A random word of the given length in x0..x_max and their inverses.
inline Element random_word(std::mt19937_64& rng, int length, unsigned max_index = 2) {
  std::uniform_int_distribution<unsigned> index(0, max_index);
  std::bernoulli_distribution invert(0.5);
  Element out;
  for (int i = 0; i < length; ++i) {
    Element g = thompson::generator(index(rng));
    out = thompson::multiply(out, invert(rng) ? thompson::invert(g) : g);
  }
  return out;
}

// A random product of the given generators and their inverses.
inline Element random_product(std::mt19937_64& rng, const std::vector<Element>& gens, int length) {
  if (gens.empty()) return {};
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::bernoulli_distribution invert(0.5);
  Element out;
  for (int i = 0; i < length; ++i) {
    const Element& g = gens[pick(rng)];
    out = thompson::multiply(out, invert(rng) ? thompson::invert(g) : g);
  }
  return out;
}

// Splits random pairs u->v into u0->v0, u1->v1, which leaves the element unchanged.
inline std::vector<thompson::BranchPair> random_expansion(std::mt19937_64& rng, const Element& a,
                                                          int splits) {
  std::vector<thompson::BranchPair> pairs = a.pairs();
  for (int i = 0; i < splits; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
    std::size_t k = pick(rng);
    thompson::BranchPair p = pairs[k];
    pairs[k] = {p.domain + '0', p.range + '0'};
    pairs.insert(pairs.begin() + static_cast<long>(k) + 1, {p.domain + '1', p.range + '1'});
  }
  return pairs;
}

}  // namespace test_support
