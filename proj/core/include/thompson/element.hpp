#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thompson/dyadic.hpp"
#include "thompson/word.hpp"

namespace thompson {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was called outside its documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One pair of branches: the element maps the interval [domain] linearly onto [range].
struct BranchPair {
  BinaryWord domain;
  BinaryWord range;
  friend auto operator<=>(const BranchPair&, const BranchPair&) = default;
};

// An element of F as a reduced list of branch pairs in left-to-right order.
// The identity is the single pair {ε→ε}.
class Element {
 public:
  Element() : pairs_{BranchPair{}} {}

  // Validates the tree-pair invariants and reduces. Throws ParseError.
  static Element from_pairs(std::vector<BranchPair> pairs);

  const std::vector<BranchPair>& pairs() const { return pairs_; }
  bool is_identity() const { return pairs_.size() == 1 && pairs_[0].domain.empty(); }
  std::size_t size() const { return pairs_.size(); }

  // Canonical text form: "00->0,01->10,1->11"; the identity renders as "->".
  std::string str() const;

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;

 private:
  explicit Element(std::vector<BranchPair> pairs) : pairs_(std::move(pairs)) {}
  friend std::vector<BranchPair> reduce_pairs(std::vector<BranchPair> pairs);
  friend Element multiply(const Element& a, const Element& b);
  friend Element invert(const Element& a);

  std::vector<BranchPair> pairs_;
};

// Validates a branch list without reducing it.
bool is_valid_pair_list(const std::vector<BranchPair>& pairs);
// Cancels adjacent pairs w0→v0, w1→v1 until none remain.
std::vector<BranchPair> reduce_pairs(std::vector<BranchPair> pairs);

// Product with a applied first.
Element multiply(const Element& a, const Element& b);
Element invert(const Element& a);
Element power(const Element& a, long exponent);

// x_n; for n ≥ 2 this is x0^{-(n-1)} x1 x0^{n-1}.
Element generator(unsigned n);

// A word in the infinite generating set, letters (index, exponent).
struct GroupWord {
  std::vector<std::pair<unsigned, long>> letters;
};

// Grammar: letters "xN" or "xN^E" separated by whitespace, with optional
// parenthesised groups "( ... )^E". Throws ParseError.
GroupWord parse_group_word(std::string_view text);
Element evaluate_word(const GroupWord& word);

// Either a group word or a comma-separated branch list "u->v, ...".
Element parse_element(std::string_view text);

// x_{i1}^{s1}...x_{im}^{sm} (x_{j1}^{t1}...x_{jn}^{tn})^{-1}; both lists have
// non-decreasing indices.
struct NormalForm {
  std::vector<std::pair<unsigned, unsigned>> positive;
  std::vector<std::pair<unsigned, unsigned>> negative;
  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

NormalForm normal_form(const Element& a);
// "x0 x1^3 x4 (x0^2 x1 x2^2 x5)^-1"; the identity renders as "".
std::string render(const NormalForm& nf);
Element from_normal_form(const NormalForm& nf);
bool satisfies_normal_form_condition(const NormalForm& nf);

struct PLMap {
  std::vector<std::pair<Dyadic, Dyadic>> breakpoints;  // includes (0,0) and (1,1)
  std::vector<long> slopes;                            // log2 slope per segment
};

PLMap to_pl_map(const Element& a);
Dyadic evaluate(const Element& a, const Dyadic& t);

enum class Side { left, right };
// log2 of the one-sided derivative at alpha.
long slope_at(const Element& a, const Dyadic& alpha, Side side);

enum class Direction { up, down };
struct Orbital {
  Rational lo;
  Rational hi;
  Direction direction;
};
std::vector<Orbital> orbitals(const Element& a);

// Dyadic points in (0,1) that are isolated fixed points or endpoints of
// intervals of fixed points, in increasing order.
std::vector<Dyadic> dyadic_fixed_points(const Element& a);

// (f1, f2): f1 agrees with a on [0,alpha] and is the identity after it, f2
// the other way round. Throws std::invalid_argument unless a fixes alpha.
std::pair<Element, Element> components_at(const Element& a, const Dyadic& alpha);

// (log2 a'(0+), log2 a'(1-)).
std::pair<long, long> abelianization(const Element& a);

}  // namespace thompson
