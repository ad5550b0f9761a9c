#pragma once

#include <compare>
#include <string>
#include <vector>

#include "thompson/element.hpp"
#include "thompson/word.hpp"

namespace thompson {

// A leaf of a forest: a root index and the binary address below it.
struct ForestLeaf {
  int root = 0;
  BinaryWord word;
  friend auto operator<=>(const ForestLeaf&, const ForestLeaf&) = default;
};

struct ForestPair {
  ForestLeaf domain;
  ForestLeaf range;
  friend auto operator<=>(const ForestPair&, const ForestPair&) = default;
};

// A diagram from a word of n letters to a word of m letters, written as
// branch pairs over a forest with n roots on top and m roots below. The
// letters themselves are implicit; `labels_consistent` checks them against an
// automaton. Pairs are kept reduced.
class ForestDiagram {
 public:
  ForestDiagram() = default;

  // Validates both leaf sequences and reduces. Throws std::invalid_argument.
  static ForestDiagram from_pairs(int domain_arity, int range_arity, std::vector<ForestPair> pairs);
  static ForestDiagram identity(int arity);

  int domain_arity() const { return domain_arity_; }
  int range_arity() const { return range_arity_; }
  const std::vector<ForestPair>& pairs() const { return pairs_; }
  bool is_identity() const;

  // Requires one root on each side.
  Element to_element() const;
  std::string str() const;

  friend bool operator==(const ForestDiagram&, const ForestDiagram&) = default;

 private:
  ForestDiagram(int n, int m, std::vector<ForestPair> pairs)
      : domain_arity_(n), range_arity_(m), pairs_(std::move(pairs)) {}
  friend ForestDiagram compose(const ForestDiagram& a, const ForestDiagram& b);
  friend ForestDiagram sum(const ForestDiagram& a, const ForestDiagram& b);
  friend ForestDiagram inverse(const ForestDiagram& a);

  int domain_arity_ = 0;
  int range_arity_ = 0;
  std::vector<ForestPair> pairs_;
};

// a then b; requires a.range_arity() == b.domain_arity().
ForestDiagram compose(const ForestDiagram& a, const ForestDiagram& b);
// Side by side, a on the left.
ForestDiagram sum(const ForestDiagram& a, const ForestDiagram& b);
ForestDiagram inverse(const ForestDiagram& a);

}  // namespace thompson
