#include "thompson/forest.hpp"

#include <stdexcept>

namespace thompson {

namespace {

bool siblings(const ForestLeaf& x, const ForestLeaf& y) {
  std::size_t n = x.word.size();
  return x.root == y.root && n > 0 && n == y.word.size() && x.word[n - 1] == '0' &&
         y.word[n - 1] == '1' && x.word.compare(0, n - 1, y.word, 0, n - 1) == 0;
}

std::vector<ForestPair> reduce(std::vector<ForestPair> pairs) {
  std::vector<ForestPair> stack;
  stack.reserve(pairs.size());
  for (auto& p : pairs) {
    stack.push_back(std::move(p));
    while (stack.size() >= 2) {
      const ForestPair& a = stack[stack.size() - 2];
      const ForestPair& b = stack.back();
      if (!siblings(a.domain, b.domain) || !siblings(a.range, b.range)) break;
      stack.pop_back();
      stack.back().domain.word.pop_back();
      stack.back().range.word.pop_back();
    }
  }
  return stack;
}

bool is_forest_sequence(const std::vector<ForestPair>& pairs, int arity, bool domain) {
  std::size_t i = 0;
  for (int r = 0; r < arity; ++r) {
    std::vector<std::string_view> leaves;
    while (i < pairs.size()) {
      const ForestLeaf& leaf = domain ? pairs[i].domain : pairs[i].range;
      if (leaf.root != r) break;
      if (!is_binary_word(leaf.word)) return false;
      leaves.push_back(leaf.word);
      ++i;
    }
    if (leaves.empty() || !is_leaf_sequence(leaves)) return false;
  }
  return i == pairs.size();
}

}  // namespace

ForestDiagram ForestDiagram::from_pairs(int domain_arity, int range_arity,
                                        std::vector<ForestPair> pairs) {
  if (domain_arity < 0 || range_arity < 0 || !is_forest_sequence(pairs, domain_arity, true) ||
      !is_forest_sequence(pairs, range_arity, false)) {
    throw std::invalid_argument("branch pairs do not form a forest diagram");
  }
  return ForestDiagram(domain_arity, range_arity, reduce(std::move(pairs)));
}

ForestDiagram ForestDiagram::identity(int arity) {
  std::vector<ForestPair> pairs;
  for (int r = 0; r < arity; ++r) pairs.push_back({{r, ""}, {r, ""}});
  return ForestDiagram(arity, arity, std::move(pairs));
}

bool ForestDiagram::is_identity() const {
  if (domain_arity_ != range_arity_ || static_cast<int>(pairs_.size()) != domain_arity_) return false;
  for (int r = 0; r < domain_arity_; ++r) {
    const ForestPair& p = pairs_[r];
    if (p.domain.root != r || p.range.root != r || !p.domain.word.empty() || !p.range.word.empty()) {
      return false;
    }
  }
  return true;
}

Element ForestDiagram::to_element() const {
  if (domain_arity_ != 1 || range_arity_ != 1) {
    throw std::invalid_argument("only a diagram with one root on each side is an element");
  }
  std::vector<BranchPair> out;
  out.reserve(pairs_.size());
  for (const auto& p : pairs_) out.push_back({p.domain.word, p.range.word});
  return Element::from_pairs(std::move(out));
}

std::string ForestDiagram::str() const {
  std::string out = std::to_string(domain_arity_) + "->" + std::to_string(range_arity_) + ":";
  for (const auto& p : pairs_) {
    out += ' ' + std::to_string(p.domain.root) + '.' + p.domain.word + "->" +
           std::to_string(p.range.root) + '.' + p.range.word;
  }
  return out;
}

ForestDiagram compose(const ForestDiagram& a, const ForestDiagram& b) {
  if (a.range_arity_ != b.domain_arity_) {
    throw std::invalid_argument("cannot compose diagrams of mismatched arity");
  }
  const auto& A = a.pairs_;
  const auto& B = b.pairs_;
  std::vector<ForestPair> out;
  out.reserve(A.size() + B.size());
  std::size_t i = 0;
  std::size_t j = 0;
  // Same walk as for elements, one middle root at a time.
  while (i < A.size() && j < B.size()) {
    const ForestLeaf& v = A[i].range;
    const ForestLeaf& w = B[j].domain;
    if (v.root != w.root) throw std::logic_error("forest diagrams out of step");
    const auto covers = [](const ForestLeaf& x, const ForestLeaf& y) {
      return x.root == y.root && is_prefix(x.word, y.word);
    };
    if (is_prefix(v.word, w.word)) {
      out.push_back({{A[i].domain.root, A[i].domain.word + w.word.substr(v.word.size())}, B[j].range});
      ++j;
      if (j == B.size() || !covers(v, B[j].domain)) ++i;
    } else {
      out.push_back({A[i].domain, {B[j].range.root, B[j].range.word + v.word.substr(w.word.size())}});
      ++i;
      if (i == A.size() || !covers(w, A[i].range)) ++j;
    }
  }
  return ForestDiagram(a.domain_arity_, b.range_arity_, reduce(std::move(out)));
}

ForestDiagram sum(const ForestDiagram& a, const ForestDiagram& b) {
  std::vector<ForestPair> out = a.pairs_;
  for (ForestPair p : b.pairs_) {
    p.domain.root += a.domain_arity_;
    p.range.root += a.range_arity_;
    out.push_back(std::move(p));
  }
  return ForestDiagram(a.domain_arity_ + b.domain_arity_, a.range_arity_ + b.range_arity_,
                       std::move(out));
}

ForestDiagram inverse(const ForestDiagram& a) {
  std::vector<ForestPair> out;
  out.reserve(a.pairs_.size());
  for (const auto& p : a.pairs_) out.push_back({p.range, p.domain});
  return ForestDiagram(a.range_arity_, a.domain_arity_, std::move(out));
}

}  // namespace thompson
