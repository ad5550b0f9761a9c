#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "thompson/core.hpp"
#include "thompson/element.hpp"

namespace thompson {

// A sublattice of Z^2 kept in Hermite normal form: rows (a, b) and (0, d)
// with a, d >= 0, 0 <= b < d when d > 0, and b = 0 when a = 0.
class Lattice2 {
 public:
  using Vector = std::pair<std::int64_t, std::int64_t>;

  Lattice2() = default;
  static Lattice2 generated_by(const std::vector<Vector>& vectors);

  void insert(Vector v);
  bool contains(Vector v) const;
  // Nonzero rows of the normal form.
  std::vector<Vector> basis() const;
  int rank() const;
  bool full() const { return a_ == 1 && d_ == 1; }

  friend bool operator==(const Lattice2&, const Lattice2&) = default;

 private:
  void normalize();

  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
  std::int64_t d_ = 0;
};

// An element of the tuples groupoid: a vector of Z^2 carried from one
// semi-core edge class to another.
struct Tuple {
  std::int64_t a = 0;
  std::int64_t b = 0;
  int src = 0;
  int dst = 0;
  Tuple inverse() const { return {-a, -b, dst, src}; }
  friend auto operator<=>(const Tuple&, const Tuple&) = default;
};

// One tuple per consecutive pair of branches; the list need not be reduced.
// Throws PreconditionError if a branch cannot be traced on the semi-core.
std::vector<Tuple> tuples_from_pairs(const CoreAutomaton& semicore,
                                     const std::vector<BranchPair>& pairs);
std::vector<Tuple> tuples_from_element(const CoreAutomaton& semicore, const Element& a);

// Endpoint-slope images of the generators span Z^2.
bool abelianization_full(const std::vector<Element>& generators);

// The lattice of slope pairs at dyadic fixed points of the subgroup, from
// spherical tuples of bounded length. Requires the closure to contain the
// derived subgroup; throws PreconditionError otherwise.
Lattice2 slope_lattice(const std::vector<Element>& generators);
// The same lattice from fundamental cycles of the tuple class graph.
Lattice2 slope_lattice_fundamental_cycles(const std::vector<Element>& generators);

struct Verdict {
  bool closure_contains_derived = false;
  bool abelianization_full = false;
  std::optional<Lattice2> slope_lattice;  // only when the closure condition holds
  bool contains_derived = false;
  bool equals_F = false;
};

Verdict generates_F(const std::vector<Element>& generators);
bool contains_derived(const std::vector<Element>& generators);

}  // namespace thompson
