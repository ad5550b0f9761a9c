#include "thompson/decision.hpp"

#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace thompson {

namespace {

// (g, s, t) with s*x + t*y = g = gcd(x, y) >= 0.
std::tuple<std::int64_t, std::int64_t, std::int64_t> extended_gcd(std::int64_t x, std::int64_t y) {
  std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (y != 0) {
    std::int64_t q = x / y;
    std::tie(x, y) = std::make_pair(y, x - q * y);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (x < 0) return {-x, -s0, -t0};
  return {x, s0, t0};
}

std::int64_t floor_mod(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

// Exponents m with w = prefix·digit·other^m, where prefix has the given length.
std::int64_t tail_run(const BinaryWord& w, std::size_t prefix, char other) {
  std::int64_t m = 0;
  for (std::size_t i = prefix + 1; i < w.size(); ++i) {
    if (w[i] != other) throw std::logic_error("consecutive branches are not siblings in shape");
    ++m;
  }
  return m;
}

int class_of(const CoreAutomaton& semicore, std::string_view word) {
  auto e = trace(semicore, word);
  if (!e) throw PreconditionError("branch " + std::string(word) + " is not traceable on the semi-core");
  return *e;
}

struct TupleSystem {
  std::vector<Tuple> y;
  int classes = 0;
  int base = 0;
};

TupleSystem tuple_system(const std::vector<Element>& generators) {
  CoreAutomaton semicore = build_semicore(generators);
  TupleSystem sys;
  sys.classes = semicore.edge_count();
  sys.base = 0;
  std::set<Tuple> y;
  for (const auto& g : generators) {
    for (const auto& t : tuples_from_element(semicore, g)) {
      y.insert(t);
      y.insert(t.inverse());
    }
  }
  for (int c = 0; c < sys.classes; ++c) y.insert({0, 0, c, c});
  sys.y.assign(y.begin(), y.end());
  return sys;
}

void require_closure_condition(const std::vector<Element>& generators) {
  if (!contains_derived_in_closure(build_core(generators))) {
    throw PreconditionError("the closure of the subgroup does not contain the derived subgroup");
  }
}

}  // namespace

Lattice2 Lattice2::generated_by(const std::vector<Vector>& vectors) {
  Lattice2 l;
  for (const auto& v : vectors) l.insert(v);
  return l;
}

void Lattice2::insert(Vector v) {
  auto [x, y] = v;
  if (x == 0) {
    d_ = std::gcd(d_, std::abs(y));
  } else if (a_ == 0) {
    a_ = std::abs(x);
    b_ = x < 0 ? -y : y;
  } else {
    auto [g, s, t] = extended_gcd(a_, x);
    std::int64_t nb = s * b_ + t * y;
    std::int64_t leftover = (x / g) * b_ - (a_ / g) * y;
    a_ = g;
    b_ = nb;
    d_ = std::gcd(d_, std::abs(leftover));
  }
  normalize();
}

void Lattice2::normalize() {
  if (a_ == 0) b_ = 0;
  if (d_ > 0) b_ = floor_mod(b_, d_);
}

bool Lattice2::contains(Vector v) const {
  auto [x, y] = v;
  if (a_ == 0) {
    if (x != 0) return false;
  } else {
    if (x % a_ != 0) return false;
    y -= (x / a_) * b_;
  }
  return d_ == 0 ? y == 0 : y % d_ == 0;
}

std::vector<Lattice2::Vector> Lattice2::basis() const {
  std::vector<Vector> out;
  if (a_ != 0) out.emplace_back(a_, b_);
  if (d_ != 0) out.emplace_back(0, d_);
  return out;
}

int Lattice2::rank() const { return static_cast<int>(basis().size()); }

std::vector<Tuple> tuples_from_pairs(const CoreAutomaton& semicore,
                                     const std::vector<BranchPair>& pairs) {
  std::vector<Tuple> out;
  for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
    const BranchPair& p1 = pairs[i];
    const BranchPair& p2 = pairs[i + 1];
    std::size_t lu = common_prefix_length(p1.domain, p2.domain);
    std::size_t lv = common_prefix_length(p1.range, p2.range);
    std::int64_t m1 = tail_run(p1.domain, lu, '1');
    std::int64_t n1 = tail_run(p2.domain, lu, '0');
    std::int64_t m2 = tail_run(p1.range, lv, '1');
    std::int64_t n2 = tail_run(p2.range, lv, '0');
    out.push_back({m1 - m2, n1 - n2, class_of(semicore, std::string_view(p1.domain).substr(0, lu)),
                   class_of(semicore, std::string_view(p1.range).substr(0, lv))});
  }
  return out;
}

std::vector<Tuple> tuples_from_element(const CoreAutomaton& semicore, const Element& a) {
  return tuples_from_pairs(semicore, a.pairs());
}

bool abelianization_full(const std::vector<Element>& generators) {
  Lattice2 l;
  for (const auto& g : generators) {
    auto [x, y] = abelianization(g);
    l.insert({x, y});
  }
  return l.full();
}

Lattice2 slope_lattice(const std::vector<Element>& generators) {
  require_closure_condition(generators);
  TupleSystem sys = tuple_system(generators);
  const int n = sys.classes;
  std::int64_t bound = 0;
  for (const auto& t : sys.y) bound = std::max({bound, std::abs(t.a), std::abs(t.b)});
  const std::int64_t cap = n * bound;

  std::vector<std::vector<const Tuple*>> out_of(n);
  for (const auto& t : sys.y) out_of[t.src].push_back(&t);

  // Breadth-first over (class, accumulated vector), at most n factors.
  using State = std::tuple<int, std::int64_t, std::int64_t>;
  std::set<State> seen{{sys.base, 0, 0}};
  std::vector<State> layer{{sys.base, 0, 0}};
  Lattice2 lattice;
  for (int step = 0; step < n && !layer.empty(); ++step) {
    std::vector<State> next;
    for (const auto& [c, x, y] : layer) {
      for (const Tuple* t : out_of[c]) {
        std::int64_t nx = x + t->a;
        std::int64_t ny = y + t->b;
        if (std::abs(nx) > cap || std::abs(ny) > cap) continue;
        State s{t->dst, nx, ny};
        if (!seen.insert(s).second) continue;
        if (t->dst == sys.base) lattice.insert({nx, ny});
        next.push_back(s);
      }
    }
    layer = std::move(next);
  }
  return lattice;
}

Lattice2 slope_lattice_fundamental_cycles(const std::vector<Element>& generators) {
  require_closure_condition(generators);
  TupleSystem sys = tuple_system(generators);
  std::vector<std::optional<std::pair<std::int64_t, std::int64_t>>> potential(sys.classes);
  std::vector<std::vector<const Tuple*>> out_of(sys.classes);
  for (const auto& t : sys.y) out_of[t.src].push_back(&t);
  potential[sys.base] = std::pair<std::int64_t, std::int64_t>{0, 0};
  std::deque<int> queue{sys.base};
  while (!queue.empty()) {
    int c = queue.front();
    queue.pop_front();
    for (const Tuple* t : out_of[c]) {
      if (potential[t->dst]) continue;
      potential[t->dst] = std::pair{potential[c]->first + t->a, potential[c]->second + t->b};
      queue.push_back(t->dst);
    }
  }
  Lattice2 lattice;
  for (const auto& t : sys.y) {
    if (!potential[t.src]) continue;
    lattice.insert({potential[t.src]->first + t.a - potential[t.dst]->first,
                    potential[t.src]->second + t.b - potential[t.dst]->second});
  }
  return lattice;
}

Verdict generates_F(const std::vector<Element>& generators) {
  Verdict v;
  v.closure_contains_derived = contains_derived_in_closure(build_core(generators));
  v.abelianization_full = abelianization_full(generators);
  if (v.closure_contains_derived) v.slope_lattice = slope_lattice(generators);
  v.contains_derived = v.closure_contains_derived && v.slope_lattice->full();
  v.equals_F = v.contains_derived && v.abelianization_full;
  return v;
}

bool contains_derived(const std::vector<Element>& generators) {
  return generates_F(generators).contains_derived;
}

}  // namespace thompson
