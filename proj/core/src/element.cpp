#include "thompson/element.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace thompson {

namespace {

std::vector<std::string_view> domains_of(const std::vector<BranchPair>& pairs) {
  std::vector<std::string_view> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.domain);
  return out;
}

std::vector<std::string_view> ranges_of(const std::vector<BranchPair>& pairs) {
  std::vector<std::string_view> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.range);
  return out;
}

bool mergeable(const BranchPair& a, const BranchPair& b) {
  const auto siblings = [](const std::string& x, const std::string& y) {
    std::size_t n = x.size();
    return n > 0 && n == y.size() && x[n - 1] == '0' && y[n - 1] == '1' &&
           x.compare(0, n - 1, y, 0, n - 1) == 0;
  };
  return siblings(a.domain, b.domain) && siblings(a.range, b.range);
}

Rational pow2(long k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k < 0 ? -k : k));
  if (k >= 0) return Rational(p);
  Rational r(1, p);
  r.canonicalize();
  return r;
}

// A linear piece t ↦ y0 + 2^k (t - x0) on [x0, x1].
struct Piece {
  Dyadic x0;
  Dyadic x1;
  Dyadic y0;
  long k;
};

std::vector<Piece> pieces_of(const Element& a) {
  std::vector<Piece> out;
  out.reserve(a.size());
  for (const auto& p : a.pairs()) {
    Dyadic x0 = Dyadic::from_word(p.domain);
    Dyadic x1 = x0 + Dyadic(1, p.domain.size());
    out.push_back({x0, x1, Dyadic::from_word(p.range),
                   static_cast<long>(p.domain.size()) - static_cast<long>(p.range.size())});
  }
  return out;
}

Dyadic apply_piece(const Piece& piece, const Dyadic& t) {
  return piece.y0 + (t - piece.x0).shifted(piece.k);
}

void check_unit_interval(const Dyadic& t) {
  if (t < Dyadic(0) || t > Dyadic(1)) {
    throw std::invalid_argument("point outside [0,1]: " + t.str());
  }
}

// Closed fixed-point sets of one piece: nothing, a point, or the whole piece.
std::optional<std::pair<Rational, Rational>> piece_fixed_set(const Piece& piece) {
  Rational x0 = piece.x0.to_rational();
  Rational x1 = piece.x1.to_rational();
  Rational y0 = piece.y0.to_rational();
  if (piece.k == 0) {
    if (x0 == y0) return std::make_pair(x0, x1);
    return std::nullopt;
  }
  Rational s = pow2(piece.k);
  Rational x = (y0 - s * x0) / (Rational(1) - s);
  x.canonicalize();
  if (x < x0 || x > x1) return std::nullopt;
  return std::make_pair(x, x);
}

// Maximal closed components of the fixed-point set, sorted.
std::vector<std::pair<Rational, Rational>> fixed_components(const Element& a) {
  std::vector<std::pair<Rational, Rational>> raw;
  for (const auto& piece : pieces_of(a)) {
    if (auto f = piece_fixed_set(piece)) raw.push_back(*f);
  }
  std::sort(raw.begin(), raw.end());
  std::vector<std::pair<Rational, Rational>> merged;
  for (auto& r : raw) {
    if (!merged.empty() && r.first <= merged.back().second) {
      if (r.second > merged.back().second) merged.back().second = r.second;
    } else {
      merged.push_back(r);
    }
  }
  return merged;
}

// Some dyadic strictly between lo and hi (lo < hi).
Dyadic dyadic_between(const Rational& lo, const Rational& hi) {
  for (unsigned long k = 1;; ++k) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, k);
    Rational scaled = lo * scale;
    mpz_class n;
    mpz_fdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    n += 1;
    Dyadic d(n, k);
    if (d.to_rational() < hi) return d;
  }
}

class WordParser {
 public:
  explicit WordParser(std::string_view text) : text_(text) {}

  GroupWord parse() {
    GroupWord w = sequence();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) +
                     "\"");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  unsigned long digits() {
    std::size_t start = pos_;
    unsigned long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<unsigned long>(text_[pos_] - '0');
      if (v > 1000000) fail("number too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected digits");
    return v;
  }

  long exponent() {
    if (!at('^')) return 1;
    ++pos_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    long e = static_cast<long>(digits());
    return negative ? -e : e;
  }

  GroupWord sequence() {
    GroupWord out;
    while (true) {
      if (at('x') || at('X')) {
        ++pos_;
        unsigned n = static_cast<unsigned>(digits());
        long e = exponent();
        if (e != 0) out.letters.emplace_back(n, e);
      } else if (at('(')) {
        ++pos_;
        GroupWord inner = sequence();
        if (!at(')')) fail("expected ')'");
        ++pos_;
        long e = exponent();
        append_power(out, inner, e);
      } else {
        return out;
      }
    }
  }

  static void append_power(GroupWord& out, const GroupWord& w, long e) {
    GroupWord base = w;
    if (e < 0) {
      std::reverse(base.letters.begin(), base.letters.end());
      for (auto& l : base.letters) l.second = -l.second;
      e = -e;
    }
    for (long i = 0; i < e; ++i) {
      out.letters.insert(out.letters.end(), base.letters.begin(), base.letters.end());
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Cells of a tree in leftmost order, each labelled by the number of leaves to
// its left; cells on the right spine are skipped.
void leftmost_labels(const std::vector<std::string_view>& leaves, std::size_t lo, std::size_t hi,
                     std::size_t depth, std::vector<unsigned>& out) {
  if (hi - lo == 1 && leaves[lo].size() == depth) return;
  std::string_view node = leaves[lo].substr(0, depth);
  bool right_spine = std::all_of(node.begin(), node.end(), [](char c) { return c == '1'; });
  if (!right_spine) out.push_back(static_cast<unsigned>(lo));
  std::size_t mid = lo;
  while (mid < hi && leaves[mid][depth] == '0') ++mid;
  leftmost_labels(leaves, lo, mid, depth + 1, out);
  leftmost_labels(leaves, mid, hi, depth + 1, out);
}

std::vector<std::pair<unsigned, unsigned>> group_letters(const std::vector<unsigned>& letters) {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (unsigned i : letters) {
    if (!out.empty() && out.back().first == i) {
      ++out.back().second;
    } else {
      out.emplace_back(i, 1);
    }
  }
  return out;
}

std::string render_factors(const std::vector<std::pair<unsigned, unsigned>>& factors,
                           bool negate_single) {
  std::string out;
  for (const auto& [i, s] : factors) {
    if (!out.empty()) out += ' ';
    out += 'x' + std::to_string(i);
    if (negate_single) {
      out += "^-" + std::to_string(s);
    } else if (s != 1) {
      out += '^' + std::to_string(s);
    }
  }
  return out;
}

}  // namespace

bool is_valid_pair_list(const std::vector<BranchPair>& pairs) {
  for (const auto& p : pairs) {
    if (!is_binary_word(p.domain) || !is_binary_word(p.range)) return false;
  }
  return is_leaf_sequence(domains_of(pairs)) && is_leaf_sequence(ranges_of(pairs));
}

std::vector<BranchPair> reduce_pairs(std::vector<BranchPair> pairs) {
  std::vector<BranchPair> stack;
  stack.reserve(pairs.size());
  for (auto& p : pairs) {
    stack.push_back(std::move(p));
    while (stack.size() >= 2 && mergeable(stack[stack.size() - 2], stack.back())) {
      stack.pop_back();
      stack.back().domain.pop_back();
      stack.back().range.pop_back();
    }
  }
  return stack;
}

Element Element::from_pairs(std::vector<BranchPair> pairs) {
  if (!is_valid_pair_list(pairs)) {
    throw ParseError("branch pairs do not form a valid tree pair");
  }
  return Element(reduce_pairs(std::move(pairs)));
}

std::string Element::str() const {
  std::string out;
  for (const auto& p : pairs_) {
    if (!out.empty()) out += ',';
    out += p.domain + "->" + p.range;
  }
  return out;
}

Element multiply(const Element& a, const Element& b) {
  const auto& A = a.pairs_;
  const auto& B = b.pairs_;
  std::vector<BranchPair> out;
  out.reserve(A.size() + B.size());
  std::size_t i = 0;
  std::size_t j = 0;
  // Walk the common refinement of a's range leaves and b's domain leaves.
  while (i < A.size() && j < B.size()) {
    const std::string& v = A[i].range;
    const std::string& w = B[j].domain;
    if (is_prefix(v, w)) {
      out.push_back({A[i].domain + w.substr(v.size()), B[j].range});
      ++j;
      if (j == B.size() || !is_prefix(v, B[j].domain)) ++i;
    } else {
      out.push_back({A[i].domain, B[j].range + v.substr(w.size())});
      ++i;
      if (i == A.size() || !is_prefix(w, A[i].range)) ++j;
    }
  }
  return Element(reduce_pairs(std::move(out)));
}

Element invert(const Element& a) {
  std::vector<BranchPair> out;
  out.reserve(a.pairs_.size());
  for (const auto& p : a.pairs_) out.push_back({p.range, p.domain});
  return Element(std::move(out));
}

Element power(const Element& a, long exponent) {
  Element base = exponent < 0 ? invert(a) : a;
  unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  Element result;
  while (e > 0) {
    if (e & 1UL) result = multiply(result, base);
    e >>= 1;
    if (e > 0) base = multiply(base, base);
  }
  return result;
}

Element generator(unsigned n) {
  static const Element x0 = Element::from_pairs({{"00", "0"}, {"01", "10"}, {"1", "11"}});
  static const Element x1 =
      Element::from_pairs({{"0", "0"}, {"100", "10"}, {"101", "110"}, {"11", "111"}});
  if (n == 0) return x0;
  if (n == 1) return x1;
  Element conj = power(x0, static_cast<long>(n) - 1);
  return multiply(multiply(invert(conj), x1), conj);
}

GroupWord parse_group_word(std::string_view text) { return WordParser(text).parse(); }

Element evaluate_word(const GroupWord& word) {
  Element result;
  for (const auto& [n, e] : word.letters) result = multiply(result, power(generator(n), e));
  return result;
}

Element parse_element(std::string_view text) {
  if (text.find("->") == std::string_view::npos) return evaluate_word(parse_group_word(text));
  std::vector<BranchPair> pairs;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view item =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    std::size_t arrow = item.find("->");
    if (arrow == std::string_view::npos) throw ParseError("expected u->v in \"" + std::string(item) + "\"");
    const auto trim = [](std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
      return std::string(s);
    };
    BranchPair p{trim(item.substr(0, arrow)), trim(item.substr(arrow + 2))};
    if (!is_binary_word(p.domain) || !is_binary_word(p.range)) {
      throw ParseError("branch words must use only 0 and 1 in \"" + std::string(item) + "\"");
    }
    pairs.push_back(std::move(p));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Element::from_pairs(std::move(pairs));
}

NormalForm normal_form(const Element& a) {
  std::vector<unsigned> pos;
  std::vector<unsigned> neg;
  leftmost_labels(domains_of(a.pairs()), 0, a.size(), 0, pos);
  leftmost_labels(ranges_of(a.pairs()), 0, a.size(), 0, neg);
  return NormalForm{group_letters(pos), group_letters(neg)};
}

std::string render(const NormalForm& nf) {
  std::string out = render_factors(nf.positive, false);
  if (nf.negative.empty()) return out;
  if (!out.empty()) out += ' ';
  if (nf.negative.size() == 1) return out + render_factors(nf.negative, true);
  return out + '(' + render_factors(nf.negative, false) + ")^-1";
}

Element from_normal_form(const NormalForm& nf) {
  Element p;
  for (const auto& [i, s] : nf.positive) p = multiply(p, power(generator(i), s));
  Element n;
  for (const auto& [j, t] : nf.negative) n = multiply(n, power(generator(j), t));
  return multiply(p, invert(n));
}

bool satisfies_normal_form_condition(const NormalForm& nf) {
  const auto increasing = [](const auto& f) {
    for (std::size_t k = 1; k < f.size(); ++k) {
      if (f[k].first <= f[k - 1].first) return false;
    }
    return true;
  };
  if (!increasing(nf.positive) || !increasing(nf.negative)) return false;
  if (!nf.positive.empty() && !nf.negative.empty() &&
      nf.positive.back().first == nf.negative.back().first) {
    return false;
  }
  const auto occurs = [&](unsigned i) {
    const auto has = [i](const auto& f) {
      return std::any_of(f.begin(), f.end(), [i](const auto& x) { return x.first == i; });
    };
    return std::make_pair(has(nf.positive), has(nf.negative));
  };
  for (const auto& [i, s] : nf.positive) {
    auto [p, n] = occurs(i);
    if (p && n) {
      auto [p1, n1] = occurs(i + 1);
      if (!p1 && !n1) return false;
    }
  }
  return true;
}

PLMap to_pl_map(const Element& a) {
  PLMap m;
  for (const auto& piece : pieces_of(a)) {
    if (!m.slopes.empty() && m.slopes.back() == piece.k) continue;
    m.breakpoints.emplace_back(piece.x0, piece.y0);
    m.slopes.push_back(piece.k);
  }
  m.breakpoints.emplace_back(Dyadic(1), Dyadic(1));
  return m;
}

Dyadic evaluate(const Element& a, const Dyadic& t) {
  check_unit_interval(t);
  for (const auto& piece : pieces_of(a)) {
    if (t <= piece.x1) return apply_piece(piece, t);
  }
  return Dyadic(1);
}

long slope_at(const Element& a, const Dyadic& alpha, Side side) {
  check_unit_interval(alpha);
  if ((side == Side::left && alpha == Dyadic(0)) || (side == Side::right && alpha == Dyadic(1))) {
    throw std::invalid_argument("one-sided slope undefined outside the interval");
  }
  for (const auto& piece : pieces_of(a)) {
    bool inside = side == Side::right ? (piece.x0 <= alpha && alpha < piece.x1)
                                      : (piece.x0 < alpha && alpha <= piece.x1);
    if (inside) return piece.k;
  }
  throw std::logic_error("no piece contains the point");
}

std::vector<Orbital> orbitals(const Element& a) {
  auto fixed = fixed_components(a);
  std::vector<Orbital> out;
  for (std::size_t i = 0; i + 1 < fixed.size(); ++i) {
    Rational lo = fixed[i].second;
    Rational hi = fixed[i + 1].first;
    Dyadic probe = dyadic_between(lo, hi);
    Direction d = evaluate(a, probe) > probe ? Direction::up : Direction::down;
    out.push_back({lo, hi, d});
  }
  return out;
}

std::vector<Dyadic> dyadic_fixed_points(const Element& a) {
  std::vector<Dyadic> out;
  const Rational zero(0);
  const Rational one(1);
  for (const auto& [lo, hi] : fixed_components(a)) {
    for (const Rational& r : {lo, hi}) {
      if (r > zero && r < one && is_dyadic(r)) {
        Dyadic d = to_dyadic(r);
        if (out.empty() || out.back() != d) out.push_back(d);
      }
    }
  }
  return out;
}

std::pair<Element, Element> components_at(const Element& a, const Dyadic& alpha) {
  if (!(Dyadic(0) < alpha && alpha < Dyadic(1)) || evaluate(a, alpha) != alpha) {
    throw std::invalid_argument("components need a fixed point in (0,1): " + alpha.str());
  }
  // Refine until alpha is an endpoint of every domain interval it touches.
  std::vector<BranchPair> refined;
  std::vector<BranchPair> todo(a.pairs().rbegin(), a.pairs().rend());
  while (!todo.empty()) {
    BranchPair p = std::move(todo.back());
    todo.pop_back();
    Dyadic x0 = Dyadic::from_word(p.domain);
    Dyadic x1 = x0 + Dyadic(1, p.domain.size());
    if (x0 < alpha && alpha < x1) {
      todo.push_back({p.domain + '1', p.range + '1'});
      todo.push_back({p.domain + '0', p.range + '0'});
    } else {
      refined.push_back(std::move(p));
    }
  }
  std::vector<BranchPair> left;
  std::vector<BranchPair> right;
  for (const auto& p : refined) {
    bool before = Dyadic::from_word(p.domain) < alpha;
    left.push_back(before ? p : BranchPair{p.domain, p.domain});
    right.push_back(before ? BranchPair{p.domain, p.domain} : p);
  }
  return {Element::from_pairs(std::move(left)), Element::from_pairs(std::move(right))};
}

std::pair<long, long> abelianization(const Element& a) {
  const auto& f = a.pairs().front();
  const auto& l = a.pairs().back();
  return {static_cast<long>(f.domain.size()) - static_cast<long>(f.range.size()),
          static_cast<long>(l.domain.size()) - static_cast<long>(l.range.size())};
}

}  // namespace thompson
