#include "thompson/dyadic.hpp"

#include <algorithm>
#include <stdexcept>

namespace thompson {

Dyadic::Dyadic(mpz_class numerator, unsigned long exponent)
    : num_(std::move(numerator)), exp_(exponent) {
  normalize();
}

void Dyadic::normalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  unsigned long tz = mpz_scan1(num_.get_mpz_t(), 0);
  unsigned long k = std::min(tz, exp_);
  if (k > 0) {
    mpz_fdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), k);
    exp_ -= k;
  }
}

Dyadic Dyadic::from_word(std::string_view w) {
  if (!is_binary_word(w)) throw std::invalid_argument("not a binary word: " + std::string(w));
  mpz_class n = 0;
  if (!w.empty()) n.set_str(std::string(w), 2);
  return Dyadic(n, w.size());
}

Dyadic Dyadic::parse(std::string_view text) {
  if (!text.empty() && text.front() == '.') return from_word(text.substr(1));
  std::size_t slash = text.find('/');
  mpz_class p;
  mpz_class q = 1;
  try {
    if (slash == std::string_view::npos) {
      p = mpz_class(std::string(text));
    } else {
      p = mpz_class(std::string(text.substr(0, slash)));
      q = mpz_class(std::string(text.substr(slash + 1)));
    }
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed dyadic: " + std::string(text));
  }
  if (q <= 0 || mpz_popcount(q.get_mpz_t()) != 1) {
    throw std::invalid_argument("denominator is not a power of two: " + std::string(text));
  }
  return Dyadic(p, mpz_scan1(q.get_mpz_t(), 0));
}

Dyadic Dyadic::shifted(long k) const {
  if (k >= 0) {
    unsigned long uk = static_cast<unsigned long>(k);
    if (uk <= exp_) return Dyadic(num_, exp_ - uk);
    mpz_class n;
    mpz_mul_2exp(n.get_mpz_t(), num_.get_mpz_t(), uk - exp_);
    return Dyadic(n, 0);
  }
  return Dyadic(num_, exp_ + static_cast<unsigned long>(-k));
}

std::optional<BinaryWord> Dyadic::to_word() const {
  if (num_ < 0) return std::nullopt;
  if (num_ == 0) return BinaryWord{};
  mpz_class one;
  mpz_ui_pow_ui(one.get_mpz_t(), 2, exp_);
  if (num_ >= one) return std::nullopt;
  std::string digits = num_.get_str(2);
  return std::string(exp_ - digits.size(), '0') + digits;
}

Rational Dyadic::to_rational() const {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, exp_);
  Rational r(num_, den);
  r.canonicalize();
  return r;
}

std::string Dyadic::str() const {
  if (exp_ == 0) return num_.get_str();
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, exp_);
  return num_.get_str() + "/" + den.get_str();
}

static std::pair<mpz_class, mpz_class> aligned(const Dyadic& a, const Dyadic& b, unsigned long& e) {
  e = std::max(a.exponent(), b.exponent());
  mpz_class x;
  mpz_class y;
  mpz_mul_2exp(x.get_mpz_t(), a.numerator().get_mpz_t(), e - a.exponent());
  mpz_mul_2exp(y.get_mpz_t(), b.numerator().get_mpz_t(), e - b.exponent());
  return {x, y};
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  unsigned long e = 0;
  auto [x, y] = aligned(a, b, e);
  return Dyadic(x + y, e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
  unsigned long e = 0;
  auto [x, y] = aligned(a, b, e);
  return Dyadic(x - y, e);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  unsigned long e = 0;
  auto [x, y] = aligned(a, b, e);
  int c = cmp(x, y);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool is_dyadic(const Rational& r) {
  return mpz_popcount(r.get_den_mpz_t()) == 1;
}

Dyadic to_dyadic(const Rational& r) {
  if (!is_dyadic(r)) throw std::invalid_argument("rational is not dyadic: " + r.get_str());
  return Dyadic(r.get_num(), mpz_scan1(r.get_den_mpz_t(), 0));
}

}  // namespace thompson
