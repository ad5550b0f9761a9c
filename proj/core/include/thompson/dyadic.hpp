#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "thompson/word.hpp"

namespace thompson {

// Exact rational with arbitrary-precision numerator and denominator.
using Rational = mpq_class;

// Exact dyadic rational numerator / 2^exponent, kept with the numerator odd
// (or zero with exponent 0).
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(mpz_class numerator, unsigned long exponent);
  explicit Dyadic(long value) : Dyadic(mpz_class(value), 0) {}

  // The binary fraction .w.
  static Dyadic from_word(std::string_view w);
  // Accepts "p/q" with q a power of two, an integer, or a binary fraction ".0101".
  static Dyadic parse(std::string_view text);

  const mpz_class& numerator() const { return num_; }
  unsigned long exponent() const { return exp_; }

  // Multiplies by 2^k.
  Dyadic shifted(long k) const;
  // Shortest word w with .w equal to this value; the word ends in 1 for
  // values in (0,1) and is empty for 0. Absent outside [0,1).
  std::optional<BinaryWord> to_word() const;

  Rational to_rational() const;
  std::string str() const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  void normalize();

  mpz_class num_ = 0;
  unsigned long exp_ = 0;
};

// True iff the denominator of r is a power of two.
bool is_dyadic(const Rational& r);
Dyadic to_dyadic(const Rational& r);  // precondition: is_dyadic(r)

}  // namespace thompson
