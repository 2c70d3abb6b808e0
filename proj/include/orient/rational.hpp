#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace orient {

// Exact rational number, used for every probability in the engine. Thin value
// wrapper around GMP's mpq_class; always kept canonical (lowest terms,
// positive denominator). No floating point is involved anywhere: equality and
// ordering are exact.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long value) : v_(value) {}  // NOLINT: implicit by design
  Rational(long num, long den);
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  // Accepts "num" or "num/den" with optional leading '-'. Throws
  // std::invalid_argument on malformed input or a zero denominator.
  static Rational parse(const std::string& text);

  // Canonical serialization: "num/den" in lowest terms, or just "num" when the
  // denominator is 1. parse() accepts both, so round-trips are exact.
  std::string str() const;

  double to_double() const { return v_.get_d(); }
  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  // base^e by repeated squaring (e >= 0).
  static Rational pow(const Rational& base, unsigned long e);

  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// 1 - p. Throws std::domain_error unless p lies in [0, 1]; every call site is
// interpreting p as a probability, so this catches bad parameters early.
Rational complement(const Rational& p);

inline bool is_probability(const Rational& p) {
  return p.sign() >= 0 && p <= Rational(1);
}

// Free-function spelling of Rational::parse, convenient for CLI plumbing.
inline Rational parse_rational(const std::string& text) { return Rational::parse(text); }

}  // namespace orient
