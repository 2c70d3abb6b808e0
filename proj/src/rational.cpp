#include "orient/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace orient {

Rational::Rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::invalid_argument("rational: division by zero");
  v_ /= o.v_;
  return *this;
}

namespace {

bool valid_rational_text(const std::string& s) {
  std::size_t i = 0;
  auto digits = [&]() {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    return i > start;
  };
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (!digits()) return false;
  if (i == s.size()) return true;
  if (s[i] != '/') return false;
  ++i;
  if (!digits()) return false;
  return i == s.size();
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  if (!valid_rational_text(text))
    throw std::invalid_argument("rational: cannot parse '" + text + "'");
  // GMP rejects an explicit leading '+', so drop it after validation.
  const std::string body = text[0] == '+' ? text.substr(1) : text;
  mpq_class v;
  if (v.set_str(body, 10) != 0)
    throw std::invalid_argument("rational: cannot parse '" + text + "'");
  if (v.get_den() == 0)
    throw std::invalid_argument("rational: zero denominator in '" + text + "'");
  v.canonicalize();
  return Rational(v);
}

std::string Rational::str() const { return v_.get_str(); }

Rational Rational::pow(const Rational& base, unsigned long e) {
  Rational result(1);
  Rational b = base;
  while (e > 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational complement(const Rational& p) {
  if (!is_probability(p))
    throw std::domain_error("complement: " + p.str() + " is not in [0, 1]");
  return Rational(1) - p;
}

}  // namespace orient
