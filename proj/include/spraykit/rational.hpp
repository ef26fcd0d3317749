#pragma once

// Exact rational scalars. Coefficient arithmetic everywhere in this library
// is arbitrary precision; no floating point enters the algebraic layer.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace spraykit {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& q) { return numerator(q); }
inline Integer den(const Rational& q) { return denominator(q); }

inline Rational make_rational(const Integer& n, const Integer& d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  return Rational(n) / Rational(d);
}

// q^e for integer e (e < 0 requires q != 0).
inline Rational rat_pow(Rational q, long long e) {
  if (e < 0) {
    if (q == 0) throw std::domain_error("0 raised to negative power");
    q = Rational(denominator(q)) / Rational(numerator(q));
    e = -e;
  }
  Rational r(1);
  while (e > 0) {
    if (e & 1) r *= q;
    q *= q;
    e >>= 1;
  }
  return r;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Exact: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("non-finite double");
  return Rational(x);
}

inline std::string rat_to_string(const Rational& q) {
  std::string s = numerator(q).str();
  s += '/';
  s += denominator(q).str();
  return s;
}

// Accepts "a/b" or "a"; sign on the numerator.
inline Rational rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer n(s.substr(0, slash));
    Integer d(s.substr(slash + 1));
    return make_rational(n, d);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
}

inline int sign(const Rational& q) {
  if (q == 0) return 0;
  return q < 0 ? -1 : 1;
}

}  // namespace spraykit
