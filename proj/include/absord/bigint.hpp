#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace absord {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int ipow(const Int& base, unsigned k) {
  return boost::multiprecision::pow(base, k);
}

inline Rational rpow(const Rational& base, long k) {
  Rational r = 1;
  Rational b = k >= 0 ? base : Rational(1) / base;
  unsigned long e = k >= 0 ? static_cast<unsigned long>(k)
                           : static_cast<unsigned long>(-k);
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline std::string to_string(const Int& v) { return v.str(); }

inline std::string to_string(const Rational& v) {
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

}  // namespace absord
