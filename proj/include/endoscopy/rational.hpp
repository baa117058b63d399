#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace endo {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational pow_rat(const Rational& base, long e) {
  Rational out = 1;
  Rational b = e < 0 ? Rational(1) / base : base;
  for (long i = 0; i < (e < 0 ? -e : e); ++i) out *= b;
  return out;
}

// q^e for integer q, any sign of e.
inline Rational qpow(long q, long e) { return pow_rat(Rational(q), e); }

}  // namespace endo
