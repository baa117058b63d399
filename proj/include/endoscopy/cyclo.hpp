#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "endoscopy/rational.hpp"

namespace endo {

// Exact element of a cyclotomic field Q(zeta_m), stored as a coefficient
// vector of length phi(m) in the power basis 1, zeta, ..., zeta^{phi(m)-1}
// reduced modulo the m-th cyclotomic polynomial.  Mixed-order arithmetic
// promotes both operands to the lcm order; the representation at a fixed
// order is unique, so equality is decidable.
class Cyclo {
 public:
  Cyclo() : m_(1), c_(1, Rational(0)) {}
  Cyclo(const Rational& r) : m_(1), c_(1, r) {}
  Cyclo(long n) : Cyclo(Rational(n)) {}

  static Cyclo zeta(long m, long k = 1);

  long order() const { return m_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  Cyclo operator+(const Cyclo& o) const;
  Cyclo operator-(const Cyclo& o) const;
  Cyclo operator*(const Cyclo& o) const;
  Cyclo operator-() const;
  Cyclo pow(long e) const;
  Cyclo inv() const;  // defined for roots of unity times rationals and
                      // generally via inverse in the field
  // Galois action zeta -> zeta^j for gcd(j, m) = 1; j = -1 is complex
  // conjugation.
  Cyclo galois(long j) const;
  Cyclo conj() const { return galois(-1); }

  bool operator==(const Cyclo& o) const;
  bool operator!=(const Cyclo& o) const { return !(*this == o); }
  bool is_zero() const;
  std::optional<Rational> as_rational() const;

  // Rewrite in order M (m must divide M).
  Cyclo promoted(long M) const;

  // Exact rendering, e.g. "zeta8^1 - zeta8^3" or "4/3".
  std::string to_string() const;
  std::complex<double> approx() const;

 private:
  Cyclo(long m, std::vector<Rational> c) : m_(m), c_(std::move(c)) {}
  long m_;
  std::vector<Rational> c_;  // length phi(m_)
};

// The m-th cyclotomic polynomial as integer coefficients, low-to-high,
// monic of degree phi(m).  Cached.
const std::vector<BigInt>& cyclotomic_poly(long m);

long euler_phi(long m);

// A fourth root of unity i^e, the value group of the normalizing constants
// of transfer factors.  Kept separate from Cyclo so sign bookkeeping stays
// integer-exact.
struct Quartic {
  int e = 0;  // exponent of i, mod 4

  Quartic() = default;
  explicit Quartic(int exp) : e(((exp % 4) + 4) % 4) {}
  static Quartic from_sign(int s) { return Quartic(s == 1 ? 0 : 2); }

  Quartic operator*(const Quartic& o) const { return Quartic(e + o.e); }
  Quartic inv() const { return Quartic(-e); }
  bool is_real() const { return e % 2 == 0; }
  // +1 or -1 for the real values; throws otherwise.
  int sign() const;
  Cyclo to_cyclo() const { return Cyclo::zeta(4).pow(e); }
  bool operator==(const Quartic& o) const { return e == o.e; }
  std::string to_string() const;
};

}  // namespace endo
