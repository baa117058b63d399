#include "endoscopy/cyclo.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

namespace endo {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Exact division of integer polynomials (low-to-high), remainder must be 0.
std::vector<BigInt> exact_div(std::vector<BigInt> num, const std::vector<BigInt>& den) {
  std::vector<BigInt> quot(num.size() - den.size() + 1, 0);
  for (int k = static_cast<int>(quot.size()) - 1; k >= 0; --k) {
    BigInt c = num[k + den.size() - 1] / den.back();
    quot[k] = c;
    for (size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
  }
  for (const BigInt& c : num)
    if (c != 0) throw std::logic_error("non-exact polynomial division");
  return quot;
}

// Reduce a rational polynomial modulo the (monic, integer) m-th cyclotomic
// polynomial, returning phi(m) coefficients.
std::vector<Rational> reduce_mod_phi(std::vector<Rational> poly, long m) {
  const std::vector<BigInt>& phi = cyclotomic_poly(m);
  size_t deg = phi.size() - 1;
  if (poly.size() < deg) poly.resize(deg, Rational(0));
  for (int k = static_cast<int>(poly.size()) - 1; k >= static_cast<int>(deg); --k) {
    Rational c = poly[k];
    if (c == 0) continue;
    for (size_t j = 0; j < phi.size(); ++j)
      poly[k - deg + j] -= c * Rational(phi[j]);
  }
  poly.resize(deg);
  return poly;
}

}  // namespace

long euler_phi(long m) {
  long r = m;
  for (long p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      r -= r / p;
      while (m % p == 0) m /= p;
    }
  if (m > 1) r -= r / m;
  return r;
}

const std::vector<BigInt>& cyclotomic_poly(long m) {
  static std::map<long, std::vector<BigInt>> cache;
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  // x^m - 1 divided by Phi_d for every proper divisor d of m.
  std::vector<BigInt> poly(m + 1, 0);
  poly[0] = -1;
  poly[m] = 1;
  for (long d = 1; d < m; ++d)
    if (m % d == 0) poly = exact_div(std::move(poly), cyclotomic_poly(d));
  return cache.emplace(m, std::move(poly)).first->second;
}

Cyclo Cyclo::zeta(long m, long k) {
  if (m < 1) throw std::invalid_argument("root-of-unity order must be positive");
  k = ((k % m) + m) % m;
  std::vector<Rational> poly(k + 1, Rational(0));
  poly[k] = 1;
  return Cyclo(m, reduce_mod_phi(std::move(poly), m));
}

Cyclo Cyclo::promoted(long M) const {
  if (M == m_) return *this;
  if (M % m_ != 0) throw std::invalid_argument("order does not divide target");
  long step = M / m_;
  std::vector<Rational> poly((c_.size() - 1) * step + 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) poly[i * step] = c_[i];
  return Cyclo(M, reduce_mod_phi(std::move(poly), M));
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
  long M = std::lcm(m_, o.m_);
  Cyclo a = promoted(M), b = o.promoted(M);
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
  return a;
}

Cyclo Cyclo::operator-(const Cyclo& o) const { return *this + (-o); }

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (Rational& c : r.c_) c = -c;
  return r;
}

Cyclo Cyclo::operator*(const Cyclo& o) const {
  long M = std::lcm(m_, o.m_);
  Cyclo a = promoted(M), b = o.promoted(M);
  std::vector<Rational> poly(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) poly[i + j] += a.c_[i] * b.c_[j];
  }
  return Cyclo(M, reduce_mod_phi(std::move(poly), M));
}

Cyclo Cyclo::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  Cyclo r(Rational(1));
  Cyclo base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    if (e >>= 1) base = base * base;
  }
  return r;
}

Cyclo Cyclo::inv() const {
  if (is_zero()) throw std::domain_error("inverse of zero cyclotomic value");
  if (auto r = as_rational()) return Cyclo(Rational(1) / *r);
  // Extended Euclid in Q[x] against Phi_m.
  const std::vector<BigInt>& phi_int = cyclotomic_poly(m_);
  std::vector<Rational> r0(phi_int.begin(), phi_int.end());
  std::vector<Rational> r1 = c_;
  std::vector<Rational> s0 = {Rational(0)}, s1 = {Rational(1)};
  auto trim = [](std::vector<Rational>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    // r0 = q*r1 + rem
    std::vector<Rational> q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0,
                            Rational(0));
    std::vector<Rational> rem = r0;
    for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) {
      Rational c = rem[k + r1.size() - 1] / r1.back();
      q[k] = c;
      for (size_t j = 0; j < r1.size(); ++j) rem[k + j] -= c * r1[j];
    }
    trim(rem);
    // s2 = s0 - q*s1
    std::vector<Rational> s2 = s0;
    if (!q.empty() && !s1.empty()) {
      s2.resize(std::max(s0.size(), q.size() + s1.size() - 1), Rational(0));
      for (size_t i = 0; i < q.size(); ++i)
        for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
    }
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant (Phi_m has no common factor with a nonzero
  // element of degree < phi(m)); inverse = s0 / r0.
  if (r0.size() != 1) throw std::logic_error("cyclotomic inverse: gcd not constant");
  for (Rational& c : s0) c /= r0[0];
  s0.resize(euler_phi(m_), Rational(0));
  return Cyclo(m_, std::move(s0));
}

Cyclo Cyclo::galois(long j) const {
  j = ((j % m_) + m_) % m_;
  if (std::gcd(j, m_) != 1) throw std::invalid_argument("galois exponent not coprime");
  std::vector<Rational> poly(m_, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i)
    poly[(i * j) % m_] += c_[i];
  return Cyclo(m_, reduce_mod_phi(std::move(poly), m_));
}

bool Cyclo::operator==(const Cyclo& o) const {
  long M = std::lcm(m_, o.m_);
  return promoted(M).c_ == o.promoted(M).c_;
}

bool Cyclo::is_zero() const {
  for (const Rational& c : c_)
    if (c != 0) return false;
  return true;
}

std::optional<Rational> Cyclo::as_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return std::nullopt;
  return c_[0];
}

std::string Cyclo::to_string() const {
  if (auto r = as_rational()) return endo::to_string(*r);
  std::string s;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    Rational c = c_[i];
    if (s.empty()) {
      if (c < 0) {
        s += "-";
        c = -c;
      }
    } else {
      s += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    }
    std::string term;
    if (i == 0) {
      term = endo::to_string(c);
    } else {
      if (c != 1) term = endo::to_string(c) + "*";
      term += "zeta" + std::to_string(m_);
      if (i > 1) term += "^" + std::to_string(i);
    }
    s += term;
  }
  return s;
}

std::complex<double> Cyclo::approx() const {
  std::complex<double> z = 0;
  for (size_t i = 0; i < c_.size(); ++i) {
    double x = static_cast<double>(numerator(c_[i])) /
               static_cast<double>(denominator(c_[i]));
    double ang = 2 * kPi * static_cast<double>(i) / static_cast<double>(m_);
    z += x * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return z;
}

int Quartic::sign() const {
  if (e == 0) return 1;
  if (e == 2) return -1;
  throw std::domain_error("imaginary fourth root has no sign");
}

std::string Quartic::to_string() const {
  switch (e) {
    case 0: return "1";
    case 1: return "i";
    case 2: return "-1";
    default: return "-i";
  }
}

}  // namespace endo
