#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace endo {

// Element of F_q = F_p[x]/(modulus), stored as coefficient vector of
// length f with entries in [0, p).
struct FqElem {
  std::vector<int> c;

  bool operator==(const FqElem& o) const { return c == o.c; }
};

// The residue field F_q, q = p^f.  For f = 1 the modulus is x - 0 and
// elements are plain integers mod p.
class ResidueField {
 public:
  // modulus: monic irreducible of degree f, coefficients low-to-high,
  // size f+1, last entry 1.  Empty modulus picks a default (found by
  // search) for f > 1, identity for f = 1.
  ResidueField(int p, int f, std::vector<int> modulus = {});

  int p() const { return p_; }
  int f() const { return f_; }
  long q() const { return q_; }
  const std::vector<int>& modulus() const { return mod_; }

  FqElem zero() const { return FqElem{std::vector<int>(f_, 0)}; }
  FqElem one() const;
  FqElem from_int(long n) const;
  // The i-th element in the fixed enumeration, 0 <= i < q.
  FqElem element(long i) const;
  long index(const FqElem& a) const;

  bool is_zero(const FqElem& a) const;
  FqElem add(const FqElem& a, const FqElem& b) const;
  FqElem sub(const FqElem& a, const FqElem& b) const;
  FqElem neg(const FqElem& a) const;
  FqElem mul(const FqElem& a, const FqElem& b) const;
  FqElem inv(const FqElem& a) const;
  FqElem pow(const FqElem& a, long e) const;

  // Square root by exhaustive search (q is small by construction);
  // empty if a is not a square.
  std::optional<FqElem> sqrt(const FqElem& a) const;
  // Quadratic-residue character for odd q: +1 squares, -1 non-squares,
  // 0 at zero.
  int legendre(const FqElem& a) const;
  // Absolute trace to F_p, returned as an integer in [0, p).
  int trace_to_prime(const FqElem& a) const;
  // Inverse of x -> x^p (bijective); used in characteristic-2 square roots.
  FqElem frobenius_inv(const FqElem& a) const;

  std::string to_string(const FqElem& a) const;

  bool operator==(const ResidueField& o) const {
    return p_ == o.p_ && f_ == o.f_ && mod_ == o.mod_;
  }

 private:
  int p_;
  int f_;
  long q_;
  std::vector<int> mod_;  // size f_+1, monic

  void check_irreducible() const;
};

}  // namespace endo
