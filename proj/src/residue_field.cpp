#include "endoscopy/residue_field.hpp"

#include <algorithm>

namespace endo {

namespace {

// Multiply two F_p[x] polynomials and reduce mod (modulus, p).
std::vector<int> polymul_mod(const std::vector<int>& a, const std::vector<int>& b,
                             const std::vector<int>& mod, int p) {
  int f = static_cast<int>(mod.size()) - 1;
  std::vector<int> prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  // Reduce: modulus is monic, x^f = -(lower part).
  for (int d = static_cast<int>(prod.size()) - 1; d >= f; --d) {
    int c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (int k = 0; k < f; ++k)
      prod[d - f + k] = ((prod[d - f + k] - c * mod[k]) % p + p) % p;
  }
  prod.resize(f);
  return prod;
}

}  // namespace

ResidueField::ResidueField(int p, int f, std::vector<int> modulus)
    : p_(p), f_(f) {
  if (p < 2 || f < 1) throw std::invalid_argument("bad residue field parameters");
  q_ = 1;
  for (int i = 0; i < f; ++i) q_ *= p;
  if (q_ > 100000) throw std::invalid_argument("residue field too large");
  if (f == 1) {
    mod_ = {0, 1};
    return;
  }
  if (!modulus.empty()) {
    if (static_cast<int>(modulus.size()) != f + 1 || modulus[f] % p != 1)
      throw std::invalid_argument("modulus must be monic of degree f");
    for (int& c : modulus) c = ((c % p) + p) % p;
    mod_ = std::move(modulus);
    check_irreducible();
    return;
  }
  // Search for an irreducible monic polynomial of degree f.
  long count = 1;
  for (int i = 0; i < f; ++i) count *= p;
  for (long code = 0; code < count; ++code) {
    std::vector<int> cand(f + 1, 0);
    long c = code;
    for (int i = 0; i < f; ++i) {
      cand[i] = static_cast<int>(c % p);
      c /= p;
    }
    cand[f] = 1;
    mod_ = cand;
    try {
      check_irreducible();
      return;
    } catch (const std::invalid_argument&) {
    }
  }
  throw std::logic_error("no irreducible modulus found");
}

void ResidueField::check_irreducible() const {
  // Trial division by all monic polynomials of degree 1..f/2.
  for (int d = 1; 2 * d <= f_; ++d) {
    long count = 1;
    for (int i = 0; i < d; ++i) count *= p_;
    for (long code = 0; code < count; ++code) {
      std::vector<int> div(d + 1, 0);
      long c = code;
      for (int i = 0; i < d; ++i) {
        div[i] = static_cast<int>(c % p_);
        c /= p_;
      }
      div[d] = 1;
      // Long division of mod_ by div over F_p; irreducible iff nonzero remainder.
      std::vector<int> rem = mod_;
      for (int k = f_; k >= d; --k) {
        int lead = rem[k] % p_;
        if (lead == 0) continue;
        for (int j = 0; j <= d; ++j)
          rem[k - d + j] = ((rem[k - d + j] - lead * div[j]) % p_ + p_) % p_;
      }
      bool zero = std::all_of(rem.begin(), rem.end(), [](int x) { return x == 0; });
      if (zero) throw std::invalid_argument("modulus is reducible");
    }
  }
}

FqElem ResidueField::one() const {
  FqElem a = zero();
  a.c[0] = 1;
  return a;
}

FqElem ResidueField::from_int(long n) const {
  FqElem a = zero();
  a.c[0] = static_cast<int>(((n % p_) + p_) % p_);
  return a;
}

FqElem ResidueField::element(long i) const {
  FqElem a = zero();
  for (int k = 0; k < f_; ++k) {
    a.c[k] = static_cast<int>(i % p_);
    i /= p_;
  }
  return a;
}

long ResidueField::index(const FqElem& a) const {
  long i = 0;
  for (int k = f_ - 1; k >= 0; --k) i = i * p_ + a.c[k];
  return i;
}

bool ResidueField::is_zero(const FqElem& a) const {
  return std::all_of(a.c.begin(), a.c.end(), [](int x) { return x == 0; });
}

FqElem ResidueField::add(const FqElem& a, const FqElem& b) const {
  FqElem r = zero();
  for (int i = 0; i < f_; ++i) r.c[i] = (a.c[i] + b.c[i]) % p_;
  return r;
}

FqElem ResidueField::sub(const FqElem& a, const FqElem& b) const {
  FqElem r = zero();
  for (int i = 0; i < f_; ++i) r.c[i] = ((a.c[i] - b.c[i]) % p_ + p_) % p_;
  return r;
}

FqElem ResidueField::neg(const FqElem& a) const { return sub(zero(), a); }

FqElem ResidueField::mul(const FqElem& a, const FqElem& b) const {
  return FqElem{polymul_mod(a.c, b.c, mod_, p_)};
}

FqElem ResidueField::pow(const FqElem& a, long e) const {
  if (e < 0) return pow(inv(a), -e);
  FqElem r = one();
  FqElem base = a;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

FqElem ResidueField::inv(const FqElem& a) const {
  if (is_zero(a)) throw std::domain_error("division by zero in residue field");
  return pow(a, q_ - 2);
}

std::optional<FqElem> ResidueField::sqrt(const FqElem& a) const {
  for (long i = 0; i < q_; ++i) {
    FqElem x = element(i);
    if (mul(x, x) == a) return x;
  }
  return std::nullopt;
}

int ResidueField::legendre(const FqElem& a) const {
  if (is_zero(a)) return 0;
  if (p_ == 2) throw std::domain_error("legendre undefined in characteristic 2");
  FqElem r = pow(a, (q_ - 1) / 2);
  return r == one() ? 1 : -1;
}

int ResidueField::trace_to_prime(const FqElem& a) const {
  FqElem s = zero();
  FqElem x = a;
  for (int i = 0; i < f_; ++i) {
    s = add(s, x);
    x = pow(x, p_);
  }
  return s.c[0];
}

FqElem ResidueField::frobenius_inv(const FqElem& a) const {
  // x -> x^p is a bijection; its inverse is x -> x^(p^(f-1)).
  long e = 1;
  for (int i = 0; i < f_ - 1; ++i) e *= p_;
  return pow(a, e);
}

std::string ResidueField::to_string(const FqElem& a) const {
  if (f_ == 1) return std::to_string(a.c[0]);
  std::string s;
  for (int i = 0; i < f_; ++i) {
    if (i) s += ".";
    s += std::to_string(a.c[i]);
  }
  return s;
}

}  // namespace endo
