#include "endoscopy/oracle.hpp"

#include <cmath>
#include <set>

namespace endo {

namespace {

void size_guard(double n) {
  if (n > 1e6) throw std::invalid_argument("oracle enumeration exceeds size guard");
}

}  // namespace

std::string digits_key(const LocalElem& x, int m) {
  const ResidueField& k = x.field()->res();
  std::string key;
  if (x.is_exact_zero() || (x.is_approx_zero() && x.zero_bound() >= m)) {
    for (int i = 0; i < m; ++i) key += k.to_string(k.zero()) + "|";
    return key;
  }
  long v = x.valuation();
  if (v < 0) throw std::domain_error("digit key of non-integral element");
  for (int i = 0; i < m; ++i) {
    if (i < v || i - v >= x.known_digits())
      key += i < v ? k.to_string(k.zero()) + "|"
                   : throw InsufficientPrecision("digit key beyond window");
    else
      key += k.to_string(x.digit(static_cast<int>(i - v))) + "|";
  }
  return key;
}

long oracle_unit_quotient(const ExtPtr& E, int m) {
  if (!E->is_field()) throw std::domain_error("unit quotient needs a field");
  int e = E->e();
  if (m == 0) return e;  // only the uniformizer-lattice factor survives
  const FieldPtr& F = E->base();
  long q = F->q();
  size_guard(std::pow(static_cast<double>(q), 3 * m));
  std::vector<LocalElem> residues = residue_representatives(F, m);
  std::vector<LocalElem> funits = unit_representatives(F, m);

  // Units of O_E mod 1 + w^m O_E are keyed componentwise mod w^m.
  auto unit_test = [&](const LocalElem& a, const LocalElem& b) {
    // Unramified: a or b a unit; ramified (Eisenstein tau): a a unit.
    bool au = !a.possibly_zero() && a.valuation() == 0;
    bool bu = !b.possibly_zero() && b.valuation() == 0;
    return E->kind() == ExtKind::Unramified ? (au || bu) : au;
  };
  std::set<std::string> seen;
  long orbits = 0;
  for (const LocalElem& a : residues) {
    for (const LocalElem& b : residues) {
      if (!unit_test(a, b)) continue;
      std::string key = digits_key(a, m) + "/" + digits_key(b, m);
      if (seen.count(key)) continue;
      ++orbits;
      for (const LocalElem& u : funits)
        seen.insert(digits_key(mul(u, a), m) + "/" + digits_key(mul(u, b), m));
    }
  }
  return e * orbits;
}

bool oracle_norm_membership(const ExtPtr& E, const LocalElem& x, int level) {
  if (x.is_exact_zero()) throw std::domain_error("norm membership of zero");
  if (E->kind() == ExtKind::Split) return true;
  const FieldPtr& F = E->base();
  long q = F->q();
  size_guard(std::pow(static_cast<double>(q), 2 * level));
  long v = x.valuation();
  LocalElem u = x;
  if (E->kind() == ExtKind::Unramified) {
    if (v % 2 != 0) return false;  // unramified norms have even valuation
    u = x.shift(-v);
  } else {
    u = mul(x, E->d().pow(-v));  // N(tau) = d has valuation 1
  }
  std::string target = digits_key(u, level);
  std::vector<LocalElem> residues = residue_representatives(F, level);
  for (const LocalElem& a : residues)
    for (const LocalElem& b : residues) {
      LocalElem n = add(add(mul(a, a), mul(mul(a, b), E->t())),
                        mul(mul(b, b), E->d()));
      if (n.possibly_zero() || n.valuation() != 0) continue;
      if (digits_key(n, level) == target) return true;
    }
  return false;
}

bool oracle_conjugacy(const Mat2& M1, const Mat2& M2, int level, bool gl) {
  const FieldPtr& F = M1.a.field();
  long q = F->q();
  size_guard(std::pow(static_cast<double>(q), 4 * level));
  std::vector<LocalElem> residues = residue_representatives(F, level);
  auto key = [&](const Mat2& M) {
    return digits_key(M.a, level) + digits_key(M.b, level) +
           digits_key(M.c, level) + digits_key(M.d, level);
  };
  LocalElem one = LocalElem::from_int(F, 1);
  for (const LocalElem& a : residues)
    for (const LocalElem& b : residues)
      for (const LocalElem& c : residues)
        for (const LocalElem& d : residues) {
          Mat2 g{a, b, c, d};
          LocalElem det = mat_det(g);
          if (det.possibly_zero() || det.valuation() != 0) continue;
          if (!gl && digits_key(det, level) != digits_key(one, level)) continue;
          // g M1 = M2 g mod w^level
          Mat2 lhs = mat_mul(g, M1);
          Mat2 rhs = mat_mul(M2, g);
          if (key(lhs) == key(rhs)) return true;
        }
  return false;
}

}  // namespace endo
