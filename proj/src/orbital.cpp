#include "endoscopy/orbital.hpp"

#include <algorithm>
#include <stdexcept>

namespace endo {

namespace {

// Does the character attached to `carrier` coincide with epsilon_{E/F}?
// Characters of F^x trivial on deep units are pinned down by their values
// on the uniformizer and on unit representatives at a fixed level.
bool same_character(const ExtPtr& carrier, const ExtPtr& E) {
  const FieldPtr& F = E->base();
  if (carrier->base()->describe() != F->describe()) return false;
  LocalElem w = LocalElem::uniformizer(F);
  if (carrier->epsilon(w) != E->epsilon(w)) return false;
  int level = std::min(4, F->prec());
  for (const LocalElem& u : unit_representatives(F, level))
    if (carrier->epsilon(u) != E->epsilon(u)) return false;
  return true;
}

enum class KappaMode { Trivial, Matching, Foreign };

KappaMode classify_kappa(const KappaChar& kappa, const ExtPtr& E) {
  if (kappa.trivial() || !kappa.carrier->is_field()) return KappaMode::Trivial;
  return same_character(kappa.carrier, E) ? KappaMode::Matching
                                          : KappaMode::Foreign;
}

}  // namespace

Rational measure_constant(const ExtPtr& E, int m) {
  if (!E->is_field())
    throw std::domain_error("measure constant undefined for a split algebra");
  if (m < 0) throw std::invalid_argument("cell index must be >= 0");
  long q = E->base()->q();
  if (E->kind() == ExtKind::Ramified) return 2 * qpow(q, m);
  return m == 0 ? Rational(1) : (Rational(1) + Rational(1, q)) * qpow(q, m);
}

OrbitalReport orbital(const ExtElem& t, const TestFunction& f,
                      const KappaChar& kappa) {
  const ExtPtr& E = t.E;
  const FieldPtr& F = E->base();
  if (!E->is_field())
    throw std::domain_error("orbital cells require a field extension");
  if (t.b.is_exact_zero())
    throw std::domain_error("orbital integral at a central element");
  if (t.b.is_approx_zero())
    throw InsufficientPrecision("regularity of t undecidable");
  if (!equals(ext_norm(t), LocalElem::from_int(F, 1)))
    throw std::domain_error("torus element must have norm 1");

  KappaMode mode = classify_kappa(kappa, E);
  if (mode == KappaMode::Foreign) return OrbitalReport{Rational(0), {}};

  // Each depth-m cell aggregates conjugators over a full unit shell, so the
  // character contributes through its shell average: the pointwise value
  // for an unramified epsilon (trivial on units), zero for a ramified one.
  bool averaged_out = false;
  if (mode == KappaMode::Matching && E->kind() == ExtKind::Ramified) {
    int level = std::min(4, F->prec());
    Rational sum = 0;
    for (const LocalElem& u : unit_representatives(F, level))
      sum += E->epsilon(u);
    averaged_out = sum == 0;
    if (!averaged_out)
      throw std::logic_error("ramified character with non-vanishing unit sum");
  }

  LocalElem w = LocalElem::uniformizer(F);
  LocalElem d_entry = add(t.a, mul(t.b, E->t()));
  long n = t.b.valuation();
  long vd = E->d().valuation();
  int mmax = static_cast<int>(n + vd) + f.max_r();

  OrbitalReport out;
  out.value = 0;
  for (int m = 0; m <= mmax; ++m) {
    LocalElem bw = mul(t.b, w.pow(m));
    Mat2 cell{t.a, mul(mul(t.b, E->d()), w.pow(-m)).neg(), bw, d_entry};
    int sign = 1;
    if (mode == KappaMode::Matching)
      sign = averaged_out ? 0 : E->epsilon(bw);
    Rational fv = hecke_eval(f, cell);
    Rational C = measure_constant(E, m);
    out.value += C * sign * fv;
    out.cells.push_back(OrbitalCell{m, std::move(C), sign, std::move(fv)});
  }
  return out;
}

Rational orbital_single(const ExtElem& t, const TestFunction& f) {
  // The class of the standard representative collects the cells whose
  // character sign equals epsilon(b), i.e. epsilon(b) times the signed sum.
  Rational rel = orbital(t, f, KappaChar{t.E}).value;
  if (t.E->is_field() && t.E->epsilon(t.b) == -1) rel = -rel;
  return (orbital(t, f).value + rel) / 2;
}

Rational orbital_single_other(const ExtElem& t, const TestFunction& f) {
  Rational rel = orbital(t, f, KappaChar{t.E}).value;
  if (t.E->is_field() && t.E->epsilon(t.b) == -1) rel = -rel;
  return (orbital(t, f).value - rel) / 2;
}

Rational unipotent_kappa_orbital(const FieldPtr& F, int z,
                                 const KappaChar& kappa,
                                 const TestFunction& f) {
  if (z != 1 && z != -1)
    throw std::invalid_argument("central element must be +1 or -1");
  bool trivial = kappa.trivial() || !kappa.carrier->is_field();
  if (!trivial && kappa.carrier->base()->describe() != F->describe())
    throw std::invalid_argument("character carrier lives over another field");
  long q = F->q();

  // kappa restricted to a unit shell {v(n) = m}: its average value, and its
  // value at the uniformizer.  The average is 1 for the trivial character,
  // 1 for an unramified epsilon (trivial on units), and a finite character
  // sum over unit classes for a ramified epsilon (which vanishes).
  Rational unit_avg = 1;
  int eps_w = 1;
  if (!trivial) {
    const ExtPtr& E = kappa.carrier;
    eps_w = E->epsilon(LocalElem::uniformizer(F));
    if (E->kind() == ExtKind::Ramified) {
      int level = std::min(4, F->prec());
      Rational sum = 0;
      long count = 0;
      for (const LocalElem& u : unit_representatives(F, level)) {
        sum += E->epsilon(u);
        ++count;
      }
      unit_avg = sum / count;
    }
  }

  // Shell integrals of kappa(n) dn with additive mass 1 on O:
  //   I_0  = int over O          = unit_avg * (1 - 1/q) / (1 - eps_w/q),
  //   I_r  = int over |n| = q^r  = unit_avg * eps_w^r * q^{r-1} (q - 1).
  Rational i0 = unit_avg * (Rational(1) - Rational(1, q)) /
                (Rational(1) - Rational(eps_w, q));
  Rational value = 0;
  for (int r = 0; r <= f.max_r(); ++r) {
    Rational coeff = f.coeff_at(r);
    if (coeff == 0) continue;
    Rational ir = r == 0 ? i0
                         : unit_avg * qpow(q, r - 1) * (q - 1) *
                               (r % 2 != 0 && eps_w == -1 ? -1 : 1);
    value += coeff * ir;
  }
  return value;
}

}  // namespace endo
