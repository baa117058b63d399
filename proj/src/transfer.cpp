#include "endoscopy/transfer.hpp"

#include <map>
#include <stdexcept>

#include "endoscopy/oracle.hpp"

namespace endo {

namespace {

void normalize(TransferValue& v) {
  if (v.mag == 0) {
    v.phase = Quartic();
    v.half = 0;
    return;
  }
  while (v.half >= 2) {
    v.mag *= v.q;
    v.half -= 2;
  }
  while (v.half < 0) {
    v.mag /= v.q;
    v.half += 2;
  }
}

}  // namespace

std::string TransferValue::to_string() const {
  if (mag == 0) return "0";
  std::string out;
  if (!(phase == Quartic())) out += phase.to_string() + "*";
  out += endo::to_string(mag);
  if (half == 1) out += "*sqrt(" + std::to_string(q) + ")";
  return out;
}

TransferValue tv_make(long q, Quartic phase, Rational mag, int sqrt_pow) {
  if (mag < 0) throw std::invalid_argument("magnitude must be >= 0");
  TransferValue v{q, phase, std::move(mag), sqrt_pow};
  normalize(v);
  return v;
}

TransferValue tv_rational(long q, const Rational& r) {
  return tv_make(q, Quartic::from_sign(r < 0 ? -1 : 1), r < 0 ? -r : r, 0);
}

TransferValue tv_mul(const TransferValue& x, const TransferValue& y) {
  if (x.q != y.q) throw std::invalid_argument("mixed-field transfer values");
  return tv_make(x.q, x.phase * y.phase, x.mag * y.mag, x.half + y.half);
}

TransferValue tv_scale(const TransferValue& x, const Rational& r) {
  return tv_mul(x, tv_rational(x.q, r));
}

bool tv_eq(const TransferValue& x, const TransferValue& y) {
  if (x.mag == 0 && y.mag == 0) return true;
  return x.q == y.q && x.phase == y.phase && x.mag == y.mag &&
         x.half == y.half;
}

TransferValue delta_T(const ExtPtr& E, const ExtElem& t, AbsNorm norm) {
  if (!E->is_field())
    throw std::domain_error("transfer factor needs a field extension");
  if (t.b.is_exact_zero())
    throw std::domain_error("transfer factor at a central element");
  if (t.b.is_approx_zero())
    throw InsufficientPrecision("regularity of t undecidable");
  long q = E->base()->q();
  // |b(tau - taubar)|_E = q^{-(2 v(b) + v(disc))}; the base normalization is
  // its square root.
  long sqrt_pow = -(2 * t.b.valuation() + E->tau_diff_val2());
  if (norm == AbsNorm::Ext) sqrt_pow *= 2;
  return tv_make(q, Quartic(), 1, static_cast<int>(sqrt_pow));
}

TransferValue transfer_factor(const ExtPtr& E, const ExtElem& t,
                              std::optional<Quartic> c_override, AbsNorm norm) {
  TransferValue mag = delta_T(E, t, norm);
  Quartic c = c_override ? *c_override : lambda_const(E).value.inv();
  Quartic phase = c * Quartic::from_sign(E->epsilon(t.b));
  return tv_make(mag.q, phase, mag.mag, mag.half);
}

namespace {

// The kappa-orbital cell sum paired with the transfer factor.  The cell
// signs of orbital() are epsilon(b * w^m); the pairing that makes
// Delta * O^eps constant in depth uses the base-point-relative sum
// O(t) - O(t'), which is epsilon(b) times that, cancelling the epsilon(b)
// inside Delta.
TransferValue elliptic_value(const TestFunction& f, const ExtPtr& E,
                             const ExtElem& t, std::optional<Quartic> c,
                             AbsNorm norm) {
  Rational tw = orbital(t, f, KappaChar{E}).value;
  if (E->epsilon(t.b) == -1) tw = -tw;
  return tv_scale(transfer_factor(E, t, c, norm), tw);
}

// A regular witness deep enough that Delta * O^eps has stabilized: its
// value extends f^E to the central coset of z.
ExtElem deep_witness(const ExtPtr& E, const TestFunction& f, int z) {
  const FieldPtr& F = E->base();
  int j = f.max_r() + 2;
  ExtElem t = norm_one_from(ext_add(
      ext_one(E),
      ext_elem(E, LocalElem::zero(F), LocalElem::uniformizer(F).pow(j))));
  if (z == -1) t = ext_neg(t);
  return t;
}

}  // namespace

TransferTable transfer(const TestFunction& f, const ExtPtr& E, int level,
                       std::optional<Quartic> c_override, AbsNorm norm) {
  if (!E->is_field())
    throw std::domain_error(
        "tabulated transfer is for field extensions; use transfer_split");
  const FieldPtr& F = E->base();
  if (level < 1 || level + 2 > F->prec())
    throw std::invalid_argument("tabulation level out of range");
  long q = F->q();

  // Representatives of E^1 mod level-k units via the Hilbert-90 sweep
  // e -> e/conj(e).  Changing e by 1 + w^k O_E moves t within its level-k
  // coset, so sweeping e over units of O_E mod w^k covers the quotient; in
  // the ramified case a second pass over tau-shifted e reaches the odd
  // uniformizer-valuation parameters.
  int sweep = level;
  double size = 1;
  for (int i = 0; i < 2 * sweep; ++i) size *= static_cast<double>(q);
  if (size > 2e6) throw std::invalid_argument("tabulation sweep too large");

  std::map<std::string, ExtElem> reps;
  ExtElem tau = ext_tau(E);
  for (const LocalElem& a : residue_representatives(F, sweep))
    for (const LocalElem& b : residue_representatives(F, sweep)) {
      if (a.is_exact_zero() && b.is_exact_zero()) continue;
      for (int shifted = 0; shifted <= (E->e() == 2 ? 1 : 0); ++shifted) {
        ExtElem e{E, a, b};
        if (shifted) e = ext_mul(e, tau);
        if (ext_val(e) != (shifted ? 1 : 0)) continue;  // need a unit of O_E
        ExtElem t = norm_one_from(e);
        std::string key =
            digits_key(t.a, level) + "/" + digits_key(t.b, level);
        reps.emplace(key, t);
      }
    }

  TransferTable table;
  table.E = E;
  table.level = level;
  table.norm = norm;
  for (auto& [key, t] : reps) {
    TransferPoint pt{t, -1, TransferValue{}};
    bool central = t.b.is_exact_zero() ||
                   (!t.b.is_exact_zero() && t.b.is_approx_zero()) ||
                   t.b.valuation() >= level;
    if (central) {
      // The coset of a central point +-1: extend by continuity with the
      // stabilized value of Delta * O^eps at a deep regular witness.
      LocalElem diff = sub(t.a, LocalElem::from_int(F, 1));
      bool plus = diff.is_exact_zero() || diff.is_approx_zero() ||
                  diff.valuation() >= level;
      pt.value = elliptic_value(f, E, deep_witness(E, f, plus ? 1 : -1),
                                c_override, norm);
    } else {
      pt.vb = t.b.valuation();
      pt.value = elliptic_value(f, E, t, c_override, norm);
    }
    table.points.push_back(std::move(pt));
  }

  // Smoothness: the coarsest j <= level such that the value factors through
  // level-j cosets of the tabulation (it always factors through level-k).
  table.smooth_level = level;
  for (int j = 1; j <= level; ++j) {
    std::map<std::string, TransferValue> buckets;
    bool constant = true;
    for (const TransferPoint& pt : table.points) {
      std::string key = digits_key(pt.t.a, j) + "/" + digits_key(pt.t.b, j);
      auto [it, fresh] = buckets.emplace(key, pt.value);
      if (!fresh && !tv_eq(it->second, pt.value)) {
        constant = false;
        break;
      }
    }
    if (constant) {
      table.smooth_level = j;
      break;
    }
  }
  return table;
}

Rational transfer_split_value(const TestFunction& f, const FieldPtr& F,
                              long v_a) {
  long q = F->q();
  long s = v_a < 0 ? -v_a : v_a;
  // diag(a, a^{-1}) u(n) lies in the double coset of depth max(|v(a)|, r(n));
  // the additive shells with r(n) <= |v(a)| have total mass q^{|v(a)|}.
  Rational value = f.coeff_at(static_cast<int>(s)) * qpow(q, s);
  for (int r = static_cast<int>(s) + 1; r <= f.max_r(); ++r)
    value += f.coeff_at(r) * qpow(q, r - 1) * (q - 1);
  return value;
}

std::vector<SplitTransferPoint> transfer_split(const TestFunction& f,
                                               const FieldPtr& F, int level,
                                               int val_range) {
  std::vector<SplitTransferPoint> out;
  for (long s = -val_range; s <= val_range; ++s) {
    Rational v = transfer_split_value(f, F, s);
    for (const LocalElem& u : unit_representatives(F, level))
      out.push_back(SplitTransferPoint{u.shift(s), v});
  }
  return out;
}

FlReport fl_check(const ExtPtr& E, int n_max) {
  FlReport report;
  if (E->kind() == ExtKind::Ramified) {
    report.applicable = false;
    report.reason = "extension is ramified: the unramified hypothesis of the "
                    "fundamental lemma fails";
    return report;
  }
  if (E->kind() == ExtKind::Split) {
    // Split route: the transferred unit function must be the unit-group
    // indicator.
    const FieldPtr& F = E->base();
    TestFunction f = TestFunction::unit();
    report.pass = true;
    for (long s = 0; s <= n_max; ++s) {
      Rational v = transfer_split_value(f, F, s);
      bool ok = v == (s == 0 ? 1 : 0);
      report.pass = report.pass && ok;
      report.rows.push_back(
          FlRow{static_cast<int>(s), ext_one(E), v, ok, {}});
    }
    return report;
  }

  const FieldPtr& F = E->base();
  long q = F->q();
  TestFunction f = TestFunction::unit();
  KappaChar eps{E};
  report.pass = true;
  // Norm-one witnesses t = e/conj(e) for e = 1 + w^j tau reach each
  // achievable depth v(b) (all n for odd residue characteristic; even n
  // only in characteristic 2, where no other depths exist in E^1).
  std::set<int> seen;
  for (int j = 0; j <= n_max + 1; ++j) {
    ExtElem t = norm_one_from(
        ext_add(ext_one(E), ext_elem(E, LocalElem::zero(F),
                                     LocalElem::uniformizer(F).pow(j))));
    int n = static_cast<int>(t.b.valuation());
    if (n > n_max || !seen.insert(n).second) continue;
    OrbitalReport orb = orbital(t, f, eps);
    Rational value = qpow(q, -n) * orb.value;  // D(b) = |b|_F, c = 1
    bool ok = value == 1;
    report.pass = report.pass && ok;
    report.rows.push_back(FlRow{n, t, value, ok, orb.cells});
  }
  return report;
}

}  // namespace endo
