#include "endoscopy/germs.hpp"

#include <set>
#include <stdexcept>

#include "endoscopy/field_spec.hpp"

namespace endo {

GermProfile germ_profile(const ExtPtr& E, const TestFunction& f, int n_max,
                         std::optional<Quartic> c_override) {
  if (!E->is_field())
    throw std::domain_error("germ profile needs a field extension");
  const FieldPtr& F = E->base();
  if (n_max + f.max_r() + 4 > F->prec())
    throw std::invalid_argument("depth range exceeds the precision window");

  GermProfile profile;
  profile.E = E;
  KappaChar eps{E};
  std::set<int> seen;
  for (int j = 0; j <= n_max + 1; ++j) {
    ExtElem t = norm_one_from(ext_add(
        ext_one(E),
        ext_elem(E, LocalElem::zero(F), LocalElem::uniformizer(F).pow(j))));
    int n = static_cast<int>(t.b.valuation());
    if (n > n_max || !seen.insert(n).second) continue;
    Rational stable = orbital(t, f).value;
    Rational twisted = orbital(t, f, eps).value;
    Rational rel = E->epsilon(t.b) == -1 ? -twisted : twisted;
    TransferValue tv =
        tv_scale(transfer_factor(E, t, c_override, AbsNorm::Base), rel);
    TransferValue sn = tv_scale(delta_T(E, t, AbsNorm::Base), stable);
    profile.rows.push_back(GermRow{n, t, std::move(stable),
                                   std::move(twisted), std::move(tv),
                                   std::move(sn)});
  }
  if (profile.rows.empty())
    throw std::logic_error("no admissible depths in range");

  profile.limit = profile.rows.back().transfer_value;
  profile.n0 = profile.rows.back().n;
  for (auto it = profile.rows.rbegin(); it != profile.rows.rend(); ++it) {
    if (!tv_eq(it->transfer_value, profile.limit)) break;
    profile.n0 = it->n;
  }

  // Affine model stable = c1 + c2 q^n fitted on the first two rows and
  // verified on the rest.
  long q = F->q();
  if (profile.rows.size() >= 2) {
    Rational x0 = qpow(q, profile.rows[0].n);
    Rational x1 = qpow(q, profile.rows[1].n);
    profile.fit_c2 =
        (profile.rows[1].stable - profile.rows[0].stable) / (x1 - x0);
    profile.fit_c1 = profile.rows[0].stable - profile.fit_c2 * x0;
    profile.fit_ok = true;
    for (const GermRow& row : profile.rows)
      profile.fit_ok =
          profile.fit_ok &&
          row.stable == profile.fit_c1 + profile.fit_c2 * qpow(q, row.n);
  }
  return profile;
}

ShalikaReport shalika_compare(const FieldPtr& F, const TestFunction& f) {
  ShalikaReport report;
  if (F->p() == 2) {
    report.refused = true;
    report.reason =
        F->kind() == FieldKind::LaurentSeries
            ? "residue characteristic 2 with char F = 2: the square classes "
              "F^x/(F^x)^2 form an uncountably infinite group, so the finite "
              "Fourier inversion over its dual does not exist"
            : "residue characteristic 2: F^x/(F^x)^2 has 8 classes, not the "
              "4-element group the inversion is stated for";
    return report;
  }
  long q = F->q();

  // The four square classes {1, u, pi, u*pi} and the dual, realized by the
  // quadratic extensions' characters plus the trivial one.
  auto Eu = canonical_ext(F, "unramified");
  auto Er = canonical_ext(F, "ramified");
  auto Er2 = canonical_ext(F, "ramified2");
  LocalElem one = LocalElem::from_int(F, 1);
  LocalElem u = LocalElem::zero(F);
  bool found = false;
  for (const LocalElem& cand : unit_representatives(F, 1))
    if (is_square(cand) == SquareVerdict::No) {
      u = cand;
      found = true;
      break;
    }
  if (!found) throw std::logic_error("no non-square unit found");
  LocalElem pi = LocalElem::uniformizer(F);
  std::vector<LocalElem> reps{one, u, pi, mul(u, pi)};
  report.classes = {"1", "u", "pi", "u*pi"};
  std::vector<KappaChar> dual{KappaChar{}, KappaChar{Eu}, KappaChar{Er},
                              KappaChar{Er2}};

  for (const KappaChar& kappa : dual)
    report.kappa_values.push_back(unipotent_kappa_orbital(F, 1, kappa, f));

  // Fourier inversion O(eta, f) = (1/4) sum_kappa kappa(eta) O^kappa(nu, f).
  for (const LocalElem& eta : reps) {
    Rational v = 0;
    for (size_t k = 0; k < dual.size(); ++k)
      v += Rational(dual[k](eta)) * report.kappa_values[k];
    report.inverted.push_back(v / 4);
  }

  // Independent evaluation: the orbit through eta*nu meets the shell
  // {v(n) = m} exactly when m has the parity of v(eta), in half of the
  // shell (one of the two unit square classes).
  for (const LocalElem& eta : reps) {
    int parity = static_cast<int>(((eta.valuation() % 2) + 2) % 2);
    Rational v = f.coeff_at(0) * (Rational(1) - Rational(1, q)) / 2 *
                 qpow(q, -parity) / (Rational(1) - qpow(q, -2));
    for (int r = 1; r <= f.max_r(); ++r)
      if (r % 2 == parity)
        v += f.coeff_at(r) * qpow(q, r - 1) * (q - 1) / 2;
    report.direct.push_back(v);
  }

  report.pass = report.inverted == report.direct;
  // Additivity: the four plain orbital values resum to the full unipotent
  // integral of the trivial character.
  Rational total = 0;
  for (const Rational& v : report.inverted) total += v;
  report.pass = report.pass && total == report.kappa_values[0];
  return report;
}

}  // namespace endo
