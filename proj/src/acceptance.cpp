#include "endoscopy/acceptance.hpp"

#include <random>

#include "endoscopy/field_spec.hpp"
#include "endoscopy/oracle.hpp"
#include "endoscopy/spectral.hpp"

namespace endo {

namespace {

std::vector<FieldPtr> standard_fields() {
  return {LocalField::padic(3, 14), LocalField::padic(5, 14),
          LocalField::laurent(ResidueField(2, 1), 16),
          LocalField::laurent(ResidueField(2, 2), 14)};
}

}  // namespace

ExtElem sample_regular(const ExtPtr& E, std::mt19937_64& rng) {
  const FieldPtr& F = E->base();
  std::vector<LocalElem> reps = residue_representatives(F, 3);
  std::uniform_int_distribution<size_t> pick(0, reps.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  for (;;) {
    ExtElem e{E, reps[pick(rng)], reps[pick(rng)]};
    if (e.a.is_exact_zero() && e.b.is_exact_zero()) continue;
    int shifted = E->e() == 2 ? coin(rng) : 0;
    if (shifted) e = ext_mul(e, ext_tau(E));
    if (ext_val(e) != shifted) continue;
    ExtElem t = norm_one_from(e);
    if (t.b.is_exact_zero() || t.b.is_approx_zero()) continue;
    if (t.b.valuation() > F->prec() - 6) continue;
    return t;
  }
}

namespace {

std::vector<TestFunction> cell_family(int r_max) {
  std::vector<TestFunction> fs{TestFunction::unit()};
  for (int r = 1; r <= r_max; ++r) fs.push_back(TestFunction::cell(r));
  return fs;
}

CriterionResult fundamental_lemma() {
  CriterionResult res{1, "fundamental lemma, unramified, depth <= 4", true,
                      ""};
  for (const FieldPtr& F : standard_fields()) {
    FlReport rep = fl_check(canonical_ext(F, "unramified"), 4);
    if (!rep.applicable || !rep.pass || rep.rows.empty()) {
      res.pass = false;
      res.detail = "failed over " + F->describe();
      return res;
    }
  }
  return res;
}

CriterionResult split_fundamental_lemma() {
  CriterionResult res{2, "split transfer is the unit-group indicator", true,
                      ""};
  for (const FieldPtr& F : standard_fields()) {
    for (const SplitTransferPoint& pt :
         transfer_split(TestFunction::unit(), F, 3, 3)) {
      bool inside = pt.a.valuation() == 0;
      if (pt.value != (inside ? 1 : 0)) {
        res.pass = false;
        res.detail = "failed over " + F->describe();
        return res;
      }
    }
  }
  return res;
}

CriterionResult measure_constants() {
  CriterionResult res{3, "measure constants match the orbit-count oracle",
                      true, ""};
  std::vector<FieldPtr> fields{LocalField::laurent(ResidueField(2, 1), 16),
                               LocalField::padic(3, 14),
                               LocalField::padic(5, 14)};
  for (const FieldPtr& F : fields)
    for (const char* kind : {"unramified", "ramified"})
      for (int m = 0; m <= 2; ++m) {
        auto E = canonical_ext(F, kind);
        if (measure_constant(E, m) != oracle_unit_quotient(E, m)) {
          res.pass = false;
          res.detail = std::string(kind) + " m=" + std::to_string(m) +
                       " over " + F->describe();
          return res;
        }
      }
  return res;
}

CriterionResult stabilization(int samples, std::mt19937_64& rng) {
  CriterionResult res{4, "stable/twisted decomposition over the two classes",
                      true, ""};
  auto fs = cell_family(2);
  for (const FieldPtr& F : standard_fields()) {
    for (const char* kind : {"unramified", "ramified"}) {
      auto E = canonical_ext(F, kind);
      for (int s = 0; s < samples; ++s) {
        ExtElem t = sample_regular(E, rng);
        for (const TestFunction& f : fs) {
          Rational plus = orbital_single(t, f);
          Rational minus = orbital_single_other(t, f);
          Rational stable = orbital(t, f).value;
          Rational rel = orbital(t, f, KappaChar{E}).value;
          if (E->epsilon(t.b) == -1) rel = -rel;
          if (plus != (stable + rel) / 2 || rel != plus - minus ||
              stable != plus + minus) {
            res.pass = false;
            res.detail = "failed over " + E->describe();
            return res;
          }
        }
      }
    }
  }
  return res;
}

CriterionResult kappa_vanishing(int samples, std::mt19937_64& rng) {
  CriterionResult res{5, "kappa-orbital vanishes for a foreign carrier",
                      true, ""};
  for (const FieldPtr& F : standard_fields()) {
    auto Eu = canonical_ext(F, "unramified");
    auto Er = canonical_ext(F, "ramified");
    for (int s = 0; s < samples; ++s) {
      ExtElem tu = sample_regular(Eu, rng);
      ExtElem tr = sample_regular(Er, rng);
      if (orbital(tu, TestFunction::unit(), KappaChar{Er}).value != 0 ||
          orbital(tr, TestFunction::unit(), KappaChar{Eu}).value != 0) {
        res.pass = false;
        res.detail = "failed over " + F->describe();
        return res;
      }
    }
  }
  return res;
}

CriterionResult transfer_factor_identities(int samples, std::mt19937_64& rng) {
  CriterionResult res{6, "transfer factor inversion and square identities",
                      true, ""};
  for (const FieldPtr& F : standard_fields()) {
    for (const char* kind : {"unramified", "ramified"}) {
      auto E = canonical_ext(F, kind);
      int em1 = E->epsilon_minus1();
      for (int s = 0; s < samples; ++s) {
        ExtElem t = sample_regular(E, rng);
        for (auto norm : {AbsNorm::Ext, AbsNorm::Base}) {
          TransferValue d = transfer_factor(E, t, std::nullopt, norm);
          TransferValue dc = transfer_factor(E, ext_conj(t), std::nullopt,
                                             norm);
          TransferValue dT = delta_T(E, t, norm);
          if (!tv_eq(dc, tv_scale(d, em1)) ||
              !tv_eq(tv_mul(d, d), tv_scale(tv_mul(dT, dT), em1))) {
            res.pass = false;
            res.detail = "failed over " + E->describe();
            return res;
          }
        }
      }
    }
  }
  return res;
}

CriterionResult char2_germ_stabilization() {
  CriterionResult res{7, "characteristic-2 germ column stabilizes to f^E(1)",
                      true, ""};
  std::vector<FieldPtr> fields{LocalField::laurent(ResidueField(2, 1), 16),
                               LocalField::laurent(ResidueField(2, 2), 14)};
  for (const FieldPtr& F : fields) {
    for (const char* kind : {"unramified", "ramified"}) {
      auto E = canonical_ext(F, kind);
      for (int r = 0; r <= 1; ++r) {
        TestFunction f = r == 0 ? TestFunction::unit() : TestFunction::cell(r);
        GermProfile p = germ_profile(E, f, 4);
        bool ok = !p.rows.empty() && p.n0 == p.rows.front().n;
        for (const GermRow& row : p.rows)
          ok = ok && row.n >= p.n0 && tv_eq(row.transfer_value, p.limit);
        if (!ok) {
          res.pass = false;
          res.detail = "failed over " + E->describe();
          return res;
        }
      }
    }
  }
  return res;
}

CriterionResult shalika() {
  CriterionResult res{8, "shalika comparison: p=2 refusal, p=3 inversion",
                      true, ""};
  ShalikaReport laurent = shalika_compare(
      LocalField::laurent(ResidueField(2, 1), 16), TestFunction::unit());
  ShalikaReport dyadic =
      shalika_compare(LocalField::padic(2, 12), TestFunction::unit());
  if (!laurent.refused || laurent.reason.empty() || !dyadic.refused ||
      dyadic.reason.empty()) {
    res.pass = false;
    res.detail = "p=2 request was not refused with a reason";
    return res;
  }
  for (const TestFunction& f : cell_family(2)) {
    ShalikaReport odd = shalika_compare(LocalField::padic(3, 14), f);
    if (odd.refused || !odd.pass) {
      res.pass = false;
      res.detail = "p=3 inversion mismatch";
      return res;
    }
  }
  return res;
}

CriterionResult char_identity(int samples, std::mt19937_64& rng) {
  CriterionResult res{9, "pointwise character identity, all theta, level <= 2",
                      true, ""};
  std::vector<FieldPtr> fields{LocalField::laurent(ResidueField(2, 1), 16),
                               LocalField::padic(3, 14)};
  for (const FieldPtr& F : fields) {
    for (const char* kind : {"unramified", "ramified"}) {
      auto E = canonical_ext(F, kind);
      for (int level = 1; level <= 2; ++level) {
        auto chars = enumerate_torus_chars(E, level);
        for (const TorusChar& th : chars)
          for (int s = 0; s < samples; ++s) {
            ExtElem t = sample_regular(E, rng);
            if (!char_identity_check(th, t).pass) {
              res.pass = false;
              res.detail = "failed over " + E->describe();
              return res;
            }
          }
      }
    }
  }
  return res;
}

CriterionResult orthogonality() {
  CriterionResult res{10, "orthogonality integral is 2 (or 4 when theta^2=1)",
                      true, ""};
  std::vector<FieldPtr> fields{LocalField::laurent(ResidueField(2, 1), 16),
                               LocalField::padic(3, 14)};
  for (const FieldPtr& F : fields)
    for (const char* kind : {"unramified", "ramified"})
      for (int level = 1; level <= 2; ++level) {
        auto E = canonical_ext(F, kind);
        for (const TorusChar& th : enumerate_torus_chars(E, level))
          if (orthogonality_integral(th) != (th.order <= 2 ? 4 : 2)) {
            res.pass = false;
            res.detail = "failed over " + E->describe();
            return res;
          }
      }
  return res;
}

CriterionResult weyl() {
  CriterionResult res{11, "spectral average equals the weighted torus sum",
                      true, ""};
  std::vector<FieldPtr> fields{LocalField::laurent(ResidueField(2, 1), 16),
                               LocalField::padic(3, 14)};
  for (const FieldPtr& F : fields)
    for (const char* kind : {"unramified", "ramified"}) {
      auto E = canonical_ext(F, kind);
      for (const TorusChar& th : enumerate_torus_chars(E, 1)) {
        WeylReport rep = weyl_spectral_check(th, TestFunction::unit());
        if (rep.status != WeylReport::Status::Pass) {
          res.pass = false;
          res.detail = "failed over " + E->describe();
          return res;
        }
      }
    }
  return res;
}

CriterionResult intertwining() {
  CriterionResult res{12, "intertwining ratio: series identity and 4/3 value",
                      true, ""};
  for (long q : {2L, 3L, 5L})
    if (!intertwining_series_identity(q, 20)) {
      res.pass = false;
      res.detail = "series coefficients mismatch at q=" + std::to_string(q);
      return res;
    }
  IntertwiningValue v = intertwining_scalar(3, 1);
  if (v.pole || v.value != Rational(4, 3)) {
    res.pass = false;
    res.detail = "value at (3,1) is not 4/3";
  }
  if (!intertwining_scalar(2, 0).pole) {
    res.pass = false;
    res.detail = "pole at x=1 not flagged";
  }
  return res;
}

CriterionResult lambda_constraints() {
  CriterionResult res{13, "lambda constants: unramified 1, square epsilon(-1)",
                      true, ""};
  for (const FieldPtr& F : standard_fields()) {
    for (const char* kind : {"unramified", "ramified", "ramified2"}) {
      auto E = canonical_ext(F, kind);
      LambdaInfo lam = lambda_const(E);
      bool ok = lam.value * lam.value ==
                Quartic::from_sign(E->epsilon_minus1());
      ok = ok && (lam.value * lam.value) * (lam.value * lam.value) ==
                     Quartic(0);
      if (E->kind() == ExtKind::Unramified)
        ok = ok && lam.value == Quartic(0) && lam.canonical;
      if (!ok) {
        res.pass = false;
        res.detail = "failed over " + E->describe();
        return res;
      }
    }
  }
  return res;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(bool quick, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int big = quick ? 10 : 50;
  int mid = quick ? 5 : 20;
  std::vector<CriterionResult> out;
  out.push_back(fundamental_lemma());
  out.push_back(split_fundamental_lemma());
  out.push_back(measure_constants());
  out.push_back(stabilization(big, rng));
  out.push_back(kappa_vanishing(mid, rng));
  out.push_back(transfer_factor_identities(big, rng));
  out.push_back(char2_germ_stabilization());
  out.push_back(shalika());
  out.push_back(char_identity(mid, rng));
  out.push_back(orthogonality());
  out.push_back(weyl());
  out.push_back(intertwining());
  out.push_back(lambda_constraints());
  return out;
}

}  // namespace endo
