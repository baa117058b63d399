#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "endoscopy/field_spec.hpp"
#include "endoscopy/quad_ext.hpp"

using namespace endo;

namespace {

FieldPtr q3() { return LocalField::padic(3, 12); }
FieldPtr q5() { return LocalField::padic(5, 12); }
FieldPtr f2t() { return LocalField::laurent(ResidueField(2, 1), 12); }
FieldPtr f4t() { return LocalField::laurent(ResidueField(2, 2), 12); }

// Deterministic unit sweep for sampling E-elements.
std::vector<ExtElem> sample_elems(const ExtPtr& E, int level) {
  std::vector<ExtElem> out;
  auto as = unit_representatives(E->base(), level);
  auto bs = residue_representatives(E->base(), level);
  for (size_t i = 0; i < as.size(); ++i)
    out.push_back(ext_elem(E, as[i], bs[(2 * i + 1) % bs.size()]));
  return out;
}

}  // namespace

TEST_CASE("classification over Q_5") {
  auto F = q5();
  // X^2 - 2: d = -2, disc = 8; 2 is a nonsquare unit mod 5.
  auto E1 = QuadExt::build(F, LocalElem::zero(F), LocalElem::from_int(F, -2));
  CHECK(E1->kind() == ExtKind::Unramified);
  // X^2 - 5 (Eisenstein).
  auto E2 = QuadExt::build(F, LocalElem::zero(F), LocalElem::from_int(F, -5));
  CHECK(E2->kind() == ExtKind::Ramified);
  // X^2 - 4 splits.
  auto E3 = QuadExt::build(F, LocalElem::zero(F), LocalElem::from_int(F, -4));
  CHECK(E3->kind() == ExtKind::Split);
  LocalElem r = E3->split_root();
  // r^2 - t r + d = r^2 - 4 should vanish to precision.
  CHECK(sub(mul(r, r), LocalElem::from_int(F, 4)).possibly_zero());
}

TEST_CASE("double root and inseparable inputs rejected") {
  auto F = q5();
  CHECK_THROWS_AS(QuadExt::build(F, LocalElem::from_int(F, 2),
                                 LocalElem::from_int(F, 1)),
                  std::invalid_argument);  // (X-1)^2
  auto L = f2t();
  CHECK_THROWS_AS(QuadExt::build(L, LocalElem::zero(L),
                                 LocalElem::uniformizer(L)),
                  std::invalid_argument);  // char 2 needs t != 0
  // Non-integral presentation rejected.
  CHECK_THROWS_AS(QuadExt::build(L, LocalElem::from_int(L, 1),
                                 LocalElem::uniformizer(L).inv()),
                  std::invalid_argument);
}

TEST_CASE("characteristic-2 classification by Artin-Schreier reduction") {
  auto L = f2t();
  LocalElem t = LocalElem::uniformizer(L);
  LocalElem one = LocalElem::from_int(L, 1);
  // X^2 + X + t: c = t integral, residue 0, trace 0 -> split.
  CHECK(QuadExt::build(L, one, t)->kind() == ExtKind::Split);
  // X^2 + X + 1: c = 1, Tr_{F_2}(1) = 1 -> unramified.
  CHECK(QuadExt::build(L, one, one)->kind() == ExtKind::Unramified);
  // X^2 + tX + t: c = 1/t has odd negative valuation -> ramified.
  CHECK(QuadExt::build(L, t, t)->kind() == ExtKind::Ramified);
  // Even-negative-valuation leading terms reduce away: with t-coefficient
  // t^2 and d = t^2 + t^3, c = t^{-2} + t^{-1} reduces to 0 -> split.
  LocalElem t2 = t.pow(2);
  LocalElem d = add(t2, t.pow(3));
  auto E = QuadExt::build(L, t2, d);
  CHECK(E->kind() == ExtKind::Split);
  // The computed root satisfies the quadratic to precision.
  LocalElem r = E->split_root();
  LocalElem resid = add(sub(mul(r, r), mul(t2, r)), d);
  CHECK(resid.possibly_zero());
}

TEST_CASE("characteristic-2 classification over F_4") {
  auto L = f4t();
  const ResidueField& k = L->res();
  LocalElem one = LocalElem::from_int(L, 1);
  // Find a trace-one residue constant: gives the unramified extension.
  auto E = canonical_ext(L, "unramified");
  CHECK(E->kind() == ExtKind::Unramified);
  // Trace-zero constant (nonzero) gives a split algebra.
  for (long i = 1; i < k.q(); ++i) {
    if (k.trace_to_prime(k.element(i)) == 0) {
      auto S = QuadExt::build(L, one, LocalElem::from_residue(L, k.element(i)));
      CHECK(S->kind() == ExtKind::Split);
      break;
    }
  }
  CHECK(canonical_ext(L, "ramified")->kind() == ExtKind::Ramified);
  CHECK(canonical_ext(L, "ramified2")->kind() == ExtKind::Ramified);
}

TEST_CASE("norm, trace, conjugation identities") {
  for (auto F : {q3(), q5(), f2t(), f4t()}) {
    for (const char* name : {"unramified", "ramified"}) {
      auto E = canonical_ext(F, name);
      for (const ExtElem& x : sample_elems(E, 2)) {
        // x * conj(x) = N(x) as an element of F.
        ExtElem prod = ext_mul(x, ext_conj(x));
        CHECK(equals(prod.a, ext_norm(x)));
        CHECK(prod.b.possibly_zero());
        // trace = x + conj(x).
        ExtElem s = ext_add(x, ext_conj(x));
        CHECK(equals(s.a, ext_trace(x)));
        CHECK(s.b.possibly_zero());
        // inverse.
        if (!ext_norm(x).possibly_zero()) {
          ExtElem inv = ext_inv(x);
          ExtElem p = ext_mul(x, inv);
          CHECK(equals(p.a, LocalElem::from_int(F, 1)));
          CHECK(p.b.possibly_zero());
        }
      }
    }
  }
}

TEST_CASE("epsilon: unramified valuation rule") {
  auto F = q3();
  auto E = canonical_ext(F, "unramified");
  CHECK(E->epsilon(LocalElem::from_int(F, 3)) == -1);
  CHECK(E->epsilon(LocalElem::from_int(F, 9)) == 1);
  CHECK(E->epsilon(LocalElem::from_int(F, 7)) == 1);
  CHECK(E->epsilon(LocalElem::from_int(F, 6)) == -1);
}

TEST_CASE("epsilon is trivial on norms") {
  for (auto F : {q3(), q5(), f2t(), f4t()}) {
    for (const char* name : {"unramified", "ramified", "ramified2"}) {
      auto E = canonical_ext(F, name);
      int checked = 0;
      for (const ExtElem& x : sample_elems(E, 2)) {
        LocalElem n = ext_norm(x);
        if (n.possibly_zero()) continue;
        CHECK(E->epsilon(n) == 1);
        ++checked;
      }
      CHECK(checked > 0);
      // And on norms of tau and shifted elements (odd valuations too).
      CHECK(E->epsilon(E->d()) == 1);  // N(tau) = d
    }
  }
}

TEST_CASE("epsilon multiplicativity") {
  for (auto F : {q3(), f2t()}) {
    for (const char* name : {"unramified", "ramified", "ramified2"}) {
      auto E = canonical_ext(F, name);
      std::vector<LocalElem> xs;
      for (const LocalElem& u : unit_representatives(F, 3)) {
        xs.push_back(u);
        xs.push_back(u.shift(1));
      }
      for (size_t i = 0; i < xs.size(); ++i) {
        const LocalElem& x = xs[i];
        const LocalElem& y = xs[(3 * i + 7) % xs.size()];
        CHECK(E->epsilon(mul(x, y)) == E->epsilon(x) * E->epsilon(y));
      }
    }
  }
}

TEST_CASE("epsilon is nontrivial with index-2 kernel for field extensions") {
  for (auto F : {q3(), f2t()}) {
    for (const char* name : {"unramified", "ramified", "ramified2"}) {
      auto E = canonical_ext(F, name);
      int plus = 0, minus = 0;
      for (const LocalElem& u : unit_representatives(F, 3)) {
        for (int v = 0; v <= 1; ++v) {
          int e = E->epsilon(u.shift(v));
          (e == 1 ? plus : minus)++;
        }
      }
      CHECK(plus == minus);  // index 2 on this symmetric sample
      CHECK(minus > 0);
    }
    CHECK(canonical_ext(F, "split")->epsilon(LocalElem::uniformizer(F)) == 1);
  }
}

TEST_CASE("the two characteristic-2 ramified extensions are distinguished") {
  auto L = f2t();
  auto R1 = canonical_ext(L, "ramified");
  auto R2 = canonical_ext(L, "ramified2");
  LocalElem t = LocalElem::uniformizer(L);
  CHECK(R1->epsilon(t) * R2->epsilon(t) == -1);  // they differ at t
}

TEST_CASE("epsilon(det w_E) = epsilon(-1): epsilon(d) is always +1") {
  // det of [[0, d],[1, 0]]-style Weyl representative is -d, and d = N(tau).
  for (auto F : {q3(), q5(), f2t(), f4t()}) {
    for (const char* name : {"unramified", "ramified"}) {
      auto E = canonical_ext(F, name);
      CHECK(E->epsilon(E->d()) == 1);
      CHECK(E->epsilon(E->d().neg()) == E->epsilon_minus1());
    }
  }
}

TEST_CASE("norm-one parametrization lands on the norm-one torus") {
  for (auto F : {q3(), f2t(), f4t()}) {
    for (const char* name : {"unramified", "ramified"}) {
      auto E = canonical_ext(F, name);
      for (const ExtElem& e : sample_elems(E, 2)) {
        if (ext_norm(e).possibly_zero()) continue;
        ExtElem u = norm_one_from(e);
        CHECK(equals(ext_norm(u), LocalElem::from_int(F, 1)));
      }
    }
  }
}

TEST_CASE("lambda constants") {
  // Unramified and split: exactly 1.
  CHECK(lambda_const(canonical_ext(q3(), "unramified")).value == Quartic(0));
  CHECK(lambda_const(canonical_ext(f2t(), "unramified")).value == Quartic(0));
  CHECK(lambda_const(canonical_ext(q3(), "split")).value == Quartic(0));
  // Q_3 ramified: Gauss sum over F_3 is i*sqrt(3).
  auto l3 = lambda_const(canonical_ext(q3(), "ramified"));
  CHECK(l3.canonical);
  CHECK(l3.value == Quartic(1));
  // Q_5 ramified: Gauss sum over F_5 is sqrt(5).
  auto l5 = lambda_const(canonical_ext(q5(), "ramified"));
  CHECK(l5.value == Quartic(0));
  // lambda^2 = epsilon(-1), lambda^4 = 1 everywhere computable.
  for (auto F : {q3(), q5(), f2t(), f4t()}) {
    for (const char* name : {"split", "unramified", "ramified", "ramified2"}) {
      auto E = canonical_ext(F, name);
      LambdaInfo li = lambda_const(E);
      Quartic sq = li.value * li.value;
      CHECK(sq == Quartic::from_sign(E->kind() == ExtKind::Split
                                         ? 1
                                         : E->epsilon_minus1()));
      CHECK((li.value * li.value * li.value * li.value) == Quartic(0));
    }
  }
  // Char-2 ramified lambda is configurable and flagged non-canonical.
  auto lr = lambda_const(canonical_ext(f2t(), "ramified"));
  CHECK_FALSE(lr.canonical);
  CHECK(lambda_const(canonical_ext(f2t(), "ramified"), -1).value == Quartic(2));
}

TEST_CASE("Gauss sum square identity, exact") {
  for (int p : {3, 5, 7}) {
    ResidueField k(p, 1);
    Cyclo g = gauss_sum(k);
    CHECK(g * g == Cyclo(Rational(k.legendre(k.from_int(-1)) * p)));
  }
  ResidueField f9(3, 2);
  Cyclo g9 = gauss_sum(f9);
  CHECK(g9 * g9 == Cyclo(Rational(f9.legendre(f9.from_int(-1)) * 9)));
}

TEST_CASE("field and extension spec strings round-trip") {
  auto F = parse_field("Qp:p=3,prec=12");
  CHECK(F->p() == 3);
  CHECK(F->kind() == FieldKind::Padic);
  auto L = parse_field("Fq:p=2,f=2,prec=10");
  CHECK(L->q() == 4);
  auto E = parse_ext(L, "unramified");
  CHECK(E->kind() == ExtKind::Unramified);
  auto E2 = parse_ext(L, ext_spec_string(E));
  CHECK(E2->kind() == ExtKind::Unramified);
  CHECK(equals(E2->d(), E->d()));
  // Expression elements.
  LocalElem x = parse_elem(L, "g*t^2 + 1");
  CHECK(x.valuation() == 0);
  CHECK(x.digit(2) == L->res().element(2));
  auto Eram = parse_ext(parse_field("Fq:p=2,f=1,prec=12"), "ext:t=t,d=t*(1+t)");
  CHECK(Eram->kind() == ExtKind::Ramified);
}

TEST_CASE("artin_schreier_root solves its equation") {
  auto L = f2t();
  LocalElem t = LocalElem::uniformizer(L);
  for (int e = 1; e <= 4; ++e) {
    LocalElem c = t.pow(e);
    auto y = artin_schreier_root(c);
    REQUIRE(y.has_value());
    LocalElem resid = add(add(mul(*y, *y), *y), c);
    CHECK(resid.possibly_zero());  // vanishes within the precision window
  }
  // Unsolvable: c = 1 over F_2((t)).
  CHECK_FALSE(artin_schreier_root(LocalElem::from_int(L, 1)).has_value());
}
