#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "endoscopy/field_spec.hpp"
#include "endoscopy/germs.hpp"

using namespace endo;

namespace {

FieldPtr q3() { return LocalField::padic(3, 16); }
FieldPtr q5() { return LocalField::padic(5, 16); }
FieldPtr f2t() { return LocalField::laurent(ResidueField(2, 1), 16); }
FieldPtr f4t() { return LocalField::laurent(ResidueField(2, 2), 14); }

}  // namespace

TEST_CASE("transfer column is constant at every depth for 1_K, unramified") {
  for (auto F : {q3(), f2t(), f4t()}) {
    auto E = canonical_ext(F, "unramified");
    GermProfile p = germ_profile(E, TestFunction::unit(), 4);
    CHECK(p.rows.size() >= 3);
    CHECK(p.n0 == 0);
    CHECK(tv_eq(p.limit, tv_rational(F->q(), 1)));
    for (const GermRow& row : p.rows)
      CHECK(tv_eq(row.transfer_value, p.limit));
  }
}

TEST_CASE("stable column follows the closed form 1 + (1+1/q) q (q^n-1)/(q-1)") {
  for (auto F : {q3(), q5(), f2t()}) {
    long q = F->q();
    auto E = canonical_ext(F, "unramified");
    GermProfile p = germ_profile(E, TestFunction::unit(), 4);
    for (const GermRow& row : p.rows) {
      Rational expected =
          1 + (Rational(1) + Rational(1, q)) * q *
                  (qpow(q, row.n) - 1) / (q - 1);
      CHECK(row.stable == expected);
    }
    CHECK(p.fit_ok);
    // c1 + c2 q^n with c2 = (q+1)/(q-1), c1 = 1 - c2.
    CHECK(p.fit_c2 == Rational(q + 1, q - 1));
    CHECK(p.fit_c1 == 1 - p.fit_c2);
  }
}

TEST_CASE("stabilization index bound n0 <= max_r + 1 for deeper cells") {
  for (auto F : {q3(), f2t()}) {
    auto E = canonical_ext(F, "unramified");
    for (int r = 1; r <= 2; ++r) {
      GermProfile p = germ_profile(E, TestFunction::cell(r), 5);
      CHECK(p.n0 <= r + 1);
      long q = F->q();
      // The stabilized value is (1+1/q)(-q)^r (with the unramified
      // lambda = 1 default constant).
      Rational val = (Rational(1) + Rational(1, q)) * qpow(q, r);
      Quartic phase = Quartic::from_sign(r % 2 == 0 ? 1 : -1);
      CHECK(tv_eq(p.limit, tv_make(q, phase, val, 0)));
    }
  }
}

TEST_CASE("ramified germ columns vanish identically") {
  for (auto F : {q3(), f2t()}) {
    for (const char* name : {"ramified", "ramified2"}) {
      auto E = canonical_ext(F, name);
      for (int r = 0; r <= 1; ++r) {
        TestFunction f = r == 0 ? TestFunction::unit() : TestFunction::cell(1);
        GermProfile p = germ_profile(E, f, 3, Quartic(0));
        CHECK(p.n0 == p.rows.front().n);
        CHECK(p.limit.is_zero());
        for (const GermRow& row : p.rows) {
          CHECK(row.twisted == 0);
          CHECK(row.transfer_value.is_zero());
          CHECK(row.stable > 0);
        }
      }
    }
  }
}

TEST_CASE("characteristic-2 depth parity") {
  auto Eu = canonical_ext(f2t(), "unramified");
  GermProfile pu = germ_profile(Eu, TestFunction::unit(), 4);
  for (const GermRow& row : pu.rows) CHECK(row.n % 2 == 0);
  auto Er = canonical_ext(f2t(), "ramified");
  GermProfile pr = germ_profile(Er, TestFunction::unit(), 4, Quartic(0));
  for (const GermRow& row : pr.rows) CHECK(row.n % 2 == 1);
}

TEST_CASE("shalika comparison refuses residue characteristic 2") {
  ShalikaReport laurent = shalika_compare(f2t(), TestFunction::unit());
  CHECK(laurent.refused);
  CHECK(laurent.reason.find("uncountab") != std::string::npos);
  ShalikaReport dyadic = shalika_compare(LocalField::padic(2, 12),
                                         TestFunction::unit());
  CHECK(dyadic.refused);
  CHECK(dyadic.reason.find("8 classes") != std::string::npos);
}

TEST_CASE("shalika Fourier inversion matches direct shell sums, p odd") {
  for (auto F : {q3(), q5()}) {
    long q = F->q();
    for (int r = 0; r <= 2; ++r) {
      TestFunction f = r == 0 ? TestFunction::unit() : TestFunction::cell(r);
      ShalikaReport rep = shalika_compare(F, f);
      REQUIRE_FALSE(rep.refused);
      CHECK(rep.pass);
      CHECK(rep.inverted == rep.direct);
      REQUIRE(rep.kappa_values.size() == 4);
      if (r == 0) {
        CHECK(rep.kappa_values[0] == 1);
        CHECK(rep.kappa_values[1] == Rational(q - 1, q + 1));
        CHECK(rep.kappa_values[2] == 0);
        CHECK(rep.kappa_values[3] == 0);
        // O(1*nu, 1_K) = q / (2(q+1)), O(pi*nu, 1_K) = 1/(2 * ... ):
        CHECK(rep.inverted[0] == Rational(q, 2 * (q + 1)));
        CHECK(rep.inverted[2] == rep.inverted[3]);
      }
    }
  }
}
