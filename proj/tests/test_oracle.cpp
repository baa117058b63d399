#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "endoscopy/field_spec.hpp"
#include "endoscopy/oracle.hpp"

using namespace endo;

namespace {

FieldPtr q3() { return LocalField::padic(3, 12); }
FieldPtr q5() { return LocalField::padic(5, 12); }
FieldPtr f2t() { return LocalField::laurent(ResidueField(2, 1), 12); }
FieldPtr f4t() { return LocalField::laurent(ResidueField(2, 2), 10); }

}  // namespace

TEST_CASE("unit-quotient cardinalities: unramified (1 + 1/q) q^m") {
  auto check_unram = [](const FieldPtr& F, int mmax) {
    auto E = canonical_ext(F, "unramified");
    long q = F->q();
    CHECK(oracle_unit_quotient(E, 0) == 1);
    long qm = 1;
    for (int m = 1; m <= mmax; ++m) {
      qm *= q;
      CHECK(oracle_unit_quotient(E, m) == qm + qm / q);  // (1+1/q) q^m
    }
  };
  check_unram(q3(), 2);
  check_unram(q5(), 2);
  check_unram(f2t(), 3);
  check_unram(f4t(), 2);
}

TEST_CASE("unit-quotient cardinalities: ramified 2 q^m") {
  auto check_ram = [](const FieldPtr& F, const char* name, int mmax) {
    auto E = canonical_ext(F, name);
    long q = F->q();
    CHECK(oracle_unit_quotient(E, 0) == 2);
    long qm = 1;
    for (int m = 1; m <= mmax; ++m) {
      qm *= q;
      CHECK(oracle_unit_quotient(E, m) == 2 * qm);
    }
  };
  check_ram(q3(), "ramified", 2);
  check_ram(q3(), "ramified2", 2);
  check_ram(q5(), "ramified", 2);
  // Characteristic 2 via the Artin-Schreier-constructible presentations.
  check_ram(f2t(), "ramified", 3);
  check_ram(f2t(), "ramified2", 3);
  check_ram(f4t(), "ramified", 2);
}

TEST_CASE("norm membership agrees with epsilon") {
  for (auto F : {q3(), f2t()}) {
    for (const char* name : {"unramified", "ramified", "ramified2"}) {
      auto E = canonical_ext(F, name);
      int level = 3;
      for (const LocalElem& u : unit_representatives(F, 2)) {
        for (int s = 0; s <= 1; ++s) {
          LocalElem x = u.shift(s);
          bool member = oracle_norm_membership(E, x, level);
          CHECK(member == (E->epsilon(x) == 1));
        }
      }
    }
  }
}

TEST_CASE("norms are norms: sampled N(e) pass membership") {
  auto F = q3();
  auto E = canonical_ext(F, "unramified");
  for (const LocalElem& a : unit_representatives(F, 2)) {
    LocalElem b = LocalElem::from_int(F, 2);
    LocalElem n = add(add(mul(a, a), mul(mul(a, b), E->t())),
                      mul(mul(b, b), E->d()));
    if (n.possibly_zero() || n.valuation() != 0) continue;
    CHECK(oracle_norm_membership(E, n, 2));
  }
}

TEST_CASE("conjugacy oracle: identity and central cases") {
  auto F = q3();
  Mat2 id = mat_id(F);
  CHECK(oracle_conjugacy(id, id, 1));
  Mat2 minus = mat_scale(id, LocalElem::from_int(F, -1));
  CHECK_FALSE(oracle_conjugacy(id, minus, 1));
}

TEST_CASE("stable but not rationally conjugate pair") {
  auto F = q3();
  // Ramified, so the class-flipping scalar is a unit and both
  // representatives stay integral.
  auto E = canonical_ext(F, "ramified");
  // t = e / conj(e) for e = 1 + tau: a regular norm-one element.
  ExtElem e = ext_add(ext_one(E), ext_tau(E));
  ExtElem t = norm_one_from(e);
  StableSplit s = stable_class_split(t);
  // Same characteristic polynomial (trace agrees, det = 1)...
  CHECK(equals(mat_trace(s.rep_plus), mat_trace(s.rep_minus)));
  CHECK(equals(mat_det(s.rep_plus), LocalElem::from_int(F, 1)));
  CHECK(equals(mat_det(s.rep_minus), LocalElem::from_int(F, 1)));
  // ...conjugate over GL(2, O/w^2) but not over SL(2, O/w^2).
  CHECK(oracle_conjugacy(s.rep_plus, s.rep_minus, 2, /*gl=*/true));
  CHECK_FALSE(oracle_conjugacy(s.rep_plus, s.rep_minus, 2, /*gl=*/false));
}

TEST_CASE("size guard") {
  auto F = q5();
  Mat2 id = mat_id(F);
  CHECK_THROWS_AS(oracle_conjugacy(id, id, 3), std::invalid_argument);
}
