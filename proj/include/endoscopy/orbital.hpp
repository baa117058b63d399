#pragma once

#include <string>
#include <vector>

#include "endoscopy/matrix2.hpp"

namespace endo {

// One cell of the orbit decomposition: conjugation depth m, measure
// constant C, character sign, and Hecke-function value.
struct OrbitalCell {
  int m;
  Rational C;
  int sign;
  Rational f;
};

// Exact value of an orbital integral together with its finite cell
// decomposition.  value = sum over cells of C * sign * f.
struct OrbitalReport {
  Rational value;
  std::vector<OrbitalCell> cells;
  std::string normalization = "paper-standard";
};

// Measure constant of the depth-m cell of a torus orbit:
// unramified: 1 (m = 0), (1+1/q) q^m (m >= 1); ramified: 2 q^m, with the
// m = 0 value 2 frozen against the brute-force unit-quotient count.
Rational measure_constant(const ExtPtr& E, int m);

// Orbital integral of f over the orbit of the regular norm-one element
// t = a + b*tau, twisted by kappa (trivial => stable integral O^1,
// epsilon of E => the kappa-orbital O^eps; epsilon of a different
// quadratic extension => 0).  Normalizations: multiplicative measure with
// unit mass on O^x, vol(K) = 1.
OrbitalReport orbital(const ExtElem& t, const TestFunction& f,
                      const KappaChar& kappa = {});

// Plain orbital integral over the single rational class of the standard
// representative of t: the +1-sign half of the stable cell decomposition,
// so that O^1 = O(t,f) + O(t',f) and O^eps = O(t,f) - O(t',f).
Rational orbital_single(const ExtElem& t, const TestFunction& f);
// Same for the other rational representative t' in the stable class.
Rational orbital_single_other(const ExtElem& t, const TestFunction& f);

// Unipotent kappa-orbital integral: the integral of kappa(n) f(k^-1 z u(n) k)
// over n in F and k in K, with additive measure of unit mass on O.
// z must be +1 or -1 (the value does not depend on it for Hecke cells).
Rational unipotent_kappa_orbital(const FieldPtr& F, int z,
                                 const KappaChar& kappa,
                                 const TestFunction& f);

}  // namespace endo
