#pragma once

#include <vector>

#include "endoscopy/quad_ext.hpp"

namespace endo {

// Row-major 2x2 matrix [[a, b], [c, d]] over a local field.
struct Mat2 {
  LocalElem a, b, c, d;
};

Mat2 mat_id(const FieldPtr& F);
Mat2 mat_mul(const Mat2& x, const Mat2& y);
Mat2 mat_scale(const Mat2& x, const LocalElem& s);
LocalElem mat_det(const Mat2& x);
LocalElem mat_trace(const Mat2& x);
// Inverse of a matrix with determinant 1.
Mat2 mat_inv_sl2(const Mat2& x);
Mat2 mat_conj(const Mat2& g, const Mat2& x);  // g x g^{-1}, det(g) = 1
// Conjugation by diag(s, 1) (which has determinant s, but conjugation is
// well-defined): diag(s,1) x diag(s,1)^{-1}.
Mat2 mat_conj_diag(const LocalElem& s, const Mat2& x);
std::string mat_to_string(const Mat2& x);

// Bi-K-invariant test function: a finite rational combination of the
// double-coset indicators 1_{K diag(w^r, w^{-r}) K} on SL(2, F).
struct TestFunction {
  std::vector<std::pair<int, Rational>> cells;  // (r >= 0, coefficient)

  static TestFunction unit();               // 1_K, the r = 0 indicator
  static TestFunction cell(int r, Rational coeff = 1);
  int max_r() const;
  Rational coeff_at(int r) const;
};

// Evaluate f at M with det(M) = 1: the double coset is read off from the
// elementary divisors, i.e. r = -(minimal entry valuation).
Rational hecke_eval(const TestFunction& f, const Mat2& M);

// The standard embedding of E into 2x2 matrices over F:
// a + b*tau -> [[a, -b*d], [b, a + b*t]].
Mat2 embed_torus_elem(const ExtElem& x);

// Characteristic polynomial data (det = 1) plus the rational-class marker
// epsilon(b) separating the two G(F)-classes inside a stable class.
struct ConjClassId {
  LocalElem trace;
  int marker;  // epsilon_{E/F}(b)
};

struct StableSplit {
  ConjClassId id;
  Mat2 rep_plus;    // marker +1 representative
  Mat2 rep_minus;   // marker -1 representative
  LocalElem s;      // the non-norm scalar used to flip classes
};

// The two rational classes inside the stable class of a regular t in E^1
// (E a field), obtained by conjugating the standard embedding by diag(s,1)
// with epsilon(s) = -1.
StableSplit stable_class_split(const ExtElem& t);

// A non-norm element of F^x for the extension E (epsilon = -1).
LocalElem non_norm_elem(const ExtPtr& E);

}  // namespace endo
