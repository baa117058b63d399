#include "endoscopy/matrix2.hpp"

#include <algorithm>
#include <limits>

namespace endo {

Mat2 mat_id(const FieldPtr& F) {
  LocalElem one = LocalElem::from_int(F, 1);
  LocalElem zero = LocalElem::zero(F);
  return Mat2{one, zero, zero, one};
}

Mat2 mat_mul(const Mat2& x, const Mat2& y) {
  return Mat2{add(mul(x.a, y.a), mul(x.b, y.c)),
              add(mul(x.a, y.b), mul(x.b, y.d)),
              add(mul(x.c, y.a), mul(x.d, y.c)),
              add(mul(x.c, y.b), mul(x.d, y.d))};
}

Mat2 mat_scale(const Mat2& x, const LocalElem& s) {
  return Mat2{mul(x.a, s), mul(x.b, s), mul(x.c, s), mul(x.d, s)};
}

LocalElem mat_det(const Mat2& x) {
  return sub(mul(x.a, x.d), mul(x.b, x.c));
}

LocalElem mat_trace(const Mat2& x) { return add(x.a, x.d); }

Mat2 mat_inv_sl2(const Mat2& x) {
  return Mat2{x.d, x.b.neg(), x.c.neg(), x.a};
}

Mat2 mat_conj(const Mat2& g, const Mat2& x) {
  return mat_mul(mat_mul(g, x), mat_inv_sl2(g));
}

Mat2 mat_conj_diag(const LocalElem& s, const Mat2& x) {
  // diag(s,1) [[a,b],[c,d]] diag(1/s,1) = [[a, b*s],[c/s, d]].
  return Mat2{x.a, mul(x.b, s), div(x.c, s), x.d};
}

std::string mat_to_string(const Mat2& x) {
  return "[[" + x.a.to_string() + ", " + x.b.to_string() + "], [" +
         x.c.to_string() + ", " + x.d.to_string() + "]]";
}

TestFunction TestFunction::unit() { return TestFunction{{{0, Rational(1)}}}; }

TestFunction TestFunction::cell(int r, Rational coeff) {
  if (r < 0) throw std::invalid_argument("Hecke cell index must be >= 0");
  return TestFunction{{{r, std::move(coeff)}}};
}

int TestFunction::max_r() const {
  int m = 0;
  for (const auto& [r, c] : cells) m = std::max(m, r);
  return m;
}

Rational TestFunction::coeff_at(int r) const {
  Rational sum = 0;
  for (const auto& [cr, c] : cells)
    if (cr == r) sum += c;
  return sum;
}

Rational hecke_eval(const TestFunction& f, const Mat2& M) {
  // Minimal entry valuation; determinant-1 matrices always have it <= 0.
  long minv = std::numeric_limits<long>::max();
  long pending_bound = std::numeric_limits<long>::max();
  for (const LocalElem* e : {&M.a, &M.b, &M.c, &M.d}) {
    if (e->is_exact_zero()) continue;
    if (e->is_approx_zero())
      pending_bound = std::min(pending_bound, e->zero_bound());
    else
      minv = std::min(minv, e->valuation());
  }
  if (minv == std::numeric_limits<long>::max())
    throw std::domain_error("hecke_eval at the zero matrix");
  if (pending_bound < minv)
    throw InsufficientPrecision("entry valuation undecidable");
  if (minv > 0)
    throw std::logic_error("determinant-1 matrix with all valuations positive");
  return f.coeff_at(static_cast<int>(-minv));
}

Mat2 embed_torus_elem(const ExtElem& x) {
  const ExtPtr& E = x.E;
  return Mat2{x.a, mul(x.b, E->d()).neg(), x.b, add(x.a, mul(x.b, E->t()))};
}

LocalElem non_norm_elem(const ExtPtr& E) {
  const FieldPtr& F = E->base();
  switch (E->kind()) {
    case ExtKind::Split:
      throw std::domain_error("split algebra has no non-norm element");
    case ExtKind::Unramified:
      return LocalElem::uniformizer(F);
    default:
      break;
  }
  for (int level = 1; level <= std::min(4, F->prec()); ++level)
    for (const LocalElem& u : unit_representatives(F, level))
      if (E->epsilon(u) == -1) return u;
  // Fall back to shifted units (p odd ramified always finds a unit above).
  for (const LocalElem& u : unit_representatives(F, 2)) {
    LocalElem x = u.shift(1);
    if (E->epsilon(x) == -1) return x;
  }
  throw std::logic_error("no non-norm element found");
}

StableSplit stable_class_split(const ExtElem& t) {
  const ExtPtr& E = t.E;
  if (!E->is_field())
    throw std::domain_error("stable class split needs a field extension");
  if (t.b.possibly_zero())
    throw std::domain_error("central element has a single class");
  int marker = E->epsilon(t.b);
  Mat2 std_rep = embed_torus_elem(t);
  LocalElem s = non_norm_elem(E);
  Mat2 flipped = mat_conj_diag(s, std_rep);
  ConjClassId id{mat_trace(std_rep), marker};
  if (marker == 1) return StableSplit{id, std_rep, flipped, s};
  return StableSplit{id, flipped, std_rep, s};
}

}  // namespace endo
