#include "endoscopy/spectral.hpp"

#include <stdexcept>

namespace endo {

Cyclo tv_to_cyclo(const TransferValue& v) {
  if (v.is_zero()) return Cyclo(0);
  if (v.half != 0)
    throw std::domain_error("value has a bare sqrt(q); use the extension "
                            "normalization");
  return v.phase.to_cyclo() * Cyclo(v.mag);
}

Cyclo xi_value(const TorusChar& theta, const ExtElem& t) {
  const ExtPtr& E = theta.G->ext();
  if (t.b.is_exact_zero() || t.b.is_approx_zero())
    throw std::domain_error("Xi is defined at regular elements only");
  long q = E->base()->q();
  long idx = theta.G->index_of(t);
  Cyclo pair = theta(idx) + theta(theta.G->inv(idx));
  long exp = 2 * t.b.valuation() + E->tau_diff_val2();
  Cyclo scale = Cyclo(qpow(q, exp)) * Cyclo(Rational(E->epsilon_minus1())) *
                Cyclo(Rational(E->epsilon(t.b)));
  return lambda_const(E).value.to_cyclo() * scale * pair;
}

CharIdentityReport char_identity_check(const TorusChar& theta,
                                       const ExtElem& t) {
  const ExtPtr& E = theta.G->ext();
  CharIdentityReport rep;
  rep.lhs = tv_to_cyclo(transfer_factor(E, t, std::nullopt, AbsNorm::Ext)) *
            xi_value(theta, t);
  long idx = theta.G->index_of(t);
  rep.rhs = Cyclo(Rational(E->epsilon_minus1())) *
            (theta(idx) + theta(theta.G->inv(idx)));
  rep.pass = rep.lhs == rep.rhs;
  return rep;
}

Rational orthogonality_integral(const TorusChar& theta) {
  const TorusQuotientPtr& G = theta.G;
  Cyclo total(0);
  for (long i = 0; i < G->order(); ++i) {
    Cyclo z = theta(i) + theta(G->inv(i));
    total = total + z * z.conj();
  }
  auto r = total.as_rational();
  if (!r) throw std::logic_error("orthogonality sum is not rational");
  return *r / G->order();
}

WeylReport weyl_spectral_check(const TorusChar& theta, const TestFunction& f) {
  WeylReport rep;
  const TorusQuotientPtr& G = theta.G;
  const ExtPtr& E = G->ext();
  const FieldPtr& F = E->base();
  long q = F->q();
  int level = G->level();
  rep.w_T = E->epsilon_minus1() == 1 ? 2 : 1;

  // The central tail is resummed in closed form from the stabilized value of
  // the transfer column; that is only valid when stabilization is reached
  // before the tabulated shells run out.
  GermProfile profile = germ_profile(E, f, level + f.max_r() + 2);
  if (profile.n0 > level) {
    rep.note = "transfer column not yet stable at the tabulation level; "
               "deepen the level to certify the tail";
    return rep;
  }

  TransferTable table = transfer(f, E, level, std::nullopt, AbsNorm::Base);
  if (static_cast<long>(table.points.size()) != G->order())
    throw std::logic_error("tabulation and quotient sizes disagree");

  Cyclo lhs(0), side(0);
  Cyclo lam = lambda_const(E).value.to_cyclo();
  Cyclo em1{Rational(E->epsilon_minus1())};
  Rational vol(1, G->order());
  for (const TransferPoint& pt : table.points) {
    long idx = G->index_of(pt.t);
    lhs = lhs + tv_to_cyclo(pt.value) * theta(idx) * Cyclo(vol);
    Cyclo pair = theta(idx) + theta(G->inv(idx));
    if (pt.vb >= 0) {
      // Regular coset: |D(t)| Xi O summed over the two embeddings collapses
      // to |b(tau-taubar)|_F times the depth-relative cell sum.
      Rational cell = orbital(pt.t, f, KappaChar{E}).value;
      if (cell == 0) continue;
      long exp = 2 * pt.vb + E->tau_diff_val2();
      if (exp % 2 != 0)
        throw std::logic_error("half-power survives a nonzero cell sum");
      side = side + lam * em1 * pair * Cyclo(qpow(q, -exp / 2) * cell * vol);
    } else {
      // Central coset: the shells v(b) >= level contribute the stabilized
      // transfer value times the coset volume, a convergent geometric
      // resummation certified by the stabilization depth above.
      side = side + pair * tv_to_cyclo(pt.value) * Cyclo(vol);
    }
  }
  Cyclo rhs = side * Cyclo(Rational(1, rep.w_T));
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.status =
      lhs == rhs ? WeylReport::Status::Pass : WeylReport::Status::Fail;
  return rep;
}

IntertwiningValue intertwining_scalar(long q, long s) {
  if (s == 0) return IntertwiningValue{true, 0};
  Rational x = qpow(q, -s);
  return IntertwiningValue{false, (1 - x / q) / (1 - x)};
}

bool intertwining_series_identity(long q, int order) {
  // Series of 1/(1-x) times the polynomial (1 - x/q), coefficient by
  // coefficient against 1 + (1 - 1/q)(x + x^2 + ...).
  std::vector<Rational> geo(order + 1, 1);  // 1/(1-x)
  for (int n = 0; n <= order; ++n) {
    Rational lhs = geo[n];
    if (n >= 1) lhs -= geo[n - 1] / q;
    Rational rhs = n == 0 ? Rational(1) : Rational(1) - Rational(1, q);
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace endo
