#pragma once

#include <string>

#include "endoscopy/germs.hpp"
#include "endoscopy/torus_chars.hpp"
#include "endoscopy/transfer.hpp"

namespace endo {

// Embed an exact transfer value into the cyclotomic ring; requires an
// integral power of q (throws on a bare sqrt(q)).
Cyclo tv_to_cyclo(const TransferValue& v);

// The normalized elliptic character combination at a regular norm-one t,
//   Xi_theta(t) = lambda * eps(-1) * eps(b) * (theta(t) + theta(t^{-1}))
//                 / |b (tau - taubar)|_E,
// with the extension-field absolute value, so the magnitude is an integral
// power of q for every kind of extension.
Cyclo xi_value(const TorusChar& theta, const ExtElem& t);

struct CharIdentityReport {
  Cyclo lhs;  // Delta(t,t) * Xi_theta(t)
  Cyclo rhs;  // eps(-1) * (theta(t) + theta(t^{-1}))
  bool pass = false;
};

// The pointwise character identity, both sides computed independently: the
// left through the transfer factor and Xi, the right through character
// values alone.
CharIdentityReport char_identity_check(const TorusChar& theta,
                                       const ExtElem& t);

// (1/|G|) sum_t |theta(t) + theta(t^{-1})|^2 over the finite quotient:
// exactly 2 when theta^2 != 1 and exactly 4 when theta^2 = 1.
Rational orthogonality_integral(const TorusChar& theta);

// Spectral side of the Weyl integration formula for the transferred
// function: the average of f^E * theta over the quotient must equal the
// elliptic-torus sum of |D(t)| Xi_theta(t) O(t, f) weighted by the Weyl
// stabilizer w_T, with the central tail resummed in closed form once the
// transfer column has stabilized.
struct WeylReport {
  enum class Status { Pass, Fail, Inconclusive };
  Status status = Status::Inconclusive;
  Cyclo lhs;
  Cyclo rhs;
  int w_T = 2;
  std::string note;
};

WeylReport weyl_spectral_check(const TorusChar& theta, const TestFunction& f);

// The standard intertwining ratio (1 - x/q) / (1 - x) at x = q^{-s}, with
// the pole at x = 1 flagged instead of evaluated.
struct IntertwiningValue {
  bool pole = false;
  Rational value = 0;
};

IntertwiningValue intertwining_scalar(long q, long s);

// Formal-series identity (1 - x/q)/(1 - x) = 1 + (1 - 1/q) sum_{n>=1} x^n,
// verified coefficient by coefficient through the given order.
bool intertwining_series_identity(long q, int order);

}  // namespace endo
