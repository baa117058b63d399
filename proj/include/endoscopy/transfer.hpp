#pragma once

#include <optional>
#include <string>
#include <vector>

#include "endoscopy/orbital.hpp"

namespace endo {

// Exact value of the form  phase * mag * sqrt(q)^half  with phase a fourth
// root of unity, mag a non-negative rational and half in {0, 1} (even
// square-root powers are folded into mag).
struct TransferValue {
  long q = 0;
  Quartic phase;
  Rational mag = 0;
  int half = 0;

  bool is_zero() const { return mag == 0; }
  std::string to_string() const;
};

TransferValue tv_make(long q, Quartic phase, Rational mag, int sqrt_pow);
// A plain rational as a TransferValue (phase from the sign).
TransferValue tv_rational(long q, const Rational& r);
TransferValue tv_mul(const TransferValue& x, const TransferValue& y);
TransferValue tv_scale(const TransferValue& x, const Rational& r);
bool tv_eq(const TransferValue& x, const TransferValue& y);

// Which absolute value measures the b(tau - taubar) factor.
enum class AbsNorm { Ext, Base };

// The transfer factor Delta(t,t) = c * epsilon(b) * |b(tau - taubar)|,
// with default constant c = lambda(E/F,psi)^{-1} and c = 1 in
// Fundamental-Lemma mode.  The Ext normalization always yields integral
// powers of q; the Base normalization is |.|_F = sqrt(|.|_E).
TransferValue transfer_factor(const ExtPtr& E, const ExtElem& t,
                              std::optional<Quartic> c_override = std::nullopt,
                              AbsNorm norm = AbsNorm::Ext);

// The unsigned torus factor Delta_T(t) = |b(tau - taubar)| alone.
TransferValue delta_T(const ExtPtr& E, const ExtElem& t,
                      AbsNorm norm = AbsNorm::Ext);

// One tabulation point of the transferred function f^E on E^1.
struct TransferPoint {
  ExtElem t;
  long vb;              // v(b), or -1 for the central points
  TransferValue value;
};

struct TransferTable {
  ExtPtr E;
  int level = 0;         // tabulation is over E^1 mod level-k units
  AbsNorm norm = AbsNorm::Base;
  std::vector<TransferPoint> points;
  int smooth_level = 0;  // largest j <= level with constancy on level-j cosets
};

// The elliptic transfer f^E(t) = Delta(t,t) * O^eps(t,f) for regular t,
// extended to the central points by the unipotent kappa-orbital, tabulated
// on representatives of E^1 mod level-k units.
TransferTable transfer(const TestFunction& f, const ExtPtr& E, int level,
                       std::optional<Quartic> c_override = std::nullopt,
                       AbsNorm norm = AbsNorm::Base);

// Split transfer: f^E(diag(a, a^{-1})) as the double integral over K and the
// unipotent radical, a finite shell sum for Hecke cells.  Depends only on
// |v(a)|.
Rational transfer_split_value(const TestFunction& f, const FieldPtr& F,
                              long v_a);

struct SplitTransferPoint {
  LocalElem a;
  Rational value;
};

std::vector<SplitTransferPoint> transfer_split(const TestFunction& f,
                                               const FieldPtr& F, int level,
                                               int val_range);

// Fundamental Lemma verification: E/F unramified, f = 1_K, c = 1,
// D(b) = |b|_F.  Checks f^E = 1 on O_E^1 depth by depth via the cell sums.
struct FlRow {
  int n;                           // v(b) of the witness point
  ExtElem t;
  Rational value;                  // D(b) * kappa cell sum
  bool pass;
  std::vector<OrbitalCell> cells;
};

struct FlReport {
  bool applicable = true;
  std::string reason;
  std::vector<FlRow> rows;
  bool pass = false;
};

FlReport fl_check(const ExtPtr& E, int n_max);

}  // namespace endo
