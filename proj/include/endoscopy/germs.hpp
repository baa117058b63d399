#pragma once

#include <optional>
#include <string>
#include <vector>

#include "endoscopy/transfer.hpp"

namespace endo {

// One depth of the approach t_n -> 1 along the canonical norm-one sequence.
struct GermRow {
  int n;                          // v(b) of t_n
  ExtElem t;
  Rational stable;                // O^1(t_n, f)
  Rational twisted;               // kappa cell sum O^eps(t_n, f)
  TransferValue transfer_value;   // Delta(t_n,t_n) * relative kappa sum
  TransferValue stable_normalized;  // Delta_T(t_n) * O^1(t_n, f)
};

struct GermProfile {
  ExtPtr E;
  std::vector<GermRow> rows;
  int n0 = 0;                // first row index value from which the transfer
                             // column is constant
  TransferValue limit;       // the stabilized value, f^E at the identity
  // Exact affine model of the stable column: stable = c1 + c2 * q^n.
  Rational fit_c1, fit_c2;
  bool fit_ok = false;
};

// Profile of orbital integrals along the canonical approach to the identity:
// t_n = e_n / conj(e_n) with e_n = 1 + w^j tau, over the achievable depths
// n in [0, n_max] (all n for odd residue characteristic; the parity class
// allowed by E in characteristic 2).
GermProfile germ_profile(const ExtPtr& E, const TestFunction& f, int n_max,
                         std::optional<Quartic> c_override = std::nullopt);

// Shalika-type comparison through the finite Fourier inversion over the
// square-class group U = F^x/(F^x)^2 (odd residue characteristic only:
// in characteristic 2 the group is infinite and the request is refused).
struct ShalikaReport {
  bool refused = false;
  std::string reason;
  std::vector<std::string> classes;      // square-class representatives
  std::vector<Rational> kappa_values;    // O^kappa(nu, f) over the dual
  std::vector<Rational> inverted;        // Fourier-inverted plain orbitals
  std::vector<Rational> direct;          // independent shell-sum evaluation
  bool pass = false;
};

ShalikaReport shalika_compare(const FieldPtr& F, const TestFunction& f);

}  // namespace endo
