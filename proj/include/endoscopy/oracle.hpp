#pragma once

#include "endoscopy/matrix2.hpp"
#include "endoscopy/quad_ext.hpp"

namespace endo {

// Brute-force verifiers over finite quotient rings.  These are test-only
// backends: every enumeration is guarded (~10^6 elements) and throws
// std::invalid_argument when the guard would be exceeded.

// Cardinality of E^x / F^x (1 + w^m O_E), the measure constant of the
// orbit-cell decomposition, by explicit orbit counting over O_E/w^m
// (including the uniformizer-lattice factor e(E/F) in the ramified case).
long oracle_unit_quotient(const ExtPtr& E, int m);

// Is x a norm from E^x?  Exhaustive search over a + b*tau mod w^level.
bool oracle_norm_membership(const ExtPtr& E, const LocalElem& x, int level);

// Are M1 and M2 conjugate over SL(2, O/w^level) (or GL(2, ...) with
// `gl = true`)?  Entries must be integral.
bool oracle_conjugacy(const Mat2& M1, const Mat2& M2, int level, bool gl = false);

// Digit key of an integral element mod w^m (helper shared by the oracles
// and their tests).
std::string digits_key(const LocalElem& x, int m);

}  // namespace endo
