#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "endoscopy/rational.hpp"
#include "endoscopy/residue_field.hpp"

namespace endo {

// Raised when a query (valuation, equality, square test, ...) would need
// digits beyond the guaranteed window.  Deliberately distinct from a
// negative answer.
class InsufficientPrecision : public std::runtime_error {
 public:
  explicit InsufficientPrecision(const std::string& what)
      : std::runtime_error(what) {}
};

enum class FieldKind { Padic, LaurentSeries };

// A non-archimedean local field: Q_p (residue degree 1) or F_q((t)).
// `prec` is the number of significant digits retained by inexact results.
class LocalField {
 public:
  static std::shared_ptr<const LocalField> padic(int p, int prec);
  static std::shared_ptr<const LocalField> laurent(ResidueField k, int prec);

  FieldKind kind() const { return kind_; }
  int prec() const { return prec_; }
  const ResidueField& res() const { return res_; }
  int p() const { return res_.p(); }
  long q() const { return res_.q(); }
  std::string describe() const;

  bool operator==(const LocalField& o) const {
    return kind_ == o.kind_ && prec_ == o.prec_ && res_ == o.res_;
  }

 private:
  LocalField(FieldKind kind, ResidueField res, int prec)
      : kind_(kind), res_(std::move(res)), prec_(prec) {}
  FieldKind kind_;
  ResidueField res_;
  int prec_;
};

using FieldPtr = std::shared_ptr<const LocalField>;

// Laurent-series elements keep an exact rational-function backing:
// num/den as coefficient vectors over the residue field, low-to-high,
// trailing zeros trimmed.
struct PolyFrac {
  std::vector<FqElem> num;
  std::vector<FqElem> den;
};

enum class SquareVerdict { No, Yes, Inconclusive };

// Element of a local field.  Three states:
//   exact zero            — the element 0;
//   approximate zero      — only v(x) >= bound is known;
//   nonzero               — valuation + digit window (leading digit != 0).
// Elements built from literals carry an exact backing value (a rational
// for Q_p, a ratio of polynomials for F_q((t))); arithmetic preserves
// exactness when both operands are exact, so cancellations like x + (-x)
// are recognized as the exact zero.
class LocalElem {
 public:
  static LocalElem zero(FieldPtr F);
  static LocalElem approx_zero(FieldPtr F, long bound);
  static LocalElem from_int(FieldPtr F, long n);
  // Q_p only: exact element from a rational.
  static LocalElem from_rational(FieldPtr F, const Rational& r);
  static LocalElem uniformizer(FieldPtr F);
  // Constant lift of a residue element (Laurent: the constant series;
  // Q_p: the integer representative).
  static LocalElem from_residue(FieldPtr F, const FqElem& a);
  // Laurent only: exact element from a coefficient vector starting at
  // valuation `val`.
  static LocalElem from_coeffs(FieldPtr F, long val, std::vector<FqElem> coeffs);
  // Inexact element with the given guaranteed digit window.
  static LocalElem from_digits(FieldPtr F, long val, std::vector<FqElem> digits);

  const FieldPtr& field() const { return F_; }
  bool is_exact_zero() const { return state_ == State::ExactZero; }
  bool is_approx_zero() const { return state_ == State::ApproxZero; }
  bool possibly_zero() const { return state_ != State::Nonzero; }
  bool exact() const { return state_ == State::ExactZero || exact_.index() != 0; }

  // Valuation of a nonzero element; throws InsufficientPrecision on an
  // approximate zero and std::domain_error on the exact zero.
  long valuation() const;
  // For approximate zeros: the bound with v(x) >= bound.
  long zero_bound() const;
  int known_digits() const;
  // Digit i of the unit part (i < known_digits()).
  const FqElem& digit(int i) const;
  FqElem residue() const;  // digit 0 shifted: x mod p for v(x)=0, else 0

  LocalElem neg() const;
  LocalElem inv() const;
  LocalElem pow(long e) const;
  LocalElem shift(long k) const;  // multiply by uniformizer^k

  friend LocalElem add(const LocalElem& x, const LocalElem& y);
  friend LocalElem sub(const LocalElem& x, const LocalElem& y);
  friend LocalElem mul(const LocalElem& x, const LocalElem& y);
  friend LocalElem div(const LocalElem& x, const LocalElem& y);

  // Exact equality when decidable; throws InsufficientPrecision when the
  // answer depends on unknown digits.
  friend bool equals(const LocalElem& x, const LocalElem& y);

  // Canonical "<val>:<d0>,<d1>,..." rendering ("0" for zero,
  // "O(w^b)" for approximate zeros); digits in residue-field notation.
  std::string to_string() const;

  // Access the exact backing when present.
  const Rational* exact_rational() const;
  const PolyFrac* exact_polyfrac() const;

 private:
  enum class State { ExactZero, ApproxZero, Nonzero };
  LocalElem(FieldPtr F) : F_(std::move(F)) {}

  void recompute_window();  // fill val_/digits_ from the exact backing

  FieldPtr F_;
  State state_ = State::ExactZero;
  std::variant<std::monostate, Rational, PolyFrac> exact_;
  long val_ = 0;               // valuation (Nonzero) or bound (ApproxZero)
  std::vector<FqElem> digits_; // guaranteed unit digits, leading nonzero
};

// Square detection with an honest three-way verdict.
SquareVerdict is_square(const LocalElem& x);
// Square root when is_square yields Yes; empty otherwise.
std::optional<LocalElem> sqrt(const LocalElem& x);

// Cardinality of F^x / (F^x)^2 (1 + w^k O): valuation parity times the
// cokernel of squaring on units mod w^k.  Exact finite enumeration.
long square_class_count(const FieldPtr& F, int k);

// Exact lifts of the units of O/w^k, in enumeration order.
std::vector<LocalElem> unit_representatives(const FieldPtr& F, int k);

// Exact lifts of all of O/w^k (including non-units), in enumeration order.
std::vector<LocalElem> residue_representatives(const FieldPtr& F, int k);

}  // namespace endo
