#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>

#include "endoscopy/cyclo.hpp"
#include "endoscopy/local_field.hpp"

namespace endo {

enum class ExtKind { Split, Unramified, Ramified };

std::string kind_name(ExtKind k);

class QuadExt;
using ExtPtr = std::shared_ptr<const QuadExt>;

// Separable quadratic algebra E = F[X]/(X^2 - tX + d) with tau a root.
// Conventions: tau + taubar = t, tau*taubar = d, and for a field E the
// presentation is integral with v(d) = 1 in the ramified case (Eisenstein)
// and unit discriminant data in the unramified case, so {1, tau} is an
// O-basis of O_E.
class QuadExt : public std::enable_shared_from_this<QuadExt> {
 public:
  static ExtPtr build(FieldPtr F, LocalElem t, LocalElem d);

  const FieldPtr& base() const { return F_; }
  const LocalElem& t() const { return t_; }
  const LocalElem& d() const { return d_; }
  ExtKind kind() const { return kind_; }
  bool is_field() const { return kind_ != ExtKind::Split; }
  // disc = t^2 - 4d; equals t^2 in characteristic 2.
  const LocalElem& disc() const { return disc_; }
  // 2*v_F(tau - taubar) = v_F(disc); odd for p-odd ramified extensions,
  // where |tau - taubar| is a half-power of q.
  long tau_diff_val2() const { return tau_diff_val2_; }
  // Ramification index (1 split/unramified at the residue level, 2 ramified).
  int e() const { return kind_ == ExtKind::Ramified ? 2 : 1; }
  // Residue degree of E over F.
  int resdeg() const { return kind_ == ExtKind::Unramified ? 2 : 1; }
  // Split only: a root of X^2 - tX + d in F (window precision).
  const LocalElem& split_root() const;

  // The quadratic character of F^x attached to E (+1 exactly on norms).
  int epsilon(const LocalElem& x) const;
  int epsilon_minus1() const;

  std::string describe() const;

 private:
  QuadExt(FieldPtr F, LocalElem t, LocalElem d, LocalElem disc)
      : F_(std::move(F)), t_(std::move(t)), d_(std::move(d)),
        disc_(std::move(disc)) {}
  void build_char2_norm_table();

  FieldPtr F_;
  LocalElem t_, d_, disc_;
  ExtKind kind_ = ExtKind::Split;
  long tau_diff_val2_ = 0;
  std::optional<LocalElem> split_root_;
  // Characteristic-2 ramified case: frozen finite-level norm-image table.
  int eps_level_ = 0;                 // stabilized unit level
  std::set<std::string> norm_keys_;   // unit norm classes mod w^eps_level_
  std::optional<LocalElem> odd_norm_; // a norm of odd valuation
};

// Element a + b*tau of E.
struct ExtElem {
  ExtPtr E;
  LocalElem a, b;
};

ExtElem ext_elem(ExtPtr E, LocalElem a, LocalElem b);
ExtElem ext_from_base(ExtPtr E, const LocalElem& a);
ExtElem ext_one(ExtPtr E);
ExtElem ext_tau(ExtPtr E);

ExtElem ext_add(const ExtElem& x, const ExtElem& y);
ExtElem ext_sub(const ExtElem& x, const ExtElem& y);
ExtElem ext_mul(const ExtElem& x, const ExtElem& y);
ExtElem ext_neg(const ExtElem& x);
ExtElem ext_conj(const ExtElem& x);
ExtElem ext_inv(const ExtElem& x);
ExtElem ext_pow(const ExtElem& x, long e);
LocalElem ext_norm(const ExtElem& x);
LocalElem ext_trace(const ExtElem& x);
bool ext_equals(const ExtElem& x, const ExtElem& y);
std::string ext_to_string(const ExtElem& x);

// Valuation in E normalized so a uniformizer of E has valuation 1
// (v_E = v_F on F for unramified E, v_E = 2 v_F on F for ramified E).
long ext_val(const ExtElem& x);

// The norm-one element e/conj(e) (Hilbert 90 parametrization of E^1).
ExtElem norm_one_from(const ExtElem& e);

// Root of y^2 + y + c over a characteristic-2 local field, when it exists
// (c must reduce, after Artin-Schreier moves, to an integral element of
// residue trace zero).  Window precision.
std::optional<LocalElem> artin_schreier_root(const LocalElem& c);

// The quadratic character kappa used in kappa-orbital integrals: trivial or
// the epsilon of a quadratic extension.
struct KappaChar {
  ExtPtr carrier;  // null => trivial character
  int operator()(const LocalElem& x) const {
    return carrier ? carrier->epsilon(x) : 1;
  }
  bool trivial() const { return carrier == nullptr; }
};

// lambda(E/F, psi) for the standard additive character (conductor O).
// Exact fourth root of unity; `canonical` is false in the ramified
// characteristic-2 case, where the value is a configured constant only
// constrained by lambda^2 = epsilon(-1).
struct LambdaInfo {
  Quartic value;
  bool canonical = true;
};

LambdaInfo lambda_const(const ExtPtr& E, int char2_ramified_choice = 1);

// The raw residue-field Gauss sum sum_u leg(u) zeta_p^{Tr(u)} in Q(zeta_p),
// for odd q; satisfies g^2 = leg(-1) q.
Cyclo gauss_sum(const ResidueField& k);

}  // namespace endo
