#include "endoscopy/quad_ext.hpp"

#include <cmath>
#include <limits>

namespace endo {

namespace {

bool is_char2(const LocalField& F) {
  return F.kind() == FieldKind::LaurentSeries && F.p() == 2;
}

// Artin-Schreier analysis of y^2 + y + c over a characteristic-2 local
// field.  Negative even-valuation terms are absorbed by substitutions
// y -> y + b w^{-k}; the outcome is either an odd-valuation obstruction
// (ramified), an integral remainder of residue trace 1 (unramified), or a
// root (split).
struct ASResult {
  enum Kind { Root, Unramified, Ramified } kind;
  std::optional<LocalElem> root;
};

ASResult as_classify(LocalElem c) {
  const FieldPtr& F = c.field();
  const ResidueField& k = F->res();
  LocalElem shift = LocalElem::zero(F);  // accumulated substitution
  int guard = 4 * F->prec() + 16;
  while (true) {
    if (guard-- == 0)
      throw InsufficientPrecision("Artin-Schreier reduction did not settle");
    if (c.is_exact_zero()) break;
    if (c.is_approx_zero()) {
      if (c.zero_bound() >= 1) break;
      throw InsufficientPrecision("Artin-Schreier reduction needs more digits");
    }
    long v = c.valuation();
    if (v >= 0) break;
    if (v % 2 != 0) return {ASResult::Ramified, std::nullopt};
    FqElem b = k.frobenius_inv(c.digit(0));  // b^2 = leading coefficient
    LocalElem w = LocalElem::from_residue(F, b).shift(v / 2);
    c = add(c, add(mul(w, w), w));  // cancels the leading term (char 2)
    shift = add(shift, w);
  }
  // c is integral now; the residue equation z^2 + z = cbar decides.
  FqElem cbar = c.residue();
  if (k.trace_to_prime(cbar) != 0) return {ASResult::Unramified, std::nullopt};
  FqElem z = k.zero();
  for (long i = 0; i < k.q(); ++i) {
    FqElem cand = k.element(i);
    if (k.is_zero(k.add(k.add(k.mul(cand, cand), cand), cbar))) {
      z = cand;
      break;
    }
  }
  // Lift: replacing y by y + r squares the residual in characteristic 2.
  LocalElem y = LocalElem::from_residue(F, z);
  for (int iter = 0; iter < 64; ++iter) {
    LocalElem r = add(add(mul(y, y), y), c);
    if (r.possibly_zero()) break;
    // Go past the window so the truncated root's residual is invisible at
    // window precision.
    if (r.valuation() >= 2 * F->prec()) break;
    y = add(y, r);
  }
  // The lift is only correct to the precision window; degrade the root so
  // it does not masquerade as an exact element.
  LocalElem root = add(y, shift);
  if (!root.possibly_zero()) {
    std::vector<FqElem> d;
    for (int i = 0; i < root.known_digits(); ++i) d.push_back(root.digit(i));
    root = LocalElem::from_digits(F, root.valuation(), std::move(d));
  }
  return {ASResult::Root, root};
}

int legendre_sign_pow(int leg, long e) { return e % 2 == 0 ? 1 : leg; }

// Hilbert symbol (x, y) over Q_2, via the odd parts mod 8.
int hilbert_q2(const LocalElem& x, const LocalElem& y) {
  auto odd_part_mod8 = [](const LocalElem& e) {
    if (e.known_digits() < 3)
      throw InsufficientPrecision("Hilbert symbol over Q_2 needs 3 digits");
    return e.digit(0).c[0] + 2 * e.digit(1).c[0] + 4 * e.digit(2).c[0];
  };
  long a = x.valuation(), b = y.valuation();
  int u = odd_part_mod8(x), v = odd_part_mod8(y);
  auto eps = [](int n) { return ((n - 1) / 2) % 2; };
  auto omega = [](int n) { return ((n * n - 1) / 8) % 2; };
  int e = (eps(u) * eps(v) + static_cast<int>(a % 2) * omega(v) +
           static_cast<int>(b % 2) * omega(u)) % 2;
  return e == 0 ? 1 : -1;
}

}  // namespace

std::string kind_name(ExtKind k) {
  switch (k) {
    case ExtKind::Split: return "split";
    case ExtKind::Unramified: return "unramified";
    default: return "ramified";
  }
}

ExtPtr QuadExt::build(FieldPtr F, LocalElem t, LocalElem d) {
  if (d.is_exact_zero()) throw std::invalid_argument("d must be nonzero");
  bool c2 = is_char2(*F);
  if (c2 && t.possibly_zero())
    throw std::invalid_argument("inseparable: t = 0 in characteristic 2");
  LocalElem disc = c2 ? mul(t, t)
                      : sub(mul(t, t), mul(LocalElem::from_int(F, 4), d));
  if (disc.is_exact_zero())
    throw std::invalid_argument("double root: discriminant is zero");
  if ((!t.is_exact_zero() && t.valuation() < 0) || d.valuation() < 0)
    throw std::invalid_argument("non-integral presentation: t, d must lie in O");

  auto E = std::shared_ptr<QuadExt>(new QuadExt(std::move(F), std::move(t),
                                                std::move(d), std::move(disc)));
  const FieldPtr& base = E->F_;
  E->tau_diff_val2_ = E->disc_.valuation();

  if (c2) {
    LocalElem c = div(E->d_, mul(E->t_, E->t_));
    ASResult r = as_classify(c);
    switch (r.kind) {
      case ASResult::Ramified:
        E->kind_ = ExtKind::Ramified;
        break;
      case ASResult::Unramified:
        E->kind_ = ExtKind::Unramified;
        if (E->t_.valuation() != 0)
          throw std::invalid_argument(
              "unramified presentation must have unit t (O-basis normalization)");
        break;
      case ASResult::Root:
        E->kind_ = ExtKind::Split;
        E->split_root_ = mul(E->t_, *r.root);
        break;
    }
  } else {
    SquareVerdict sq = is_square(E->disc_);
    if (sq == SquareVerdict::Inconclusive)
      throw InsufficientPrecision("discriminant square class undecidable");
    if (sq == SquareVerdict::Yes) {
      E->kind_ = ExtKind::Split;
      LocalElem root_num = add(E->t_, *sqrt(E->disc_));
      E->split_root_ = div(root_num, LocalElem::from_int(base, 2));
    } else if (base->p() != 2) {
      E->kind_ = E->disc_.valuation() % 2 == 0 ? ExtKind::Unramified
                                               : ExtKind::Ramified;
    } else {
      // Q_2: the unramified square class is the unit 5 mod 8.
      long v = E->disc_.valuation();
      if (v % 2 != 0) {
        E->kind_ = ExtKind::Ramified;
      } else {
        int mod8 = E->disc_.digit(0).c[0] + 2 * E->disc_.digit(1).c[0] +
                   4 * E->disc_.digit(2).c[0];
        E->kind_ = mod8 == 5 ? ExtKind::Unramified : ExtKind::Ramified;
      }
    }
    if (E->kind_ == ExtKind::Unramified && base->p() != 2 &&
        E->disc_.valuation() != 0)
      throw std::invalid_argument(
          "unramified presentation must have unit discriminant");
  }

  if (E->kind_ == ExtKind::Ramified) {
    if (E->d_.valuation() != 1)
      throw std::invalid_argument(
          "ramified presentation must be Eisenstein-normalized (v(d) = 1)");
    if (c2) E->build_char2_norm_table();
  }
  return E;
}

const LocalElem& QuadExt::split_root() const {
  if (!split_root_) throw std::logic_error("split_root on a field extension");
  return *split_root_;
}

void QuadExt::build_char2_norm_table() {
  const FieldPtr& F = F_;
  long q = F->q();
  long unit_index_target = 2;  // [F^x : N(E^x)] = 2 for a quadratic field ext
  int max_level = 1;
  while (std::pow(static_cast<double>(q), 2 * (max_level + 1)) *
             static_cast<double>(q - 1) / q <= 2e6 && max_level < F->prec() - 1)
    ++max_level;
  for (int m = 1; m <= max_level; ++m) {
    std::set<std::string> keys;
    std::vector<LocalElem> as = unit_representatives(F, m);
    std::vector<LocalElem> bs = residue_representatives(F, m);
    for (const LocalElem& a : as) {
      for (const LocalElem& b : bs) {
        // e = a + b*tau with unit a has v_E(e) = 0.
        LocalElem n = add(add(mul(a, a), mul(mul(a, b), t_)),
                          mul(mul(b, b), d_));
        std::string key;
        for (int i = 0; i < m; ++i) key += F->res().to_string(n.digit(i)) + "|";
        keys.insert(key);
      }
    }
    long units = static_cast<long>(as.size());
    if (units / static_cast<long>(keys.size()) == unit_index_target) {
      eps_level_ = m;
      norm_keys_ = std::move(keys);
      odd_norm_ = d_;  // N(tau) = d, v(d) = 1
      return;
    }
  }
  throw std::logic_error("norm-image stabilization not reached within guard");
}

int QuadExt::epsilon(const LocalElem& x) const {
  if (x.is_exact_zero()) throw std::domain_error("epsilon at zero");
  switch (kind_) {
    case ExtKind::Split:
      return 1;
    case ExtKind::Unramified:
      return x.valuation() % 2 == 0 ? 1 : -1;
    default:
      break;
  }
  const FieldPtr& F = F_;
  if (is_char2(*F)) {
    LocalElem u = mul(x, d_.pow(-x.valuation()));
    std::string key;
    for (int i = 0; i < eps_level_; ++i)
      key += F->res().to_string(u.digit(i)) + "|";
    return norm_keys_.count(key) ? 1 : -1;
  }
  if (F->p() == 2) return hilbert_q2(x, disc_);
  // Tame Hilbert symbol (x, disc) for odd residue characteristic:
  // (-1)^{ab(q-1)/2} leg(u)^b leg(w)^a with a = v(x), b = v(disc).
  long a = x.valuation(), b = disc_.valuation();
  const ResidueField& k = F->res();
  int leg_u = k.legendre(x.digit(0));
  int leg_w = k.legendre(disc_.digit(0));
  long exp = a * b * ((F->q() - 1) / 2);
  int s = exp % 2 == 0 ? 1 : -1;
  return s * legendre_sign_pow(leg_u, b) * legendre_sign_pow(leg_w, a);
}

int QuadExt::epsilon_minus1() const {
  return epsilon(LocalElem::from_int(F_, -1));
}

std::string QuadExt::describe() const {
  return "ext:t=" + t_.to_string() + ",d=" + d_.to_string() + " [" +
         kind_name(kind_) + "]";
}

// ---- ExtElem arithmetic ----

ExtElem ext_elem(ExtPtr E, LocalElem a, LocalElem b) {
  return ExtElem{std::move(E), std::move(a), std::move(b)};
}

ExtElem ext_from_base(ExtPtr E, const LocalElem& a) {
  LocalElem z = LocalElem::zero(E->base());
  return ExtElem{std::move(E), a, z};
}

ExtElem ext_one(ExtPtr E) {
  LocalElem o = LocalElem::from_int(E->base(), 1);
  return ext_from_base(std::move(E), o);
}

ExtElem ext_tau(ExtPtr E) {
  LocalElem z = LocalElem::zero(E->base());
  LocalElem o = LocalElem::from_int(E->base(), 1);
  return ExtElem{std::move(E), z, o};
}

ExtElem ext_add(const ExtElem& x, const ExtElem& y) {
  return ExtElem{x.E, add(x.a, y.a), add(x.b, y.b)};
}

ExtElem ext_sub(const ExtElem& x, const ExtElem& y) {
  return ExtElem{x.E, sub(x.a, y.a), sub(x.b, y.b)};
}

ExtElem ext_neg(const ExtElem& x) { return ExtElem{x.E, x.a.neg(), x.b.neg()}; }

ExtElem ext_mul(const ExtElem& x, const ExtElem& y) {
  // (a + b tau)(c + e tau) = (ac - be d) + (ae + bc + be t) tau
  const LocalElem& t = x.E->t();
  const LocalElem& d = x.E->d();
  LocalElem be = mul(x.b, y.b);
  LocalElem a = sub(mul(x.a, y.a), mul(be, d));
  LocalElem b = add(add(mul(x.a, y.b), mul(x.b, y.a)), mul(be, t));
  return ExtElem{x.E, std::move(a), std::move(b)};
}

ExtElem ext_conj(const ExtElem& x) {
  // conj(a + b tau) = (a + b t) - b tau
  return ExtElem{x.E, add(x.a, mul(x.b, x.E->t())), x.b.neg()};
}

LocalElem ext_norm(const ExtElem& x) {
  return add(add(mul(x.a, x.a), mul(mul(x.a, x.b), x.E->t())),
             mul(mul(x.b, x.b), x.E->d()));
}

LocalElem ext_trace(const ExtElem& x) {
  return add(add(x.a, x.a), mul(x.b, x.E->t()));
}

ExtElem ext_inv(const ExtElem& x) {
  LocalElem ninv = ext_norm(x).inv();
  ExtElem c = ext_conj(x);
  return ExtElem{x.E, mul(c.a, ninv), mul(c.b, ninv)};
}

ExtElem ext_pow(const ExtElem& x, long e) {
  if (e < 0) return ext_pow(ext_inv(x), -e);
  ExtElem r = ext_one(x.E);
  ExtElem base = x;
  while (e > 0) {
    if (e & 1) r = ext_mul(r, base);
    if (e >>= 1) base = ext_mul(base, base);
  }
  return r;
}

bool ext_equals(const ExtElem& x, const ExtElem& y) {
  return equals(x.a, y.a) && equals(x.b, y.b);
}

std::string ext_to_string(const ExtElem& x) {
  return "(" + x.a.to_string() + ") + (" + x.b.to_string() + ")*tau";
}

long ext_val(const ExtElem& x) {
  if (x.E->kind() == ExtKind::Split)
    throw std::domain_error("ext_val on a split algebra");
  bool az = x.a.possibly_zero(), bz = x.b.possibly_zero();
  if (az && x.a.is_approx_zero())
    throw InsufficientPrecision("ext_val: a-part undetermined");
  if (bz && x.b.is_approx_zero())
    throw InsufficientPrecision("ext_val: b-part undetermined");
  if (az && bz) throw std::domain_error("ext_val of zero");
  if (x.E->kind() == ExtKind::Unramified) {
    if (az) return x.b.valuation();
    if (bz) return x.a.valuation();
    return std::min(x.a.valuation(), x.b.valuation());
  }
  // Ramified (Eisenstein tau): v_E(a + b tau) = min(2 v(a), 2 v(b) + 1).
  long va = az ? std::numeric_limits<long>::max() : 2 * x.a.valuation();
  long vb = bz ? std::numeric_limits<long>::max() : 2 * x.b.valuation() + 1;
  return std::min(va, vb);
}

ExtElem norm_one_from(const ExtElem& e) {
  return ext_mul(e, ext_inv(ext_conj(e)));
}

std::optional<LocalElem> artin_schreier_root(const LocalElem& c) {
  if (c.is_exact_zero()) return LocalElem::zero(c.field());
  ASResult r = as_classify(c);
  if (r.kind != ASResult::Root) return std::nullopt;
  return r.root;
}

Cyclo gauss_sum(const ResidueField& k) {
  if (k.p() == 2) throw std::domain_error("Gauss sum needs odd characteristic");
  Cyclo g;
  for (long i = 1; i < k.q(); ++i) {
    FqElem a = k.element(i);
    Cyclo term = Cyclo::zeta(k.p(), k.trace_to_prime(a));
    if (k.legendre(a) == 1)
      g = g + term;
    else
      g = g - term;
  }
  return g;
}

LambdaInfo lambda_const(const ExtPtr& E, int char2_ramified_choice) {
  if (E->kind() != ExtKind::Ramified) return {Quartic(0), true};
  const FieldPtr& F = E->base();
  if (is_char2(*F)) {
    if (char2_ramified_choice != 1 && char2_ramified_choice != -1)
      throw std::invalid_argument("char-2 ramified lambda must be +1 or -1");
    // epsilon(-1) = +1 in characteristic 2, so lambda^2 = 1 holds either way.
    return {Quartic::from_sign(char2_ramified_choice), false};
  }
  const ResidueField& k = F->res();
  Cyclo g = gauss_sum(k);
  int legm1 = k.legendre(k.from_int(-1));
  if (g * g != Cyclo(Rational(legm1 * k.q())))
    throw std::logic_error("Gauss sum square identity failed");
  // Identify g / sqrt(q) among the fourth roots of unity numerically; the
  // square identity above already certifies it is one of them.
  std::complex<double> z = g.approx();
  double rq = std::sqrt(static_cast<double>(k.q()));
  for (int e = 0; e < 4; ++e) {
    std::complex<double> cand = rq * std::complex<double>(
        e == 0 ? 1 : e == 2 ? -1 : 0, e == 1 ? 1 : e == 3 ? -1 : 0);
    if (std::abs(z - cand) < 1e-6) return {Quartic(e), true};
  }
  throw std::logic_error("Gauss sum is not a fourth root times sqrt(q)");
}

}  // namespace endo
