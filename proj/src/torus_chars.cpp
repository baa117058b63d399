#include "endoscopy/torus_chars.hpp"

#include <numeric>
#include <set>
#include <stdexcept>

#include "endoscopy/oracle.hpp"

namespace endo {

std::string TorusQuotient::key(const ExtElem& t) const {
  return digits_key(t.a, level_) + "/" + digits_key(t.b, level_);
}

std::shared_ptr<const TorusQuotient> TorusQuotient::build(ExtPtr E, int level) {
  if (!E->is_field())
    throw std::domain_error(
        "norm-one quotient needs a field extension (the split torus has "
        "infinite unit quotients)");
  const FieldPtr& F = E->base();
  if (level < 1 || level + 2 > F->prec())
    throw std::invalid_argument("quotient level out of range");
  long q = F->q();
  double size = 1;
  for (int i = 0; i < 2 * level; ++i) size *= static_cast<double>(q);
  if (size > 2e6) throw std::invalid_argument("quotient sweep too large");

  auto G = std::shared_ptr<TorusQuotient>(new TorusQuotient);
  G->E_ = E;
  G->level_ = level;

  // Hilbert-90 sweep: e -> e/conj(e) over units of O_E modulo w^level covers
  // E^1 modulo level-k principal units; the ramified case needs a second,
  // tau-shifted pass for the odd-valuation parameters.
  ExtElem tau = ext_tau(E);
  for (const LocalElem& a : residue_representatives(F, level))
    for (const LocalElem& b : residue_representatives(F, level)) {
      if (a.is_exact_zero() && b.is_exact_zero()) continue;
      for (int shifted = 0; shifted <= (E->e() == 2 ? 1 : 0); ++shifted) {
        ExtElem e{E, a, b};
        if (shifted) e = ext_mul(e, tau);
        if (ext_val(e) != (shifted ? 1 : 0)) continue;
        ExtElem t = norm_one_from(e);
        std::string k = G->key(t);
        if (G->index_.emplace(k, static_cast<long>(G->elems_.size())).second)
          G->elems_.push_back(std::move(t));
      }
    }

  G->id_ = G->index_of(ext_one(E));

  // Greedy cyclic decomposition: repeatedly adjoin an element of maximal
  // order whose cyclic group meets the current span trivially; each step
  // adds a direct factor, so the generator orders multiply to |G|.
  long n = G->order();
  std::set<long> span{G->id_};
  while (static_cast<long>(span.size()) < n) {
    long best = -1, best_ord = 0;
    for (long i = 0; i < n; ++i) {
      long ord = G->elem_order(i);
      if (ord <= best_ord) continue;
      bool trivial_meet = true;
      long p = i;
      for (long k = 1; k < ord; ++k, p = G->mul(p, i))
        if (span.count(p)) {
          trivial_meet = false;
          break;
        }
      if (trivial_meet) {
        best = i;
        best_ord = ord;
      }
    }
    if (best < 0) throw std::logic_error("cyclic decomposition failed");
    G->gens_.push_back(best);
    G->gen_orders_.push_back(best_ord);
    std::set<long> next;
    for (long s : span) {
      long p = s;
      for (long k = 0; k < best_ord; ++k, p = G->mul(p, best)) next.insert(p);
    }
    span = std::move(next);
  }
  long prod = 1;
  for (long d : G->gen_orders_) prod *= d;
  if (prod != n) throw std::logic_error("generator orders do not multiply up");

  // Exponent tuples by mixed-radix enumeration of all generator products.
  G->expo_.assign(n, {});
  std::vector<long> tup(G->gens_.size(), 0);
  for (long count = 0; count < n; ++count) {
    long p = G->id_;
    for (size_t i = 0; i < G->gens_.size(); ++i)
      for (long k = 0; k < tup[i]; ++k) p = G->mul(p, G->gens_[i]);
    if (!G->expo_[p].empty() && count > 0)
      throw std::logic_error("exponent enumeration collided");
    G->expo_[p] = tup;
    for (size_t i = 0; i < tup.size(); ++i) {
      if (++tup[i] < G->gen_orders_[i]) break;
      tup[i] = 0;
    }
  }
  for (long i = 0; i < n; ++i)
    if (G->expo_[i].size() != G->gens_.size() && n > 1)
      throw std::logic_error("exponent enumeration incomplete");
  return G;
}

long TorusQuotient::index_of(const ExtElem& t) const {
  auto it = index_.find(key(t));
  if (it == index_.end())
    throw std::invalid_argument("element is not a tabulated norm-one class");
  return it->second;
}

long TorusQuotient::mul(long i, long j) const {
  return index_of(ext_mul(elems_[i], elems_[j]));
}

long TorusQuotient::inv(long i) const {
  // On E^1 inversion is conjugation.
  return index_of(ext_conj(elems_[i]));
}

long TorusQuotient::elem_order(long i) const {
  long ord = 1;
  for (long p = i; p != id_; p = mul(p, i)) ++ord;
  return ord;
}

Cyclo TorusChar::operator()(long idx) const {
  const std::vector<long>& e = G->exponents(idx);
  Cyclo v(1);
  for (size_t i = 0; i < twist.size(); ++i) {
    long d = G->gen_orders()[i];
    long k = (twist[i] * (e.empty() ? 0 : e[i])) % d;
    if (k != 0) v = v * Cyclo::zeta(d, k);
  }
  return v;
}

Cyclo TorusChar::operator()(const ExtElem& t) const {
  return (*this)(G->index_of(t));
}

std::vector<TorusChar> enumerate_torus_chars(const ExtPtr& E, int level) {
  TorusQuotientPtr G = TorusQuotient::build(E, level);
  const std::vector<long>& d = G->gen_orders();
  std::vector<TorusChar> out;
  std::vector<long> tw(d.size(), 0);
  long n = G->order();
  for (long count = 0; count < n; ++count) {
    long ord = 1;
    for (size_t i = 0; i < d.size(); ++i)
      ord = std::lcm(ord, d[i] / std::gcd(d[i], tw[i]));
    out.push_back(TorusChar{G, tw, ord});
    for (size_t i = 0; i < tw.size(); ++i) {
      if (++tw[i] < d[i]) break;
      tw[i] = 0;
    }
  }
  return out;
}

}  // namespace endo
