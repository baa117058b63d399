#pragma once

#include <map>
#include <memory>
#include <vector>

#include "endoscopy/quad_ext.hpp"

namespace endo {

// Representatives of the norm-one group E^1 modulo level-k principal units,
// with the induced finite abelian group structure and an explicit cyclic
// decomposition (generators with coprime-power orders and exponent tuples
// for every element).
class TorusQuotient {
 public:
  static std::shared_ptr<const TorusQuotient> build(ExtPtr E, int level);

  const ExtPtr& ext() const { return E_; }
  int level() const { return level_; }
  long order() const { return static_cast<long>(elems_.size()); }
  const std::vector<ExtElem>& elements() const { return elems_; }

  long identity() const { return id_; }
  long index_of(const ExtElem& t) const;
  long mul(long i, long j) const;
  long inv(long i) const;
  long elem_order(long i) const;

  const std::vector<long>& gen_orders() const { return gen_orders_; }
  const std::vector<long>& exponents(long i) const { return expo_[i]; }

 private:
  TorusQuotient() = default;
  std::string key(const ExtElem& t) const;

  ExtPtr E_;
  int level_ = 0;
  std::vector<ExtElem> elems_;
  std::map<std::string, long> index_;
  long id_ = 0;
  std::vector<long> gens_;
  std::vector<long> gen_orders_;
  std::vector<std::vector<long>> expo_;
};

using TorusQuotientPtr = std::shared_ptr<const TorusQuotient>;

// A character of the finite quotient, given by a twist exponent on each
// generator; values are exact roots of unity in the cyclotomic ring.
struct TorusChar {
  TorusQuotientPtr G;
  std::vector<long> twist;  // twist[i] modulo gen_orders()[i]
  long order = 1;           // order of the character

  Cyclo operator()(long idx) const;
  Cyclo operator()(const ExtElem& t) const;
  bool trivial() const { return order == 1; }
};

// The full dual group: one character per element of the quotient.
std::vector<TorusChar> enumerate_torus_chars(const ExtPtr& E, int level);

}  // namespace endo
