#include "endoscopy/local_field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace endo {

namespace {

// ---- polynomial helpers over the residue field (low-to-high, trimmed) ----

void pol_trim(std::vector<FqElem>& v, const ResidueField& k) {
  while (!v.empty() && k.is_zero(v.back())) v.pop_back();
}

std::vector<FqElem> pol_add(const std::vector<FqElem>& a, const std::vector<FqElem>& b,
                            const ResidueField& k) {
  std::vector<FqElem> r(std::max(a.size(), b.size()), k.zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = k.add(r[i], b[i]);
  pol_trim(r, k);
  return r;
}

std::vector<FqElem> pol_neg(const std::vector<FqElem>& a, const ResidueField& k) {
  std::vector<FqElem> r = a;
  for (auto& c : r) c = k.neg(c);
  return r;
}

std::vector<FqElem> pol_mul(const std::vector<FqElem>& a, const std::vector<FqElem>& b,
                            const ResidueField& k) {
  if (a.empty() || b.empty()) return {};
  std::vector<FqElem> r(a.size() + b.size() - 1, k.zero());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = k.add(r[i + j], k.mul(a[i], b[j]));
  pol_trim(r, k);
  return r;
}

size_t pol_low(const std::vector<FqElem>& a, const ResidueField& k) {
  for (size_t i = 0; i < a.size(); ++i)
    if (!k.is_zero(a[i])) return i;
  throw std::logic_error("low index of zero polynomial");
}

// First n coefficients of num/den where den has nonzero constant term.
std::vector<FqElem> series_div(const std::vector<FqElem>& num,
                               const std::vector<FqElem>& den,
                               const ResidueField& k, int n) {
  FqElem d0inv = k.inv(den[0]);
  std::vector<FqElem> c(n, k.zero());
  for (int i = 0; i < n; ++i) {
    FqElem s = i < static_cast<int>(num.size()) ? num[i] : k.zero();
    for (int j = 0; j < i; ++j) {
      size_t idx = i - j;
      if (idx < den.size()) s = k.sub(s, k.mul(c[j], den[idx]));
    }
    c[i] = k.mul(s, d0inv);
  }
  return c;
}

// ---- p-adic helpers ----

long valp(BigInt n, int p) {
  if (n == 0) throw std::logic_error("valuation of zero");
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

BigInt invmod(BigInt a, const BigInt& m) {
  BigInt t = 0, newt = 1, r = m, newr = ((a % m) + m) % m;
  while (newr != 0) {
    BigInt qu = r / newr;
    BigInt tmp = t - qu * newt;
    t = newt;
    newt = tmp;
    tmp = r - qu * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw std::domain_error("not invertible");
  return ((t % m) + m) % m;
}

BigInt pow_big(long p, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

}  // namespace

// ---- LocalField ----

std::shared_ptr<const LocalField> LocalField::padic(int p, int prec) {
  if (prec < 1) throw std::invalid_argument("precision must be positive");
  return std::shared_ptr<const LocalField>(
      new LocalField(FieldKind::Padic, ResidueField(p, 1), prec));
}

std::shared_ptr<const LocalField> LocalField::laurent(ResidueField k, int prec) {
  if (prec < 1) throw std::invalid_argument("precision must be positive");
  return std::shared_ptr<const LocalField>(
      new LocalField(FieldKind::LaurentSeries, std::move(k), prec));
}

std::string LocalField::describe() const {
  std::ostringstream os;
  if (kind_ == FieldKind::Padic)
    os << "Qp:p=" << p() << ",prec=" << prec_;
  else
    os << "Fq:p=" << p() << ",f=" << res_.f() << ",prec=" << prec_;
  return os.str();
}

// ---- LocalElem construction ----

LocalElem LocalElem::zero(FieldPtr F) {
  LocalElem x(std::move(F));
  x.state_ = State::ExactZero;
  return x;
}

LocalElem LocalElem::approx_zero(FieldPtr F, long bound) {
  LocalElem x(std::move(F));
  x.state_ = State::ApproxZero;
  x.val_ = bound;
  return x;
}

LocalElem LocalElem::from_int(FieldPtr F, long n) {
  if (F->kind() == FieldKind::Padic) return from_rational(std::move(F), Rational(n));
  FqElem a = F->res().from_int(n);
  return from_residue(std::move(F), a);
}

LocalElem LocalElem::from_rational(FieldPtr F, const Rational& r) {
  if (F->kind() != FieldKind::Padic)
    throw std::invalid_argument("rational literals are for p-adic fields");
  if (r == 0) return zero(std::move(F));
  LocalElem x(std::move(F));
  x.state_ = State::Nonzero;
  x.exact_ = r;
  x.recompute_window();
  return x;
}

LocalElem LocalElem::from_residue(FieldPtr F, const FqElem& a) {
  if (F->res().is_zero(a)) return zero(std::move(F));
  if (F->kind() == FieldKind::Padic) return from_rational(F, Rational(a.c[0]));
  LocalElem x(std::move(F));
  x.state_ = State::Nonzero;
  x.exact_ = PolyFrac{{a}, {x.F_->res().one()}};
  x.recompute_window();
  return x;
}

LocalElem LocalElem::uniformizer(FieldPtr F) {
  if (F->kind() == FieldKind::Padic) return from_rational(F, Rational(F->p()));
  const ResidueField& k = F->res();
  LocalElem x(std::move(F));
  x.state_ = State::Nonzero;
  x.exact_ = PolyFrac{{k.zero(), k.one()}, {k.one()}};
  x.recompute_window();
  return x;
}

LocalElem LocalElem::from_coeffs(FieldPtr F, long val, std::vector<FqElem> coeffs) {
  if (F->kind() != FieldKind::LaurentSeries)
    throw std::invalid_argument("coefficient literals are for Laurent fields");
  const ResidueField& k = F->res();
  pol_trim(coeffs, k);
  if (coeffs.empty()) return zero(std::move(F));
  PolyFrac pf;
  if (val >= 0) {
    pf.num.assign(val, k.zero());
    pf.num.insert(pf.num.end(), coeffs.begin(), coeffs.end());
    pf.den = {k.one()};
  } else {
    pf.num = std::move(coeffs);
    pf.den.assign(-val, k.zero());
    pf.den.push_back(k.one());
  }
  LocalElem x(std::move(F));
  x.state_ = State::Nonzero;
  x.exact_ = std::move(pf);
  x.recompute_window();
  return x;
}

LocalElem LocalElem::from_digits(FieldPtr F, long val, std::vector<FqElem> digits) {
  const ResidueField& k = F->res();
  size_t lead = 0;
  while (lead < digits.size() && k.is_zero(digits[lead])) ++lead;
  if (lead == digits.size())
    return approx_zero(std::move(F), val + static_cast<long>(digits.size()));
  digits.erase(digits.begin(), digits.begin() + lead);
  if (static_cast<int>(digits.size()) > F->prec()) digits.resize(F->prec());
  LocalElem x(std::move(F));
  x.state_ = State::Nonzero;
  x.val_ = val + static_cast<long>(lead);
  x.digits_ = std::move(digits);
  return x;
}

void LocalElem::recompute_window() {
  const ResidueField& k = F_->res();
  int N = F_->prec();
  digits_.clear();
  if (const Rational* r = std::get_if<Rational>(&exact_)) {
    int p = F_->p();
    BigInt a = numerator(*r), b = denominator(*r);
    long va = valp(a, p), vb = valp(b, p);
    val_ = va - vb;
    a /= pow_big(p, static_cast<int>(va));
    b /= pow_big(p, static_cast<int>(vb));
    BigInt binv = invmod(b, pow_big(p, N + 1));
    for (int i = 0; i < N; ++i) {
      BigInt d = ((a * binv) % p + p) % p;
      digits_.push_back(k.from_int(static_cast<long>(d)));
      a = (a - d * b) / p;
    }
  } else {
    const PolyFrac& pf = std::get<PolyFrac>(exact_);
    size_t ln = pol_low(pf.num, k), ld = pol_low(pf.den, k);
    val_ = static_cast<long>(ln) - static_cast<long>(ld);
    std::vector<FqElem> num(pf.num.begin() + ln, pf.num.end());
    std::vector<FqElem> den(pf.den.begin() + ld, pf.den.end());
    digits_ = series_div(num, den, k, N);
  }
}

// ---- queries ----

long LocalElem::valuation() const {
  switch (state_) {
    case State::Nonzero:
      return val_;
    case State::ExactZero:
      throw std::domain_error("valuation of zero is +infinity");
    default:
      throw InsufficientPrecision("valuation undetermined: only v >= " +
                                  std::to_string(val_) + " is known");
  }
}

long LocalElem::zero_bound() const {
  if (state_ != State::ApproxZero)
    throw std::logic_error("zero_bound on a determined element");
  return val_;
}

int LocalElem::known_digits() const {
  return state_ == State::Nonzero ? static_cast<int>(digits_.size()) : 0;
}

const FqElem& LocalElem::digit(int i) const {
  if (state_ != State::Nonzero || i >= static_cast<int>(digits_.size()))
    throw InsufficientPrecision("digit beyond guaranteed window");
  return digits_[i];
}

FqElem LocalElem::residue() const {
  const ResidueField& k = F_->res();
  switch (state_) {
    case State::ExactZero:
      return k.zero();
    case State::ApproxZero:
      if (val_ >= 1) return k.zero();
      throw InsufficientPrecision("residue of possible unit unknown");
    default:
      if (val_ > 0) return k.zero();
      if (val_ < 0) throw std::domain_error("residue of non-integral element");
      return digits_[0];
  }
}

const Rational* LocalElem::exact_rational() const {
  return std::get_if<Rational>(&exact_);
}

const PolyFrac* LocalElem::exact_polyfrac() const {
  return std::get_if<PolyFrac>(&exact_);
}

// ---- arithmetic ----

LocalElem LocalElem::neg() const {
  const ResidueField& k = F_->res();
  if (state_ != State::Nonzero) return *this;
  LocalElem r(F_);
  r.state_ = State::Nonzero;
  if (const Rational* q = std::get_if<Rational>(&exact_)) {
    r.exact_ = Rational(-*q);
    r.recompute_window();
    return r;
  }
  if (const PolyFrac* pf = std::get_if<PolyFrac>(&exact_)) {
    r.exact_ = PolyFrac{pol_neg(pf->num, k), pf->den};
    r.recompute_window();
    return r;
  }
  r.val_ = val_;
  if (F_->kind() == FieldKind::LaurentSeries) {
    r.digits_ = digits_;
    for (auto& d : r.digits_) d = k.neg(d);
  } else {
    int p = F_->p();
    r.digits_.reserve(digits_.size());
    for (size_t i = 0; i < digits_.size(); ++i)
      r.digits_.push_back(
          k.from_int(i == 0 ? p - digits_[0].c[0] : p - 1 - digits_[i].c[0]));
  }
  return r;
}

LocalElem add(const LocalElem& x, const LocalElem& y) {
  const FieldPtr& F = x.F_;
  if (!(*F == *y.F_)) throw std::invalid_argument("mixed-field arithmetic");
  const ResidueField& k = F->res();
  using State = LocalElem::State;

  if (x.state_ == State::ExactZero) return y;
  if (y.state_ == State::ExactZero) return x;

  // Exact path: both carry exact backings.
  if (x.exact_.index() != 0 && y.exact_.index() != 0) {
    if (const Rational* a = std::get_if<Rational>(&x.exact_)) {
      Rational s = *a + std::get<Rational>(y.exact_);
      return LocalElem::from_rational(F, s);
    }
    const PolyFrac& a = std::get<PolyFrac>(x.exact_);
    const PolyFrac& b = std::get<PolyFrac>(y.exact_);
    PolyFrac s;
    s.num = pol_add(pol_mul(a.num, b.den, k), pol_mul(b.num, a.den, k), k);
    s.den = pol_mul(a.den, b.den, k);
    if (s.num.empty()) return LocalElem::zero(F);
    LocalElem r(F);
    r.state_ = State::Nonzero;
    r.exact_ = std::move(s);
    r.recompute_window();
    return r;
  }

  // Window bookkeeping: known digit range of each operand.
  auto window_end = [&](const LocalElem& e) {
    return e.state_ == State::ApproxZero ? e.val_
                                         : e.val_ + static_cast<long>(e.digits_.size());
  };
  long cap = std::min(window_end(x), window_end(y));

  if (x.state_ == State::ApproxZero && y.state_ == State::ApproxZero)
    return LocalElem::approx_zero(F, std::min(x.val_, y.val_));
  if (x.state_ == State::ApproxZero || y.state_ == State::ApproxZero) {
    const LocalElem& nz = x.state_ == State::ApproxZero ? y : x;
    long bound = x.state_ == State::ApproxZero ? x.val_ : y.val_;
    if (nz.val_ >= bound) return LocalElem::approx_zero(F, bound);
    std::vector<FqElem> d(nz.digits_.begin(),
                          nz.digits_.begin() + std::min<long>(nz.digits_.size(),
                                                              bound - nz.val_));
    return LocalElem::from_digits(F, nz.val_, std::move(d));
  }

  long minv = std::min(x.val_, y.val_);
  if (cap <= minv) return LocalElem::approx_zero(F, cap);
  int len = static_cast<int>(cap - minv);
  if (F->kind() == FieldKind::LaurentSeries) {
    std::vector<FqElem> d(len, k.zero());
    for (int i = 0; i < len; ++i) {
      long pos = minv + i;
      FqElem s = k.zero();
      if (pos >= x.val_ && pos < x.val_ + static_cast<long>(x.digits_.size()))
        s = k.add(s, x.digits_[pos - x.val_]);
      if (pos >= y.val_ && pos < y.val_ + static_cast<long>(y.digits_.size()))
        s = k.add(s, y.digits_[pos - y.val_]);
      d[i] = s;
    }
    return LocalElem::from_digits(F, minv, std::move(d));
  }
  // p-adic: add unit values as integers, truncate carries above the cap.
  int p = F->p();
  auto unit_value = [&](const LocalElem& e) {
    BigInt v = 0;
    for (int i = static_cast<int>(e.digits_.size()) - 1; i >= 0; --i)
      v = v * p + e.digits_[i].c[0];
    return v * pow_big(p, static_cast<int>(e.val_ - minv));
  };
  BigInt sum = (unit_value(x) + unit_value(y)) % pow_big(p, len);
  std::vector<FqElem> d(len, k.zero());
  for (int i = 0; i < len; ++i) {
    d[i] = k.from_int(static_cast<long>(sum % p));
    sum /= p;
  }
  return LocalElem::from_digits(F, minv, std::move(d));
}

LocalElem sub(const LocalElem& x, const LocalElem& y) { return add(x, y.neg()); }

LocalElem mul(const LocalElem& x, const LocalElem& y) {
  const FieldPtr& F = x.F_;
  if (!(*F == *y.F_)) throw std::invalid_argument("mixed-field arithmetic");
  const ResidueField& k = F->res();
  using State = LocalElem::State;

  if (x.state_ == State::ExactZero || y.state_ == State::ExactZero)
    return LocalElem::zero(F);
  if (x.state_ == State::ApproxZero || y.state_ == State::ApproxZero) {
    auto lower = [](const LocalElem& e) { return e.val_; };  // val or bound
    return LocalElem::approx_zero(F, lower(x) + lower(y));
  }

  if (x.exact_.index() != 0 && y.exact_.index() != 0) {
    if (const Rational* a = std::get_if<Rational>(&x.exact_))
      return LocalElem::from_rational(F, *a * std::get<Rational>(y.exact_));
    const PolyFrac& a = std::get<PolyFrac>(x.exact_);
    const PolyFrac& b = std::get<PolyFrac>(y.exact_);
    LocalElem r(F);
    r.state_ = State::Nonzero;
    r.exact_ = PolyFrac{pol_mul(a.num, b.num, k), pol_mul(a.den, b.den, k)};
    r.recompute_window();
    return r;
  }

  int len = std::min(x.known_digits(), y.known_digits());
  long val = x.val_ + y.val_;
  if (F->kind() == FieldKind::LaurentSeries) {
    std::vector<FqElem> d(len, k.zero());
    for (int i = 0; i < len; ++i)
      for (int j = 0; j <= i; ++j)
        if (j < x.known_digits() && i - j < y.known_digits())
          d[i] = k.add(d[i], k.mul(x.digits_[j], y.digits_[i - j]));
    return LocalElem::from_digits(F, val, std::move(d));
  }
  int p = F->p();
  auto unit_value = [&](const LocalElem& e) {
    BigInt v = 0;
    for (int i = static_cast<int>(e.digits_.size()) - 1; i >= 0; --i)
      v = v * p + e.digits_[i].c[0];
    return v;
  };
  BigInt prod = (unit_value(x) * unit_value(y)) % pow_big(p, len);
  std::vector<FqElem> d(len, k.zero());
  for (int i = 0; i < len; ++i) {
    d[i] = k.from_int(static_cast<long>(prod % p));
    prod /= p;
  }
  return LocalElem::from_digits(F, val, std::move(d));
}

LocalElem LocalElem::inv() const {
  const ResidueField& k = F_->res();
  if (state_ == State::ExactZero) throw std::domain_error("division by zero");
  if (state_ == State::ApproxZero)
    throw InsufficientPrecision("cannot invert a possible zero");
  if (const Rational* r = std::get_if<Rational>(&exact_))
    return from_rational(F_, Rational(1) / *r);
  if (const PolyFrac* pf = std::get_if<PolyFrac>(&exact_)) {
    LocalElem r(F_);
    r.state_ = State::Nonzero;
    r.exact_ = PolyFrac{pf->den, pf->num};
    r.recompute_window();
    return r;
  }
  int len = static_cast<int>(digits_.size());
  if (F_->kind() == FieldKind::LaurentSeries) {
    std::vector<FqElem> one = {k.one()};
    std::vector<FqElem> d = series_div(one, digits_, k, len);
    return from_digits(F_, -val_, std::move(d));
  }
  int p = F_->p();
  BigInt u = 0;
  for (int i = len - 1; i >= 0; --i) u = u * p + digits_[i].c[0];
  BigInt v = invmod(u, pow_big(p, len));
  std::vector<FqElem> d(len, k.zero());
  for (int i = 0; i < len; ++i) {
    d[i] = k.from_int(static_cast<long>(v % p));
    v /= p;
  }
  return from_digits(F_, -val_, std::move(d));
}

LocalElem div(const LocalElem& x, const LocalElem& y) { return mul(x, y.inv()); }

LocalElem LocalElem::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  LocalElem r = from_int(F_, 1);
  LocalElem base = *this;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    if (e >>= 1) base = mul(base, base);
  }
  return r;
}

LocalElem LocalElem::shift(long m) const {
  if (m == 0 || state_ == State::ExactZero) return *this;
  if (state_ == State::ApproxZero) return approx_zero(F_, val_ + m);
  if (const Rational* r = std::get_if<Rational>(&exact_)) {
    Rational s = *r * pow_rat(Rational(F_->p()), m);
    return from_rational(F_, s);
  }
  if (const PolyFrac* pf = std::get_if<PolyFrac>(&exact_)) {
    const ResidueField& k = F_->res();
    PolyFrac s = *pf;
    if (m > 0)
      s.num.insert(s.num.begin(), m, k.zero());
    else
      s.den.insert(s.den.begin(), -m, k.zero());
    LocalElem r2(F_);
    r2.state_ = State::Nonzero;
    r2.exact_ = std::move(s);
    r2.recompute_window();
    return r2;
  }
  LocalElem r = *this;
  r.val_ += m;
  return r;
}

bool equals(const LocalElem& x, const LocalElem& y) {
  using State = LocalElem::State;
  if (x.state_ == State::ExactZero && y.state_ == State::ExactZero) return true;
  LocalElem d = sub(x, y);
  if (d.state_ == State::ExactZero) return true;
  if (d.state_ == State::Nonzero) return false;
  throw InsufficientPrecision("equality undecidable at available precision");
}

std::string LocalElem::to_string() const {
  if (state_ == State::ExactZero) return "0";
  if (state_ == State::ApproxZero) return "O(w^" + std::to_string(val_) + ")";
  const ResidueField& k = F_->res();
  std::string s = std::to_string(val_) + ":";
  for (size_t i = 0; i < digits_.size(); ++i) {
    if (i) s += ",";
    s += k.to_string(digits_[i]);
  }
  return s;
}

// ---- squares ----

SquareVerdict is_square(const LocalElem& x) {
  const FieldPtr& F = x.field();
  const ResidueField& k = F->res();
  if (x.is_exact_zero()) return SquareVerdict::Yes;
  if (x.is_approx_zero()) return SquareVerdict::Inconclusive;
  if (x.valuation() % 2 != 0) return SquareVerdict::No;
  if (F->p() != 2)
    return k.legendre(x.digit(0)) == 1 ? SquareVerdict::Yes : SquareVerdict::No;
  if (F->kind() == FieldKind::LaurentSeries) {
    // A unit series is a square iff it has no odd-exponent terms
    // (squaring is coefficientwise on even exponents in characteristic 2).
    // u = num/den = (num*den)/den^2, so test num*den.
    if (const PolyFrac* pf = x.exact_polyfrac()) {
      std::vector<FqElem> w = pol_mul(pf->num, pf->den, k);
      size_t low = pol_low(w, k);
      for (size_t i = low; i < w.size(); ++i)
        if ((i - low) % 2 == 1 && !k.is_zero(w[i])) return SquareVerdict::No;
      return SquareVerdict::Yes;
    }
    for (int i = 1; i < x.known_digits(); i += 2)
      if (!k.is_zero(x.digit(i))) return SquareVerdict::No;
    return SquareVerdict::Inconclusive;
  }
  // Q_2: a unit is a square iff it is 1 mod 8; needs three known digits.
  if (x.known_digits() < 3) return SquareVerdict::Inconclusive;
  int mod8 = x.digit(0).c[0] + 2 * x.digit(1).c[0] + 4 * x.digit(2).c[0];
  return mod8 == 1 ? SquareVerdict::Yes : SquareVerdict::No;
}

std::optional<LocalElem> sqrt(const LocalElem& x) {
  const FieldPtr& F = x.field();
  const ResidueField& k = F->res();
  if (is_square(x) != SquareVerdict::Yes) return std::nullopt;
  if (x.is_exact_zero()) return x;
  long m = x.valuation() / 2;

  if (F->p() == 2 && F->kind() == FieldKind::LaurentSeries) {
    // Exact square root: take roots of the even coefficients of num*den,
    // then divide back by den.
    const PolyFrac* pf = x.exact_polyfrac();
    std::vector<FqElem> w = pol_mul(pf->num, pf->den, k);
    size_t low = pol_low(w, k);
    std::vector<FqElem> root((w.size() - low) / 2 + 1, k.zero());
    for (size_t i = low; i < w.size(); i += 2)
      root[(i - low) / 2] = *k.sqrt(w[i]);
    // sqrt(x) = t^(low/2 ...) handled through from_coeffs + division below.
    LocalElem num_root = LocalElem::from_coeffs(F, static_cast<long>(low) / 2
                                                       - 0,
                                                std::move(root));
    LocalElem den_elem = LocalElem::from_coeffs(
        F, 0, std::vector<FqElem>(pf->den.begin(), pf->den.end()));
    // low is even iff v(num)+v(den) even; valuation of x even guarantees it.
    return div(num_root, den_elem);
  }

  // Newton iteration y <- (y + x/y)/2 on the exact backing (or the exact
  // truncation of the window when no backing is available).
  int target_digits = x.exact() ? F->prec() : x.known_digits();
  LocalElem xe = x;
  if (!x.exact()) {
    // Exact truncation of the known window.
    if (F->kind() == FieldKind::Padic) {
      Rational r = 0;
      for (int i = x.known_digits() - 1; i >= 0; --i)
        r = r * F->p() + x.digit(i).c[0];
      r *= pow_rat(Rational(F->p()), x.valuation());
      xe = LocalElem::from_rational(F, r);
    } else {
      std::vector<FqElem> d;
      for (int i = 0; i < x.known_digits(); ++i) d.push_back(x.digit(i));
      xe = LocalElem::from_coeffs(F, x.valuation(), std::move(d));
    }
  }
  LocalElem u = xe.shift(-2 * m);  // unit part
  LocalElem y = F->p() == 2 ? LocalElem::from_int(F, 1)
                            : LocalElem::from_residue(F, *k.sqrt(u.digit(0)));
  LocalElem half = LocalElem::from_int(F, 2).inv();
  long target = target_digits + (F->p() == 2 ? 2 : 0);
  for (int iter = 0; iter < 64; ++iter) {
    LocalElem err = sub(u, mul(y, y));
    if (err.is_exact_zero()) break;
    if (err.valuation() >= target) break;
    y = mul(add(y, div(u, y)), half);
  }
  // Report only the digits actually guaranteed (Q_2 loses two to the
  // division by 2 in the last step).
  int good = F->p() == 2 && !x.exact() ? std::max(1, target_digits - 2)
                                       : target_digits;
  std::vector<FqElem> d;
  for (int i = 0; i < std::min(good, y.known_digits()); ++i) d.push_back(y.digit(i));
  return LocalElem::from_digits(F, m + y.valuation(), std::move(d));
}

// ---- unit enumeration and square classes ----

std::vector<LocalElem> unit_representatives(const FieldPtr& F, int k) {
  if (k < 1 || k > F->prec()) throw std::invalid_argument("bad unit level");
  const ResidueField& kf = F->res();
  long q = F->q();
  double size = (q - 1) * std::pow(static_cast<double>(q), k - 1);
  if (size > 1e6) throw std::invalid_argument("unit enumeration exceeds size guard");
  std::vector<LocalElem> out;
  long count = q - 1;
  for (int i = 1; i < k; ++i) count *= q;
  for (long code = 0; code < count; ++code) {
    long c = code;
    std::vector<FqElem> d;
    d.push_back(kf.element(1 + c % (q - 1)));  // leading digit nonzero
    c /= (q - 1);
    for (int i = 1; i < k; ++i) {
      d.push_back(kf.element(c % q));
      c /= q;
    }
    if (F->kind() == FieldKind::Padic) {
      Rational r = 0;
      for (int i = k - 1; i >= 0; --i) r = r * F->p() + d[i].c[0];
      out.push_back(LocalElem::from_rational(F, r));
    } else {
      out.push_back(LocalElem::from_coeffs(F, 0, std::move(d)));
    }
  }
  return out;
}

std::vector<LocalElem> residue_representatives(const FieldPtr& F, int k) {
  if (k < 1 || k > F->prec()) throw std::invalid_argument("bad residue level");
  const ResidueField& kf = F->res();
  long q = F->q();
  double size = std::pow(static_cast<double>(q), k);
  if (size > 1e6)
    throw std::invalid_argument("residue enumeration exceeds size guard");
  long count = 1;
  for (int i = 0; i < k; ++i) count *= q;
  std::vector<LocalElem> out;
  out.reserve(count);
  for (long code = 0; code < count; ++code) {
    long c = code;
    std::vector<FqElem> d;
    for (int i = 0; i < k; ++i) {
      d.push_back(kf.element(c % q));
      c /= q;
    }
    if (F->kind() == FieldKind::Padic) {
      Rational r = 0;
      for (int i = k - 1; i >= 0; --i) r = r * F->p() + d[i].c[0];
      out.push_back(LocalElem::from_rational(F, r));
    } else {
      out.push_back(LocalElem::from_coeffs(F, 0, std::move(d)));
    }
  }
  return out;
}

long square_class_count(const FieldPtr& F, int k) {
  std::vector<LocalElem> units = unit_representatives(F, k);
  std::map<std::string, int> image;
  for (const LocalElem& u : units) {
    LocalElem s = mul(u, u);
    std::string key;
    for (int i = 0; i < k; ++i)
      key += F->res().to_string(s.digit(i)) + "|";
    image[key] += 1;
  }
  long unit_classes = static_cast<long>(units.size()) /
                      static_cast<long>(image.size());
  return 2 * unit_classes;
}

}  // namespace endo
