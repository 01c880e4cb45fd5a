#include "belyi/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "belyi/errors.hpp"

namespace belyi {

Polynomial::Polynomial(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  for (auto& c : c_) field_->validate(c);
  trim();
}

void Polynomial::trim() {
  while (!c_.empty() && field_->is_zero(c_.back())) c_.pop_back();
}

Polynomial Polynomial::constant(FieldPtr field, Elem c) {
  Polynomial r(std::move(field));
  r.c_.push_back(std::move(c));
  r.trim();
  return r;
}

Polynomial Polynomial::x(FieldPtr field) {
  Polynomial r(field);
  r.c_ = {field->zero(), field->one()};
  return r;
}

Polynomial Polynomial::monomial(FieldPtr field, Elem c, int degree) {
  Polynomial r(field);
  if (field->is_zero(c)) return r;
  r.c_.assign(degree + 1, field->zero());
  r.c_[degree] = std::move(c);
  return r;
}

Polynomial Polynomial::linear(FieldPtr field, const Elem& root) {
  Polynomial r(field);
  r.c_ = {field->neg(root), field->one()};
  return r;
}

Polynomial Polynomial::from_ints(FieldPtr field, const std::vector<std::int64_t>& coeffs) {
  Polynomial r(field);
  for (auto v : coeffs) r.c_.push_back(field->from_int(v));
  r.trim();
  return r;
}

bool Polynomial::is_one() const { return c_.size() == 1 && field_->is_one(c_[0]); }

bool Polynomial::is_monic() const { return !c_.empty() && field_->is_one(c_.back()); }

Elem Polynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return field_->zero();
  return c_[i];
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r(field_);
  const std::size_t n = std::max(c_.size(), o.c_.size());
  r.c_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= c_.size())
      r.c_.push_back(o.c_[i]);
    else if (i >= o.c_.size())
      r.c_.push_back(c_[i]);
    else
      r.c_.push_back(field_->add(c_[i], o.c_[i]));
  }
  r.trim();
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r(field_);
  const std::size_t n = std::max(c_.size(), o.c_.size());
  r.c_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= c_.size())
      r.c_.push_back(field_->neg(o.c_[i]));
    else if (i >= o.c_.size())
      r.c_.push_back(c_[i]);
    else
      r.c_.push_back(field_->sub(c_[i], o.c_[i]));
  }
  r.trim();
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(field_);
  r.c_.reserve(c_.size());
  for (const auto& c : c_) r.c_.push_back(field_->neg(c));
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r(field_);
  if (is_zero() || o.is_zero()) return r;
  const Field& F = *field_;
  const std::size_t n = c_.size() + o.c_.size() - 1;
  if (F.is_prime_field()) {
    // Accumulate in 64 bits and reduce lazily.
    const std::uint64_t p = F.characteristic();
    const std::uint64_t sq = (p - 1) * (p - 1);
    const std::uint64_t budget = sq == 0 ? ~0ULL : (~0ULL - p) / sq;
    std::vector<std::uint64_t> acc(n, 0);
    std::vector<std::uint32_t> cnt(n, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      const std::uint64_t a = c_[i][0];
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) {
        acc[i + j] += a * o.c_[j][0];
        if (++cnt[i + j] >= budget) {
          acc[i + j] %= p;
          cnt[i + j] = 0;
        }
      }
    }
    r.c_.resize(n);
    for (std::size_t k = 0; k < n; ++k) r.c_[k] = Elem{static_cast<Coeff>(acc[k] % p)};
  } else {
    r.c_.assign(n, F.zero());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (F.is_zero(c_[i])) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) {
        if (F.is_zero(o.c_[j])) continue;
        r.c_[i + j] = F.add(r.c_[i + j], F.mul(c_[i], o.c_[j]));
      }
    }
  }
  r.trim();
  return r;
}

Polynomial Polynomial::scaled(const Elem& c) const {
  Polynomial r(field_);
  if (field_->is_zero(c)) return r;
  r.c_.reserve(c_.size());
  for (const auto& a : c_) r.c_.push_back(field_->mul(a, c));
  return r;
}

Polynomial Polynomial::shifted(int k) const {
  Polynomial r(field_);
  if (is_zero()) return r;
  r.c_.assign(k, field_->zero());
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
  return field_->same_as(*o.field_) && c_ == o.c_;
}

Elem Polynomial::eval(const Elem& x) const {
  const Field& F = *field_;
  Elem acc = F.zero();
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  Polynomial r(field_);
  if (c_.size() <= 1) return r;
  r.c_.reserve(c_.size() - 1);
  const Coeff p = field_->characteristic();
  for (std::size_t i = 1; i < c_.size(); ++i) r.c_.push_back(field_->scale(c_[i], static_cast<Coeff>(i % p)));
  r.trim();
  return r;
}

Polynomial Polynomial::monic() const {
  if (is_zero() || is_monic()) return *this;
  return scaled(field_->inv(lead()));
}

Polynomial Polynomial::pow(std::uint64_t e) const {
  Polynomial result = constant(field_, field_->one());
  Polynomial base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Polynomial Polynomial::reversed(int degree) const {
  ensure(degree >= this->degree(), "reversed: target degree below polynomial degree");
  Polynomial r(field_);
  r.c_.assign(degree + 1, field_->zero());
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[degree - i] = c_[i];
  r.trim();
  return r;
}

std::string Polynomial::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Elem& c = c_[i];
    if (field_->is_zero(c)) continue;
    if (!first) os << " + ";
    first = false;
    const bool unit = field_->is_one(c);
    if (!unit || i == 0) {
      if (field_->is_prime_field())
        os << field_->format(c);
      else
        os << '(' << field_->format(c) << ')';
    }
    if (i >= 1) os << (unit ? "" : "*") << 'x';
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

DivMod divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  const FieldPtr& fp = a.field();
  const Field& F = *fp;
  if (a.degree() < b.degree()) return {Polynomial(fp), a};
  std::vector<Elem> rem = a.coeffs();
  const int db = b.degree();
  const int dq = a.degree() - db;
  std::vector<Elem> q(dq + 1, F.zero());
  const Elem lead_inv = F.inv(b.lead());
  const bool monic = F.is_one(b.lead());
  const auto& bc = b.coeffs();
  if (F.is_prime_field()) {
    const std::uint64_t p = F.characteristic();
    std::vector<std::uint64_t> r(rem.size());
    for (std::size_t i = 0; i < rem.size(); ++i) r[i] = rem[i][0];
    std::vector<std::uint64_t> bv(bc.size());
    for (std::size_t i = 0; i < bc.size(); ++i) bv[i] = bc[i][0];
    const std::uint64_t li = lead_inv[0];
    for (int k = dq; k >= 0; --k) {
      std::uint64_t c = r[k + db] % p;
      if (!monic) c = c * li % p;
      q[k] = Elem{static_cast<Coeff>(c)};
      if (c == 0) continue;
      const std::uint64_t negc = p - c;
      for (int j = 0; j < db; ++j) r[k + j] = (r[k + j] + negc * bv[j]) % p;
      r[k + db] = 0;
    }
    for (std::size_t i = 0; i < rem.size(); ++i) rem[i] = Elem{static_cast<Coeff>(r[i] % p)};
  } else {
    for (int k = dq; k >= 0; --k) {
      Elem c = monic ? rem[k + db] : F.mul(rem[k + db], lead_inv);
      q[k] = c;
      if (F.is_zero(c)) continue;
      for (int j = 0; j <= db; ++j) rem[k + j] = F.sub(rem[k + j], F.mul(c, bc[j]));
    }
  }
  rem.resize(db);
  return {Polynomial(fp, std::move(q)), Polynomial(fp, std::move(rem))};
}

Polynomial operator/(const Polynomial& a, const Polynomial& b) { return divmod(a, b).quotient; }
Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).remainder; }

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::tuple<Polynomial, Polynomial, Polynomial> xgcd(const Polynomial& a, const Polynomial& b) {
  const FieldPtr& fp = a.field();
  Polynomial r0 = a, r1 = b;
  Polynomial s0 = Polynomial::constant(fp, fp->one()), s1(fp);
  Polynomial t0(fp), t1 = Polynomial::constant(fp, fp->one());
  while (!r1.is_zero()) {
    DivMod qr = divmod(r0, r1);
    Polynomial s2 = s0 - qr.quotient * s1;
    Polynomial t2 = t0 - qr.quotient * t1;
    r0 = std::move(r1);
    r1 = std::move(qr.remainder);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Elem li = fp->inv(r0.lead());
  return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

Polynomial mulmod(const Polynomial& a, const Polynomial& b, const Polynomial& m) { return (a * b) % m; }

Polynomial powmod(const Polynomial& base, const BigInt& e, const Polynomial& m) {
  require(e >= 0, "negative exponent");
  const FieldPtr& fp = m.field();
  Polynomial result = Polynomial::constant(fp, fp->one()) % m;
  if (e == 0) return result;
  Polynomial b = base % m;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mulmod(result, result, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, b, m);
  }
  return result;
}

Polynomial compose(const Polynomial& f, const Polynomial& g) {
  Polynomial acc(f.field());
  for (int i = f.degree(); i >= 0; --i) acc = acc * g + Polynomial::constant(f.field(), f.coeffs()[i]);
  return acc;
}

int valuation(const Polynomial& f, const Polynomial& factor) {
  require(!f.is_zero(), "valuation of the zero polynomial");
  require(factor.degree() >= 1, "valuation by a constant");
  int v = 0;
  Polynomial cur = f;
  while (true) {
    DivMod qr = divmod(cur, factor);
    if (!qr.remainder.is_zero()) return v;
    cur = std::move(qr.quotient);
    ++v;
  }
}

int root_multiplicity(const Polynomial& f, const Elem& root) {
  require(!f.is_zero(), "root multiplicity in the zero polynomial");
  const Field& F = f.F();
  std::vector<Elem> c = f.coeffs();
  int m = 0;
  while (c.size() > 1) {
    // Synthetic division by (x - root).
    std::vector<Elem> q(c.size() - 1);
    Elem acc = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) {
      q[i] = acc;
      acc = F.add(c[i], F.mul(acc, root));
    }
    if (!F.is_zero(acc)) break;
    c = std::move(q);
    ++m;
  }
  return m;
}

Polynomial product_of_linears(const FieldPtr& field, const std::vector<Elem>& roots) {
  if (roots.empty()) return Polynomial::constant(field, field->one());
  std::vector<Polynomial> layer;
  layer.reserve(roots.size());
  for (const auto& r : roots) layer.push_back(Polynomial::linear(field, r));
  while (layer.size() > 1) {
    std::vector<Polynomial> next;
    next.reserve((layer.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < layer.size(); i += 2) next.push_back(layer[i] * layer[i + 1]);
    if (layer.size() % 2) next.push_back(layer.back());
    layer = std::move(next);
  }
  return layer.front();
}

bool poly_less(const Polynomial& a, const Polynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    auto c = Field::compare(a.coeffs()[i], b.coeffs()[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

}  // namespace belyi
