#include "belyi/field.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

#include "belyi/errors.hpp"
#include "belyi/factor.hpp"
#include "belyi/polynomial.hpp"

namespace belyi {

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return (a * b) % p;  // p < 2^31 so the product fits
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (r != 1) throw PreconditionError("division by zero in F_p");
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

// Polynomials over F_p as plain coefficient vectors, for inversion in F_{p^n}.
using RawPoly = std::vector<std::int64_t>;

void raw_trim(RawPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::int64_t parse_int(std::string_view s, std::size_t offset) {
  std::int64_t v = 0;
  auto trimmed_begin = s.find_first_not_of(' ');
  auto trimmed_end = s.find_last_not_of(' ');
  if (trimmed_begin == std::string_view::npos) throw ParseError("empty integer", offset);
  s = s.substr(trimmed_begin, trimmed_end - trimmed_begin + 1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("malformed integer '" + std::string(s) + "'", offset + trimmed_begin);
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

bool is_odd_prime(std::uint64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

Field::Field(Coeff p, int n, std::vector<Coeff> modulus)
    : p_(p), n_(n), modulus_(std::move(modulus)) {
  const std::uint64_t pm1 = p_ - 1;
  const std::uint64_t sq = pm1 * pm1;
  safe_terms_ = sq == 0 ? std::numeric_limits<std::uint64_t>::max()
                        : (std::numeric_limits<std::uint64_t>::max() - pm1) / sq;
  if (safe_terms_ == 0) safe_terms_ = 1;
}

FieldPtr Field::create(std::uint64_t p, int n) {
  if (p == 2) throw PreconditionError("characteristic 2 is not supported (odd characteristic required)");
  require(is_odd_prime(p), "p = " + std::to_string(p) + " is not an odd prime");
  require(p < (1ULL << 31), "p must be below 2^31");
  require(n >= 1, "extension degree n must be >= 1");
  auto prime = std::make_shared<const Field>(static_cast<Coeff>(p), 1, std::vector<Coeff>{0, 1});
  if (n == 1) return prime;
  // Enumerate monic degree-n candidates in base-p order.
  std::vector<Coeff> digits(n, 0);
  while (true) {
    std::vector<std::int64_t> c(digits.begin(), digits.end());
    c.push_back(1);
    if (digits[0] != 0) {
      Polynomial cand = Polynomial::from_ints(prime, c);
      if (is_irreducible(cand)) {
        std::vector<Coeff> mod(digits.begin(), digits.end());
        mod.push_back(1);
        return std::make_shared<const Field>(static_cast<Coeff>(p), n, std::move(mod));
      }
    }
    int i = 0;
    while (i < n && ++digits[i] == p) digits[i++] = 0;
    ensure(i < n, "no irreducible polynomial found");
  }
}

FieldPtr Field::with_modulus(std::uint64_t p, std::vector<Coeff> modulus) {
  if (p == 2) throw PreconditionError("characteristic 2 is not supported (odd characteristic required)");
  require(is_odd_prime(p), "p = " + std::to_string(p) + " is not an odd prime");
  require(p < (1ULL << 31), "p must be below 2^31");
  require(modulus.size() >= 2, "modulus must have degree >= 1");
  for (auto& c : modulus) c %= static_cast<Coeff>(p);
  require(modulus.back() == 1, "modulus must be monic");
  const int n = static_cast<int>(modulus.size()) - 1;
  if (n == 1) return create(p, 1);
  auto prime = create(p, 1);
  std::vector<std::int64_t> c(modulus.begin(), modulus.end());
  require(is_irreducible(Polynomial::from_ints(prime, c)), "modulus is not irreducible over F_p");
  return std::make_shared<const Field>(static_cast<Coeff>(p), n, std::move(modulus));
}

FieldPtr Field::of_order(std::uint64_t q) {
  require(q >= 3, "field order must be an odd prime power >= 3");
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;
  int n = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++n;
  }
  require(r == 1, std::to_string(q) + " is not a prime power");
  return create(p, n);
}

FieldPtr Field::parse(std::string_view text) {
  auto slash = text.find('/');
  std::string_view head = text.substr(0, slash);
  auto caret = head.find('^');
  std::uint64_t p;
  int n = 1;
  if (caret == std::string_view::npos) {
    std::int64_t v = parse_int(head, 0);
    require(v > 0, "field order must be positive");
    if (slash == std::string_view::npos) return of_order(static_cast<std::uint64_t>(v));
    p = static_cast<std::uint64_t>(v);
  } else {
    p = static_cast<std::uint64_t>(parse_int(head.substr(0, caret), 0));
    n = static_cast<int>(parse_int(head.substr(caret + 1), caret + 1));
  }
  if (slash == std::string_view::npos) return create(p, n);
  std::vector<Coeff> mod;
  std::size_t offset = slash + 1;
  for (auto part : split(text.substr(slash + 1), ',')) {
    std::int64_t v = parse_int(part, offset);
    offset += part.size() + 1;
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    mod.push_back(static_cast<Coeff>(r));
  }
  if (static_cast<int>(mod.size()) != n + 1)
    throw ParseError("modulus must have n+1 = " + std::to_string(n + 1) + " coefficients", slash + 1);
  return with_modulus(p, std::move(mod));
}

BigInt Field::order() const { return big_pow(p_, static_cast<unsigned long>(n_)); }

std::uint64_t Field::order_u64() const {
  BigInt q = order();
  if (q >= BigInt(1) << 62) throw GuardError("field order " + q.get_str() + " too large to enumerate");
  return q.get_ui();
}

std::string Field::describe() const {
  if (n_ == 1) return std::to_string(p_);
  std::ostringstream os;
  os << p_ << '^' << n_ << '/';
  for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
  return os.str();
}

Elem Field::one() const {
  Elem e(n_, 0);
  e[0] = 1;
  return e;
}

Elem Field::from_int(std::int64_t v) const {
  Elem e(n_, 0);
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  e[0] = static_cast<Coeff>(r);
  return e;
}

Elem Field::generator() const {
  if (n_ == 1) return zero();
  Elem e(n_, 0);
  e[1] = 1;
  return e;
}

bool Field::is_zero(const Elem& a) const {
  return std::all_of(a.begin(), a.end(), [](Coeff c) { return c == 0; });
}

bool Field::is_one(const Elem& a) const {
  if (a[0] != 1) return false;
  return std::all_of(a.begin() + 1, a.end(), [](Coeff c) { return c == 0; });
}

bool Field::in_prime_subfield(const Elem& a) const {
  return std::all_of(a.begin() + 1, a.end(), [](Coeff c) { return c == 0; });
}

Elem Field::add(const Elem& a, const Elem& b) const {
  Elem r(n_);
  for (int i = 0; i < n_; ++i) {
    Coeff s = a[i] + b[i];
    r[i] = s >= p_ ? s - p_ : s;
  }
  return r;
}

Elem Field::sub(const Elem& a, const Elem& b) const {
  Elem r(n_);
  for (int i = 0; i < n_; ++i) r[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + p_ - b[i];
  return r;
}

Elem Field::neg(const Elem& a) const {
  Elem r(n_);
  for (int i = 0; i < n_; ++i) r[i] = a[i] == 0 ? 0 : p_ - a[i];
  return r;
}

Elem Field::scale(const Elem& a, Coeff c) const {
  Elem r(n_);
  for (int i = 0; i < n_; ++i) r[i] = static_cast<Coeff>(mulmod64(a[i], c, p_));
  return r;
}

Elem Field::mul(const Elem& a, const Elem& b) const {
  if (n_ == 1) return Elem{static_cast<Coeff>(mulmod64(a[0], b[0], p_))};
  boost::container::small_vector<std::uint64_t, 16> wide(2 * n_ - 1, 0);
  const bool lazy = safe_terms_ >= static_cast<std::uint64_t>(n_);
  for (int i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    const std::uint64_t ai = a[i];
    for (int j = 0; j < n_; ++j) {
      if (lazy) {
        wide[i + j] += ai * b[j];
      } else {
        wide[i + j] = (wide[i + j] + ai * b[j] % p_) % p_;
      }
    }
  }
  for (auto& w : wide) w %= p_;
  // Fold the top down with the monic modulus.
  for (int k = 2 * n_ - 2; k >= n_; --k) {
    const std::uint64_t t = wide[k];
    if (t == 0) continue;
    const std::uint64_t negt = p_ - t;
    for (int j = 0; j < n_; ++j) {
      if (modulus_[j] != 0) wide[k - n_ + j] = (wide[k - n_ + j] + negt * modulus_[j]) % p_;
    }
  }
  Elem out(n_);
  for (int i = 0; i < n_; ++i) out[i] = static_cast<Coeff>(wide[i]);
  return out;
}

Elem Field::inv(const Elem& a) const {
  if (is_zero(a)) throw PreconditionError("division by zero");
  if (n_ == 1) return Elem{static_cast<Coeff>(inv_mod(a[0], p_))};
  // Extended Euclid over F_p: find s with s*a = 1 mod modulus.
  const std::int64_t P = p_;
  auto norm = [P](std::int64_t v) { v %= P; return v < 0 ? v + P : v; };
  RawPoly r0(modulus_.begin(), modulus_.end()), r1(a.begin(), a.end());
  RawPoly s0{0}, s1{1};
  raw_trim(r1);
  while (!r1.empty()) {
    // r0 = q*r1 + r; s = s0 - q*s1
    RawPoly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
    std::int64_t lead_inv = static_cast<std::int64_t>(inv_mod(r1.back(), p_));
    RawPoly rem = r0;
    for (int k = static_cast<int>(rem.size()) - static_cast<int>(r1.size()); k >= 0; --k) {
      std::int64_t c = norm(rem[k + r1.size() - 1] * lead_inv);
      q[k] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j < r1.size(); ++j) rem[k + j] = norm(rem[k + j] - c * r1[j]);
    }
    raw_trim(rem);
    RawPoly qs(q.size() + s1.size(), 0);
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < s1.size(); ++j) qs[i + j] = norm(qs[i + j] + q[i] * s1[j]);
    RawPoly s2(std::max(s0.size(), qs.size()), 0);
    for (std::size_t i = 0; i < s2.size(); ++i)
      s2[i] = norm((i < s0.size() ? s0[i] : 0) - (i < qs.size() ? qs[i] : 0));
    raw_trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant since the modulus is irreducible.
  ensure(r0.size() == 1, "inverse: modulus not irreducible");
  std::int64_t c = static_cast<std::int64_t>(inv_mod(r0[0], p_));
  Elem out(n_, 0);
  for (std::size_t i = 0; i < s0.size() && i < static_cast<std::size_t>(n_); ++i)
    out[i] = static_cast<Coeff>(norm(s0[i] * c));
  return out;
}

Elem Field::pow(const Elem& a, std::uint64_t e) const {
  Elem result = one();
  Elem base = a;
  while (e) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

Elem Field::pow(const Elem& a, const BigInt& e) const {
  require(e >= 0, "negative exponent");
  if (e.fits_ulong_p()) return pow(a, static_cast<std::uint64_t>(e.get_ui()));
  Elem result = one();
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mul(result, result);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mul(result, a);
  }
  return result;
}

Elem Field::frobenius(const Elem& a, std::uint64_t iterations) const {
  Elem r = a;
  for (std::uint64_t i = 0; i < iterations; ++i) r = pow(r, static_cast<std::uint64_t>(p_));
  return r;
}

Elem Field::pth_root(const Elem& a) const {
  if (n_ == 1) return a;
  return frobenius(a, static_cast<std::uint64_t>(n_ - 1));
}

int Field::quadratic_character(const Elem& a) const {
  if (is_zero(a)) return 0;
  BigInt e = (order() - 1) / 2;
  Elem r = pow(a, e);
  if (is_one(r)) return 1;
  ensure(is_one(neg(r)), "Euler criterion produced neither 1 nor -1");
  return -1;
}

bool Field::is_square(const Elem& a) const { return quadratic_character(a) >= 0; }

std::uint64_t Field::index_of(const Elem& a) const {
  std::uint64_t idx = 0;
  for (int i = n_ - 1; i >= 0; --i) idx = idx * p_ + a[i];
  return idx;
}

Elem Field::element_at(std::uint64_t index) const {
  Elem e(n_, 0);
  for (int i = 0; i < n_; ++i) {
    e[i] = static_cast<Coeff>(index % p_);
    index /= p_;
  }
  return e;
}

void Field::increment(Elem& a) const {
  for (int i = 0; i < n_; ++i) {
    if (++a[i] < p_) return;
    a[i] = 0;
  }
}

std::strong_ordering Field::compare(const Elem& a, const Elem& b) {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

std::string Field::format(const Elem& a) const {
  std::ostringstream os;
  for (int i = 0; i < n_; ++i) os << (i ? "," : "") << a[i];
  return os.str();
}

Elem Field::parse_element(std::string_view text) const {
  auto parts = split(text, ',');
  if (static_cast<int>(parts.size()) > n_)
    throw ParseError("element has " + std::to_string(parts.size()) + " coordinates but the field has degree " +
                         std::to_string(n_),
                     0);
  Elem e(n_, 0);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::int64_t v = parse_int(parts[i], offset);
    offset += parts[i].size() + 1;
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    e[i] = static_cast<Coeff>(r);
  }
  return e;
}

Elem Field::validate(const Elem& a) const {
  require(static_cast<int>(a.size()) == n_, "element has wrong number of coordinates");
  for (Coeff c : a) require(c < p_, "element coordinate out of range");
  return a;
}

FieldElement::FieldElement(FieldPtr field, Elem value) : field_(std::move(field)), value_(std::move(value)) {
  field_->validate(value_);
}

void FieldElement::check_same(const FieldElement& o) const {
  if (field_ != o.field_ && !field_->same_as(*o.field_))
    throw PreconditionError("operands live in different fields (" + field_->describe() + " vs " +
                            o.field_->describe() + "); embed one first");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->add(value_, o.value_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->sub(value_, o.value_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->mul(value_, o.value_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->div(value_, o.value_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_->neg(value_)}; }
FieldElement FieldElement::inverse() const { return {field_, field_->inv(value_)}; }
FieldElement FieldElement::pow(const BigInt& e) const { return {field_, field_->pow(value_, e)}; }
bool FieldElement::operator==(const FieldElement& o) const {
  return field_->same_as(*o.field_) && value_ == o.value_;
}

std::vector<Elem> galois_orbit(const Field& field, const Elem& a, const Field& base) {
  require(field.characteristic() == base.characteristic() && field.degree() % base.degree() == 0,
          "base field " + base.describe() + " is not a subfield of " + field.describe());
  std::vector<Elem> orbit{a};
  Elem cur = field.frobenius(a, static_cast<std::uint64_t>(base.degree()));
  while (cur != a) {
    orbit.push_back(cur);
    cur = field.frobenius(cur, static_cast<std::uint64_t>(base.degree()));
  }
  return orbit;
}

}  // namespace belyi
