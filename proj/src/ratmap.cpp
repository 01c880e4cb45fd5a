#include "belyi/ratmap.hpp"

#include <algorithm>

#include "belyi/errors.hpp"

namespace belyi {

bool point_less(const P1Point& a, const P1Point& b) {
  if (a.is_infinity()) return false;
  if (b.is_infinity()) return true;
  return Field::compare(a.value(), b.value()) < 0;
}

std::string format_point(const Field& F, const P1Point& P) {
  return P.is_infinity() ? std::string("inf") : F.format(P.value());
}

P1Point map_point(const Embedding& e, const P1Point& P) {
  return P.is_infinity() ? P : P1Point::affine(e.map(P.value()));
}

std::vector<P1Point> rational_points(const Field& F) {
  const std::uint64_t q = F.order_u64();
  std::vector<P1Point> pts;
  pts.reserve(q + 1);
  Elem e = F.zero();
  for (std::uint64_t i = 0; i < q; ++i) {
    pts.push_back(P1Point::affine(e));
    F.increment(e);
  }
  pts.push_back(P1Point::infinity());
  sort_points(pts);
  return pts;
}

Elem element_in_order(const Field& F, std::uint64_t i) {
  // Lexicographic with c0 most significant: the last coordinate varies fastest.
  Elem e(F.degree(), 0);
  for (int k = F.degree() - 1; k >= 0; --k) {
    e[k] = static_cast<Coeff>(i % F.characteristic());
    i /= F.characteristic();
  }
  return e;
}

void sort_points(std::vector<P1Point>& pts) { std::sort(pts.begin(), pts.end(), point_less); }

RationalMap RationalMap::make(const Polynomial& num, const Polynomial& den) {
  require(!den.is_zero(), "rational map with zero denominator");
  require(num.field()->same_as(*den.field()), "numerator and denominator over different fields");
  Polynomial g = gcd(num, den);
  Polynomial n = num, d = den;
  if (g.degree() >= 1) {
    n = num / g;
    d = den / g;
  }
  Elem li = d.F().inv(d.lead());
  return RationalMap(n.scaled(li), d.scaled(li));
}

RationalMap RationalMap::polynomial(const Polynomial& num) {
  return RationalMap(num, Polynomial::constant(num.field(), num.field()->one()));
}

RationalMap RationalMap::identity(const FieldPtr& field) { return polynomial(Polynomial::x(field)); }

RationalMap RationalMap::constant(const FieldPtr& field, const Elem& c) {
  return polynomial(Polynomial::constant(field, c));
}

int RationalMap::degree() const { return std::max({num_.degree(), den_.degree(), 0}); }

P1Point RationalMap::evaluate(const P1Point& P) const {
  const Field& F = num_.F();
  if (P.is_infinity()) {
    const int dn = num_.degree(), dd = den_.degree();
    if (dn > dd) return P1Point::infinity();
    if (dn < dd) return P1Point::affine(F.zero());
    return P1Point::affine(F.div(num_.lead(), den_.lead()));
  }
  Elem d = den_.eval(P.value());
  if (F.is_zero(d)) return P1Point::infinity();
  return P1Point::affine(F.div(num_.eval(P.value()), d));
}

P1Point RationalMap::evaluate(const P1Point& P, const Embedding& inclusion) const {
  require(inclusion.source()->same_as(num_.F()), "evaluation: map field does not match the embedding source");
  const Field& T = *inclusion.target();
  auto eval_mapped = [&](const Polynomial& f, const Elem& x) {
    Elem acc = T.zero();
    for (int i = f.degree(); i >= 0; --i) acc = T.add(T.mul(acc, x), inclusion.map(f.coeffs()[i]));
    return acc;
  };
  if (P.is_infinity()) {
    const int dn = num_.degree(), dd = den_.degree();
    if (dn > dd) return P1Point::infinity();
    if (dn < dd) return P1Point::affine(T.zero());
    return P1Point::affine(inclusion.map(num_.F().div(num_.lead(), den_.lead())));
  }
  Elem d = eval_mapped(den_, P.value());
  if (T.is_zero(d)) return P1Point::infinity();
  return P1Point::affine(T.div(eval_mapped(num_, P.value()), d));
}

RationalMap RationalMap::base_change(const Embedding& inclusion) const {
  return RationalMap(inclusion.map(num_), inclusion.map(den_));
}

Polynomial RationalMap::wronskian() const { return num_.derivative() * den_ - num_ * den_.derivative(); }

std::string RationalMap::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RationalMap compose(const RationalMap& outer, const RationalMap& inner) {
  require(outer.field()->same_as(*inner.field()), "composition of maps over different fields");
  const Polynomial& A = outer.numerator();
  const Polynomial& B = outer.denominator();
  const Polynomial& u = inner.numerator();
  const Polynomial& v = inner.denominator();
  if (v.is_one()) return RationalMap::make(compose(A, u), compose(B, u));
  const int d = outer.degree();
  const FieldPtr& fp = outer.field();
  // Homogenize: sum a_i u^i v^(d-i).
  std::vector<Polynomial> upow{Polynomial::constant(fp, fp->one())}, vpow{Polynomial::constant(fp, fp->one())};
  for (int i = 1; i <= d; ++i) {
    upow.push_back(upow.back() * u);
    vpow.push_back(vpow.back() * v);
  }
  Polynomial num(fp), den(fp);
  for (int i = 0; i <= d; ++i) {
    Polynomial term = upow[i] * vpow[d - i];
    num = num + term.scaled(A.coeff(i));
    den = den + term.scaled(B.coeff(i));
  }
  return RationalMap::make(num, den);
}

RationalMap add(const RationalMap& a, const RationalMap& b) {
  return RationalMap::make(a.numerator() * b.denominator() + b.numerator() * a.denominator(),
                           a.denominator() * b.denominator());
}

RationalMap multiply(const RationalMap& a, const RationalMap& b) {
  return RationalMap::make(a.numerator() * b.numerator(), a.denominator() * b.denominator());
}

RationalMap power(const RationalMap& f, std::uint64_t e) {
  return RationalMap::make(f.numerator().pow(e), f.denominator().pow(e));
}

RationalMap mobius_from_triple(const FieldPtr& field, const P1Point& a, const P1Point& b, const P1Point& c) {
  require(!(a == b) && !(a == c) && !(b == c), "mobius_from_triple: the three points must be pairwise distinct");
  const Field& F = *field;
  auto lin = [&](const Elem& r) { return Polynomial::linear(field, r); };
  auto cst = [&](const Elem& v) { return Polynomial::constant(field, v); };
  if (a.is_infinity()) {
    // (b - c) / (x - c)
    return RationalMap::make(cst(F.sub(b.value(), c.value())), lin(c.value()));
  }
  if (b.is_infinity()) return RationalMap::make(lin(a.value()), lin(c.value()));
  if (c.is_infinity()) return RationalMap::make(lin(a.value()), cst(F.sub(b.value(), a.value())));
  // (x - a)(b - c) / ((x - c)(b - a))
  return RationalMap::make(lin(a.value()).scaled(F.sub(b.value(), c.value())),
                           lin(c.value()).scaled(F.sub(b.value(), a.value())));
}

Polynomial derivative(const Polynomial& f) { return f.derivative(); }

RationalMap derivative(const RationalMap& f) {
  return RationalMap::make(f.wronskian(), f.denominator() * f.denominator());
}

bool is_separable(const RationalMap& f) {
  require(!f.is_constant(), "constant map: separability is undefined for non-dominant maps");
  return !f.wronskian().is_zero();
}

}  // namespace belyi
