#include "belyi/factor.hpp"

#include <algorithm>
#include <map>

#include "belyi/errors.hpp"

namespace belyi {

namespace {

Polynomial one_poly(const FieldPtr& f) { return Polynomial::constant(f, f->one()); }

// g(x) with g(x)^p = f(x); f must have only p-power exponents.
Polynomial pth_root(const Polynomial& f) {
  const Field& F = f.F();
  const int p = static_cast<int>(F.characteristic());
  std::vector<Elem> c;
  for (int i = 0; i <= f.degree(); i += p) c.push_back(F.pth_root(f.coeffs()[i]));
  for (int i = 0; i <= f.degree(); ++i)
    ensure(i % p == 0 || F.is_zero(f.coeffs()[i]), "pth_root: not a p-th power");
  return Polynomial(f.field(), std::move(c));
}

Polynomial random_poly(const FieldPtr& field, int degree_below, Rng& rng) {
  const Field& F = *field;
  std::uniform_int_distribution<Coeff> coord(0, F.characteristic() - 1);
  std::vector<Elem> c(degree_below);
  for (auto& e : c) {
    e = Elem(F.degree());
    for (auto& v : e) v = coord(rng);
  }
  return Polynomial(field, std::move(c));
}

}  // namespace

std::vector<FactorTerm> squarefree_decomposition(const Polynomial& f) {
  require(!f.is_zero(), "squarefree decomposition of the zero polynomial");
  const FieldPtr& fp = f.field();
  Polynomial m = f.monic();
  std::map<int, Polynomial> by_mult;
  auto put = [&](const Polynomial& g, int i) {
    if (g.degree() < 1) return;
    auto it = by_mult.find(i);
    if (it == by_mult.end())
      by_mult.emplace(i, g);
    else
      it->second = it->second * g;
  };
  if (m.degree() < 1) return {};
  const int p = static_cast<int>(fp->characteristic());
  Polynomial d = m.derivative();
  if (d.is_zero()) {
    for (const auto& t : squarefree_decomposition(pth_root(m))) put(t.factor, t.multiplicity * p);
  } else {
    Polynomial c = gcd(m, d);
    Polynomial w = m / c;
    int i = 1;
    while (w.degree() >= 1) {
      Polynomial y = gcd(w, c);
      put(w / y, i);
      w = y;
      c = c / y;
      ++i;
    }
    if (c.degree() >= 1) {
      for (const auto& t : squarefree_decomposition(pth_root(c.monic()))) put(t.factor, t.multiplicity * p);
    }
  }
  std::vector<FactorTerm> out;
  for (auto& [i, g] : by_mult) out.push_back({g.monic(), i});
  return out;
}

std::vector<std::pair<Polynomial, int>> distinct_degree_factorization(const Polynomial& f) {
  const FieldPtr& fp = f.field();
  std::vector<std::pair<Polynomial, int>> out;
  Polynomial rest = f.monic();
  const BigInt q = fp->order();
  const Polynomial x = Polynomial::x(fp);
  Polynomial h = x % rest;
  int i = 1;
  while (rest.degree() >= 2 * i) {
    h = powmod(h, q, rest);
    Polynomial g = gcd(rest, h - x);
    if (g.degree() >= 1) {
      out.emplace_back(g, i);
      rest = rest / g;
      h = h % rest;
    }
    ++i;
  }
  if (rest.degree() >= 1) out.emplace_back(rest, rest.degree());
  return out;
}

std::vector<Polynomial> equal_degree_factorization(const Polynomial& f, int d, Rng& rng) {
  const FieldPtr& fp = f.field();
  require(fp->characteristic() != 2, "equal-degree splitting requires odd characteristic");
  Polynomial g = f.monic();
  if (g.degree() <= d) return {g};
  ensure(g.degree() % d == 0, "equal-degree factorization: degree not a multiple of d");
  const BigInt e = (big_pow(fp->order(), static_cast<unsigned long>(d)) - 1) / 2;
  const Polynomial one = one_poly(fp);
  while (true) {
    Polynomial r = random_poly(fp, g.degree(), rng);
    if (r.degree() < 1) continue;
    Polynomial split = gcd(r, g);
    if (split.degree() < 1 || split.degree() == g.degree()) {
      split = gcd(powmod(r, e, g) - one, g);
    }
    if (split.degree() >= 1 && split.degree() < g.degree()) {
      auto left = equal_degree_factorization(split, d, rng);
      auto right = equal_degree_factorization(g / split, d, rng);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
}

Factorization factor(const Polynomial& f, Rng& rng) {
  require(!f.is_zero(), "cannot factor the zero polynomial");
  Factorization out{f.lead(), {}};
  for (const auto& sq : squarefree_decomposition(f)) {
    for (const auto& [part, d] : distinct_degree_factorization(sq.factor)) {
      for (auto& irr : equal_degree_factorization(part, d, rng)) out.terms.push_back({irr.monic(), sq.multiplicity});
    }
  }
  std::sort(out.terms.begin(), out.terms.end(),
            [](const FactorTerm& a, const FactorTerm& b) { return poly_less(a.factor, b.factor); });
  return out;
}

Factorization factor(const Polynomial& f) {
  Rng rng(kDefaultSeed);
  return factor(f, rng);
}

bool is_irreducible(const Polynomial& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  const FieldPtr& fp = f.field();
  Polynomial m = f.monic();
  const BigInt q = fp->order();
  const Polynomial x = Polynomial::x(fp);
  Polynomial h = x;
  for (int i = 1; 2 * i <= m.degree(); ++i) {
    h = powmod(h, q, m);
    if (gcd(m, h - x).degree() >= 1) return false;
  }
  return true;
}

std::vector<Elem> roots_in_field(const Polynomial& f, Rng& rng) {
  require(!f.is_zero(), "roots of the zero polynomial");
  const FieldPtr& fp = f.field();
  if (f.degree() < 1) return {};
  Polynomial m = f.monic();
  const Polynomial x = Polynomial::x(fp);
  Polynomial split = gcd(m, powmod(x, fp->order(), m) - x);
  std::vector<Elem> roots;
  if (split.degree() >= 1) {
    for (const auto& lin : equal_degree_factorization(split, 1, rng)) roots.push_back(fp->neg(lin.coeffs()[0]));
  }
  std::sort(roots.begin(), roots.end(), [](const Elem& a, const Elem& b) { return Field::compare(a, b) < 0; });
  return roots;
}

std::vector<Elem> roots_in_field(const Polynomial& f) {
  Rng rng(kDefaultSeed);
  return roots_in_field(f, rng);
}

std::vector<Polynomial> distinct_irreducible_factors(const Polynomial& f, Rng& rng) {
  std::vector<Polynomial> out;
  for (auto& t : factor(f, rng).terms) out.push_back(std::move(t.factor));
  return out;
}

}  // namespace belyi
