#include "belyi/embedding.hpp"

#include "belyi/errors.hpp"
#include "belyi/factor.hpp"

namespace belyi {

Embedding::Embedding(FieldPtr source, FieldPtr target, Elem image_of_generator)
    : source_(std::move(source)), target_(std::move(target)), image_(std::move(image_of_generator)) {
  require(source_->characteristic() == target_->characteristic(), "embedding between different characteristics");
  require(target_->degree() % source_->degree() == 0,
          "cannot embed " + source_->describe() + " into " + target_->describe() + ": degree " +
              std::to_string(source_->degree()) + " does not divide " + std::to_string(target_->degree()));
  const Field& T = *target_;
  // The generator image must be a root of the source modulus.
  Elem acc = T.zero();
  const auto& mod = source_->modulus();
  for (auto it = mod.rbegin(); it != mod.rend(); ++it) acc = T.add(T.mul(acc, image_), T.from_int(*it));
  ensure(T.is_zero(acc), "embedding image is not a root of the source modulus");
  Elem power = T.one();
  for (int j = 0; j < source_->degree(); ++j) {
    basis_images_.push_back(power);
    power = T.mul(power, image_);
  }
  build_inverse();
}

Embedding Embedding::identity(const FieldPtr& field) { return Embedding(field, field, field->generator()); }

void Embedding::build_inverse() {
  const int a = source_->degree();
  const int b = target_->degree();
  const std::int64_t p = target_->characteristic();
  auto norm = [p](std::int64_t v) { v %= p; return v < 0 ? v + p : v; };
  auto inv = [&](std::int64_t v) {
    // Fermat inverse in F_p
    std::int64_t r = 1, base = norm(v), e = p - 2;
    while (e) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return r;
  };
  std::vector<std::vector<std::int64_t>> rows(a, std::vector<std::int64_t>(b));
  std::vector<std::vector<std::int64_t>> U(a, std::vector<std::int64_t>(a, 0));
  for (int i = 0; i < a; ++i) {
    for (int c = 0; c < b; ++c) rows[i][c] = basis_images_[i][c];
    U[i][i] = 1;
  }
  pivots_.clear();
  int r = 0;
  for (int col = 0; col < b && r < a; ++col) {
    int piv = -1;
    for (int i = r; i < a; ++i)
      if (rows[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    std::swap(U[r], U[piv]);
    const std::int64_t s = inv(rows[r][col]);
    for (auto& v : rows[r]) v = norm(v * s);
    for (auto& v : U[r]) v = norm(v * s);
    for (int i = 0; i < a; ++i) {
      if (i == r || rows[i][col] == 0) continue;
      const std::int64_t f = rows[i][col];
      for (int c = 0; c < b; ++c) rows[i][c] = norm(rows[i][c] - f * rows[r][c]);
      for (int c = 0; c < a; ++c) U[i][c] = norm(U[i][c] - f * U[r][c]);
    }
    pivots_.push_back(col);
    ++r;
  }
  ensure(r == a, "embedding is not injective");
  inverse_.assign(a, std::vector<Coeff>(a));
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < a; ++j) inverse_[i][j] = static_cast<Coeff>(U[i][j]);
}

Elem Embedding::map(const Elem& x) const {
  const Field& T = *target_;
  Elem acc = T.zero();
  for (int j = 0; j < source_->degree(); ++j) {
    if (x[j] == 0) continue;
    acc = T.add(acc, T.scale(basis_images_[j], x[j]));
  }
  return acc;
}

Polynomial Embedding::map(const Polynomial& f) const {
  std::vector<Elem> c;
  c.reserve(f.coeffs().size());
  for (const auto& e : f.coeffs()) c.push_back(map(e));
  return Polynomial(target_, std::move(c));
}

std::optional<Elem> Embedding::preimage(const Elem& y) const {
  const int a = source_->degree();
  const std::uint64_t p = target_->characteristic();
  Elem x(a, 0);
  for (int j = 0; j < a; ++j) {
    std::uint64_t acc = 0;
    for (int i = 0; i < a; ++i) acc = (acc + static_cast<std::uint64_t>(y[pivots_[i]]) * inverse_[i][j]) % p;
    x[j] = static_cast<Coeff>(acc);
  }
  if (map(x) != y) return std::nullopt;
  return x;
}

std::optional<Polynomial> Embedding::preimage(const Polynomial& f) const {
  std::vector<Elem> c;
  for (const auto& e : f.coeffs()) {
    auto pre = preimage(e);
    if (!pre) return std::nullopt;
    c.push_back(std::move(*pre));
  }
  return Polynomial(source_, std::move(c));
}

Embedding Embedding::after(const Embedding& inner) const {
  require(inner.target_->same_as(*source_), "embedding composition: field mismatch");
  return Embedding(inner.source_, target_, map(inner.image_));
}

Embedding embed(const FieldPtr& source, const FieldPtr& target) {
  require(source->characteristic() == target->characteristic(),
          "cannot embed fields of different characteristic");
  require(target->degree() % source->degree() == 0,
          "cannot embed " + source->describe() + " into " + target->describe() + ": degree " +
              std::to_string(source->degree()) + " does not divide " + std::to_string(target->degree()));
  if (source->is_prime_field()) return Embedding(source, target, target->zero());
  std::vector<Elem> c;
  for (Coeff m : source->modulus()) c.push_back(target->from_int(m));
  auto roots = roots_in_field(Polynomial(target, std::move(c)));
  ensure(!roots.empty(), "no root of the source modulus in the target field");
  return Embedding(source, target, roots.front());
}

Extension extension_of_degree(const FieldPtr& base, int k) {
  require(k >= 1, "extension degree must be >= 1");
  if (k == 1) return {base, Embedding::identity(base)};
  FieldPtr big = Field::create(base->characteristic(), base->degree() * k);
  return {big, embed(base, big)};
}

RootField root_field(const Polynomial& g, Rng& rng) {
  require(g.degree() >= 1, "root_field of a constant");
  const FieldPtr& base = g.field();
  Polynomial m = g.monic();
  if (m.degree() == 1) return {{base, Embedding::identity(base)}, base->neg(m.coeffs()[0])};
  if (base->is_prime_field()) {
    std::vector<Coeff> mod;
    for (const auto& c : m.coeffs()) mod.push_back(c[0]);
    FieldPtr big = Field::with_modulus(base->characteristic(), std::move(mod));
    return {{big, Embedding(base, big, big->zero())}, big->generator()};
  }
  Extension ext = extension_of_degree(base, m.degree());
  auto roots = roots_in_field(ext.inclusion.map(m), rng);
  ensure(!roots.empty(), "irreducible polynomial has no root in its splitting extension");
  return {ext, roots.front()};
}

Polynomial minimal_polynomial(const Embedding& inclusion, const Elem& a) {
  const FieldPtr& T = inclusion.target();
  auto orbit = galois_orbit(*T, a, *inclusion.source());
  Polynomial big = product_of_linears(T, orbit);
  auto small = inclusion.preimage(big);
  ensure(small.has_value(), "minimal polynomial does not descend to the base field");
  return *small;
}

int degree_over(const Embedding& inclusion, const Elem& a) {
  return static_cast<int>(galois_orbit(*inclusion.target(), a, *inclusion.source()).size());
}

}  // namespace belyi
