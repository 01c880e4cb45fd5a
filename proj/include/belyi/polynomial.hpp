#pragma once

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "belyi/field.hpp"

namespace belyi {

using Rng = std::mt19937_64;
inline constexpr std::uint64_t kDefaultSeed = 20190411;

// Dense univariate polynomial over a Field. Canonical form: no trailing
// zero coefficients; the zero polynomial has no coefficients.
class Polynomial {
 public:
  explicit Polynomial(FieldPtr field) : field_(std::move(field)) {}
  Polynomial(FieldPtr field, std::vector<Elem> coeffs);

  static Polynomial constant(FieldPtr field, Elem c);
  static Polynomial x(FieldPtr field);
  static Polynomial monomial(FieldPtr field, Elem c, int degree);
  // x - root
  static Polynomial linear(FieldPtr field, const Elem& root);
  // Small-integer coefficients, little-endian; reduced mod p.
  static Polynomial from_ints(FieldPtr field, const std::vector<std::int64_t>& coeffs);

  const FieldPtr& field() const { return field_; }
  const Field& F() const { return *field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const;
  bool is_monic() const;
  const std::vector<Elem>& coeffs() const { return c_; }
  // Coefficient of x^i; zero beyond the degree.
  Elem coeff(int i) const;
  const Elem& lead() const { return c_.back(); }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Elem& c) const;
  Polynomial shifted(int k) const;  // multiply by x^k
  bool operator==(const Polynomial& o) const;

  Elem eval(const Elem& x) const;
  Polynomial derivative() const;
  Polynomial monic() const;
  Polynomial pow(std::uint64_t e) const;
  // Coefficients in reverse order padded to `degree` (x^degree * f(1/x)).
  Polynomial reversed(int degree) const;

  std::string str() const;

 private:
  void trim();
  FieldPtr field_;
  std::vector<Elem> c_;
};

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};

DivMod divmod(const Polynomial& a, const Polynomial& b);
Polynomial operator/(const Polynomial& a, const Polynomial& b);  // exact quotient part
Polynomial operator%(const Polynomial& a, const Polynomial& b);
// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);
// Returns (g, s, t) with s*a + t*b = g monic.
std::tuple<Polynomial, Polynomial, Polynomial> xgcd(const Polynomial& a, const Polynomial& b);
Polynomial mulmod(const Polynomial& a, const Polynomial& b, const Polynomial& m);
Polynomial powmod(const Polynomial& base, const BigInt& e, const Polynomial& m);
// f(g)
Polynomial compose(const Polynomial& f, const Polynomial& g);
// Number of times `factor` divides f (f nonzero, factor non-constant).
int valuation(const Polynomial& f, const Polynomial& factor);
// Multiplicity of `root` as a root of f; f nonzero.
int root_multiplicity(const Polynomial& f, const Elem& root);

// Product of (x - r) over the given roots, by a balanced product tree.
Polynomial product_of_linears(const FieldPtr& field, const std::vector<Elem>& roots);

// Total order for deterministic output: degree, then coefficients
// (highest first, by Field::compare).
bool poly_less(const Polynomial& a, const Polynomial& b);

}  // namespace belyi
