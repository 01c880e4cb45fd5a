#pragma once

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "belyi/bigint.hpp"

namespace belyi {

using Coeff = std::uint32_t;

// Raw element of F_{p^n}: exactly n residues in [0, p), power-basis
// coordinates, constant coordinate first. Meaningful only next to the
// Field that produced it.
using Elem = boost::container::small_vector<Coeff, 6>;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

bool is_odd_prime(std::uint64_t p);

// Immutable description of F_{p^n} = F_p[z]/(modulus). Shared by pointer;
// every arithmetic routine is const and thread-safe.
class Field {
 public:
  // Canonical field: the monic irreducible degree-n modulus whose
  // coefficient vector, read as a base-p integer with the constant term as
  // least significant digit, is smallest. For n = 1 the modulus is x.
  static FieldPtr create(std::uint64_t p, int n);
  static FieldPtr prime(std::uint64_t p) { return create(p, 1); }
  // Explicit modulus (little-endian, monic). Irreducibility is verified.
  static FieldPtr with_modulus(std::uint64_t p, std::vector<Coeff> modulus);
  // q must be an odd prime power; returns the canonical F_q.
  static FieldPtr of_order(std::uint64_t q);
  // Text form: "p", "p^n", "p^n/c0,c1,...,1", or a bare prime power "q".
  static FieldPtr parse(std::string_view text);

  Coeff characteristic() const { return p_; }
  int degree() const { return n_; }
  const std::vector<Coeff>& modulus() const { return modulus_; }
  bool is_prime_field() const { return n_ == 1; }
  BigInt order() const;
  // Throws GuardError if the order does not fit in 63 bits.
  std::uint64_t order_u64() const;
  bool same_as(const Field& other) const {
    return p_ == other.p_ && n_ == other.n_ && modulus_ == other.modulus_;
  }
  std::string describe() const;

  Elem zero() const { return Elem(n_, 0); }
  Elem one() const;
  Elem from_int(std::int64_t v) const;
  // Class of z in F_p[z]/(modulus); 0 for prime fields.
  Elem generator() const;

  bool is_zero(const Elem& a) const;
  bool is_one(const Elem& a) const;
  bool in_prime_subfield(const Elem& a) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scale(const Elem& a, Coeff c) const;
  // Throws PreconditionError on zero.
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  Elem pow(const Elem& a, std::uint64_t e) const;
  Elem pow(const Elem& a, const BigInt& e) const;
  // a^(p^iterations), by repeated p-th powering.
  Elem frobenius(const Elem& a, std::uint64_t iterations) const;
  // Inverse of one Frobenius step: the unique b with b^p = a.
  Elem pth_root(const Elem& a) const;
  // Euler criterion; zero counts as a square.
  bool is_square(const Elem& a) const;
  // +1 square, -1 non-square, 0 for zero.
  int quadratic_character(const Elem& a) const;

  // Enumeration helpers: index is the base-p integer of the coordinates,
  // constant coordinate least significant.
  std::uint64_t index_of(const Elem& a) const;
  Elem element_at(std::uint64_t index) const;
  // Next element in index order; wraps to zero after the last.
  void increment(Elem& a) const;

  // Total order used for deterministic choices: lexicographic on the
  // coordinate sequence, constant coordinate first.
  static std::strong_ordering compare(const Elem& a, const Elem& b);

  std::string format(const Elem& a) const;
  Elem parse_element(std::string_view text) const;
  Elem validate(const Elem& a) const;

  Field(Coeff p, int n, std::vector<Coeff> modulus);

 private:
  Coeff p_;
  int n_;
  std::vector<Coeff> modulus_;  // length n+1, monic
  std::uint64_t safe_terms_;    // products summable in 64 bits before reduction
};

// Value wrapper pairing an element with its field; used at API edges and
// in tests where operator syntax reads better.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Elem value);
  static FieldElement of(FieldPtr field, std::int64_t v) {
    Elem e = field->from_int(v);
    return FieldElement(std::move(field), std::move(e));
  }

  const FieldPtr& field() const { return field_; }
  const Elem& value() const { return value_; }
  bool is_zero() const { return field_->is_zero(value_); }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement pow(const BigInt& e) const;
  bool operator==(const FieldElement& o) const;
  std::string str() const { return field_->format(value_); }

 private:
  void check_same(const FieldElement& o) const;
  FieldPtr field_;
  Elem value_;
};

// Orbit of a under the |base|-power Frobenius, in discovery order.
// base must be a subfield of a's field by degree.
std::vector<Elem> galois_orbit(const Field& field, const Elem& a, const Field& base);

}  // namespace belyi
