#pragma once

#include <optional>
#include <string>
#include <vector>

#include "belyi/embedding.hpp"
#include "belyi/polynomial.hpp"

namespace belyi {

// Point of P^1 over some field; the field is implied by context.
class P1Point {
 public:
  static P1Point infinity() { return P1Point(); }
  static P1Point affine(Elem v) { return P1Point(std::move(v)); }

  bool is_infinity() const { return !value_.has_value(); }
  const Elem& value() const { return *value_; }
  bool operator==(const P1Point& o) const { return value_ == o.value_; }

 private:
  P1Point() = default;
  explicit P1Point(Elem v) : value_(std::move(v)) {}
  std::optional<Elem> value_;
};

// Affine points by Field::compare, infinity last.
bool point_less(const P1Point& a, const P1Point& b);
std::string format_point(const Field& F, const P1Point& P);
P1Point map_point(const Embedding& e, const P1Point& P);
// All of P^1(F) in point_less order.
std::vector<P1Point> rational_points(const Field& F);
// The i-th element of F in Field::compare order, without enumerating F.
Elem element_in_order(const Field& F, std::uint64_t i);
void sort_points(std::vector<P1Point>& pts);

// Reduced rational self-map of P^1: gcd(num, den) = 1, den monic.
class RationalMap {
 public:
  // Reduces and normalizes; throws PreconditionError on a zero denominator.
  static RationalMap make(const Polynomial& num, const Polynomial& den);
  static RationalMap polynomial(const Polynomial& num);
  static RationalMap identity(const FieldPtr& field);
  static RationalMap constant(const FieldPtr& field, const Elem& c);

  const FieldPtr& field() const { return num_.field(); }
  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  int degree() const;
  bool is_constant() const { return degree() == 0; }
  bool operator==(const RationalMap& o) const { return num_ == o.num_ && den_ == o.den_; }

  P1Point evaluate(const P1Point& P) const;
  // P over inclusion.target(); coefficients are pushed through inclusion.
  P1Point evaluate(const P1Point& P, const Embedding& inclusion) const;
  // The same map with coefficients in a larger field.
  RationalMap base_change(const Embedding& inclusion) const;

  // Wronskian num' * den - num * den'.
  Polynomial wronskian() const;
  std::string str() const;

 private:
  RationalMap(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {}
  Polynomial num_;
  Polynomial den_;
};

RationalMap compose(const RationalMap& outer, const RationalMap& inner);
RationalMap add(const RationalMap& a, const RationalMap& b);
RationalMap multiply(const RationalMap& a, const RationalMap& b);
// f^e as a rational function (not iterated composition).
RationalMap power(const RationalMap& f, std::uint64_t e);

// Degree-1 map sending a -> 0, b -> 1, c -> infinity.
RationalMap mobius_from_triple(const FieldPtr& field, const P1Point& a, const P1Point& b, const P1Point& c);

Polynomial derivative(const Polynomial& f);
// Formal derivative as a reduced rational function.
RationalMap derivative(const RationalMap& f);

// Wronskian not identically zero. Constant maps are rejected.
bool is_separable(const RationalMap& f);

}  // namespace belyi
