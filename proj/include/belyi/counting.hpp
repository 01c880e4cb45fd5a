#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "belyi/bigint.hpp"
#include "belyi/ratmap.hpp"

namespace belyi {

// P^1 over a field, or the smooth model y^2 = f(x).
class CurveModel {
 public:
  static CurveModel projective_line(FieldPtr field);
  // f squarefree of degree >= 3 (checked).
  static CurveModel hyperelliptic(Polynomial f);
  // "p1/<field>" or "hyp/<field>/<coefficients>".
  static CurveModel parse(std::string_view text);

  bool is_projective_line() const { return !f_.has_value(); }
  const FieldPtr& field() const { return field_; }
  const Polynomial& f() const { return *f_; }
  int genus() const;
  std::string describe() const;

 private:
  CurveModel(FieldPtr field, std::optional<Polynomial> f) : field_(std::move(field)), f_(std::move(f)) {}
  FieldPtr field_;
  std::optional<Polynomial> f_;
};

struct CountOptions {
  std::uint64_t guard = 10'000'000;  // max q^m for brute force
  int workers = 1;
};

// #X(F_{q^m}).
BigInt count_points(const CurveModel& curve, int m, const CountOptions& opt = {});

struct ZetaData {
  BigInt q;
  int genus = 0;
  std::vector<BigInt> a;  // a_0 = 1, ..., a_{2g}
};

// counts must hold N_1..N_g.
ZetaData zeta_fit(const CurveModel& curve, const std::map<int, BigInt>& counts);
BigInt predict_count(const ZetaData& z, int m);

// The generating-function formula over compositions of r.
BigInt sym_product_count(const std::map<int, BigInt>& counts, int r);

// Independent oracle: closed points by degree, then multisets of total degree r.
BigInt enumerate_effective_divisors(const CurveModel& curve, int r, std::uint64_t guard = 1'000'000);
// Number of closed points of exact degree d, d = 1..r (index 0 unused).
std::vector<BigInt> closed_point_counts(const CurveModel& curve, int r, std::uint64_t guard = 1'000'000);

bool hasse_weil_check(const BigInt& q, int g, int m, const BigInt& N);
bool l005_bounds_check(const BigInt& q, int A, int r, const BigInt& value);

BigInt projective_space_count(const BigInt& q, int L);

// Rational point of a curve: affine (x, y) with y unused on P^1, or a point
// at infinity (index 0 or 1 for the two points of an even-degree model).
struct CurvePoint {
  std::optional<Elem> x;
  std::optional<Elem> y;
  int infinity_index = 0;
  bool is_infinity() const { return !x.has_value(); }
  bool operator==(const CurvePoint& o) const = default;
};
std::vector<CurvePoint> curve_rational_points(const CurveModel& curve);
std::string format_curve_point(const CurveModel& curve, const CurvePoint& P);

// Smallest `count` rational points outside `avoid`, optionally restricted
// to coordinates in the prime field.
std::vector<CurvePoint> pick_points(const CurveModel& curve, const std::vector<CurvePoint>& avoid, int count,
                                    bool prime_subfield);
// P^1 convenience form.
std::vector<P1Point> pick_points(const FieldPtr& field, const std::vector<P1Point>& avoid, int count,
                                 bool prime_subfield = false);

nlohmann::ordered_json to_json(const ZetaData& z);

}  // namespace belyi
