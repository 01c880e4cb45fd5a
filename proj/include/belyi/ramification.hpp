#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "belyi/embedding.hpp"
#include "belyi/errors.hpp"
#include "belyi/ratmap.hpp"

namespace belyi {

// Raised for maps whose Wronskian vanishes identically.
class InseparableError : public PreconditionError {
 public:
  InseparableError() : PreconditionError("inseparable: Wronskian vanishes identically") {}
};

// A closed point of P^1 over the map's field: infinity or the root set of a
// monic irreducible polynomial.
struct ClosedPoint {
  bool at_infinity = false;
  std::optional<Polynomial> min_poly;

  int degree() const { return at_infinity ? 1 : min_poly->degree(); }
  bool operator==(const ClosedPoint& o) const;
  // "inf", the element text when rational, otherwise "root of <poly>".
  std::string label() const;
};
bool closed_point_less(const ClosedPoint& a, const ClosedPoint& b);

struct RamPoint {
  ClosedPoint point;
  FieldPtr extension;  // field holding the representative
  std::optional<Elem> representative;  // empty for infinity
  int index = 1;
  bool wild = false;
  P1Point branch_image = P1Point::infinity();  // over `extension`
  ClosedPoint branch;
  int orbit_size = 1;
};

struct BranchPoint {
  ClosedPoint point;
  int rationality_degree = 1;  // degree of its field of definition over the base
};

struct RamReport {
  FieldPtr field;
  int degree = 0;
  std::vector<RamPoint> points;  // one per Galois orbit, infinity last
  std::vector<BranchPoint> branch_set;
  bool tame = true;
  long rh_defect = 0;
  int splitting_degree = 1;  // lcm of the orbit sizes of the ramification points
};

enum class ViolationCode { BranchOutsideTarget, WildIndex, SImageOutsideTarget, TImageInForbidden, Inseparable };
std::string to_string(ViolationCode c);

struct Violation {
  ViolationCode code;
  std::string detail;
};

enum class BelyiKind { Tame, Wild };

struct BelyiVerdict {
  BelyiKind kind = BelyiKind::Tame;
  bool passed = false;
  std::vector<Violation> violations;
  std::optional<RamReport> report;  // absent only for inseparable maps
};

RamReport ramification_analyze(const RationalMap& f, Rng& rng);
RamReport ramification_analyze(const RationalMap& f);

bool is_simple_covering(const RamReport& report);
bool is_simple_covering(const RationalMap& f);

// S and T hold points over f's field and must be disjoint.
BelyiVerdict verify_tame_belyi(const RationalMap& f, const std::vector<P1Point>& S, const std::vector<P1Point>& T);
BelyiVerdict verify_wild_belyi(const RationalMap& f, const std::vector<P1Point>& S, const std::vector<P1Point>& T);

// Sum of (e - 1) over geometric ramification points; tame maps only.
long discriminant_degree(const RamReport& report);
long discriminant_degree(const RationalMap& f);

nlohmann::ordered_json to_json(const RamReport& report);
nlohmann::ordered_json to_json(const BelyiVerdict& verdict);

}  // namespace belyi
