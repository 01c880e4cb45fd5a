#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "belyi/bigint.hpp"
#include "belyi/embedding.hpp"
#include "belyi/ramification.hpp"
#include "belyi/ratmap.hpp"

namespace belyi {

// (P^1, S, T) over a finite field of odd characteristic.
struct BelyiInstance {
  FieldPtr field;
  std::vector<P1Point> S;
  std::vector<P1Point> T;

  // Validates coordinates and S ∩ T = ∅; sorts both sets.
  static BelyiInstance make(FieldPtr field, std::vector<P1Point> S, std::vector<P1Point> T);
  int s() const { return static_cast<int>(S.size()); }
  int t() const { return static_cast<int>(T.size()); }
};

struct ConstructionResult {
  RationalMap map;
  int degree = 0;
  // Recomputed from the map; absent for auxiliary maps that carry no Belyi claim.
  std::optional<BelyiVerdict> verdict;
  nlohmann::ordered_json provenance = nlohmann::ordered_json::array();
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

// x^(q-1), verified on (P^1, P^1(F_q), {}).
ConstructionResult tame_power_map(const FieldPtr& field);

// The displayed map x^(q-1) - 1 under both placements of the rational points.
struct LiteralPowerMapVerdicts {
  RationalMap map;
  BelyiVerdict all_in_S;  // (P^1, P^1(F_q), {})
  BelyiVerdict all_in_T;  // (P^1, {}, P^1(F_q))
};
LiteralPowerMapVerdicts literal_power_map(const FieldPtr& field);

// Degree-1 map with S into {0, 1, inf} and tau outside it. |S| <= 3.
ConstructionResult tame_normalize_small(const BelyiInstance& inst, const std::optional<P1Point>& tau);

// -x^(q-1) + alpha^(-1) x with its evaluation table on S.
ConstructionResult xi1(const FieldPtr& field, const Elem& alpha, const std::vector<P1Point>& S, const P1Point& tau);

struct RecursionOptions {
  // Largest composite degree (q-1)^(s-3) that is actually built.
  std::uint64_t max_degree = 20000;
};
ConstructionResult tame_reduce_recursive(const BelyiInstance& inst, const P1Point& tau,
                                         const RecursionOptions& opt = {});

inline constexpr std::size_t kDefaultSpanLimit = 10000;

// F_p-span of the Galois closure over inclusion.source() of B, inside
// inclusion.target(). Sorted by Field::compare.
std::vector<Elem> fp_span_of_conjugates(const Embedding& inclusion, const std::vector<Elem>& B,
                                        std::size_t limit = kDefaultSpanLimit);

struct HTower {
  Polynomial h0;  // over the base field
  RationalMap h1;
  RationalMap h2;  // psi
  RamReport psi_report;
  bool poles_on_V = false;      // psi(a) = inf for every a in V \ {0}
  bool finite_at_zero = false;  // psi(0) != inf
  bool additive = false;        // h0 has only p-power exponents
  bool derivative_constant = false;
};

// V holds elements of inclusion.target() forming an F_p-subspace.
HTower wild_h_tower(const Embedding& inclusion, const std::vector<Elem>& V);

// Polynomial phi of degree N with phi(T) = 0, 0 not in phi(S) or Br(phi).
ConstructionResult wild_phi(const BelyiInstance& inst);

struct WildOptions {
  std::size_t span_limit = kDefaultSpanLimit;
};
ConstructionResult wild_belyi_compose(const BelyiInstance& inst, const WildOptions& opt = {});

struct DescriptorBranch {
  ClosedPoint point;
  std::vector<int> partition;  // descending
};

// Covering zeta: X -> P^1 described by its branch data.
struct CoveringDescriptor {
  int n = 1;
  int g = 0;
  std::vector<DescriptorBranch> branch;
  std::vector<P1Point> zS;
  std::vector<P1Point> zT;
  std::optional<RationalMap> map;

  // JSON {n, g, branch: [{min_poly, partition}], zS, zT, map?}; checks
  // consistency and, with a map attached, recomputes everything from it.
  static CoveringDescriptor from_json(const FieldPtr& field, const nlohmann::json& j);
  // zeta = id on P^1 with zS = S, zT = T.
  static CoveringDescriptor identity(const FieldPtr& field, const std::vector<P1Point>& S,
                                     const std::vector<P1Point>& T);
  nlohmann::ordered_json to_json(const Field& F) const;
};

struct PipelineOptions {
  // Extensions of larger degree over F_p are described but not built.
  int max_materialized_degree = 24;
  RecursionOptions recursion;
};

struct PipelineResult {
  int m = 1;
  BigInt L;
  Rational threshold;
  int extension_degree = 1;  // m * L over the base field
  std::string extension_field;
  bool materialized = false;
  std::vector<std::string> S_prime;  // labels over the base field
  int S_prime_size = 0;
  std::optional<std::string> tau0;
  BigInt xi_degree;
  BigInt total_degree;
  bool within_bound = false;
  std::optional<ConstructionResult> xi;
  std::optional<BelyiVerdict> composite_verdict;
  nlohmann::ordered_json provenance = nlohmann::ordered_json::array();
};

PipelineResult tame_pipeline(const CoveringDescriptor& desc, const FieldPtr& field,
                                  const std::vector<P1Point>& S, const std::vector<P1Point>& T,
                                  const PipelineOptions& opt = {});

nlohmann::ordered_json to_json(const ConstructionResult& r);
nlohmann::ordered_json to_json(const PipelineResult& r);

}  // namespace belyi
