#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "belyi/constructions.hpp"

namespace belyi {

inline constexpr std::uint64_t kDefaultSearchGuard = 100000000;  // q^(2d+2)

// Reduced maps of degree exactly d over a field, indexed by
// (denominator degree j, denominator index, numerator index). Denominators
// are monic; indices use base-q digits with the constant coefficient least
// significant.
class CandidateSpace {
 public:
  CandidateSpace(FieldPtr field, int d);

  const FieldPtr& field() const { return field_; }
  int degree() const { return d_; }
  std::uint64_t size() const { return total_; }
  // Numerator and denominator at idx, before any coprimality check.
  std::pair<Polynomial, Polynomial> raw(std::uint64_t idx) const;
  // The map at idx, or nullopt when numerator and denominator share a factor.
  std::optional<RationalMap> at(std::uint64_t idx) const;
  // Inverse of at() for reduced maps of degree d.
  std::uint64_t index_of(const RationalMap& f) const;

 private:
  std::uint64_t num_count(int j) const;
  FieldPtr field_;
  int d_;
  std::uint64_t q_;
  std::vector<std::uint64_t> block_start_;  // per denominator degree, plus the end
  std::uint64_t total_ = 0;
};

enum class Normalization { None, ZeroOneInf };

// All reduced degree-d maps in index order. With ZeroOneInf, only the
// smallest-index member of each orbit under post-composition by the six
// Mobius maps permuting {0, 1, inf} is kept.
std::vector<RationalMap> enumerate_candidates(const FieldPtr& field, int d, Normalization n = Normalization::None,
                                              std::uint64_t guard = kDefaultSearchGuard);

enum class SearchMode { Exhaustive, Randomized };

struct SearchSpec {
  BelyiInstance instance;
  BelyiKind kind = BelyiKind::Tame;
  int d_max = 1;
  // Coefficient fields, each containing the instance field. Empty means
  // F_q and F_{q^2}.
  std::vector<FieldPtr> fields;
  SearchMode mode = SearchMode::Exhaustive;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t budget = 10000;  // samples per degree and field
  bool normalize = false;        // tame only
  int workers = 1;
  std::uint64_t guard = kDefaultSearchGuard;
};

struct DegreeLog {
  int degree = 0;
  std::string field;
  std::uint64_t candidates = 0;  // indices examined in enumeration order
  bool exhaustive = false;
  bool found = false;
};

struct SearchResult {
  std::optional<int> degree;
  std::optional<RationalMap> witness;
  std::optional<BelyiVerdict> witness_verdict;
  // True iff every degree below the answer (all of 1..d_max when none was
  // found) was fully enumerated over every searched field.
  bool exhausted = false;
  std::vector<std::string> fields_searched;
  std::uint64_t candidates_tested = 0;
  std::vector<DegreeLog> log;
};

SearchResult minimal_belyi_degree(const SearchSpec& spec);

nlohmann::ordered_json to_json(const SearchResult& r);

}  // namespace belyi
