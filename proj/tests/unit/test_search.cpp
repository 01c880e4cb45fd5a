#include <doctest.h>

#include <set>

#include "belyi/bounds.hpp"
#include "belyi/errors.hpp"
#include "belyi/kernels.hpp"
#include "belyi/search.hpp"
#include "belyi/text_format.hpp"

using namespace belyi;

namespace {

P1Point pt(const FieldPtr& F, std::int64_t v) { return P1Point::affine(F->from_int(v)); }

SearchSpec spec_for(const FieldPtr& F, std::vector<P1Point> S, std::vector<P1Point> T, BelyiKind kind, int d_max) {
  SearchSpec s{BelyiInstance::make(F, std::move(S), std::move(T))};
  s.kind = kind;
  s.d_max = d_max;
  s.fields = {F};
  return s;
}

}  // namespace

TEST_CASE("candidate enumeration counts PGL2") {
  for (int q : {3, 5, 7}) {
    auto F = Field::of_order(q);
    auto maps = enumerate_candidates(F, 1);
    CHECK(maps.size() == static_cast<std::size_t>(q * q * q - q));
    std::set<std::string> seen;
    for (const auto& m : maps) seen.insert(format_map(m));
    CHECK(seen.size() == maps.size());
  }
  CHECK(enumerate_candidates(Field::of_order(9), 1).size() == 720);
}

TEST_CASE("candidate indices round trip") {
  auto F = Field::of_order(3);
  for (int d = 1; d <= 3; ++d) {
    CandidateSpace space(F, d);
    std::size_t reduced = 0;
    for (std::uint64_t i = 0; i < space.size(); ++i) {
      auto f = space.at(i);
      if (!f) continue;
      ++reduced;
      REQUIRE(f->degree() == d);
      REQUIRE(space.index_of(*f) == i);
    }
    // Degree-d reduced maps over F_q number q^(2d+1) - q^(2d-1).
    const std::size_t expect = static_cast<std::size_t>(std::pow(3, 2 * d + 1) - std::pow(3, 2 * d - 1));
    CHECK(reduced == expect);
  }
}

TEST_CASE("normalized enumeration picks one map per orbit") {
  auto F = Field::of_order(5);
  auto all = enumerate_candidates(F, 1);
  auto reps = enumerate_candidates(F, 1, Normalization::ZeroOneInf);
  // PGL2 acts freely by post-composition: orbits have exactly six elements.
  CHECK(reps.size() * 6 == all.size());
  CHECK_THROWS_AS(enumerate_candidates(F, 6), GuardError);
}

TEST_CASE("minimal tame degrees") {
  auto F5 = Field::of_order(5);
  SearchResult trivial = minimal_belyi_degree(spec_for(F5, {}, {}, BelyiKind::Tame, 2));
  REQUIRE(trivial.degree);
  CHECK(*trivial.degree == 1);
  CHECK(*trivial.witness == RationalMap::identity(F5));

  SearchResult all = minimal_belyi_degree(spec_for(F5, rational_points(*F5), {}, BelyiKind::Tame, 4));
  REQUIRE(all.degree);
  CHECK(*all.degree == 4);
  CHECK(all.exhausted);
  CHECK(format_map(*all.witness) == "poly=0,0,0,0,1");
  CHECK(all.log.size() == 4);
  for (int i = 0; i < 3; ++i) CHECK_FALSE(all.log[i].found);
  // Round trip through text and a fresh verification.
  RationalMap back = parse_map(F5, format_map(*all.witness));
  CHECK(verify_tame_belyi(back, rational_points(*F5), {}).passed);
  CHECK(BigInt(*all.degree) <= *tame_bound(0, 6, 0, 5).value);
}

TEST_CASE("wild search and defaults") {
  auto F3 = Field::of_order(3);
  SearchSpec s = spec_for(F3, {}, {pt(F3, 0)}, BelyiKind::Wild, 3);
  s.fields.clear();
  SearchResult r = minimal_belyi_degree(s);
  REQUIRE(r.degree);
  CHECK(*r.degree == 1);
  CHECK(r.fields_searched.size() == 2);
  CHECK(BigInt(*r.degree) < wild_bound(0, 0, 1, 3).value);
  // S = {0, 1, 2} to infinity: the three simple poles leave at most one
  // unramified point in the fiber over infinity for d <= 4, so no ramification
  // fits there and Riemann-Hurwitz rules out d = 3, 4.
  SearchResult forced = minimal_belyi_degree(spec_for(F3, {pt(F3, 0), pt(F3, 1), pt(F3, 2)}, {}, BelyiKind::Wild, 4));
  CHECK_FALSE(forced.degree);
  CHECK(forced.exhausted);
  CHECK(forced.log.size() == 4);
}

TEST_CASE("search is independent of workers and normalization") {
  auto F5 = Field::of_order(5);
  SearchSpec base = spec_for(F5, {pt(F5, 2), pt(F5, 3), P1Point::infinity()}, {pt(F5, 4)}, BelyiKind::Tame, 3);
  SearchResult a = minimal_belyi_degree(base);
  SearchSpec par = base;
  par.workers = 4;
  SearchResult b = minimal_belyi_degree(par);
  SearchSpec norm = base;
  norm.normalize = true;
  SearchResult c = minimal_belyi_degree(norm);
  REQUIRE(a.degree);
  CHECK(a.degree == b.degree);
  CHECK(a.degree == c.degree);
  CHECK(*a.witness == *b.witness);
  CHECK(*a.witness == *c.witness);
  CHECK(a.candidates_tested == b.candidates_tested);
}

TEST_CASE("randomized mode is reproducible") {
  auto F5 = Field::of_order(5);
  SearchSpec s = spec_for(F5, rational_points(*F5), {}, BelyiKind::Tame, 4);
  s.mode = SearchMode::Randomized;
  s.budget = 3000;
  s.seed = 7;
  SearchResult a = minimal_belyi_degree(s);
  s.workers = 3;
  SearchResult b = minimal_belyi_degree(s);
  CHECK(to_json(a).dump() == to_json(b).dump());
  if (a.degree) CHECK(*a.degree >= 4);
  CHECK_FALSE(a.exhausted);
}

TEST_CASE("search guards") {
  auto F5 = Field::of_order(5);
  SearchSpec s = spec_for(F5, {}, {}, BelyiKind::Tame, 6);
  CHECK_THROWS_AS(minimal_belyi_degree(s), GuardError);
  s.fields.clear();
  s.d_max = 2;
  CHECK_THROWS_AS(minimal_belyi_degree(s), GuardError);
  SearchSpec w = spec_for(F5, {}, {}, BelyiKind::Wild, 1);
  w.normalize = true;
  CHECK_THROWS_AS(minimal_belyi_degree(w), PreconditionError);
}

TEST_CASE("first-match kernels agree") {
  for (int workers : {1, 2, 5}) {
    auto pred = [](std::uint64_t i) { return i % 97 == 43 && i > 1000; };
    CHECK(kernels::first_match_serial(0, 5000, pred) == 1013);
    CHECK(kernels::first_match_omp(0, 5000, pred, workers) == 1013);
    CHECK_FALSE(kernels::first_match_omp(0, 1000, pred, workers));
  }
}
