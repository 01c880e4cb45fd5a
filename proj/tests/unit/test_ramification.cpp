#include <doctest.h>

#include <map>

#include "belyi/factor.hpp"
#include "belyi/ramification.hpp"

using namespace belyi;

namespace {

RationalMap pm(const FieldPtr& F, std::vector<std::int64_t> c) {
  return RationalMap::polynomial(Polynomial::from_ints(F, c));
}

P1Point pt(const FieldPtr& F, std::int64_t v) { return P1Point::affine(F->from_int(v)); }

const RamPoint* find_point(const RamReport& r, const std::string& min_poly_text) {
  for (const auto& p : r.points)
    if ((p.point.at_infinity ? std::string("inf") : p.point.min_poly->str()) == min_poly_text) return &p;
  return nullptr;
}

std::vector<std::string> branch_labels(const RamReport& r) {
  std::vector<std::string> out;
  for (const auto& b : r.branch_set) out.push_back(b.point.label());
  return out;
}

// Multiplicity by repeated long division; independent of root_multiplicity.
int multiplicity_by_division(Polynomial f, const Elem& a) {
  if (f.is_zero()) return 1 << 20;
  Polynomial lin = Polynomial::linear(f.field(), a);
  int m = 0;
  while (true) {
    auto [q, r] = divmod(f, lin);
    if (!r.is_zero()) return m;
    f = q;
    ++m;
  }
}

// Number of distinct geometric roots: degree of the radical.
int distinct_root_count(const Polynomial& f) {
  int n = 0;
  for (const auto& t : squarefree_decomposition(f)) n += t.factor.degree();
  return n;
}

std::vector<RationalMap> random_maps(const FieldPtr& F, int count, int max_deg, Rng& rng) {
  std::uniform_int_distribution<std::uint64_t> el(0, F->order_u64() - 1);
  std::uniform_int_distribution<int> dg(1, max_deg);
  std::vector<RationalMap> out;
  while (static_cast<int>(out.size()) < count) {
    int dn = dg(rng), dd = dg(rng) - 1;
    std::vector<Elem> n, d;
    for (int i = 0; i <= dn; ++i) n.push_back(F->element_at(el(rng)));
    for (int i = 0; i <= dd; ++i) d.push_back(F->element_at(el(rng)));
    Polynomial D(F, d);
    if (D.is_zero()) continue;
    RationalMap f = RationalMap::make(Polynomial(F, n), D);
    if (f.is_constant() || !is_separable(f)) continue;
    out.push_back(f);
  }
  return out;
}

}  // namespace

TEST_CASE("ramification of x^4 over F_5") {
  auto F5 = Field::prime(5);
  RamReport r = ramification_analyze(pm(F5, {0, 0, 0, 0, 1}));
  REQUIRE(r.points.size() == 2);
  CHECK(r.points[0].point.min_poly->str() == "x");
  CHECK(r.points[0].index == 4);
  CHECK(r.points[1].point.at_infinity);
  CHECK(r.points[1].index == 4);
  CHECK(branch_labels(r) == std::vector<std::string>{"0", "inf"});
  CHECK(r.tame);
  CHECK(r.rh_defect == 0);
  CHECK(discriminant_degree(r) == 6);
}

TEST_CASE("ramification of x^2 over F_7") {
  auto F7 = Field::prime(7);
  RationalMap f = pm(F7, {0, 0, 1});
  RamReport r = ramification_analyze(f);
  REQUIRE(r.points.size() == 2);
  CHECK(r.points[0].index == 2);
  CHECK(r.points[1].index == 2);
  CHECK(branch_labels(r) == std::vector<std::string>{"0", "inf"});
  CHECK(is_simple_covering(f));
  CHECK(discriminant_degree(f) == 2);
}

TEST_CASE("ramification of -x^4 + x over F_5") {
  auto F5 = Field::prime(5);
  RationalMap f = pm(F5, {0, 1, 0, 0, -1});
  RamReport r = ramification_analyze(f);
  const RamPoint* m1 = find_point(r, "x + 1");
  REQUIRE(m1 != nullptr);
  CHECK(m1->index >= 2);
  CHECK(m1->branch.label() == "3");
  CHECK(r.branch_set.size() > 1);
  CHECK(r.tame);
  CHECK(r.rh_defect == 0);

  // Brute force over F_25: every geometric point with multiplicity >= 2
  // must be a conjugate of a reported affine ramification point.
  auto F25 = Field::create(5, 2);
  Embedding inc = embed(F5, F25);
  Polynomial A = inc.map(f.numerator());
  int total = 0;
  for (std::uint64_t i = 0; i < 25; ++i) {
    Elem P = F25->element_at(i);
    Elem y = A.eval(P);
    int m = multiplicity_by_division(A - Polynomial::constant(F25, y), P);
    if (m < 2) continue;
    total += m - 1;
    bool matched = false;
    for (const auto& rp : r.points) {
      if (rp.point.at_infinity) continue;
      if (inc.map(*rp.point.min_poly).eval(P) == F25->zero()) {
        matched = true;
        CHECK(rp.index == m);
      }
    }
    CHECK(matched);
  }
  // x^3 + 1 splits over F_25, so every affine critical point was seen.
  CHECK(total + (find_point(r, "inf")->index - 1) == 2 * 4 - 2);
}

TEST_CASE("simple covering examples") {
  CHECK_FALSE(is_simple_covering(pm(Field::prime(5), {0, 0, 0, 0, 1})));
  auto F7 = Field::prime(7);
  RationalMap f = pm(F7, {0, -3, 0, 1});
  RamReport r = ramification_analyze(f);
  CHECK(find_point(r, "inf")->index == 3);
  CHECK_FALSE(is_simple_covering(r));
  // x^2 + x composed with nothing: a single finite branch point plus infinity.
  CHECK(is_simple_covering(pm(F7, {0, 1, 1})));
  // x^3 - 3x over F_7 has two critical points with distinct images but e = 3 at infinity.
  // A degree-3 rational map with only simple branching:
  RationalMap g = RationalMap::make(Polynomial::from_ints(F7, {0, 0, 0, 1}), Polynomial::from_ints(F7, {1, 0, 1}));
  RamReport rg = ramification_analyze(g);
  bool all_two = true;
  for (const auto& p : rg.points) all_two = all_two && p.index == 2;
  CHECK(is_simple_covering(rg) == (all_two && rg.branch_set.size() == rg.points.size()));
}

TEST_CASE("tame verifier examples") {
  auto F5 = Field::prime(5);
  BelyiVerdict v = verify_tame_belyi(pm(F5, {0, 0, 0, 0, 1}), rational_points(*F5), {});
  CHECK(v.passed);
  BelyiVerdict id = verify_tame_belyi(RationalMap::identity(F5), {}, {pt(F5, 2), pt(F5, 4)});
  CHECK(id.passed);
  CHECK(id.report->degree == 1);
  BelyiVerdict bad = verify_tame_belyi(pm(F5, {0, 1, 0, 0, -1}), {pt(F5, 0), pt(F5, 1)}, {});
  CHECK_FALSE(bad.passed);
  bool found = false;
  for (const auto& x : bad.violations)
    found = found || (x.code == ViolationCode::BranchOutsideTarget && x.detail == "branch point 3 not in {0,1,inf}");
  CHECK(found);
  CHECK_THROWS_AS(verify_tame_belyi(RationalMap::identity(F5), {pt(F5, 2)}, {pt(F5, 2)}), PreconditionError);
  CHECK_THROWS_AS(verify_tame_belyi(RationalMap::constant(F5, F5->one()), {}, {}), PreconditionError);
  auto F3 = Field::prime(3);
  BelyiVerdict insep = verify_tame_belyi(pm(F3, {0, 0, 0, 1}), {}, {});
  CHECK_FALSE(insep.passed);
  REQUIRE(insep.violations.size() == 1);
  CHECK(insep.violations[0].code == ViolationCode::Inseparable);
}

TEST_CASE("wild verifier examples") {
  auto F3 = Field::prime(3);
  BelyiVerdict v = verify_wild_belyi(pm(F3, {0, 1, 0, 1}), {}, {pt(F3, 0)});
  CHECK(v.passed);
  CHECK_FALSE(v.report->tame);
  CHECK(branch_labels(*v.report) == std::vector<std::string>{"inf"});
  auto F7 = Field::prime(7);
  BelyiVerdict w = verify_wild_belyi(pm(F7, {0, 0, 1}), {}, {});
  CHECK_FALSE(w.passed);
  CHECK(w.violations[0].code == ViolationCode::BranchOutsideTarget);
  CHECK_THROWS_AS(verify_wild_belyi(pm(F3, {0, 0, 0, 1}), {}, {}), InseparableError);
  CHECK_THROWS_AS(discriminant_degree(pm(F3, {0, 1, 0, 1})), PreconditionError);
}

TEST_CASE("Wronskian criterion cross-check over F_{q^2}") {
  Rng rng(101);
  for (int q : {3, 5, 7, 9}) {
    auto F = Field::of_order(q);
    auto F2 = Field::create(F->characteristic(), 2 * F->degree());
    Embedding inc = embed(F, F2);
    for (const auto& f : random_maps(F, 5, 4, rng)) {
      Polynomial A = inc.map(f.numerator()), B = inc.map(f.denominator()), W = inc.map(f.wronskian());
      for (std::uint64_t i = 0; i < F2->order_u64(); ++i) {
        Elem P = F2->element_at(i);
        Elem b = B.eval(P);
        if (F2->is_zero(b)) continue;
        Elem y = F2->div(A.eval(P), b);
        int m = multiplicity_by_division(A - B.scaled(y), P);
        REQUIRE((F2->is_zero(W.eval(P))) == (m >= 2));
      }
    }
  }
}

TEST_CASE("fiber-count oracle over F_{q^6}") {
  Rng rng(202);
  for (int q : {3, 5}) {
    auto F = Field::prime(q);
    auto F6 = Field::create(q, 6);
    Embedding inc = embed(F, F6);
    for (const auto& f : random_maps(F, q == 3 ? 4 : 2, 3, rng)) {
      RamReport r = ramification_analyze(f);
      const int d = f.degree();
      Polynomial A = inc.map(f.numerator()), B = inc.map(f.denominator());
      P1Point at_inf = f.evaluate(P1Point::infinity(), inc);
      // Predicted geometric fiber size from the report.
      auto predicted = [&](const P1Point& y) {
        int s = d;
        for (const auto& rp : r.points) {
          bool hit;
          if (rp.branch.at_infinity)
            hit = y.is_infinity();
          else
            hit = !y.is_infinity() && F6->is_zero(inc.map(*rp.branch.min_poly).eval(y.value()));
          if (hit) s -= (rp.orbit_size / rp.branch.degree()) * (rp.index - 1);
        }
        return s;
      };
      for (const auto& y : rational_points(*F6)) {
        int observed;
        if (y.is_infinity())
          observed = distinct_root_count(B.is_constant() ? Polynomial::constant(F6, F6->one()) : B);
        else
          observed = distinct_root_count(A - B.scaled(y.value()));
        if (at_inf == y) observed += 1;
        REQUIRE(observed == predicted(y));
      }
    }
  }
}

TEST_CASE("report invariants on random maps") {
  Rng rng(303);
  for (int q : {3, 5, 7, 9, 25}) {
    auto F = Field::of_order(q);
    for (const auto& f : random_maps(F, 8, 5, rng)) {
      RamReport r = ramification_analyze(f);
      if (r.tame) REQUIRE(r.rh_defect == 0);
      // Branch set is stable under the base Frobenius.
      for (const auto& rp : r.points) {
        if (rp.branch_image.is_infinity()) continue;
        Elem fy = rp.extension->frobenius(rp.branch_image.value(), F->degree());
        Embedding inc = embed(F, rp.extension);
        REQUIRE(rp.extension->is_zero(inc.map(*rp.branch.min_poly).eval(fy)));
      }
      BelyiVerdict v = verify_tame_belyi(f, {}, {});
      bool br_ok = true;
      for (const auto& b : r.branch_set) {
        const auto& c = b.point;
        br_ok = br_ok && (c.at_infinity || c.label() == "0" || c.label() == "1" ||
                          (F->degree() > 1 && (c.label() == F->format(F->zero()) || c.label() == F->format(F->one()))));
      }
      REQUIRE(v.passed == (r.tame && br_ok));
    }
  }
}

TEST_CASE("report JSON shape") {
  auto F5 = Field::prime(5);
  BelyiVerdict v = verify_tame_belyi(pm(F5, {0, 0, 0, 0, 1}), rational_points(*F5), {});
  auto j = to_json(v);
  for (const char* key : {"degree", "tame", "points", "branch_set", "rh_defect", "verdict"}) CHECK(j.contains(key));
  CHECK(j["points"][0]["min_poly"] == "x");
  CHECK(j["verdict"]["passed"] == true);
}
