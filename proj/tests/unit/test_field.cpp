#include <doctest.h>

#include <algorithm>
#include <random>

#include "belyi/embedding.hpp"
#include "belyi/errors.hpp"
#include "belyi/factor.hpp"
#include "belyi/field.hpp"

using namespace belyi;

namespace {

Elem random_elem(const Field& F, Rng& rng) {
  std::uniform_int_distribution<Coeff> d(0, F.characteristic() - 1);
  Elem e(F.degree());
  for (auto& c : e) c = d(rng);
  return e;
}

// Brute-force irreducibility: no factor of degree <= n/2 among all monic
// polynomials. Independent of the Ben-Or routine.
bool irreducible_by_trial_division(const Polynomial& f) {
  const FieldPtr& fp = f.field();
  const std::uint64_t q = fp->order_u64();
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= q;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<Elem> c;
      std::uint64_t v = idx;
      for (int i = 0; i < d; ++i) {
        c.push_back(fp->element_at(v % q));
        v /= q;
      }
      c.push_back(fp->one());
      if ((f % Polynomial(fp, c)).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("field creation and canonical modulus") {
  auto F5 = Field::create(5, 1);
  CHECK(F5->modulus() == std::vector<Coeff>{0, 1});
  auto F9 = Field::create(3, 2);
  CHECK(F9->modulus() == std::vector<Coeff>{1, 0, 1});
  // Enumerate monic quadratics over F_3 in base-3 order; the first without
  // roots must be the canonical modulus.
  bool found = false;
  for (int idx = 0; idx < 9 && !found; ++idx) {
    int c0 = idx % 3, c1 = idx / 3;
    bool has_root = false;
    for (int x = 0; x < 3; ++x) has_root = has_root || (x * x + c1 * x + c0) % 3 == 0;
    if (!has_root) {
      CHECK(F9->modulus() == std::vector<Coeff>{Coeff(c0), Coeff(c1), 1});
      found = true;
    }
  }
  CHECK(found);
  auto F7 = Field::create(7, 1);
  CHECK(F7->inv(F7->from_int(3)) == F7->from_int(5));
  CHECK_THROWS_AS(Field::create(4, 1), PreconditionError);
  CHECK_THROWS_AS(Field::create(2, 3), PreconditionError);
  CHECK_THROWS_AS(Field::create(5, 0), PreconditionError);
}

TEST_CASE("field arithmetic examples") {
  auto F7 = Field::prime(7);
  CHECK(F7->add(F7->from_int(3), F7->from_int(5)) == F7->from_int(1));
  auto F9 = Field::create(3, 2);
  Elem z = F9->generator();
  CHECK(F9->mul(z, z) == F9->from_int(2));
  auto F5 = Field::prime(5);
  CHECK(F5->pow(F5->from_int(2), 4) == F5->one());
  CHECK_THROWS_AS(F5->inv(F5->zero()), PreconditionError);
  FieldElement a = FieldElement::of(F5, 2);
  FieldElement b = FieldElement::of(F9, 1);
  CHECK_THROWS_AS(a + b, PreconditionError);
  CHECK_THROWS_AS(a / FieldElement::of(F5, 0), PreconditionError);
  CHECK((a * a.inverse()).str() == "1");
}

TEST_CASE("frobenius and galois orbits") {
  auto F9 = Field::create(3, 2);
  auto F3 = Field::prime(3);
  Elem z = F9->generator();
  CHECK(F9->frobenius(z, 1) == F9->neg(z));
  CHECK(F9->frobenius(z, 2) == z);
  auto F5 = Field::prime(5);
  CHECK(F5->frobenius(F5->from_int(2), 1) == F5->from_int(2));
  auto orb = galois_orbit(*F9, z, *F3);
  CHECK(orb.size() == 2);
  CHECK(std::find(orb.begin(), orb.end(), F9->neg(z)) != orb.end());
  CHECK(galois_orbit(*F9, F9->one(), *F3).size() == 1);
  CHECK(galois_orbit(*F5, F5->from_int(3), *F5).size() == 1);
  auto F27 = Field::create(3, 3);
  CHECK_THROWS_AS(galois_orbit(*F27, F27->generator(), *F9), PreconditionError);
}

TEST_CASE("randomized field laws") {
  Rng rng(7);
  for (auto [p, n] : {std::pair{3, 1}, {5, 1}, {3, 2}, {5, 3}, {7, 2}, {3, 5}}) {
    auto F = Field::create(p, n);
    for (int i = 0; i < 1000; ++i) {
      Elem a = random_elem(*F, rng), b = random_elem(*F, rng), c = random_elem(*F, rng);
      REQUIRE(F->add(F->add(a, b), c) == F->add(a, F->add(b, c)));
      REQUIRE(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
      REQUIRE(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
      if (!F->is_zero(a)) REQUIRE(F->is_one(F->mul(a, F->inv(a))));
      REQUIRE(F->frobenius(F->add(a, b), 1) == F->add(F->frobenius(a, 1), F->frobenius(b, 1)));
      REQUIRE(F->frobenius(F->mul(a, b), 1) == F->mul(F->frobenius(a, 1), F->frobenius(b, 1)));
      REQUIRE(F->frobenius(a, n) == a);
    }
  }
}

TEST_CASE("embeddings") {
  auto F5 = Field::prime(5);
  auto F25 = Field::create(5, 2);
  Embedding e = embed(F5, F25);
  CHECK(e.map(F5->from_int(2)) == F25->from_int(2));
  auto F9 = Field::create(3, 2);
  auto F81 = Field::create(3, 4);
  Embedding e2 = embed(F9, F81);
  Elem zi = e2.map(F9->generator());
  CHECK(F81->mul(zi, zi) == F81->from_int(-1));
  CHECK_THROWS_AS(embed(F9, Field::create(3, 3)), PreconditionError);

  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    Elem a = random_elem(*F9, rng), b = random_elem(*F9, rng);
    REQUIRE(e2.map(F9->add(a, b)) == F81->add(e2.map(a), e2.map(b)));
    REQUIRE(e2.map(F9->mul(a, b)) == F81->mul(e2.map(a), e2.map(b)));
    REQUIRE(e2.preimage(e2.map(a)) == std::optional<Elem>(a));
    if (a != b) REQUIRE(e2.map(a) != e2.map(b));
  }
  // Prime-field elements map to themselves coefficient-wise.
  auto F3 = Field::prime(3);
  Embedding e3 = embed(F3, F81);
  for (int v = 0; v < 3; ++v) CHECK(e3.map(F3->from_int(v)) == F81->from_int(v));
  // Tower composition is again an embedding.
  Embedding composed = e2.after(embed(F3, F9));
  CHECK(composed.map(F3->from_int(2)) == F81->from_int(2));
}

TEST_CASE("factorization examples") {
  auto F5 = Field::prime(5);
  auto fac = factor(Polynomial::from_ints(F5, {1, 0, 1}));
  REQUIRE(fac.terms.size() == 2);
  // Sorted by coefficients: x + 2 before x + 3.
  CHECK(fac.terms[0].factor == Polynomial::from_ints(F5, {-3, 1}));
  CHECK(fac.terms[1].factor == Polynomial::from_ints(F5, {-2, 1}));
  auto F3 = Field::prime(3);
  auto cube = factor(Polynomial::from_ints(F3, {0, 0, 0, 1}));
  REQUIRE(cube.terms.size() == 1);
  CHECK(cube.terms[0].multiplicity == 3);
  CHECK(cube.terms[0].factor == Polynomial::x(F3));
  auto irr = factor(Polynomial::from_ints(F3, {1, 0, 1}));
  REQUIRE(irr.terms.size() == 1);
  CHECK(irr.terms[0].factor.degree() == 2);
  CHECK(irr.terms[0].multiplicity == 1);
  CHECK_THROWS_AS(factor(Polynomial(F3)), PreconditionError);
}

TEST_CASE("factorization recomposes and factors are irreducible") {
  Rng rng(3);
  for (auto [p, n] : {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}}) {
    auto F = Field::create(p, n);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<Elem> c;
      int deg = 1 + trial % 7;
      for (int i = 0; i < deg; ++i) c.push_back(random_elem(*F, rng));
      c.push_back(F->one());
      Polynomial f(F, c);
      // Force repeated and p-th power parts on some samples.
      if (trial % 3 == 0) f = f * f;
      if (trial % 5 == 0) f = f * Polynomial::x(F).pow(p);
      auto fac = factor(f, rng);
      Polynomial prod = Polynomial::constant(F, fac.unit);
      for (const auto& t : fac.terms) {
        REQUIRE(t.factor.is_monic());
        REQUIRE(is_irreducible(t.factor));
        if (F->order_u64() <= 9 && t.factor.degree() <= 4) REQUIRE(irreducible_by_trial_division(t.factor));
        prod = prod * t.factor.pow(t.multiplicity);
      }
      REQUIRE(prod == f);
    }
  }
}

TEST_CASE("text formats for fields and elements") {
  auto F9 = Field::parse("3^2/1,0,1");
  CHECK(F9->degree() == 2);
  CHECK(F9->modulus() == std::vector<Coeff>{1, 0, 1});
  CHECK(Field::parse("5")->degree() == 1);
  CHECK(Field::parse("9")->degree() == 2);
  CHECK(Field::parse("3^2")->same_as(*Field::create(3, 2)));
  Elem e = F9->parse_element("2,1");
  CHECK(F9->format(e) == "2,1");
  CHECK_THROWS_AS(Field::parse("6"), PreconditionError);
  CHECK_THROWS_AS(Field::parse("3^2/1,1,1"), PreconditionError);
  CHECK_THROWS_AS(F9->parse_element("1,2,3"), ParseError);
}
