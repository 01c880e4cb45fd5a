#include <doctest.h>

#include "belyi/errors.hpp"
#include "belyi/polynomial.hpp"

using namespace belyi;

TEST_CASE("polynomial canonical form and arithmetic") {
  auto F5 = Field::prime(5);
  Polynomial z(F5);
  CHECK(z.is_zero());
  CHECK(z.degree() == -1);
  Polynomial f = Polynomial::from_ints(F5, {1, 2, 0, 0});
  CHECK(f.degree() == 1);
  Polynomial g = Polynomial::from_ints(F5, {-1, 1});
  CHECK((f * g) == Polynomial::from_ints(F5, {-1, -1, 2}));
  auto [q, r] = divmod(Polynomial::from_ints(F5, {-1, 0, 1}), g);
  CHECK(q == Polynomial::from_ints(F5, {1, 1}));
  CHECK(r.is_zero());
  CHECK(gcd(Polynomial::from_ints(F5, {-1, 0, 1}), Polynomial::from_ints(F5, {2, 2})) ==
        Polynomial::from_ints(F5, {1, 1}));
  CHECK(compose(Polynomial::from_ints(F5, {0, 0, 1}), Polynomial::from_ints(F5, {1, 1})) ==
        Polynomial::from_ints(F5, {1, 2, 1}));
}

TEST_CASE("xgcd identity") {
  auto F7 = Field::prime(7);
  Polynomial a = Polynomial::from_ints(F7, {1, 3, 0, 2});
  Polynomial b = Polynomial::from_ints(F7, {4, 1, 5});
  auto [g, s, t] = xgcd(a, b);
  CHECK((s * a + t * b) == g);
  CHECK(g.is_monic());
}

TEST_CASE("derivatives") {
  auto F3 = Field::prime(3);
  CHECK(Polynomial::from_ints(F3, {0, 0, 0, 1}).derivative().is_zero());
  CHECK(Polynomial::from_ints(F3, {0, 1, 0, 1}).derivative() == Polynomial::from_ints(F3, {1}));
  auto F5 = Field::prime(5);
  CHECK(Polynomial::from_ints(F5, {0, 1, 0, 0, -1}).derivative() == Polynomial::from_ints(F5, {1, 0, 0, 1}));
}

TEST_CASE("derivative is linear and obeys the product rule") {
  auto F9 = Field::create(3, 2);
  Rng rng(5);
  std::uniform_int_distribution<std::int64_t> d(0, 8);
  for (int i = 0; i < 200; ++i) {
    std::vector<Elem> a, b;
    for (int k = 0; k < 5; ++k) {
      a.push_back(F9->element_at(d(rng)));
      b.push_back(F9->element_at(d(rng)));
    }
    Polynomial A(F9, a), B(F9, b);
    Elem c = F9->element_at(d(rng));
    REQUIRE((A + B.scaled(c)).derivative() == A.derivative() + B.derivative().scaled(c));
    REQUIRE((A * B).derivative() == A.derivative() * B + A * B.derivative());
  }
}

TEST_CASE("multiplicities, valuations and products of linears") {
  auto F5 = Field::prime(5);
  Polynomial f = Polynomial::from_ints(F5, {-1, 1}).pow(3) * Polynomial::from_ints(F5, {2, 1});
  CHECK(root_multiplicity(f, F5->from_int(1)) == 3);
  CHECK(root_multiplicity(f, F5->from_int(3)) == 1);
  CHECK(root_multiplicity(f, F5->from_int(0)) == 0);
  CHECK(valuation(f, Polynomial::from_ints(F5, {-1, 1})) == 3);
  std::vector<Elem> roots;
  for (int v = 0; v < 5; ++v) roots.push_back(F5->from_int(v));
  CHECK(product_of_linears(F5, roots) == Polynomial::from_ints(F5, {0, -1, 0, 0, 0, 1}));
}

TEST_CASE("reversal and powmod") {
  auto F3 = Field::prime(3);
  Polynomial f = Polynomial::from_ints(F3, {1, 2});
  CHECK(f.reversed(3) == Polynomial::from_ints(F3, {0, 0, 2, 1}));
  Polynomial m = Polynomial::from_ints(F3, {1, 0, 1});
  // x^9 = x in F_9 = F_3[x]/(x^2+1)
  CHECK(powmod(Polynomial::x(F3), BigInt(9), m) == Polynomial::x(F3));
}
