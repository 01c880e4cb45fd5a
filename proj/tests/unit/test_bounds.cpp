#include <doctest.h>

#include "belyi/bounds.hpp"
#include "belyi/errors.hpp"

using namespace belyi;

TEST_CASE("lcm_up_to") {
  CHECK(lcm_up_to(0) == 1);
  CHECK(lcm_up_to(1) == 1);
  CHECK(lcm_up_to(6) == 60);
  CHECK(lcm_up_to(10) == 2520);
}

TEST_CASE("ceil_log_q") {
  CHECK(ceil_log_q(83, Rational(250, 3)) == 2);
  CHECK(ceil_log_q(89, Rational(250, 3)) == 1);
  CHECK(ceil_log_q(7, Rational(1, 2)) == 1);
  CHECK(ceil_log_q(3125, Rational(3125)) == 1);
  CHECK(ceil_log_q(5, Rational(3125)) == 5);
  CHECK(ceil_log_q(5, Rational(3126)) == 6);
  CHECK_THROWS_AS(ceil_log_q(5, Rational(0)), PreconditionError);
}

TEST_CASE("thresholds") {
  CHECK(tame_threshold(0, 0, 0) == Rational(250, 3));
  CHECK(tame_threshold(1, 0, 0) == Rational(3125));
  CHECK(tame_threshold(0, 1, 0) == Rational(1000, 3));
}

TEST_CASE("tame bound values") {
  TameBound b = tame_bound(0, 0, 0, 89);
  CHECK(b.m == 1);
  CHECK(b.L == 1);
  REQUIRE(b.value);
  CHECK(*b.value == 88);
  TameBound c = tame_bound(0, 0, 0, 83);
  CHECK(c.m == 2);
  CHECK(*c.value == 6888);
  TameBound d = tame_bound(1, 0, 0, 3125);
  CHECK(d.factor == 3);
  CHECK(d.exponent == 7);
  CHECK(d.L == 60);
  CHECK(d.threshold == Rational(3125));
  CHECK(d.m == 1);
  // 3 * (3125^60 - 1)^7 is about 1470 digits: still materialized.
  REQUIRE(d.value);
  CHECK(*d.value == 3 * big_pow(big_pow(3125, 60) - 1, 7));
  CHECK_THROWS_AS(tame_bound(0, 0, 0, 4), PreconditionError);
}

TEST_CASE("huge tame bounds are reported symbolically") {
  TameBound b = tame_bound(5, 0, 0, 3);
  CHECK_FALSE(b.value.has_value());
  CHECK(b.L == lcm_up_to(30));
  CHECK(b.log_q_upper >= b.q_power * b.exponent);
}

TEST_CASE("tame bound is monotone in s and t") {
  for (int q : {3, 5, 7, 9, 11, 13, 25, 27, 49}) {
    for (int g = 0; g <= 5; ++g)
      for (int s = 0; s <= 5; ++s)
        for (int t = 0; t <= 5; ++t) {
          TameBound b = tame_bound(g, s, t, q, 1 << 16);
          for (auto [ds, dt] : {std::pair{1, 0}, {0, 1}}) {
            if (s + ds > 5 || t + dt > 5) continue;
            TameBound c = tame_bound(g, s + ds, t + dt, q, 1 << 16);
            REQUIRE(c.factor >= b.factor);
            REQUIRE(c.exponent >= b.exponent);
            REQUIRE(c.m >= b.m);
            REQUIRE(c.L >= b.L);
            REQUIRE(c.q_power >= b.q_power);
            if (b.value && c.value) REQUIRE(*c.value >= *b.value);
          }
        }
  }
}

TEST_CASE("simple cover hypothesis") {
  SimpleCoverCheck r = simple_cover_check(661, 3, 1, 2, 0);
  CHECK(r.threshold == Rational(288800, 441));
  CHECK(r.ok);
  CHECK_FALSE(simple_cover_check(625, 3, 1, 2, 0).ok);
  SimpleCoverCheck r2 = simple_cover_check(97, 3, 0, 1, 0);
  CHECK(r2.threshold == Rational(1900, 21));
  CHECK(r2.ok);
  CHECK_THROWS_AS(simple_cover_check(97, 2, 0, 1, 0), PreconditionError);
  CHECK_THROWS_AS(simple_cover_check(97, 3, 1, 1, 0, 0), PreconditionError);
}

TEST_CASE("wild bound and point-count hypothesis") {
  CHECK(wild_N(0, 0) == 2);
  CHECK(wild_N(1, 0) == 2);
  CHECK(wild_N(0, 5) == 5);
  CHECK(wild_bound(0, 0, 0, 3).value == 162);
  CHECK(wild_bound(1, 0, 0, 3).value == 1458);
  CHECK(wild_bound(0, 0, 5, 3).value == 295245);
  CHECK(wild_hypothesis_check(5, 0, 2, 0));
  CHECK_FALSE(wild_hypothesis_check(3, 0, 2, 3));
  CHECK_FALSE(wild_hypothesis_check(5, 1, 2, 0));
  CHECK_THROWS_AS(wild_bound(0, 0, 0, 9), PreconditionError);
}

TEST_CASE("bound JSON shape") {
  auto j = to_json(tame_bound(0, 0, 0, 89));
  CHECK(j["value"] == "88");
  CHECK(j["m"] == 1);
  CHECK(j["L"] == "1");
  CHECK(j["threshold"]["num"] == "250");
  CHECK(j["threshold"]["den"] == "3");
}
