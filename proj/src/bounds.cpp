#include "belyi/bounds.hpp"

#include <algorithm>

#include "belyi/errors.hpp"
#include "belyi/field.hpp"

namespace belyi {

std::pair<std::uint64_t, int> require_odd_prime_power(std::uint64_t q) {
  require(q >= 3, "q = " + std::to_string(q) + " is not an odd prime power");
  std::uint64_t p = q;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  int n = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++n;
  }
  require(r == 1 && is_odd_prime(p), "q = " + std::to_string(q) + " is not an odd prime power");
  return {p, n};
}

BigInt lcm_up_to(std::uint64_t m) {
  BigInt r = 1;
  for (std::uint64_t k = 2; k <= m; ++k) {
    BigInt kk(static_cast<unsigned long>(k));
    mpz_lcm(r.get_mpz_t(), r.get_mpz_t(), kk.get_mpz_t());
  }
  return r;
}

int ceil_log_q(const BigInt& q, const Rational& C) {
  require(q >= 2, "ceil_log_q: q must be >= 2");
  require(C > 0, "ceil_log_q: the constant must be positive");
  int m = 1;
  BigInt pw = q;
  while (Rational(pw) < C) {
    pw *= q;
    ++m;
  }
  ensure(Rational(pw) >= C && (m == 1 || Rational(BigInt(pw / q)) < C), "ceil_log_q postcondition");
  return m;
}

Rational tame_threshold(int g, int s, int t) {
  require(g >= 0 && s >= 0 && t >= 0, "g, s, t must be nonnegative");
  const unsigned long n = static_cast<unsigned long>(2 * g + t + 1);
  const BigInt sq = BigInt(static_cast<unsigned long>(2 * g + t + s + 1)) * (2 * g + t + s + 1);
  Rational r(100 * factorial(n) * sq);
  r *= rat_pow(Rational(5, 6), n);
  r.canonicalize();
  return r;
}

TameBound tame_bound(int g, int s, int t, std::uint64_t q, std::uint64_t max_bits) {
  require_odd_prime_power(q);
  TameBound b;
  b.g = g;
  b.s = s;
  b.t = t;
  b.q = q;
  b.threshold = tame_threshold(g, s, t);
  BigInt Q(static_cast<unsigned long>(q));
  b.m = ceil_log_q(Q, b.threshold);
  b.L = lcm_up_to(static_cast<std::uint64_t>(6 * g + 2 * t));
  b.factor = 2 * g + t + 1;
  b.q_power = b.L * b.m;
  b.exponent = 6 * g + s + 2 * t + 1;
  // log_q(value) < q_power * exponent + log_q(factor) <= q_power * exponent + factor.
  b.log_q_upper = b.q_power * b.exponent + ceil_log_q(Q, Rational(b.factor));
  // Bits of the result: at most exponent * q_power * bits(q) + bits(factor).
  const BigInt bits_est = b.exponent * b.q_power * BigInt(static_cast<unsigned long>(mpz_sizeinbase(Q.get_mpz_t(), 2))) +
                          BigInt(static_cast<unsigned long>(mpz_sizeinbase(b.factor.get_mpz_t(), 2)));
  if (bits_est <= BigInt(static_cast<unsigned long>(max_bits))) {
    BigInt inner = big_pow(Q, b.q_power.get_ui()) - 1;
    b.value = b.factor * big_pow(inner, b.exponent.get_ui());
    b.digits = decimal_digits(*b.value);
  }
  return b;
}

SimpleCoverCheck simple_cover_check(const BigInt& q, int A, int g, int n, int s, int t) {
  require(A >= 3, "hypothesis requires an integer A >= 3 (got A = " + std::to_string(A) + ")");
  require(n >= 1, "n must be >= 1");
  require(g >= 0 && s >= 0, "g and s must be nonnegative");
  if (t >= 0)
    require(n >= g + std::max(t, g), "side condition n >= g + max{t, g} fails for n = " + std::to_string(n));
  SimpleCoverCheck r;
  r.genus_term = Rational(BigInt(A) * A * g * g);
  Rational ratio(5 * A + 4, 9 * A - 6);
  ratio.canonicalize();
  r.main_term = Rational(100 * factorial(static_cast<unsigned long>(n)) * (BigInt(n) * n + s)) *
                rat_pow(ratio, static_cast<unsigned long>(n));
  r.main_term.canonicalize();
  r.threshold = std::max(r.genus_term, r.main_term);
  r.ok = Rational(q) >= r.threshold;
  return r;
}

int wild_N(int g, int t) {
  require(g >= 0 && t >= 0, "g and t must be nonnegative");
  return std::max({2 * g - 1 + t, t, 2});
}

WildBound wild_bound(int g, int s, int t, std::uint64_t p) {
  require(is_odd_prime(p), "p = " + std::to_string(p) + " is not an odd prime");
  require(s >= 0, "s must be nonnegative");
  WildBound b;
  b.g = g;
  b.s = s;
  b.t = t;
  b.p = p;
  b.N = wild_N(g, t);
  b.exponent = s + 2 * (g + b.N);
  b.value = b.N * big_pow(static_cast<unsigned long>(p), b.exponent.get_ui());
  return b;
}

bool wild_hypothesis_check(const BigInt& q, int g, int N, int s) {
  const BigInt lhs = q + 1 - N - s;
  if (lhs < 0) return false;
  return lhs * lhs >= BigInt(4) * g * g * q;
}

nlohmann::ordered_json rational_json(const Rational& r) {
  return {{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}};
}

nlohmann::ordered_json to_json(const TameBound& b) {
  nlohmann::ordered_json j;
  j["value"] = b.value ? nlohmann::ordered_json(b.value->get_str()) : nlohmann::ordered_json(nullptr);
  j["digits"] = b.digits ? nlohmann::ordered_json(*b.digits) : nlohmann::ordered_json(nullptr);
  j["materialized"] = b.value.has_value();
  j["m"] = b.m;
  j["L"] = b.L.get_str();
  j["threshold"] = rational_json(b.threshold);
  j["factor"] = b.factor.get_str();
  j["q_exponent"] = b.q_power.get_str();
  j["outer_exponent"] = b.exponent.get_str();
  j["log_q_upper"] = b.log_q_upper.get_str();
  j["inputs"] = {{"g", b.g}, {"s", b.s}, {"t", b.t}, {"q", b.q}};
  return j;
}

nlohmann::ordered_json to_json(const WildBound& b) {
  nlohmann::ordered_json j;
  j["value"] = b.value.get_str();
  j["digits"] = decimal_digits(b.value);
  j["N"] = b.N;
  j["exponent"] = b.exponent.get_str();
  j["inputs"] = {{"g", b.g}, {"s", b.s}, {"t", b.t}, {"p", b.p}};
  return j;
}

nlohmann::ordered_json to_json(const SimpleCoverCheck& r) {
  return {{"ok", r.ok},
          {"threshold", rational_json(r.threshold)},
          {"genus_term", rational_json(r.genus_term)},
          {"main_term", rational_json(r.main_term)}};
}

}  // namespace belyi
