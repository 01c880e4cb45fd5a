#pragma once

#include <cstdint>
#include <optional>

#include <json.hpp>

#include "belyi/bigint.hpp"

namespace belyi {

// Values wider than this many bits are reported symbolically.
inline constexpr std::uint64_t kDefaultMaterializeBits = 1ULL << 24;

// Throws unless q is an odd prime power; returns (p, n) with q = p^n.
std::pair<std::uint64_t, int> require_odd_prime_power(std::uint64_t q);

BigInt lcm_up_to(std::uint64_t m);

// Smallest m >= 1 with q^m >= C. Exact.
int ceil_log_q(const BigInt& q, const Rational& C);

// 100 * (2g+t+1)! * (2g+t+s+1)^2 * (5/6)^(2g+t+1)
Rational tame_threshold(int g, int s, int t);

struct TameBound {
  int g = 0, s = 0, t = 0;
  std::uint64_t q = 0;
  Rational threshold;
  int m = 1;
  BigInt L;         // L(6g + 2t)
  BigInt factor;    // 2g + t + 1
  BigInt q_power;   // m * L
  BigInt exponent;  // 6g + s + 2t + 1
  // (factor) * (q^q_power - 1)^exponent when it fits the bit budget.
  std::optional<BigInt> value;
  std::optional<std::size_t> digits;
  // Exact integer upper bound on log_q(value).
  BigInt log_q_upper;
};

TameBound tame_bound(int g, int s, int t, std::uint64_t q, std::uint64_t max_bits = kDefaultMaterializeBits);

struct SimpleCoverCheck {
  bool ok = false;
  Rational threshold;  // max of the two terms
  Rational genus_term;
  Rational main_term;
};

// t < 0 means "not supplied"; otherwise n >= g + max(t, g) is enforced.
SimpleCoverCheck simple_cover_check(const BigInt& q, int A, int g, int n, int s, int t = -1);

int wild_N(int g, int t);

struct WildBound {
  int g = 0, s = 0, t = 0;
  std::uint64_t p = 0;
  int N = 0;
  BigInt exponent;  // s + 2(g + N)
  BigInt value;     // N * p^exponent
};
WildBound wild_bound(int g, int s, int t, std::uint64_t p);

// q + 1 - 2g sqrt(q) >= N + s, decided exactly.
bool wild_hypothesis_check(const BigInt& q, int g, int N, int s);

nlohmann::ordered_json to_json(const TameBound& b);
nlohmann::ordered_json to_json(const WildBound& b);
nlohmann::ordered_json to_json(const SimpleCoverCheck& r);
nlohmann::ordered_json rational_json(const Rational& r);

}  // namespace belyi
