#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace belyi {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt big_pow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline BigInt big_pow(unsigned long base, unsigned long exp) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

inline Rational rat_pow(const Rational& base, unsigned long exp) {
  BigInt num = big_pow(base.get_num(), exp);
  BigInt den = big_pow(base.get_den(), exp);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline std::string to_decimal(const BigInt& v) { return v.get_str(10); }

// Number of decimal digits of |v| (1 for zero).
inline std::size_t decimal_digits(const BigInt& v) {
  if (v == 0) return 1;
  std::string s = BigInt(abs(v)).get_str(10);
  return s.size();
}

}  // namespace belyi
