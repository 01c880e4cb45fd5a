#include <omp.h>

#include <algorithm>

#include "belyi/kernels.hpp"

namespace belyi::kernels {

namespace {

// Euler criterion with a precomputed exponent (q - 1) / 2.
inline std::uint64_t points_above(const Field& F, const Polynomial& f, const Elem& x, std::uint64_t half) {
  Elem v = f.eval(x);
  if (F.is_zero(v)) return 1;
  return F.is_one(F.pow(v, half)) ? 2 : 0;
}

std::uint64_t count_range(const Polynomial& f, std::uint64_t begin, std::uint64_t end, std::uint64_t half) {
  const Field& F = f.F();
  std::uint64_t total = 0;
  Elem x = F.element_at(begin);
  for (std::uint64_t i = begin; i < end; ++i) {
    total += points_above(F, f, x, half);
    F.increment(x);
  }
  return total;
}

}  // namespace

std::uint64_t affine_count_serial(const Polynomial& f) {
  const std::uint64_t q = f.F().order_u64();
  return count_range(f, 0, q, (q - 1) / 2);
}

std::uint64_t affine_count_omp(const Polynomial& f, int workers) {
  const std::uint64_t q = f.F().order_u64();
  const std::uint64_t half = (q - 1) / 2;
  const int w = std::max(1, workers);
  // Fixed chunking keeps the integer sum independent of scheduling.
  const std::int64_t chunks = static_cast<std::int64_t>(std::min<std::uint64_t>(q, 64ULL * w));
  std::uint64_t total = 0;
#pragma omp parallel for num_threads(w) schedule(static) reduction(+ : total)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::uint64_t begin = q * static_cast<std::uint64_t>(c) / chunks;
    const std::uint64_t end = q * static_cast<std::uint64_t>(c + 1) / chunks;
    total += count_range(f, begin, end, half);
  }
  return total;
}

}  // namespace belyi::kernels
