#include <omp.h>

#include <algorithm>
#include <atomic>
#include <limits>

#include "belyi/kernels.hpp"

namespace belyi::kernels {

std::optional<std::uint64_t> first_match_serial(std::uint64_t begin, std::uint64_t end, const IndexPredicate& pred) {
  for (std::uint64_t i = begin; i < end; ++i)
    if (pred(i)) return i;
  return std::nullopt;
}

std::optional<std::uint64_t> first_match_omp(std::uint64_t begin, std::uint64_t end, const IndexPredicate& pred,
                                             int workers) {
  if (end <= begin) return std::nullopt;
  const int w = std::max(1, workers);
  const std::uint64_t n = end - begin;
  const std::int64_t chunks = static_cast<std::int64_t>(std::min<std::uint64_t>(n, 64ULL * w));
  constexpr std::uint64_t none = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> best{none};
  // Each chunk scans in order and stops past the current best, so the
  // minimum over chunks is the global first match for any schedule.
#pragma omp parallel for num_threads(w) schedule(dynamic, 1)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::uint64_t lo = begin + n * static_cast<std::uint64_t>(c) / chunks;
    const std::uint64_t hi = begin + n * static_cast<std::uint64_t>(c + 1) / chunks;
    for (std::uint64_t i = lo; i < hi && i < best.load(std::memory_order_relaxed); ++i) {
      if (!pred(i)) continue;
      std::uint64_t cur = best.load();
      while (i < cur && !best.compare_exchange_weak(cur, i)) {
      }
      break;
    }
  }
  const std::uint64_t r = best.load();
  if (r == none) return std::nullopt;
  return r;
}

}  // namespace belyi::kernels
