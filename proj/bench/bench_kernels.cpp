// Serial versus OpenMP kernels. Second argument is the worker count.
#include <benchmark/benchmark.h>

#include "belyi/embedding.hpp"
#include "belyi/kernels.hpp"
#include "belyi/search.hpp"

using namespace belyi;

namespace {

// y^2 = x^5 + x + 1 over F_{3^8}.
Polynomial count_input() {
  FieldPtr F = Field::prime(3);
  Extension ext = extension_of_degree(F, 8);
  return ext.inclusion.map(Polynomial::from_ints(F, {1, 1, 0, 0, 0, 1}));
}

void BM_AffineCount(benchmark::State& state) {
  const Polynomial f = count_input();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const std::uint64_t n = workers == 0 ? kernels::affine_count_serial(f) : kernels::affine_count_omp(f, workers);
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_AffineCount)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

// Degree-3 candidates over F_5 until the last one: full scan of the space.
void BM_FirstMatch(benchmark::State& state) {
  CandidateSpace space(Field::prime(5), 3);
  const std::uint64_t last = space.size() - 1;
  const kernels::IndexPredicate pred = [&](std::uint64_t i) {
    auto f = space.at(i);
    return i == last && f.has_value();
  };
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = workers == 0 ? kernels::first_match_serial(0, space.size(), pred)
                          : kernels::first_match_omp(0, space.size(), pred, workers);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_FirstMatch)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
