#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "belyi/polynomial.hpp"

namespace belyi::kernels {

// Number of affine points of y^2 = f(x) over f's field:
// sum over x of 1 + chi(f(x)).
std::uint64_t affine_count_serial(const Polynomial& f);
std::uint64_t affine_count_omp(const Polynomial& f, int workers);

// Smallest i in [begin, end) with pred(i). pred must be thread-safe.
using IndexPredicate = std::function<bool(std::uint64_t)>;
std::optional<std::uint64_t> first_match_serial(std::uint64_t begin, std::uint64_t end, const IndexPredicate& pred);
std::optional<std::uint64_t> first_match_omp(std::uint64_t begin, std::uint64_t end, const IndexPredicate& pred,
                                             int workers);

}  // namespace belyi::kernels
