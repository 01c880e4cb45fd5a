#pragma once

#include <utility>
#include <vector>

#include "belyi/polynomial.hpp"

namespace belyi {

struct FactorTerm {
  Polynomial factor;  // monic irreducible
  int multiplicity;
};

struct Factorization {
  Elem unit;  // leading coefficient of the input
  std::vector<FactorTerm> terms;  // sorted by poly_less
};

// Squarefree decomposition of a monic polynomial in characteristic p,
// including p-th power parts. Each entry (g, i): g squarefree, pairwise
// coprime, f = prod g^i.
std::vector<FactorTerm> squarefree_decomposition(const Polynomial& f);

// Distinct-degree split of a monic squarefree polynomial: (product of all
// irreducible factors of degree d, d).
std::vector<std::pair<Polynomial, int>> distinct_degree_factorization(const Polynomial& f);

// Equal-degree split (Cantor-Zassenhaus, odd characteristic) of a monic
// squarefree product of degree-d irreducibles.
std::vector<Polynomial> equal_degree_factorization(const Polynomial& f, int d, Rng& rng);

Factorization factor(const Polynomial& f, Rng& rng);
Factorization factor(const Polynomial& f);  // default seed

bool is_irreducible(const Polynomial& f);

// Distinct roots of f lying in f's own field, sorted by Field::compare.
std::vector<Elem> roots_in_field(const Polynomial& f, Rng& rng);
std::vector<Elem> roots_in_field(const Polynomial& f);

// Monic irreducible factors of f without multiplicities (radical pieces),
// sorted by poly_less.
std::vector<Polynomial> distinct_irreducible_factors(const Polynomial& f, Rng& rng);

}  // namespace belyi
