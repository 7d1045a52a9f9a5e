#pragma once

#include <utility>
#include <vector>

#include "adjoints/fieldtower.hpp"
#include "adjoints/multipoly.hpp"

namespace adjoints {

struct PolyFactor {
    MultiPoly factor;  // integer-primitive, positive leading coefficient
    long multiplicity;
};

// Full factorization of a univariate polynomial over Q into irreducibles
// (Zassenhaus: squarefree split, factorization mod p, Hensel lifting, subset
// recombination). The constant content is dropped.
std::vector<PolyFactor> factor_rational(const MultiPoly& f, std::size_t var);

// Monic squarefree decomposition over a tower field: f ~ prod parts[i]^mult.
std::vector<std::pair<TPoly, long>> tp_squarefree_decomposition(const TPoly& f);

// Factorization into monic irreducibles over a number-field tower (a tower
// with no transcendentals); recursive Trager norms bottom out at Q.
std::vector<std::pair<TPoly, long>> tp_factor(const TPoly& f);

// Resultant of two bivariate polynomials with respect to `elim_var`
// (evaluation/interpolation; result has degree 0 in elim_var).
MultiPoly resultant_bivariate(const MultiPoly& A, const MultiPoly& B, std::size_t elim_var);

}  // namespace adjoints
