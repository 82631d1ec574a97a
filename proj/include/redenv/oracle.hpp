#pragma once

#include "redenv/module.hpp"

namespace redenv {

// Exhaustive composition-factor computation, independent of the peeling
// engine: enumerate every weight vector of every weight space, spin each to a
// cyclic submodule, close the resulting set under sums (this is the full
// submodule lattice, since every submodule is spanned by weight vectors), and
// read the factors off a maximal chain. Feasible for modules of modest
// dimension with small weight spaces; throws beyond its enumeration budget.
CompFactorList oracle_composition_factors(const MatrixModule& M);

// Number of submodules (size of the lattice), occasionally useful in tests.
std::size_t count_submodules(const MatrixModule& M);

}  // namespace redenv
