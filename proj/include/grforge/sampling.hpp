#pragma once

#include <random>

#include "grforge/tight.hpp"

namespace grforge {

// GRFORGE_SEED when set, otherwise `fallback`.
uint64_t env_seed(uint64_t fallback);

// Entry of O with coefficients in [-bound, bound], times pi with probability 1/4.
Scalar random_O_entry(std::mt19937_64& rng, const RingSpec& rs, long bound);

// Random O-combination of the rows of L.
Vec<Scalar> random_lattice_vector(std::mt19937_64& rng, const RingSpec& rs, const LatticeRep& L);

// The graded vectors of `base` in positive degree scaled by pi^k, k <= max_shift,
// keeping the first choice that is still an O-subalgebra. The span of the
// result is its graded basis.
GradedSubalgebraDatum random_scaled_subalgebra(std::mt19937_64& rng, const StructureAlgebra& A,
                                               const GradedSubalgebraDatum& base, int max_shift);

// An a-lattice of A: generated by one or two random vectors under a acting on
// the regular A-module. nullopt when the generated lattice is zero.
std::optional<ModO> random_subalgebra_lattice(std::mt19937_64& rng, const StructureAlgebra& A,
                                              const GradedSubalgebraDatum& a);

}  // namespace grforge
