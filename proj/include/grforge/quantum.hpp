#pragma once

#include "grforge/algebra.hpp"

namespace grforge {

// (lambda + rho, alpha^vee) = m + 1 is prime to p, for the sl2 weight m.
bool p_regular_sl2(long m, int p);

struct QuantumFixture {
  StructureAlgebra alg;
  std::vector<std::string> regular;  // p-regular weight labels
  // central idempotents over K, one per block, with the weights they carry
  std::vector<Vec<Scalar>> block_idempotents;
  std::vector<std::vector<std::string>> block_weights;
  bool blocks_integral = false;  // every block idempotent lies in the O-form
  std::string note;
};

// S_zeta(2, d) over Z_(p)[zeta]: the O-span of the divided powers E^(a), F^(c)
// and weight projections acting on the d-th tensor power of O^2. Weights
// "a,b" (a + b = d) index the weight spaces, Lambda = {a >= b} under dominance.
QuantumFixture qschur(int n, int d, int p);

// The small quantum sl2 over Z_(p)[zeta] on the basis F^a k_m E^c, where
// k_m is the projector onto the K-eigenvalue zeta^m. Blocks are searched
// through the Casimir element.
QuantumFixture usl2(int p);

// The direct factor e A for the k-th block idempotent e; throws unless e is
// integral.
StructureAlgebra block_algebra(const QuantumFixture& Q, int k);

}  // namespace grforge
