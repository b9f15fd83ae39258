#pragma once

#include <cstdint>

#include "grforge/algebra.hpp"

namespace grforge {

// Algebra whose O-basis is a list of n x n matrices closed under products.
StructureAlgebra algebra_from_matrices(const RingSpec& rs, std::vector<std::string> labels,
                                       const std::vector<Mat<Scalar>>& mats);

// Zigzag algebra of the quiver 1 -> 2 -> 1 (arrows alpha, beta) modulo
// alpha*beta = 0, basis e1, e2, alpha, beta, gamma = beta*alpha, weights 1 < 2.
// beta_scale replaces beta by beta_scale*beta.
StructureAlgebra zigzag5(const RingSpec& rs, const Scalar& beta_scale = Scalar(1));

// Weights E_ii; only "1" lies in Lambda.
StructureAlgebra matrix_algebra(const RingSpec& rs, int n);
// Weights E_ii with 1 < 2 < ... < n.
StructureAlgebra upper_triangular(const RingSpec& rs, int n);
StructureAlgebra truncated_polynomial(const RingSpec& rs, int n);  // O[x]/x^n
StructureAlgebra rank_one(const RingSpec& rs);

// Direct product; weights are concatenated with prefixes "a:" and "b:".
StructureAlgebra direct_product(const StructureAlgebra& a, const StructureAlgebra& b);

// Morita inflation: the weight nu is replaced by `copies` equivalent
// idempotents. The first copy keeps the label and its place in Lambda; the
// others join X only.
StructureAlgebra inflate(const StructureAlgebra& a, const std::string& nu, int copies = 2);

// Replaces basis elements outside the support of the unit and the weight
// idempotents by pi times themselves, up to `count` times, keeping only
// mutations that stay integral.
StructureAlgebra perturb(const StructureAlgebra& a, uint64_t seed, int count);

// Scales basis element j by pi^e when the result is still an O-algebra with
// integral weight idempotents.
std::optional<StructureAlgebra> scale_basis(const StructureAlgebra& a, int j, int e = 1);

}  // namespace grforge
