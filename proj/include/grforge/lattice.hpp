#pragma once

#include "grforge/linalg.hpp"

namespace grforge {

using LatticeRep = Span<DomO>;
using SpaceK = Span<DomK>;
using SpaceF = Span<DomF>;

LatticeRep make_lattice(const RingSpec& rs, Mat<Scalar> gens, int n);
LatticeRep ambient_lattice(const RingSpec& rs, int n);

LatticeRep lattice_intersection(const RingSpec& rs, const LatticeRep& a, const LatticeRep& b);
LatticeRep lattice_sum(const RingSpec& rs, const LatticeRep& a, const LatticeRep& b);
bool lattice_contains(const RingSpec& rs, const LatticeRep& L, const Vec<Scalar>& v);
bool lattice_subset(const RingSpec& rs, const LatticeRep& a, const LatticeRep& b);

// Coordinates of the rows of N in the basis of M; throws unless N is inside M.
Mat<Scalar> lattice_coords(const RingSpec& rs, const LatticeRep& M, const LatticeRep& N);

// M intersected with the K-span of N.
LatticeRep pure_closure(const RingSpec& rs, const LatticeRep& N, const LatticeRep& M);
// O^n intersected with the K-span of the given vectors.
LatticeRep saturate(const RingSpec& rs, const Mat<Scalar>& gens, int n);
bool is_pure(const RingSpec& rs, const LatticeRep& N, const LatticeRep& M);
// Injectivity of N_k -> M_k.
bool is_pure_by_residue(const RingSpec& rs, const LatticeRep& N, const LatticeRep& M);

struct QuotientBasis {
  Mat<Scalar> free_lifts;     // ambient vectors lifting a basis of the free part
  std::vector<long> torsion;  // exponents e with O/pi^e summands
};
QuotientBasis quotient_free_basis(const RingSpec& rs, const LatticeRep& M, const LatticeRep& N);

// For T pure in S, vectors of S completing a basis of T to a basis of S.
Mat<Scalar> complement_in(const RingSpec& rs, const LatticeRep& S, const LatticeRep& T);

// Indices j such that the standard vectors e_j complete the rows (independent
// mod p) to a basis of F_p^n.
std::vector<int> residue_completion(const DomF& f, const Mat<uint32_t>& rows, int n);

Vec<Scalar> clear_denominators(Vec<Scalar> v);
Vec<Scalar> lattice_combination(const LatticeRep& L, const Vec<Scalar>& x);

}  // namespace grforge
