#pragma once

#include "grforge/module.hpp"

namespace grforge {

// A complete set of matrix units for a corner eAe, one block per simple
// factor: units[s][a][b] = E^{(s)}_{ab}.
template <class D>
struct MatrixUnits {
  using E = typename D::Elem;
  bool ok = false;
  std::string problem;
  std::vector<Vec<E>> primitive;  // rank-one corner idempotents
  std::vector<std::vector<std::vector<Vec<E>>>> units;
  std::vector<int> block_sizes() const {
    std::vector<int> r;
    for (const auto& u : units) r.push_back(static_cast<int>(u.size()));
    return r;
  }
};

// Matrix units of eAe refining the orthogonal idempotents `parts` (which sum
// to e). Corners of rank above one are split by idempotents found among their
// canonical basis vectors.
template <class D>
MatrixUnits<D> find_matrix_units(const AlgebraT<D>& a, const Vec<typename D::Elem>& e,
                                 const std::vector<Vec<typename D::Elem>>& parts);

template <class D>
struct HeredityVerdict {
  using E = typename D::Elem;
  Span<D> J;
  bool nonzero = false;
  bool quotient_free = false;  // (i)
  bool idempotent = false;     // (ii)
  bool projective = false;     // (iii)
  bool end_split = false;      // (iv)
  std::vector<long> torsion;
  Vec<E> torsion_witness;      // in the saturation of J but not in J
  MatrixUnits<D> units;
  std::vector<int> multiplicities;  // J = sum over blocks of (A f_s)^{m_s}
  std::string problem;
  bool ok() const { return nonzero && quotient_free && idempotent && projective && end_split; }
  // first failing condition: "nonzero", "i", "ii", "iii", "iv" or ""
  std::string failed() const;
};

// J = AeA with the four conditions of a split heredity ideal.
template <class D>
HeredityVerdict<D> heredity_check(const AlgebraT<D>& a, const Vec<typename D::Elem>& e,
                                  const std::vector<Vec<typename D::Elem>>& parts);

HeredityVerdict<DomO> is_split_heredity_ideal(const StructureAlgebra& A, const Vec<Scalar>& e,
                                              const std::vector<Vec<Scalar>>& parts = {});

template <class D>
struct ChainStep {
  using E = typename D::Elem;
  std::vector<std::string> removed;
  Vec<E> e;                  // in the original basis
  Span<D> J;                 // cumulative ideal in the original algebra
  HeredityVerdict<D> verdict;  // computed in the quotient by the previous ideal
  std::vector<std::vector<std::vector<Vec<E>>>> units;  // lifted to the original basis
  std::map<std::string, int> delta_ranks;
};

template <class D>
struct ChainCertificate {
  bool ok = false;
  std::vector<ChainStep<D>> steps;
  int failed_step = -1;
  std::string failed_condition;
  std::string failure;
  std::map<std::string, int> delta_ranks() const {
    std::map<std::string, int> r;
    for (const auto& s : steps)
      for (const auto& [l, k] : s.delta_ranks) r[l] = k;
    return r;
  }
};

// Heredity chain by stripping maximal antichains of the remaining weights, or
// one weight at a time along `linear` (top first) when supplied.
template <class D>
ChainCertificate<D> certify_chain(const WAlg<D>& A, const std::vector<std::string>* linear = nullptr);

ChainCertificate<DomO> certify_qha(const StructureAlgebra& A, const std::vector<std::string>* linear = nullptr);

struct CheckerReport {
  bool agrees = false;       // every recomputed verdict matches the certificate
  bool valid_chain = false;  // the certificate proves quasi-heredity
  std::vector<std::string> mismatches;
};

// Re-verifies a certificate in the original basis, without quotient algebras.
template <class D>
CheckerReport check_certificate(const WAlg<D>& A, const ChainCertificate<D>& C);

}  // namespace grforge
