#pragma once

#include <map>
#include <type_traits>

#include "grforge/algebra.hpp"

namespace grforge {

// Finite free module over an algebra with n basis elements; elements are row
// vectors of coordinates and act[i][j] holds b_i * m_j.
template <class D>
struct ModuleT {
  using E = typename D::Elem;
  D d;
  int m = 0;
  int n_alg = 0;
  std::vector<std::vector<SparseRow<E>>> act;

  // b_i * v
  Vec<E> apply(int i, const Vec<E>& v) const {
    Vec<E> r(m, d.zero());
    for (int j = 0; j < m; ++j) {
      if (d.is_zero(v[j])) continue;
      for (const auto& [k, c] : act[i][j]) r[k] = d.add(r[k], d.mul(v[j], c));
    }
    return r;
  }
  // x * v for an algebra element x
  Vec<E> apply_elem(const Vec<E>& x, const Vec<E>& v) const {
    Vec<E> r(m, d.zero());
    for (int i = 0; i < n_alg; ++i) {
      if (d.is_zero(x[i])) continue;
      auto y = apply(i, v);
      for (int k = 0; k < m; ++k)
        if (!d.is_zero(y[k])) r[k] = d.add(r[k], d.mul(x[i], y[k]));
    }
    return r;
  }
  Mat<E> matrix(int i) const {
    Mat<E> M(m, Vec<E>(m, d.zero()));
    for (int j = 0; j < m; ++j)
      for (const auto& [k, c] : act[i][j]) M[j][k] = c;
    return M;
  }
  Vec<E> basis(int j) const {
    Vec<E> v(m, d.zero());
    v[j] = d.one();
    return v;
  }
};

using ModO = ModuleT<DomO>;
using ModK = ModuleT<DomK>;
using ModF = ModuleT<DomF>;

ModK to_K(const ModO& M);
ModF to_k(const ModO& M);

// An algebra together with its weight idempotents written over the domain.
template <class D>
struct WAlg {
  using E = typename D::Elem;
  AlgebraT<D> alg;
  WeightDatum W;
  std::vector<Vec<E>> e;  // parallel to W.X
  const Vec<E>& idem(const std::string& nu) const { return e.at(W.x_index(nu)); }
};

WAlg<DomO> at_O(const StructureAlgebra& A);
// refined: use the K-level datum when the algebra carries one
WAlg<DomK> at_K(const StructureAlgebra& A, bool refined = false);
WAlg<DomF> at_k(const StructureAlgebra& A);

template <class D>
ModuleT<D> regular_module(const AlgebraT<D>& a);

// Empty when the action is associative and unital.
template <class D>
std::vector<std::string> validate_module(const AlgebraT<D>& a, const ModuleT<D>& M);

// Smallest submodule containing the rows of S (over O: sublattice).
template <class D>
Span<D> generated_submodule(const ModuleT<D>& M, Mat<typename D::Elem> S);

template <class D>
bool is_submodule(const ModuleT<D>& M, const Span<D>& S);

// The module structure on a stable span, in the basis of its rows.
template <class D>
ModuleT<D> submodule(const ModuleT<D>& M, const Span<D>& S);

template <class D>
struct QuotientMod {
  using E = typename D::Elem;
  ModuleT<D> mod;
  std::vector<int> lift;  // quotient basis -> standard vectors of the ambient
  Mat<E> to_basis;        // inverse of [kernel rows; lifts]
  int krank = 0;
  Vec<E> project(const Vec<E>& v) const;
  Vec<E> lift_vec(const Vec<E>& q) const;
};

// Quotient by a submodule; over O the submodule must be pure.
template <class D>
QuotientMod<D> quotient_module(const ModuleT<D>& M, const Span<D>& N);

template <class D>
Span<D> weight_space(const ModuleT<D>& M, const Vec<typename D::Elem>& e);

// Span of J*M for an ideal given by rows J.
template <class D>
Span<D> ideal_times(const ModuleT<D>& M, const Mat<typename D::Elem>& J);

template <class D>
ModuleT<D> direct_sum(const ModuleT<D>& a, const ModuleT<D>& b);

// Homomorphisms M1 -> M2 commuting with the action of the given algebra
// elements, as matrices Phi with v -> v * Phi (fields only).
template <class D>
std::vector<Mat<typename D::Elem>> hom_space(const ModuleT<D>& M1, const ModuleT<D>& M2,
                                             const std::vector<Vec<typename D::Elem>>& gens);

// Radical series rad^n M over a field, from rad A.
template <class D>
std::vector<Span<D>> radical_series(const ModuleT<D>& M, const Span<D>& radA);

// ---------------------------------------------------------------- heads and simples

template <class D>
struct HeadReport {
  int dim = 0;
  std::map<std::string, int> weight_dims;  // over X
  bool is_simple = false;
  std::string label;  // the Lambda label when simple
  ModuleT<D> module;
  Span<D> radical;  // rad(A) M
};

template <class D>
HeadReport<D> head(const WAlg<D>& A, const Span<D>& radA, const ModuleT<D>& M);

struct Simple {
  std::string label;
  int dim = 0;
  std::map<std::string, int> weight_dims;
};

// Simple modules L(lambda) as heads of truncated projectives, over a field.
template <class D>
struct SimpleTable {
  std::vector<Simple> simples;  // parallel to W.Lambda
  bool complete = false;        // sum of squares of dims equals dim A/rad A
  std::vector<std::string> problems;
  const Simple* find(const std::string& l) const {
    for (const auto& s : simples)
      if (s.label == l) return &s;
    return nullptr;
  }
};

template <class D>
SimpleTable<D> simple_modules(const WAlg<D>& A, const Span<D>& radA);

// Triangular solve for [M : L(lambda)]; nullopt when inconsistent.
template <class D>
std::optional<std::map<std::string, int>> composition_multiplicities(const WAlg<D>& A, const SimpleTable<D>& S,
                                                                     const ModuleT<D>& M,
                                                                     std::string* why = nullptr);

// Multiplicities by repeatedly stripping heads and counting Hom(H, L).
template <class D>
std::map<std::string, int> composition_by_heads(const WAlg<D>& A, const Span<D>& radA, const ModuleT<D>& M);

// ---------------------------------------------------------------- truncation

template <class D>
struct Truncation {
  Span<D> kernel;           // sum of B e_nu N over nu in Lambda minus Gamma
  bool pure = true;         // over O: kernel pure, so the quotient is a lattice
  std::vector<long> torsion;
  QuotientMod<D> quotient;  // valid when pure
};

template <class D>
Truncation<D> truncate(const WAlg<D>& A, const ModuleT<D>& N, const std::vector<std::string>& gamma);

// The algebra A_Gamma with its induced weight datum.
template <class D>
std::optional<WAlg<D>> truncated_algebra(const WAlg<D>& A, const std::vector<std::string>& gamma);

// ---------------------------------------------------------------- standard modules

template <class D>
struct StandardData {
  std::string label;
  Span<D> P_span;          // A e_lambda inside the regular module
  ModuleT<D> P;            // on the rows of P_span
  Truncation<D> trunc;     // of P to the down-set of lambda
  ModuleT<D> Delta;        // trunc.quotient.mod
  bool head_simple_P = false;
  bool head_Delta_is_L = false;
  bool generated_by_top = false;  // Delta generated by its lambda-weight space
};

template <class D>
StandardData<D> standard_data(const WAlg<D>& A, const std::type_identity_t<Span<D>>* radA, const std::string& lambda);

// ---------------------------------------------------------------- Delta-filtrations

template <class D>
struct FiltrationStep {
  std::string label;
  int multiplicity = 0;
  Span<D> sub;  // F_j inside the original module
  bool pure = true;
  bool isomorphic = true;
  std::string problem;
  Mat<typename D::Elem> witness;  // images of the Delta basis under each copy
};

template <class D>
struct DeltaFiltration {
  bool ok = false;
  std::vector<FiltrationStep<D>> steps;  // bottom to top
  std::string failure;
  std::map<std::string, int> multiset() const {
    std::map<std::string, int> m;
    for (const auto& s : steps) m[s.label] += s.multiplicity;
    return m;
  }
};

// Greedy peeling at maximal weights; among maximal weights the least label is
// taken unless an explicit order is supplied.
template <class D>
DeltaFiltration<D> delta_filtration(const WAlg<D>& A, const std::map<std::string, StandardData<D>>& std_mods,
                                    const ModuleT<D>& N, const std::vector<std::string>* order = nullptr);

// Maps x e_lambda -> x u from P(lambda) to N and checks that they factor
// through Delta(lambda) and give an isomorphism onto the submodule generated
// by the u's. Returns the images of the Delta basis.
template <class D>
std::optional<Mat<typename D::Elem>> delta_power_iso(const StandardData<D>& S, const ModuleT<D>& N,
                                                     const Mat<typename D::Elem>& us, const Span<D>& R,
                                                     std::string* why);

// ---------------------------------------------------------------- gr of modules

std::vector<LatticeRep> module_filtration(const StructureAlgebra& A, const ModO& M);

struct GradedModule {
  ModO mod;                 // over the gr basis
  std::vector<int> grade;
  Mat<Scalar> lifts;        // rows in the coordinates of M
  Mat<Scalar> lifts_inv;
  std::vector<int> grade_ranks;
  std::vector<LatticeRep> filtration;  // rad~^n M, n = 0..L
  // adapted coordinates of v in M
  Vec<Scalar> coords(const Vec<Scalar>& v) const;
  // symbol of v in rad~^s M
  Vec<Scalar> symbol(const Vec<Scalar>& v, int s) const;
  int degree(const Vec<Scalar>& v) const;  // largest s with v in rad~^s M
};

GradedModule gr_module(const StructureAlgebra& A, const GradedAlgebra& G, const ModO& M);

// Sublattice of gr M spanned by the symbols of L cap rad~^n M for all n.
LatticeRep symbol_lattice(const GradedModule& GM, const LatticeRep& L);

// ---------------------------------------------------------------- Lambda-standardness

struct StandardnessFailure {
  std::string prime;  // "0" (over K) or "m" (over k)
  std::string lambda, mu;
  std::string what;
};

struct LambdaStandardReport {
  bool standard = false;  // both conditions at both primes
  bool uniform = false;   // e_nu L(nu) != 0 at both primes
  std::vector<StandardnessFailure> failures;
  std::map<std::string, int> dims_K, dims_k;  // dim L(lambda)
};

// Checks dim L(lambda)_lambda = 1 and that L(lambda)_mu != 0 forces
// mu <= lambda, over K and over k.
LambdaStandardReport is_lambda_standard(const StructureAlgebra& A);

}  // namespace grforge

#include "grforge/module_impl.hpp"
