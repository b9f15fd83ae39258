#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "grforge/lattice.hpp"

namespace grforge {

template <class E> using SparseRow = std::vector<std::pair<int, E>>;

// Finite free algebra over a coefficient domain, by structure constants:
// b_i b_j = sum_k sc[i*n+j][k].
template <class D>
struct AlgebraT {
  using E = typename D::Elem;
  D d;
  int n = 0;
  Vec<E> unit;
  std::vector<SparseRow<E>> sc;

  const SparseRow<E>& prod(int i, int j) const { return sc[static_cast<size_t>(i) * n + j]; }

  Vec<E> basis(int i) const {
    Vec<E> v(n, d.zero());
    v[i] = d.one();
    return v;
  }

  Vec<E> mul(const Vec<E>& x, const Vec<E>& y) const {
    Vec<E> r(n, d.zero());
    for (int i = 0; i < n; ++i) {
      if (d.is_zero(x[i])) continue;
      for (int j = 0; j < n; ++j) {
        if (d.is_zero(y[j])) continue;
        const auto& pr = prod(i, j);
        if (pr.empty()) continue;
        E c = d.mul(x[i], y[j]);
        for (const auto& [k, v] : pr) r[k] = d.add(r[k], d.mul(c, v));
      }
    }
    return r;
  }

  // b_i * y
  Vec<E> lmul_basis(int i, const Vec<E>& y) const {
    Vec<E> r(n, d.zero());
    for (int j = 0; j < n; ++j) {
      if (d.is_zero(y[j])) continue;
      for (const auto& [k, v] : prod(i, j)) r[k] = d.add(r[k], d.mul(y[j], v));
    }
    return r;
  }

  // y * b_j
  Vec<E> rmul_basis(const Vec<E>& y, int j) const {
    Vec<E> r(n, d.zero());
    for (int i = 0; i < n; ++i) {
      if (d.is_zero(y[i])) continue;
      for (const auto& [k, v] : prod(i, j)) r[k] = d.add(r[k], d.mul(y[i], v));
    }
    return r;
  }

  // Matrix of y -> x*y in the row convention (row j = x*b_j).
  Mat<E> left_matrix(const Vec<E>& x) const {
    Mat<E> m(n, Vec<E>(n, d.zero()));
    for (int i = 0; i < n; ++i) {
      if (d.is_zero(x[i])) continue;
      for (int j = 0; j < n; ++j)
        for (const auto& [k, v] : prod(i, j)) m[j][k] = d.add(m[j][k], d.mul(x[i], v));
    }
    return m;
  }
};

using AlgO = AlgebraT<DomO>;
using AlgK = AlgebraT<DomK>;
using AlgF = AlgebraT<DomF>;

AlgK to_K(const AlgO& a);
AlgF to_k(const AlgO& a);

// Weight datum: orthogonal idempotents e_nu (nu in X) summing to 1, with a
// poset Lambda inside X.
struct WeightDatum {
  std::vector<std::string> X;
  std::vector<std::string> Lambda;
  std::vector<std::pair<std::string, std::string>> less;  // (a, b) means a < b
  std::vector<Vec<Scalar>> idem;                          // parallel to X

  int x_index(const std::string& s) const;
  int lambda_index(const std::string& s) const;
  bool in_lambda(const std::string& s) const { return lambda_index(s) >= 0; }
  const Vec<Scalar>& e(const std::string& s) const { return idem.at(x_index(s)); }
  // strict order on Lambda (transitive closure of less)
  bool lt(const std::string& a, const std::string& b) const;
  bool leq(const std::string& a, const std::string& b) const { return a == b || lt(a, b); }
  void close();  // recompute the order closure
  // Lambda labels in a fixed linear extension, maximal elements first;
  // ties broken lexicographically.
  std::vector<std::string> top_down() const;
  std::vector<std::string> maximal(const std::vector<std::string>& among) const;
  bool is_ideal(const std::vector<std::string>& gamma) const;
  std::vector<std::string> down_set(const std::string& l) const;

  std::vector<std::vector<bool>> order;  // order[i][j]: Lambda[i] < Lambda[j]
};

struct StructureAlgebra {
  RingSpec rs;
  std::vector<std::string> labels;
  AlgO alg;
  std::optional<WeightDatum> weights;
  // Idempotents refined over K, used by the field-case suite when the O-level
  // idempotents are not primitive over K.
  std::optional<WeightDatum> weights_K;
  std::string name;

  int n() const { return alg.n; }
};

// Every violated axiom, in a stable order; empty when valid.
std::vector<std::string> validate_algebra(const StructureAlgebra& A);
std::vector<std::string> validate_weights(const StructureAlgebra& A, const WeightDatum& W,
                                          bool require_integral);

template <class D>
bool is_associative(const AlgebraT<D>& a, std::string* witness = nullptr);

// Span of all products x*y with x in the rows of U and y in the rows of V,
// over a field.
template <class D>
Span<D> product_span(const AlgebraT<D>& a, const Span<D>& U, const Span<D>& V);

// Radical of a field algebra. Over K: kernel of the trace form. Over F_p: the
// Cohen-Ivanyos-Wales sequence of p-power trace functionals.
Span<DomK> radical_field(const AlgK& a);
Span<DomF> radical_field(const AlgF& a);

struct RadicalCheck {
  bool nilpotent = false;
  bool quotient_semisimple = false;
  int nilpotency = 0;
};
RadicalCheck check_radical(const AlgK& a, const Span<DomK>& J);
RadicalCheck check_radical(const AlgF& a, const Span<DomF>& J);

// rad^n over a field (n >= 0).
template <class D>
std::vector<Span<D>> radical_powers(const AlgebraT<D>& a, const Span<D>& rad);

// Quotient of a by a two-sided ideal J. Over O, J must be pure. The quotient
// basis consists of images of the standard vectors listed in lift.
template <class D>
struct QuotientAlg {
  AlgebraT<D> alg;
  std::vector<int> lift;           // quotient basis index -> ambient standard vector
  Mat<typename D::Elem> to_basis;  // inverse of [J rows; lifts]
  int jrank = 0;
  Vec<typename D::Elem> project(const Vec<typename D::Elem>& v) const;
};
template <class D>
QuotientAlg<D> quotient_algebra(const AlgebraT<D>& a, const Span<D>& J);

// Algebra with a new basis (rows of P, invertible over the domain).
template <class D>
AlgebraT<D> rebase(const AlgebraT<D>& a, const Mat<typename D::Elem>& P);

// Subalgebra with basis the rows of S (closed, containing 1).
template <class D>
std::optional<AlgebraT<D>> subalgebra(const AlgebraT<D>& a, const Span<D>& S);

// Standard vectors completing the rows of s to a basis (over O: modulo pi).
template <class D>
std::vector<int> std_completion(const D& d, const Span<D>& s);

// Forced grading.
std::vector<LatticeRep> radical_filtration(const StructureAlgebra& A);
LatticeRep radical_power_lattice(const StructureAlgebra& A, int n);

struct GradedAlgebra {
  StructureAlgebra alg;       // gr A on its own basis
  std::vector<int> grade;     // per basis element
  Mat<Scalar> lifts;          // adapted lifts in the original basis (rows)
  std::vector<int> grade_ranks;
};

GradedAlgebra gr_algebra(const StructureAlgebra& A);
bool respects_grading(const AlgO& a, const std::vector<int>& grade);

// Basis change: coordinates of x in the adapted basis of A.
Vec<Scalar> adapted_coords(const GradedAlgebra& G, const Vec<Scalar>& x);
// Symbol of x in gr A, where x lies in rad~^s.
Vec<Scalar> symbol(const GradedAlgebra& G, const Vec<Scalar>& x, int s);

StructureAlgebra morita_reduce(const StructureAlgebra& B);

// Wedderburn complement over K, optionally containing a given semisimple
// subalgebra (rows of Q0, closed under multiplication).
std::optional<Span<DomK>> wedderburn_complement(const AlgK& a, const Span<DomK>* contain = nullptr);

struct SubalgebraRadicalReport {
  bool closed = false;
  bool b_equality = false;   // b cap rad A = rad b
  bool a_equality = false;   // a cap rad A = a cap rad b = rad a
  int rad_a = 0, rad_b = 0, a_cap_radA = 0, b_cap_radA = 0, a_cap_radb = 0;
};
SubalgebraRadicalReport subalgebra_radical_check(const AlgK& A, const Span<DomK>& a, const Span<DomK>& b);

// Algebra generators over K: a small subset of basis elements generating a.
template <class D>
std::vector<Vec<typename D::Elem>> algebra_generators(const AlgebraT<D>& a);

}  // namespace grforge

#include "grforge/algebra_impl.hpp"
