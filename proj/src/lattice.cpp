#include "grforge/lattice.hpp"

#include <numeric>

namespace grforge {

LatticeRep make_lattice(const RingSpec& rs, Mat<Scalar> gens, int n) {
  for (const auto& r : gens) {
    if (static_cast<int>(r.size()) != n) throw std::invalid_argument("generator width mismatch");
    for (const auto& x : r)
      if (!in_O(x, rs)) throw std::invalid_argument("generator entry outside O");
  }
  return echelon(DomO{rs}, std::move(gens), n);
}

LatticeRep ambient_lattice(const RingSpec& rs, int n) { return full_span(DomO{rs}, n); }

LatticeRep lattice_intersection(const RingSpec& rs, const LatticeRep& a, const LatticeRep& b) {
  return span_intersect(DomO{rs}, a, b);
}

LatticeRep lattice_sum(const RingSpec& rs, const LatticeRep& a, const LatticeRep& b) {
  return span_sum(DomO{rs}, a, b);
}

bool lattice_contains(const RingSpec& rs, const LatticeRep& L, const Vec<Scalar>& v) {
  return contains(DomO{rs}, L, v);
}

bool lattice_subset(const RingSpec& rs, const LatticeRep& a, const LatticeRep& b) {
  return is_subspan(DomO{rs}, a, b);
}

Mat<Scalar> lattice_coords(const RingSpec& rs, const LatticeRep& M, const LatticeRep& N) {
  DomO d{rs};
  Mat<Scalar> C;
  for (const auto& r : N.rows) {
    auto x = coords(d, M, r);
    if (!x) throw std::invalid_argument("sublattice not contained in lattice");
    for (const auto& c : *x)
      if (!in_O(c, rs)) throw std::invalid_argument("sublattice not contained in lattice");
    C.push_back(std::move(*x));
  }
  return C;
}

Vec<Scalar> clear_denominators(Vec<Scalar> v) {
  mpz_class l = 1;
  for (const auto& x : v)
    for (const auto& q : x.raw()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
  if (l == 1) return v;
  Scalar s{mpq_class(l)};
  for (auto& x : v) x = x * s;
  return v;
}

Vec<Scalar> lattice_combination(const LatticeRep& L, const Vec<Scalar>& x) {
  Vec<Scalar> v(L.n);
  for (int i = 0; i < L.rank(); ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < L.n; ++j)
      if (!L.rows[i][j].is_zero()) v[j] += x[i] * L.rows[i][j];
  }
  return v;
}

// {y in O^r : y C^T = 0 for every row of C} where K-annihilator columns are
// cleared to O.
static LatticeRep saturate_coords(const RingSpec& rs, const Mat<Scalar>& C, int r) {
  DomK k{rs};
  DomO o{rs};
  if (C.empty()) return zero_span<DomO>(r);
  auto ct = transpose(k, C, static_cast<int>(C.size()), r);
  // x in K^r with C x = 0
  auto ann = left_kernel(k, ct, r, static_cast<int>(C.size()));
  if (ann.rank() == 0) return full_span(o, r);
  const int t = ann.rank();
  Mat<Scalar> B(r, Vec<Scalar>(t));
  for (int j = 0; j < t; ++j) {
    auto col = clear_denominators(ann.rows[j]);
    for (int i = 0; i < r; ++i) B[i][j] = col[i];
  }
  return left_kernel(o, B, r, t);
}

LatticeRep saturate(const RingSpec& rs, const Mat<Scalar>& gens, int n) {
  return saturate_coords(rs, gens, n);
}

LatticeRep pure_closure(const RingSpec& rs, const LatticeRep& N, const LatticeRep& M) {
  auto C = lattice_coords(rs, M, N);
  if (N.rank() == 0) return zero_span<DomO>(M.n);
  auto sat = saturate_coords(rs, C, M.rank());
  Mat<Scalar> rows;
  for (const auto& y : sat.rows) rows.push_back(lattice_combination(M, y));
  return echelon(DomO{rs}, std::move(rows), M.n);
}

bool is_pure(const RingSpec& rs, const LatticeRep& N, const LatticeRep& M) {
  return pure_closure(rs, N, M) == N;
}

bool is_pure_by_residue(const RingSpec& rs, const LatticeRep& N, const LatticeRep& M) {
  auto C = lattice_coords(rs, M, N);
  if (C.empty()) return true;
  DomF f{rs.p};
  return echelon(f, reduce_mat(C, rs), M.rank()).rank() == N.rank();
}

std::vector<int> residue_completion(const DomF& f, const Mat<uint32_t>& rows, int n) {
  auto cur = echelon(f, rows, n);
  std::vector<int> added;
  for (int j = 0; j < n && cur.rank() < n; ++j) {
    Vec<uint32_t> e(n, 0);
    e[j] = 1;
    if (in_span(f, cur, e)) continue;
    added.push_back(j);
    auto r = cur.rows;
    r.push_back(e);
    cur = echelon(f, std::move(r), n);
  }
  return added;
}

Mat<Scalar> complement_in(const RingSpec& rs, const LatticeRep& S, const LatticeRep& T) {
  auto C = lattice_coords(rs, S, T);
  DomF f{rs.p};
  auto idx = residue_completion(f, reduce_mat(C, rs), S.rank());
  if (static_cast<int>(idx.size()) + T.rank() != S.rank())
    throw std::logic_error("complement_in: sublattice is not pure");
  Mat<Scalar> out;
  for (int j : idx) out.push_back(S.rows[j]);
  return out;
}

QuotientBasis quotient_free_basis(const RingSpec& rs, const LatticeRep& M, const LatticeRep& N) {
  QuotientBasis qb;
  auto C = lattice_coords(rs, M, N);
  for (long e : smith_keys(DomO{rs}, C, M.rank()))
    if (e > 0) qb.torsion.push_back(e);
  auto sat = saturate_coords(rs, C, M.rank());
  DomF f{rs.p};
  auto idx = residue_completion(f, reduce_mat(sat.rows, rs), M.rank());
  for (int j : idx) qb.free_lifts.push_back(M.rows[j]);
  return qb;
}

}  // namespace grforge
