#pragma once

// Template definitions for algebra.hpp.

namespace grforge {

template <class D>
bool is_associative(const AlgebraT<D>& a, std::string* witness) {
  const int n = a.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec<typename D::Elem> bij(n, a.d.zero());
      for (const auto& [k, v] : a.prod(i, j)) bij[k] = v;
      for (int k = 0; k < n; ++k) {
        auto lhs = a.rmul_basis(bij, k);
        Vec<typename D::Elem> bjk(n, a.d.zero());
        for (const auto& [t, v] : a.prod(j, k)) bjk[t] = v;
        auto rhs = a.lmul_basis(i, bjk);
        if (lhs != rhs) {
          if (witness)
            *witness = "(b" + std::to_string(i) + " b" + std::to_string(j) + ") b" +
                       std::to_string(k) + " != b" + std::to_string(i) + " (b" +
                       std::to_string(j) + " b" + std::to_string(k) + ")";
          return false;
        }
      }
    }
  return true;
}

template <class D>
Span<D> product_span(const AlgebraT<D>& a, const Span<D>& U, const Span<D>& V) {
  Mat<typename D::Elem> rows;
  for (const auto& x : U.rows)
    for (const auto& y : V.rows) {
      auto z = a.mul(x, y);
      if (!vec_is_zero(a.d, z)) rows.push_back(std::move(z));
    }
  return echelon(a.d, std::move(rows), a.n);
}

template <class D>
std::vector<Span<D>> radical_powers(const AlgebraT<D>& a, const Span<D>& rad) {
  std::vector<Span<D>> out{full_span(a.d, a.n)};
  Span<D> cur = rad;
  while (true) {
    out.push_back(cur);
    if (cur.rank() == 0) break;
    auto next = product_span(a, rad, cur);
    if (next.rank() == cur.rank()) throw std::logic_error("radical_powers: ideal is not nilpotent");
    cur = std::move(next);
  }
  return out;
}

template <class D>
std::vector<int> std_completion(const D& d, const Span<D>& s) {
  if constexpr (D::is_field) {
    std::vector<int> out;
    std::vector<bool> piv(s.n, false);
    for (int c : s.piv) piv[c] = true;
    for (int j = 0; j < s.n; ++j)
      if (!piv[j]) out.push_back(j);
    return out;
  } else {
    DomF f{d.rs.p};
    auto idx = residue_completion(f, reduce_mat(s.rows, d.rs), s.n);
    if (static_cast<int>(idx.size()) + s.rank() != s.n)
      throw std::logic_error("std_completion: sublattice is not pure");
    return idx;
  }
}

// Rows of S completing T (a pure subspan of S) to a basis of S.
template <class D>
Mat<typename D::Elem> relative_complement(const D& d, const Span<D>& S, const Span<D>& T) {
  Mat<typename D::Elem> C;
  for (const auto& r : T.rows) {
    auto x = coords(d, S, r);
    if (!x) throw std::invalid_argument("relative_complement: T not inside S");
    C.push_back(std::move(*x));
  }
  auto cs = echelon(d, std::move(C), S.rank());
  Mat<typename D::Elem> out;
  for (int j : std_completion(d, cs)) out.push_back(S.rows[j]);
  return out;
}

template <class D>
Vec<typename D::Elem> QuotientAlg<D>::project(const Vec<typename D::Elem>& v) const {
  auto c = vec_mat(alg.d, v, to_basis, static_cast<int>(to_basis.size()));
  return Vec<typename D::Elem>(c.begin() + jrank, c.end());
}

template <class D>
QuotientAlg<D> quotient_algebra(const AlgebraT<D>& a, const Span<D>& J) {
  QuotientAlg<D> q;
  q.lift = std_completion(a.d, J);
  q.jrank = J.rank();
  Mat<typename D::Elem> B = J.rows;
  for (int j : q.lift) B.push_back(a.basis(j));
  auto inv = mat_inverse(a.d, B, a.n);
  if (!inv) throw std::logic_error("quotient_algebra: basis not invertible");
  q.to_basis = std::move(*inv);
  const int m = static_cast<int>(q.lift.size());
  q.alg.d = a.d;
  q.alg.n = m;
  q.alg.sc.assign(static_cast<size_t>(m) * m, {});
  q.alg.unit = q.project(a.unit);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Vec<typename D::Elem> v(a.n, a.d.zero());
      for (const auto& [k, c] : a.prod(q.lift[i], q.lift[j])) v[k] = c;
      auto w = q.project(v);
      auto& row = q.alg.sc[static_cast<size_t>(i) * m + j];
      for (int k = 0; k < m; ++k)
        if (!a.d.is_zero(w[k])) row.emplace_back(k, w[k]);
    }
  return q;
}

template <class D>
AlgebraT<D> rebase(const AlgebraT<D>& a, const Mat<typename D::Elem>& P) {
  auto inv = mat_inverse(a.d, P, a.n);
  if (!inv) throw std::logic_error("rebase: basis not invertible");
  AlgebraT<D> r;
  r.d = a.d;
  r.n = a.n;
  r.sc.assign(static_cast<size_t>(a.n) * a.n, {});
  r.unit = vec_mat(a.d, a.unit, *inv, a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      auto w = vec_mat(a.d, a.mul(P[i], P[j]), *inv, a.n);
      auto& row = r.sc[static_cast<size_t>(i) * a.n + j];
      for (int k = 0; k < a.n; ++k)
        if (!a.d.is_zero(w[k])) row.emplace_back(k, w[k]);
    }
  return r;
}

template <class D>
std::optional<AlgebraT<D>> subalgebra(const AlgebraT<D>& a, const Span<D>& S) {
  const int m = S.rank();
  AlgebraT<D> r;
  r.d = a.d;
  r.n = m;
  r.sc.assign(static_cast<size_t>(m) * m, {});
  auto u = coords(a.d, S, a.unit);
  if (!u) return std::nullopt;
  r.unit = *u;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      auto c = coords(a.d, S, a.mul(S.rows[i], S.rows[j]));
      if (!c) return std::nullopt;
      auto& row = r.sc[static_cast<size_t>(i) * m + j];
      for (int k = 0; k < m; ++k) {
        if (a.d.is_zero((*c)[k])) continue;
        if (!a.d.in_ring((*c)[k])) return std::nullopt;
        row.emplace_back(k, (*c)[k]);
      }
    }
  return r;
}

template <class D>
std::vector<Vec<typename D::Elem>> algebra_generators(const AlgebraT<D>& a) {
  static_assert(D::is_field, "algebra_generators works over a field");
  std::vector<Vec<typename D::Elem>> gens;
  Span<D> B = echelon(a.d, Mat<typename D::Elem>{a.unit}, a.n);
  for (int i = 0; i < a.n && B.rank() < a.n; ++i) {
    auto bi = a.basis(i);
    if (in_span(a.d, B, bi)) continue;
    gens.push_back(bi);
    // close B under right multiplication by generators
    while (true) {
      Mat<typename D::Elem> rows = B.rows;
      for (const auto& x : B.rows)
        for (const auto& g : gens) rows.push_back(a.mul(x, g));
      auto nb = echelon(a.d, std::move(rows), a.n);
      if (nb.rank() == B.rank()) break;
      B = std::move(nb);
    }
  }
  return gens;
}

}  // namespace grforge
