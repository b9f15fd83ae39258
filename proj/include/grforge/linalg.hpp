#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>

#include "grforge/domain.hpp"

namespace grforge {

// A submodule of D^n in canonical row echelon form. Over O this is the
// Hermite form: pivots are pi^e and entries above a pivot are canonical
// representatives modulo pi^e. Over a field it is the reduced row echelon form.
template <class D>
struct Span {
  using E = typename D::Elem;
  int n = 0;
  Mat<E> rows;
  std::vector<int> piv;
  std::vector<long> pkey;

  int rank() const { return static_cast<int>(rows.size()); }
  bool empty() const { return rows.empty(); }
  bool operator==(const Span& o) const { return n == o.n && rows == o.rows; }
};

template <class D>
Vec<typename D::Elem> zero_vec(const D& d, int n) {
  return Vec<typename D::Elem>(n, d.zero());
}

template <class D>
bool vec_is_zero(const D& d, const Vec<typename D::Elem>& v) {
  for (const auto& x : v)
    if (!d.is_zero(x)) return false;
  return true;
}

// v -= f * w, starting at column c0.
template <class D>
void axpy(const D& d, Vec<typename D::Elem>& v, const typename D::Elem& f,
          const Vec<typename D::Elem>& w, int c0 = 0) {
  if (d.is_zero(f)) return;
  for (size_t j = c0; j < w.size(); ++j)
    if (!d.is_zero(w[j])) v[j] = d.sub(v[j], d.mul(f, w[j]));
}

template <class D>
void scale(const D& d, Vec<typename D::Elem>& v, const typename D::Elem& f) {
  for (auto& x : v)
    if (!d.is_zero(x)) x = d.mul(f, x);
}

template <class D>
Span<D> echelon(const D& d, Mat<typename D::Elem> rows, int n) {
  Span<D> out;
  out.n = n;
  const int m = static_cast<int>(rows.size());
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    int best = -1;
    long bk = 0;
    for (int i = r; i < m; ++i) {
      if (d.is_zero(rows[i][c])) continue;
      long k = d.key(rows[i][c]);
      if (best < 0 || k < bk) {
        best = i;
        bk = k;
        if (k == 0) break;
      }
    }
    if (best < 0) continue;
    std::swap(rows[r], rows[best]);
    scale(d, rows[r], d.pivot_unit(rows[r][c]));
    for (int i = r + 1; i < m; ++i) {
      if (d.is_zero(rows[i][c])) continue;
      auto f = d.div(rows[i][c], rows[r][c]);
      axpy(d, rows[i], f, rows[r], c);
    }
    out.piv.push_back(c);
    out.pkey.push_back(bk);
    ++r;
  }
  rows.resize(r);
  for (int i = 0; i < r; ++i) {
    for (int a = 0; a < i; ++a) {
      const auto& x = rows[a][out.piv[i]];
      if (d.is_zero(x)) continue;
      auto q = d.reduce_quot(x, out.pkey[i]);
      axpy(d, rows[a], q, rows[i], out.piv[i]);
    }
  }
  out.rows = std::move(rows);
  return out;
}

template <class D>
Span<D> zero_span(int n) {
  Span<D> s;
  s.n = n;
  return s;
}

template <class D>
Span<D> full_span(const D& d, int n) {
  Mat<typename D::Elem> id(n, zero_vec(d, n));
  for (int i = 0; i < n; ++i) id[i][i] = d.one();
  return echelon(d, std::move(id), n);
}

// Coordinates of v with respect to the rows of s (over the fraction field of
// D); nullopt if v is not in the span.
template <class D>
std::optional<Vec<typename D::Elem>> coords(const D& d, const Span<D>& s,
                                            Vec<typename D::Elem> v) {
  Vec<typename D::Elem> x(s.rank(), d.zero());
  for (int i = 0; i < s.rank(); ++i) {
    const auto& a = v[s.piv[i]];
    if (d.is_zero(a)) continue;
    x[i] = d.div(a, s.rows[i][s.piv[i]]);
    axpy(d, v, x[i], s.rows[i], s.piv[i]);
  }
  if (!vec_is_zero(d, v)) return std::nullopt;
  return x;
}

template <class D>
bool contains(const D& d, const Span<D>& s, const Vec<typename D::Elem>& v) {
  auto x = coords(d, s, v);
  if (!x) return false;
  for (const auto& c : *x)
    if (!d.in_ring(c)) return false;
  return true;
}

template <class D>
bool in_span(const D& d, const Span<D>& s, const Vec<typename D::Elem>& v) {
  return coords(d, s, v).has_value();
}

template <class D>
bool is_subspan(const D& d, const Span<D>& a, const Span<D>& b) {
  for (const auto& r : a.rows)
    if (!contains(d, b, r)) return false;
  return true;
}

template <class D>
Span<D> span_sum(const D& d, const Span<D>& a, const Span<D>& b) {
  Mat<typename D::Elem> rows = a.rows;
  rows.insert(rows.end(), b.rows.begin(), b.rows.end());
  return echelon(d, std::move(rows), a.n);
}

// Rows x of D^m with x * C = 0, where C is m x k.
template <class D>
Span<D> left_kernel(const D& d, const Mat<typename D::Elem>& C, int m, int k) {
  Mat<typename D::Elem> aug(m, zero_vec(d, k + m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < k; ++j) aug[i][j] = C[i][j];
    aug[i][k + i] = d.one();
  }
  auto e = echelon(d, std::move(aug), k + m);
  Mat<typename D::Elem> ker;
  for (int i = 0; i < e.rank(); ++i)
    if (e.piv[i] >= k) ker.emplace_back(e.rows[i].begin() + k, e.rows[i].end());
  return echelon(d, std::move(ker), m);
}

template <class D>
Span<D> span_intersect(const D& d, const Span<D>& a, const Span<D>& b) {
  if (a.n != b.n) throw std::invalid_argument("ambient rank mismatch");
  const int n = a.n;
  Mat<typename D::Elem> rows;
  for (const auto& r : a.rows) {
    Vec<typename D::Elem> v = r;
    v.insert(v.end(), r.begin(), r.end());
    rows.push_back(std::move(v));
  }
  for (const auto& r : b.rows) {
    Vec<typename D::Elem> v = r;
    v.resize(2 * n, d.zero());
    rows.push_back(std::move(v));
  }
  auto e = echelon(d, std::move(rows), 2 * n);
  Mat<typename D::Elem> out;
  for (int i = 0; i < e.rank(); ++i)
    if (e.piv[i] >= n) out.emplace_back(e.rows[i].begin() + n, e.rows[i].end());
  return echelon(d, std::move(out), n);
}

template <class D>
Vec<typename D::Elem> vec_mat(const D& d, const Vec<typename D::Elem>& v,
                              const Mat<typename D::Elem>& M, int cols) {
  Vec<typename D::Elem> r(cols, d.zero());
  for (size_t i = 0; i < v.size(); ++i) {
    if (d.is_zero(v[i])) continue;
    for (int j = 0; j < cols; ++j)
      if (!d.is_zero(M[i][j])) r[j] = d.add(r[j], d.mul(v[i], M[i][j]));
  }
  return r;
}

template <class D>
Vec<typename D::Elem> mat_vec(const D& d, const Mat<typename D::Elem>& M,
                              const Vec<typename D::Elem>& v) {
  Vec<typename D::Elem> r(M.size(), d.zero());
  for (size_t i = 0; i < M.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      if (!d.is_zero(v[j]) && !d.is_zero(M[i][j])) r[i] = d.add(r[i], d.mul(M[i][j], v[j]));
  return r;
}

template <class D>
Mat<typename D::Elem> mat_mul(const D& d, const Mat<typename D::Elem>& A,
                              const Mat<typename D::Elem>& B, int inner, int cols) {
  Mat<typename D::Elem> C(A.size(), zero_vec(d, cols));
  for (size_t i = 0; i < A.size(); ++i)
    for (int k = 0; k < inner; ++k) {
      if (d.is_zero(A[i][k])) continue;
      for (int j = 0; j < cols; ++j)
        if (!d.is_zero(B[k][j])) C[i][j] = d.add(C[i][j], d.mul(A[i][k], B[k][j]));
    }
  return C;
}

template <class D>
Mat<typename D::Elem> identity(const D& d, int n) {
  Mat<typename D::Elem> I(n, zero_vec(d, n));
  for (int i = 0; i < n; ++i) I[i][i] = d.one();
  return I;
}

template <class D>
Mat<typename D::Elem> transpose(const D& d, const Mat<typename D::Elem>& A, int rows, int cols) {
  Mat<typename D::Elem> T(cols, zero_vec(d, rows));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) T[j][i] = A[i][j];
  return T;
}

template <class D>
int rank_of(const D& d, const Mat<typename D::Elem>& rows, int n) {
  if constexpr (D::is_field) {
    return echelon(d, rows, n).rank();
  } else {
    DomK k{d.rs};
    return echelon(k, rows, n).rank();
  }
}

// x with x * A = b (A has m rows of width n), over the fraction field.
template <class D>
std::optional<Vec<typename D::Elem>> solve_left(const D& d, const Mat<typename D::Elem>& A,
                                                int n, const Vec<typename D::Elem>& b) {
  const int m = static_cast<int>(A.size());
  Mat<typename D::Elem> aug(m, zero_vec(d, n + m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = A[i][j];
    aug[i][n + i] = d.one();
  }
  auto e = echelon(d, std::move(aug), n + m);
  Vec<typename D::Elem> v = b;
  v.resize(n + m, d.zero());
  for (int i = 0; i < e.rank() && e.piv[i] < n; ++i) {
    const auto& a = v[e.piv[i]];
    if (d.is_zero(a)) continue;
    auto q = d.div(a, e.rows[i][e.piv[i]]);
    axpy(d, v, q, e.rows[i], e.piv[i]);
  }
  for (int j = 0; j < n; ++j)
    if (!d.is_zero(v[j])) return std::nullopt;
  Vec<typename D::Elem> x(v.begin() + n, v.end());
  for (auto& c : x) c = d.neg(c);
  return x;
}

// Coordinates with respect to a fixed list of independent rows, with the
// elimination precomputed.
template <class D>
struct RowSolver {
  using E = typename D::Elem;
  D d;
  int n = 0, k = 0;
  Span<D> ech;  // echelon form of [B | I]
  RowSolver() = default;
  RowSolver(const D& dom, const Mat<E>& B, int width) : d(dom), n(width), k(static_cast<int>(B.size())) {
    Mat<E> aug(k, zero_vec(d, n + k));
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < n; ++j) aug[i][j] = B[i][j];
      aug[i][n + i] = d.one();
    }
    ech = echelon(d, std::move(aug), n + k);
    for (int i = 0; i < ech.rank(); ++i)
      if (ech.piv[i] >= n) throw std::invalid_argument("RowSolver: rows are dependent");
  }
  // x with x * B = v (over the fraction field), or nullopt.
  std::optional<Vec<E>> solve(const Vec<E>& b) const {
    Vec<E> v = b;
    v.resize(n + k, d.zero());
    for (int i = 0; i < ech.rank(); ++i) {
      const auto& a = v[ech.piv[i]];
      if (d.is_zero(a)) continue;
      auto q = d.div(a, ech.rows[i][ech.piv[i]]);
      axpy(d, v, q, ech.rows[i], ech.piv[i]);
    }
    for (int j = 0; j < n; ++j)
      if (!d.is_zero(v[j])) return std::nullopt;
    Vec<E> x(v.begin() + n, v.end());
    for (auto& c : x) c = d.neg(c);
    return x;
  }
};


// Rows x_i with x_i * A = e_i, i.e. inv * A = I.
template <class D>
std::optional<Mat<typename D::Elem>> mat_inverse(const D& d, const Mat<typename D::Elem>& A, int n) {
  if (static_cast<int>(A.size()) != n || rank_of(d, A, n) != n) return std::nullopt;
  RowSolver<D> rs(d, A, n);
  Mat<typename D::Elem> inv;
  for (int i = 0; i < n; ++i) {
    Vec<typename D::Elem> b(n, d.zero());
    b[i] = d.one();
    auto x = rs.solve(b);
    if (!x) return std::nullopt;
    inv.push_back(std::move(*x));
  }
  return inv;
}

// Keys (valuations) of the elementary divisors of C over a DVR.
template <class D>
std::vector<long> smith_keys(const D& d, Mat<typename D::Elem> C, int cols) {
  std::vector<long> out;
  const int m = static_cast<int>(C.size());
  std::vector<bool> rdone(m, false), cdone(cols, false);
  while (true) {
    int bi = -1, bj = -1;
    long bk = 0;
    for (int i = 0; i < m; ++i) {
      if (rdone[i]) continue;
      for (int j = 0; j < cols; ++j) {
        if (cdone[j] || d.is_zero(C[i][j])) continue;
        long k = d.key(C[i][j]);
        if (bi < 0 || k < bk) { bi = i; bj = j; bk = k; }
      }
    }
    if (bi < 0) break;
    out.push_back(bk);
    auto piv = C[bi][bj];
    for (int i = 0; i < m; ++i) {
      if (i == bi || rdone[i] || d.is_zero(C[i][bj])) continue;
      axpy(d, C[i], d.div(C[i][bj], piv), C[bi]);
    }
    rdone[bi] = true;
    cdone[bj] = true;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace grforge
