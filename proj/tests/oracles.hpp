#pragma once

// Independent reference computations used as test oracles. Nothing here calls
// into the library's echelon code.

#include <gmpxx.h>

#include <cstdlib>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using QVec = std::vector<mpq_class>;
using QMat = std::vector<QVec>;

inline uint64_t seed() {
  const char* s = std::getenv("GRFORGE_SEED");
  return s ? std::strtoull(s, nullptr, 10) : 20240917ULL;
}

inline long vp(const mpz_class& z, long p) {
  if (z == 0) return 1L << 40;
  mpz_class t = z;
  long v = 0;
  while (t % p == 0) { t /= p; ++v; }
  return v;
}

inline long vp(const mpq_class& q, long p) {
  if (q == 0) return 1L << 40;
  return vp(q.get_num(), p) - vp(q.get_den(), p);
}

inline bool p_integral(const mpq_class& q, long p) { return q.get_den() % p != 0; }

// Plain Gauss-Jordan rank over Q.
inline int rank_q(QMat a) {
  int r = 0;
  const int m = static_cast<int>(a.size());
  const int n = m ? static_cast<int>(a[0].size()) : 0;
  for (int c = 0; c < n && r < m; ++c) {
    int piv = -1;
    for (int i = r; i < m; ++i)
      if (a[i][c] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(a[r], a[piv]);
    for (int i = 0; i < m; ++i) {
      if (i == r || a[i][c] == 0) continue;
      mpq_class f = a[i][c] / a[r][c];
      for (int j = 0; j < n; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

// x with x*G = v for G with independent rows; nullopt when v is outside the
// Q-span.
inline std::optional<QVec> solve_rows(const QMat& G, const QVec& v) {
  const int r = static_cast<int>(G.size());
  const int n = static_cast<int>(v.size());
  // Solve the transposed system G^T x = v by elimination on [G^T | v].
  QMat a(n, QVec(r + 1));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < r; ++i) a[j][i] = G[i][j];
    a[j][r] = v[j];
  }
  int row = 0;
  std::vector<int> pc;
  for (int c = 0; c < r && row < n; ++c) {
    int piv = -1;
    for (int i = row; i < n; ++i)
      if (a[i][c] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(a[row], a[piv]);
    mpq_class inv = 1 / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == row || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (int j = 0; j <= r; ++j) a[i][j] -= f * a[row][j];
    }
    pc.push_back(c);
    ++row;
  }
  for (int i = row; i < n; ++i)
    if (a[i][r] != 0) return std::nullopt;
  QVec x(r);
  for (int i = 0; i < row; ++i) x[pc[i]] = a[i][r];
  return x;
}

// Membership of v in the Z_(p)-span of independent rows G.
inline bool member(const QMat& G, const QVec& v, long p) {
  auto x = solve_rows(G, v);
  if (!x) return false;
  for (auto& c : *x)
    if (!p_integral(c, p)) return false;
  return true;
}

// Membership test for the Z_(p)-span of independent rows G, with the solve
// precomputed on a set of pivot columns.
struct Membership {
  QMat G;
  std::vector<int> cols;
  QMat inv;  // inverse of G restricted to cols
  long p;
  Membership(QMat g, long pr) : G(std::move(g)), p(pr) {
    const int r = static_cast<int>(G.size());
    if (!r) return;
    const int n = static_cast<int>(G[0].size());
    // choose pivot columns greedily
    for (int c = 0; c < n && static_cast<int>(cols.size()) < r; ++c) {
      QMat trial;
      for (const auto& row : G) {
        QVec sub;
        for (int cc : cols) sub.push_back(row[cc]);
        sub.push_back(row[c]);
        trial.push_back(sub);
      }
      if (rank_q(trial) == static_cast<int>(cols.size()) + 1) cols.push_back(c);
    }
    QMat S(r, QVec(r));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) S[i][j] = G[i][cols[j]];
    // invert S by Gauss-Jordan on [S | I]
    QMat aug(r, QVec(2 * r));
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) aug[i][j] = S[i][j];
      aug[i][r + i] = 1;
    }
    for (int c = 0; c < r; ++c) {
      int piv = c;
      while (aug[piv][c] == 0) ++piv;
      std::swap(aug[c], aug[piv]);
      mpq_class iv = 1 / aug[c][c];
      for (auto& x : aug[c]) x *= iv;
      for (int i = 0; i < r; ++i) {
        if (i == c || aug[i][c] == 0) continue;
        mpq_class f = aug[i][c];
        for (int j = 0; j < 2 * r; ++j) aug[i][j] -= f * aug[c][j];
      }
    }
    inv.assign(r, QVec(r));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) inv[i][j] = aug[i][r + j];
  }
  bool operator()(const QVec& v) const {
    const int r = static_cast<int>(G.size());
    if (!r) {
      for (auto& x : v)
        if (x != 0) return false;
      return true;
    }
    // x S = v_cols  =>  x = v_cols * S^{-1}
    QVec x(r);
    for (int j = 0; j < r; ++j) {
      mpq_class vj = v[cols[j]];
      if (vj == 0) continue;
      for (int i = 0; i < r; ++i) x[i] += vj * inv[j][i];
    }
    for (size_t c = 0; c < v.size(); ++c) {
      mpq_class s = 0;
      for (int i = 0; i < r; ++i) s += x[i] * G[i][c];
      if (s != v[c]) return false;
    }
    for (auto& c : x)
      if (!p_integral(c, p)) return false;
    return true;
  }
};

// Multiplication by x on Q[v]/phi_p in the power basis, computed with plain
// polynomial arithmetic.
inline QMat cyclo_mult_matrix(const QVec& x, int p) {
  const int w = p - 1;
  QMat m(w, QVec(w));
  for (int b = 0; b < w; ++b) {
    QVec prod(2 * w, 0);
    for (int i = 0; i < w; ++i) prod[i + b] += x[i];
    // reduce high powers using v^{p-1} = -(1 + ... + v^{p-2}), from the top
    for (int k = 2 * w - 1; k >= w; --k) {
      if (prod[k] == 0) continue;
      mpq_class c = prod[k];
      prod[k] = 0;
      for (int j = 0; j < w; ++j) prod[k - w + j] -= c;
    }
    for (int i = 0; i < w; ++i) m[b][i] = prod[i];
  }
  return m;
}

inline mpq_class det_q(QMat a) {
  const int n = static_cast<int>(a.size());
  mpq_class d = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (a[i][c] != 0) { piv = i; break; }
    if (piv < 0) return 0;
    if (piv != c) { std::swap(a[c], a[piv]); d = -d; }
    d *= a[c][c];
    for (int i = c + 1; i < n; ++i) {
      mpq_class f = a[i][c] / a[c][c];
      for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return d;
}

// v_pi(x) in Z_(p)[zeta] equals v_p of the norm, since p is totally ramified.
inline long cyclo_valuation(const QVec& x, int p) {
  return vp(det_q(cyclo_mult_matrix(x, p)), p);
}

}  // namespace oracle
