#include "grforge/quantum.hpp"

#include <map>

#include "grforge/fixtures.hpp"

namespace grforge {

namespace {

// Laurent polynomials in q over Z, exponent -> coefficient.
using LPoly = std::map<int, mpz_class>;

void add_to(LPoly& a, int e, const mpz_class& c) {
  auto& x = a[e];
  x += c;
  if (x == 0) a.erase(e);
}

LPoly lmul(const LPoly& a, const LPoly& b) {
  LPoly r;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) add_to(r, i + j, x * y);
  return r;
}

// [n] = q^{n-1} + q^{n-3} + ... + q^{1-n}
LPoly lqint(int n) {
  LPoly r;
  for (int k = 0; k < n; ++k) add_to(r, n - 1 - 2 * k, 1);
  return r;
}

LPoly lqfactorial(int n) {
  LPoly r{{0, 1}};
  for (int k = 2; k <= n; ++k) r = lmul(r, lqint(k));
  return r;
}

// a / b for monic b; throws unless exact.
LPoly ldivexact(LPoly a, const LPoly& b) {
  if (a.empty()) return a;
  const int bdeg = b.rbegin()->first, blow = b.begin()->first;
  const int qlow = a.begin()->first - blow;
  LPoly q;
  while (!a.empty()) {
    const int e = a.rbegin()->first - bdeg;
    if (e < qlow) break;
    const mpz_class c = a.rbegin()->second;
    if (c % b.rbegin()->second != 0) break;
    const mpz_class t = c / b.rbegin()->second;
    add_to(q, e, t);
    for (const auto& [j, y] : b) add_to(a, e + j, -t * y);
  }
  if (!a.empty()) throw std::logic_error("qschur: divided power is not integral");
  return q;
}

Scalar specialize(const RingSpec& rs, const LPoly& f) {
  Scalar s;
  for (const auto& [e, c] : f) s += Scalar::zeta_pow(rs, e) * Scalar(mpq_class(c));
  return s;
}

using TVec = std::map<int, LPoly>;  // tensor basis index -> coefficient

int sign_at(int t, int j) { return (t >> j & 1) ? -1 : 1; }  // K-eigenvalue exponent of v1 / v2

// E = sum_pos 1 x .. x E x K x .. x K, with E v2 = v1, K v1 = q v1, K v2 = q^-1 v2.
TVec apply_E(const TVec& v, int d) {
  TVec r;
  for (const auto& [t, f] : v)
    for (int pos = 0; pos < d; ++pos) {
      if (!(t >> pos & 1)) continue;
      int e = 0;
      for (int j = pos + 1; j < d; ++j) e += sign_at(t, j);
      auto& g = r[t & ~(1 << pos)];
      for (const auto& [k, c] : f) add_to(g, k + e, c);
    }
  for (auto it = r.begin(); it != r.end();) it = it->second.empty() ? r.erase(it) : std::next(it);
  return r;
}

// F = sum_pos K^-1 x .. x K^-1 x F x 1 x .. x 1, with F v1 = v2.
TVec apply_F(const TVec& v, int d) {
  TVec r;
  for (const auto& [t, f] : v)
    for (int pos = 0; pos < d; ++pos) {
      if (t >> pos & 1) continue;
      int e = 0;
      for (int j = 0; j < pos; ++j) e -= sign_at(t, j);
      auto& g = r[t | (1 << pos)];
      for (const auto& [k, c] : f) add_to(g, k + e, c);
    }
  for (auto it = r.begin(); it != r.end();) it = it->second.empty() ? r.erase(it) : std::next(it);
  return r;
}

TVec divided(TVec v, const LPoly& by) {
  for (auto& [t, f] : v) f = ldivexact(f, by);
  return v;
}

int ones(int t, int d) {  // number of v1 factors
  return d - __builtin_popcount(static_cast<unsigned>(t));
}

Vec<Scalar> flatten(const Mat<Scalar>& m) {
  Vec<Scalar> v;
  for (const auto& r : m) v.insert(v.end(), r.begin(), r.end());
  return v;
}

Mat<Scalar> matmul(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  const size_t n = a.size();
  Mat<Scalar> c(n, Vec<Scalar>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < n; ++j)
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

Mat<Scalar> unflatten(const Vec<Scalar>& v, int N) {
  Mat<Scalar> m(N, Vec<Scalar>(N));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) m[i][j] = v[static_cast<size_t>(i) * N + j];
  return m;
}

int mod(long a, int p) { return static_cast<int>(((a % p) + p) % p); }

}  // namespace

bool p_regular_sl2(long m, int p) { return mod(m + 1, p) != 0; }

QuantumFixture qschur(int n, int d, int p) {
  if (n != 2) throw std::invalid_argument("qschur: only n = 2 is supported");
  if (d < 1 || d > 6) throw std::invalid_argument("qschur: d must lie in 1..6");
  if (!is_odd_prime(p)) throw std::invalid_argument("qschur: p must be an odd prime");
  const RingSpec rs = cyclotomic_spec(p);
  const int N = 1 << d;
  auto weight_label = [&](int a) { return std::to_string(a) + "," + std::to_string(d - a); };

  // F^(a) 1_lambda E^(c), lambda counted by the number of v1 factors
  std::vector<Mat<Scalar>> gens;
  std::vector<std::string> names;
  for (int s = 0; s <= 2 * d; ++s)
    for (int lam = d; lam >= 0; --lam)
      for (int a = 0; a <= s; ++a) {
        const int c = s - a;
        if (a > lam || c > lam) continue;
        Mat<Scalar> M(N, Vec<Scalar>(N));
        bool nonzero = false;
        for (int t = 0; t < N; ++t) {
          if (ones(t, d) + c != lam) continue;
          TVec v{{t, LPoly{{0, 1}}}};
          for (int i = 0; i < c; ++i) v = apply_E(v, d);
          v = divided(v, lqfactorial(c));
          for (int i = 0; i < a; ++i) v = apply_F(v, d);
          v = divided(v, lqfactorial(a));
          for (const auto& [u, f] : v) {
            M[u][t] = specialize(rs, f);
            nonzero = nonzero || !M[u][t].is_zero();
          }
        }
        if (!nonzero) continue;
        gens.push_back(M);
        std::string nm;
        if (a) nm += "F" + std::to_string(a) + ".";
        nm += "1_" + weight_label(lam);
        if (c) nm += ".E" + std::to_string(c);
        names.push_back(nm);
      }

  Mat<Scalar> rows;
  for (const auto& g : gens) rows.push_back(flatten(g));
  std::vector<Mat<Scalar>> basis;
  std::vector<std::string> labels;
  {
    LatticeRep all = make_lattice(rs, rows, N * N);
    Mat<Scalar> chosen;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (!chosen.empty() && lattice_contains(rs, make_lattice(rs, chosen, N * N), rows[i])) continue;
      chosen.push_back(rows[i]);
      basis.push_back(gens[i]);
      labels.push_back(names[i]);
    }
    LatticeRep sel = make_lattice(rs, chosen, N * N);
    if (sel.rank() != static_cast<int>(chosen.size()) || !lattice_subset(rs, all, sel)) {
      basis.clear();
      labels.clear();
      for (int i = 0; i < all.rank(); ++i) {
        basis.push_back(unflatten(all.rows[i], N));
        labels.push_back("s" + std::to_string(i + 1));
      }
    }
  }

  StructureAlgebra A;
  for (int round = 0;; ++round) {
    try {
      A = algebra_from_matrices(rs, labels, basis);
      break;
    } catch (const std::invalid_argument&) {
      if (round > 2 * d) throw std::logic_error("qschur: spanning-set closure did not stabilize");
      Mat<Scalar> more;
      for (const auto& x : basis) {
        more.push_back(flatten(x));
        for (const auto& y : basis) more.push_back(flatten(matmul(x, y)));
      }
      LatticeRep L = make_lattice(rs, more, N * N);
      basis.clear();
      labels.clear();
      for (int i = 0; i < L.rank(); ++i) {
        basis.push_back(unflatten(L.rows[i], N));
        labels.push_back("s" + std::to_string(i + 1));
      }
    }
  }
  A.name = "qschur_2_" + std::to_string(d) + "_p" + std::to_string(p);

  Mat<Scalar> brows;
  for (const auto& b : basis) brows.push_back(flatten(b));
  RowSolver<DomK> solver(DomK{rs}, brows, N * N);
  WeightDatum W;
  QuantumFixture out;
  for (int a = d; a >= 0; --a) {
    Mat<Scalar> P(N, Vec<Scalar>(N));
    for (int t = 0; t < N; ++t)
      if (ones(t, d) == a) P[t][t] = Scalar(1);
    W.X.push_back(weight_label(a));
    W.idem.push_back(*solver.solve(flatten(P)));
    if (2 * a >= d) {
      W.Lambda.push_back(weight_label(a));
      if (a < d) W.less.emplace_back(weight_label(a), weight_label(a + 1));
      if (p_regular_sl2(2 * a - d, p)) out.regular.push_back(weight_label(a));
    }
  }
  W.close();
  A.weights = W;
  out.alg = std::move(A);
  out.note = "blocks not searched";
  return out;
}

QuantumFixture usl2(int p) {
  if (!is_odd_prime(p)) throw std::invalid_argument("usl2: p must be an odd prime");
  const RingSpec rs = cyclotomic_spec(p);
  const int n = p * p * p;
  auto idx = [p](int a, int m, int c) { return (a * p + m) * p + c; };

  // left multiplication by E, k_m and F on the basis F^a k_m E^c
  auto left_E = [&](const Vec<Scalar>& y) {
    Vec<Scalar> r(n);
    for (int a = 0; a < p; ++a)
      for (int m = 0; m < p; ++m)
        for (int c = 0; c < p; ++c) {
          const Scalar& x = y[idx(a, m, c)];
          if (x.is_zero()) continue;
          if (c + 1 < p) r[idx(a, mod(m + 2, p), c + 1)] += x;
          if (a >= 1) r[idx(a - 1, m, c)] += x * qint(rs, a) * qint(rs, m + 1 - a);
        }
    return r;
  };
  auto left_k = [&](int k, const Vec<Scalar>& y) {
    Vec<Scalar> r(n);
    for (int a = 0; a < p; ++a)
      for (int c = 0; c < p; ++c) {
        const int m = mod(k + 2 * a, p);
        r[idx(a, m, c)] = y[idx(a, m, c)];
      }
    return r;
  };
  auto left_F = [&](const Vec<Scalar>& y) {
    Vec<Scalar> r(n);
    for (int a = 0; a + 1 < p; ++a)
      for (int m = 0; m < p; ++m)
        for (int c = 0; c < p; ++c) r[idx(a + 1, m, c)] = y[idx(a, m, c)];
    return r;
  };

  StructureAlgebra A;
  A.rs = rs;
  A.name = "usl2_p" + std::to_string(p);
  A.alg.d = DomO{rs};
  A.alg.n = n;
  A.alg.unit.assign(n, Scalar());
  A.alg.sc.assign(static_cast<size_t>(n) * n, {});
  A.labels.resize(n);
  for (int a = 0; a < p; ++a)
    for (int m = 0; m < p; ++m)
      for (int c = 0; c < p; ++c) {
        std::string s;
        if (a) s += "F" + (a > 1 ? std::to_string(a) : std::string()) + ".";
        s += "k" + std::to_string(m);
        if (c) s += ".E" + (c > 1 ? std::to_string(c) : std::string());
        A.labels[idx(a, m, c)] = s;
      }
  for (int m = 0; m < p; ++m) A.alg.unit[idx(0, m, 0)] = Scalar(1);
  for (int a = 0; a < p; ++a)
    for (int m = 0; m < p; ++m)
      for (int c = 0; c < p; ++c)
        for (int j = 0; j < n; ++j) {
          Vec<Scalar> z(n);
          z[j] = Scalar(1);
          for (int t = 0; t < c; ++t) z = left_E(z);
          z = left_k(m, z);
          for (int t = 0; t < a; ++t) z = left_F(z);
          auto& row = A.alg.sc[static_cast<size_t>(idx(a, m, c)) * n + j];
          for (int k = 0; k < n; ++k)
            if (!z[k].is_zero()) row.emplace_back(k, z[k]);
        }

  QuantumFixture out;
  for (int m = 0; m < p; ++m)
    if (p_regular_sl2(m, p)) out.regular.push_back(std::to_string(m));

  // Casimir FE + sum_m kappa_m k_m, constant kappa_m on the block of m
  const Scalar z1 = Scalar::zeta_pow(rs, 1), zi = Scalar::zeta_pow(rs, -1);
  const Scalar den = ((z1 - zi) * (z1 - zi)).inverse();
  std::vector<Scalar> kappa(p);
  std::vector<Scalar> classes;
  std::vector<std::vector<std::string>> members;
  Vec<Scalar> C(n);
  for (int m = 0; m < p; ++m) {
    kappa[m] = (Scalar::zeta_pow(rs, m + 1) + Scalar::zeta_pow(rs, -m - 1)) * den;
    C[idx(0, m, 0)] = kappa[m];
    C[idx(1, m, 1)] = Scalar(1);
    size_t k = 0;
    while (k < classes.size() && classes[k] != kappa[m]) ++k;
    if (k == classes.size()) {
      classes.push_back(kappa[m]);
      members.emplace_back();
    }
    members[k].push_back(std::to_string(m));
  }
  const AlgK AK = to_K(A.alg);
  Vec<Scalar> total(n);
  for (size_t k = 0; k < classes.size(); ++k) {
    Vec<Scalar> e = AK.unit;
    for (size_t j = 0; j < classes.size(); ++j) {
      if (j == k) continue;
      Vec<Scalar> f = C;
      for (int i = 0; i < n; ++i) f[i] -= classes[j] * AK.unit[i];
      const Scalar s = (classes[k] - classes[j]).inverse();
      for (auto& x : f) x *= s;
      e = AK.mul(e, f);
    }
    for (int it = 0; it < 8; ++it) {
      const Vec<Scalar> e2 = AK.mul(e, e);
      if (e2 == e) break;
      const Vec<Scalar> e3 = AK.mul(e2, e);
      for (int i = 0; i < n; ++i) e[i] = Scalar(3) * e2[i] - Scalar(2) * e3[i];
    }
    if (AK.mul(e, e) != e) throw std::logic_error("usl2: block idempotent did not converge");
    for (int i = 0; i < n; ++i) total[i] += e[i];
    out.block_idempotents.push_back(e);
    out.block_weights.push_back(members[k]);
  }
  if (total != AK.unit) throw std::logic_error("usl2: block idempotents do not sum to 1");
  out.blocks_integral = true;
  for (const auto& e : out.block_idempotents)
    for (const auto& x : e) out.blocks_integral = out.blocks_integral && in_O(x, rs);
  out.note = out.blocks_integral ? "blocks defined over O" : "unblocked: block idempotents are not integral";
  out.alg = std::move(A);
  return out;
}

StructureAlgebra block_algebra(const QuantumFixture& Q, int k) {
  const StructureAlgebra& A = Q.alg;
  const RingSpec& rs = A.rs;
  const Vec<Scalar>& e = Q.block_idempotents.at(k);
  for (const auto& x : e)
    if (!in_O(x, rs)) throw std::invalid_argument("block_algebra: block idempotent is not integral");
  const int n = A.n();
  Mat<Scalar> gens;
  for (int i = 0; i < n; ++i) gens.push_back(A.alg.rmul_basis(e, i));
  const LatticeRep L = make_lattice(rs, gens, n);
  const int m = L.rank();
  RowSolver<DomK> solver(DomK{rs}, L.rows, n);
  StructureAlgebra B;
  B.rs = rs;
  B.name = A.name + "_block" + std::to_string(k);
  B.alg.d = DomO{rs};
  B.alg.n = m;
  B.alg.sc.assign(static_cast<size_t>(m) * m, {});
  for (int i = 0; i < m; ++i) {
    B.labels.push_back("b" + std::to_string(i + 1));
    for (int j = 0; j < m; ++j) {
      const auto c = solver.solve(A.alg.mul(L.rows[i], L.rows[j]));
      if (!c) throw std::logic_error("block_algebra: e A is not closed");
      for (int t = 0; t < m; ++t) {
        if ((*c)[t].is_zero()) continue;
        if (!in_O((*c)[t], rs)) throw std::logic_error("block_algebra: e A is not an O-order");
        B.alg.sc[static_cast<size_t>(i) * m + j].emplace_back(t, (*c)[t]);
      }
    }
  }
  B.alg.unit = *solver.solve(e);
  return B;
}

}  // namespace grforge
