#include "grforge/algebra.hpp"

#include <algorithm>
#include <set>

namespace grforge {

AlgK to_K(const AlgO& a) {
  AlgK r;
  r.d = DomK{a.d.rs};
  r.n = a.n;
  r.unit = a.unit;
  r.sc = a.sc;
  return r;
}

AlgF to_k(const AlgO& a) {
  AlgF r;
  r.d = DomF{a.d.rs.p};
  r.n = a.n;
  r.unit = reduce_vec(a.unit, a.d.rs);
  r.sc.resize(a.sc.size());
  for (size_t i = 0; i < a.sc.size(); ++i)
    for (const auto& [k, v] : a.sc[i]) {
      uint32_t x = residue(v, a.d.rs);
      if (x) r.sc[i].emplace_back(k, x);
    }
  return r;
}

// ---------------------------------------------------------------- weights

int WeightDatum::x_index(const std::string& s) const {
  auto it = std::find(X.begin(), X.end(), s);
  return it == X.end() ? -1 : static_cast<int>(it - X.begin());
}

int WeightDatum::lambda_index(const std::string& s) const {
  auto it = std::find(Lambda.begin(), Lambda.end(), s);
  return it == Lambda.end() ? -1 : static_cast<int>(it - Lambda.begin());
}

void WeightDatum::close() {
  const size_t m = Lambda.size();
  order.assign(m, std::vector<bool>(m, false));
  for (const auto& [a, b] : less) {
    int i = lambda_index(a), j = lambda_index(b);
    if (i >= 0 && j >= 0) order[i][j] = true;
  }
  for (size_t k = 0; k < m; ++k)
    for (size_t i = 0; i < m; ++i)
      if (order[i][k])
        for (size_t j = 0; j < m; ++j)
          if (order[k][j]) order[i][j] = true;
}

bool WeightDatum::lt(const std::string& a, const std::string& b) const {
  int i = lambda_index(a), j = lambda_index(b);
  if (i < 0 || j < 0) return false;
  return order[i][j];
}

std::vector<std::string> WeightDatum::maximal(const std::vector<std::string>& among) const {
  std::vector<std::string> out;
  for (const auto& a : among) {
    bool top = true;
    for (const auto& b : among)
      if (lt(a, b)) { top = false; break; }
    if (top) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> WeightDatum::top_down() const {
  std::vector<std::string> rest = Lambda, out;
  while (!rest.empty()) {
    auto mx = maximal(rest);
    out.push_back(mx.front());
    rest.erase(std::find(rest.begin(), rest.end(), mx.front()));
  }
  return out;
}

bool WeightDatum::is_ideal(const std::vector<std::string>& gamma) const {
  for (const auto& g : gamma) {
    if (!in_lambda(g)) return false;
    for (const auto& l : Lambda)
      if (lt(l, g) && std::find(gamma.begin(), gamma.end(), l) == gamma.end()) return false;
  }
  return true;
}

std::vector<std::string> WeightDatum::down_set(const std::string& l) const {
  std::vector<std::string> out;
  for (const auto& m : Lambda)
    if (leq(m, l)) out.push_back(m);
  return out;
}

// ---------------------------------------------------------------- validation

std::vector<std::string> validate_weights(const StructureAlgebra& A, const WeightDatum& W,
                                          bool require_integral) {
  std::vector<std::string> err;
  const auto& a = A.alg;
  DomK k{A.rs};
  if (W.idem.size() != W.X.size()) err.push_back("weights: idempotent count differs from |X|");
  std::set<std::string> xs(W.X.begin(), W.X.end());
  if (xs.size() != W.X.size()) err.push_back("weights: duplicate labels in X");
  for (const auto& l : W.Lambda)
    if (!xs.count(l)) err.push_back("weights: Lambda label '" + l + "' not in X");
  for (const auto& [x, y] : W.less)
    if (!W.in_lambda(x) || !W.in_lambda(y))
      err.push_back("weights: poset relation " + x + " < " + y + " outside Lambda");
  for (size_t i = 0; i < W.Lambda.size(); ++i)
    if (W.order.size() == W.Lambda.size() && W.order[i][i])
      err.push_back("weights: poset has a cycle through '" + W.Lambda[i] + "'");
  if (!err.empty()) return err;
  Vec<Scalar> sum(a.n);
  for (size_t i = 0; i < W.X.size(); ++i) {
    const auto& e = W.idem[i];
    if (static_cast<int>(e.size()) != a.n) {
      err.push_back("weights: idempotent '" + W.X[i] + "' has wrong length");
      continue;
    }
    if (require_integral)
      for (const auto& x : e)
        if (!in_O(x, A.rs)) {
          err.push_back("weights: idempotent '" + W.X[i] + "' has a coefficient outside O");
          break;
        }
    for (int t = 0; t < a.n; ++t) sum[t] += e[t];
    if (to_K(a).mul(e, e) != e) err.push_back("weights: e_" + W.X[i] + " is not idempotent");
    for (size_t j = 0; j < W.X.size(); ++j) {
      if (i == j || W.idem[j].size() != e.size()) continue;
      if (!vec_is_zero(k, to_K(a).mul(e, W.idem[j])))
        err.push_back("weights: e_" + W.X[i] + " e_" + W.X[j] + " != 0");
    }
  }
  if (err.empty() && sum != a.unit) err.push_back("weights: idempotents do not sum to 1");
  return err;
}

std::vector<std::string> validate_algebra(const StructureAlgebra& A) {
  std::vector<std::string> err;
  const auto& a = A.alg;
  if (a.n < 1) err.push_back("rank must be at least 1");
  if (static_cast<int>(A.labels.size()) != a.n) err.push_back("basis label count differs from rank");
  std::set<std::string> ls(A.labels.begin(), A.labels.end());
  if (ls.size() != A.labels.size()) err.push_back("duplicate basis labels");
  if (static_cast<int>(a.unit.size()) != a.n) err.push_back("unit vector has wrong length");
  if (a.sc.size() != static_cast<size_t>(a.n) * a.n) err.push_back("structure table has wrong size");
  if (!err.empty()) return err;
  for (const auto& x : a.unit)
    if (!in_O(x, A.rs)) { err.push_back("unit vector has a coefficient outside O"); break; }
  bool outside = false;
  for (const auto& row : a.sc)
    for (const auto& [kk, v] : row) {
      if (kk < 0 || kk >= a.n) err.push_back("structure constant index out of range");
      if (!in_O(v, A.rs)) outside = true;
    }
  if (outside) err.push_back("structure constant outside O");
  if (!err.empty()) return err;
  auto ak = to_K(a);
  std::string w;
  if (!is_associative(ak, &w)) err.push_back("associativity fails: " + w);
  for (int i = 0; i < a.n; ++i) {
    auto bi = ak.basis(i);
    if (ak.mul(ak.unit, bi) != bi || ak.mul(bi, ak.unit) != bi) {
      err.push_back("unit is not a two-sided identity at basis element " + A.labels[i]);
      break;
    }
  }
  if (A.weights) {
    auto we = validate_weights(A, *A.weights, true);
    err.insert(err.end(), we.begin(), we.end());
  }
  if (A.weights_K) {
    auto we = validate_weights(A, *A.weights_K, false);
    for (auto& e : we) err.push_back("K-level " + e);
  }
  return err;
}

// ---------------------------------------------------------------- radicals

static Mat<Scalar> trace_form(const AlgK& a) {
  Vec<Scalar> t(a.n);
  for (int k = 0; k < a.n; ++k)
    for (int j = 0; j < a.n; ++j)
      for (const auto& [c, v] : a.prod(k, j))
        if (c == j) t[k] += v;
  Mat<Scalar> T(a.n, Vec<Scalar>(a.n));
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j)
      for (const auto& [c, v] : a.prod(i, j))
        if (!t[c].is_zero()) T[i][j] += v * t[c];
  return T;
}

Span<DomK> radical_field(const AlgK& a) {
  return left_kernel(a.d, trace_form(a), a.n, a.n);
}

namespace {

using U64 = uint64_t;
using IMat = std::vector<std::vector<U64>>;

IMat imul(const IMat& A, const IMat& B, U64 m) {
  const size_t n = A.size();
  IMat C(n, std::vector<U64>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      U64 a = A[i][k];
      if (!a) continue;
      const auto& bk = B[k];
      auto& ci = C[i];
      for (size_t j = 0; j < n; ++j) ci[j] += a * bk[j];
      if ((k & 7) == 7)
        for (size_t j = 0; j < n; ++j) ci[j] %= m;
    }
  for (auto& r : C)
    for (auto& x : r) x %= m;
  return C;
}

U64 trace_pow(IMat M, U64 e, U64 m) {
  const size_t n = M.size();
  IMat R(n, std::vector<U64>(n, 0));
  for (size_t i = 0; i < n; ++i) R[i][i] = 1 % m;
  while (e) {
    if (e & 1) R = imul(R, M, m);
    e >>= 1;
    if (e) M = imul(M, M, m);
  }
  U64 t = 0;
  for (size_t i = 0; i < n; ++i) t = (t + R[i][i]) % m;
  return t;
}

}  // namespace

Span<DomF> radical_field(const AlgF& a) {
  const int n = a.n;
  const int p = a.d.p;
  const DomF& f = a.d;
  int l = 0;
  for (long q = p; q <= n; q *= p) ++l;
  std::vector<Mat<uint32_t>> L(n);
  for (int k = 0; k < n; ++k) L[k] = a.left_matrix(a.basis(k));
  auto lmat = [&](const Vec<uint32_t>& x) {
    IMat M(n, std::vector<U64>(n, 0));
    for (int k = 0; k < n; ++k) {
      if (!x[k]) continue;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (L[k][i][j]) M[i][j] = (M[i][j] + static_cast<U64>(x[k]) * L[k][i][j]) % p;
    }
    return M;
  };
  // I_0: kernel of the trace form
  Vec<uint32_t> t(n, 0);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) t[k] = f.add(t[k], L[k][j][j]);
  Mat<uint32_t> T(n, Vec<uint32_t>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& [c, v] : a.prod(i, j)) T[i][j] = f.add(T[i][j], f.mul(v, t[c]));
  auto I = left_kernel(f, T, n, n);
  U64 pi = 1;
  for (int i = 1; i <= l && I.rank() > 0; ++i) {
    pi *= p;
    const U64 mod = pi * p;
    const int r = I.rank();
    Mat<uint32_t> G(r, Vec<uint32_t>(n, 0));
    for (int s = 0; s < r; ++s)
      for (int j = 0; j < n; ++j) {
        auto x = a.rmul_basis(I.rows[s], j);
        if (vec_is_zero(f, x)) continue;
        U64 tr = trace_pow(lmat(x), pi, mod);
        if (tr % pi != 0) throw std::logic_error("radical: p-power trace not divisible");
        G[s][j] = static_cast<uint32_t>(tr / pi);
      }
    auto ker = left_kernel(f, G, r, n);
    Mat<uint32_t> rows;
    for (const auto& c : ker.rows) {
      Vec<uint32_t> v(n, 0);
      for (int s = 0; s < r; ++s)
        if (c[s]) axpy(f, v, f.neg(c[s]), I.rows[s]);
      rows.push_back(v);
    }
    I = echelon(f, std::move(rows), n);
  }
  return I;
}

template <class D, class Alg>
static RadicalCheck check_radical_impl(const Alg& a, const Span<D>& J) {
  RadicalCheck rc;
  try {
    auto pw = radical_powers(a, J);
    rc.nilpotent = true;
    rc.nilpotency = static_cast<int>(pw.size()) - 1;
  } catch (const std::logic_error&) {
    rc.nilpotent = false;
  }
  // J must be a two-sided ideal for the quotient test
  for (int i = 0; i < a.n && rc.nilpotent; ++i)
    for (const auto& x : J.rows) {
      if (!in_span(a.d, J, a.lmul_basis(i, x)) || !in_span(a.d, J, a.rmul_basis(x, i))) {
        rc.nilpotent = false;
        break;
      }
    }
  if (!rc.nilpotent) return rc;
  auto q = quotient_algebra(a, J);
  rc.quotient_semisimple = radical_field(q.alg).rank() == 0;
  return rc;
}

RadicalCheck check_radical(const AlgK& a, const Span<DomK>& J) { return check_radical_impl<DomK>(a, J); }
RadicalCheck check_radical(const AlgF& a, const Span<DomF>& J) { return check_radical_impl<DomF>(a, J); }

// ---------------------------------------------------------------- forced grading

std::vector<LatticeRep> radical_filtration(const StructureAlgebra& A) {
  auto ak = to_K(A.alg);
  auto rad = radical_field(ak);
  auto pw = radical_powers(ak, rad);
  std::vector<LatticeRep> out;
  for (const auto& s : pw) out.push_back(saturate(A.rs, s.rows, A.n()));
  return out;
}

LatticeRep radical_power_lattice(const StructureAlgebra& A, int n) {
  auto f = radical_filtration(A);
  if (n < 0) throw std::invalid_argument("negative radical power");
  if (n >= static_cast<int>(f.size())) return zero_span<DomO>(A.n());
  return f[n];
}

bool respects_grading(const AlgO& a, const std::vector<int>& grade) {
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j)
      for (const auto& [k, v] : a.prod(i, j))
        if (grade[k] != grade[i] + grade[j]) return false;
  return true;
}

Vec<Scalar> adapted_coords(const GradedAlgebra& G, const Vec<Scalar>& x) {
  auto inv = mat_inverse(DomO{G.alg.rs}, G.lifts, G.alg.n());
  return vec_mat(DomO{G.alg.rs}, x, *inv, G.alg.n());
}

static std::string lift_label(const StructureAlgebra& A, const Vec<Scalar>& v, int grade, int idx) {
  int nz = -1;
  for (int j = 0; j < A.n(); ++j) {
    if (v[j].is_zero()) continue;
    if (nz >= 0) { nz = -2; break; }
    nz = j;
  }
  if (nz >= 0 && v[nz].is_one()) return "[" + A.labels[nz] + "]";
  return "g" + std::to_string(grade) + "." + std::to_string(idx);
}

GradedAlgebra gr_algebra(const StructureAlgebra& A) {
  const RingSpec& rs = A.rs;
  DomO o{rs};
  auto F = radical_filtration(A);
  const int L = static_cast<int>(F.size()) - 1;  // F[L] = 0
  GradedAlgebra G;
  std::vector<Mat<Scalar>> layer(L);
  for (int m = L - 1; m >= 0; --m) layer[m] = complement_in(rs, F[m], F[m + 1]);
  G.alg.rs = rs;
  G.alg.name = A.name.empty() ? "gr" : "gr(" + A.name + ")";
  for (int m = 0; m < L; ++m) {
    G.grade_ranks.push_back(static_cast<int>(layer[m].size()));
    for (size_t i = 0; i < layer[m].size(); ++i) {
      G.lifts.push_back(layer[m][i]);
      G.grade.push_back(m);
      G.alg.labels.push_back(lift_label(A, layer[m][i], m, static_cast<int>(i)));
    }
  }
  const int n = A.n();
  auto inv = mat_inverse(o, G.lifts, n);
  if (!inv) throw std::logic_error("gr_algebra: adapted lifts do not form a basis");
  auto trunc = [&](const Vec<Scalar>& x, int s) {
    auto c = vec_mat(o, x, *inv, n);
    for (int k = 0; k < n; ++k) {
      if (c[k].is_zero()) continue;
      if (G.grade[k] < s) throw std::logic_error("gr_algebra: product below its filtration degree");
      if (G.grade[k] > s) c[k] = Scalar();
    }
    return c;
  };
  AlgO& g = G.alg.alg;
  g.d = o;
  g.n = n;
  g.sc.assign(static_cast<size_t>(n) * n, {});
  auto ak = A.alg;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int s = G.grade[i] + G.grade[j];
      auto& row = g.sc[static_cast<size_t>(i) * n + j];
      if (s >= L) continue;
      auto c = trunc(ak.mul(G.lifts[i], G.lifts[j]), s);
      for (int k = 0; k < n; ++k)
        if (!c[k].is_zero()) row.emplace_back(k, c[k]);
    }
  g.unit = trunc(A.alg.unit, 0);
  if (A.weights) {
    WeightDatum W = *A.weights;
    for (auto& e : W.idem) e = trunc(e, 0);
    W.close();
    G.alg.weights = W;
  }
  return G;
}

Vec<Scalar> symbol(const GradedAlgebra& G, const Vec<Scalar>& x, int s) {
  auto c = adapted_coords(G, x);
  for (int k = 0; k < G.alg.n(); ++k) {
    if (c[k].is_zero()) continue;
    if (G.grade[k] < s) throw std::invalid_argument("symbol: element below the given degree");
    if (G.grade[k] > s) c[k] = Scalar();
  }
  return c;
}

// ---------------------------------------------------------------- Morita

StructureAlgebra morita_reduce(const StructureAlgebra& B) {
  if (!B.weights) throw std::invalid_argument("morita_reduce: missing weight datum");
  const auto& W = *B.weights;
  DomO o{B.rs};
  auto ak = to_K(B.alg);
  Vec<Scalar> e(B.n());
  for (const auto& l : W.Lambda) {
    const auto& el = W.e(l);
    if (vec_is_zero(o, el)) throw std::invalid_argument("morita_reduce: e_" + l + " = 0");
    for (int t = 0; t < B.n(); ++t) e[t] += el[t];
  }
  Mat<Scalar> rows;
  for (int i = 0; i < B.n(); ++i) {
    auto v = ak.mul(ak.mul(e, ak.basis(i)), e);
    if (!vec_is_zero(o, v)) rows.push_back(v);
  }
  auto S = echelon(o, std::move(rows), B.n());
  auto sub = subalgebra(B.alg, S);
  // eBe has identity e rather than 1; build it directly
  StructureAlgebra R;
  R.rs = B.rs;
  R.name = B.name.empty() ? "reduced" : B.name + "/reduced";
  AlgO& r = R.alg;
  r.d = o;
  r.n = S.rank();
  r.sc.assign(static_cast<size_t>(r.n) * r.n, {});
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j) {
      auto c = coords(o, S, ak.mul(S.rows[i], S.rows[j]));
      auto& row = r.sc[static_cast<size_t>(i) * r.n + j];
      for (int k = 0; k < r.n; ++k)
        if (!(*c)[k].is_zero()) row.emplace_back(k, (*c)[k]);
    }
  r.unit = *coords(o, S, e);
  for (int i = 0; i < r.n; ++i) R.labels.push_back(lift_label(B, S.rows[i], 0, i));
  for (auto& l : R.labels)
    if (l.front() == '[') l = l.substr(1, l.size() - 2);
  WeightDatum RW;
  RW.X = W.Lambda;
  RW.Lambda = W.Lambda;
  RW.less = W.less;
  for (const auto& l : W.Lambda) RW.idem.push_back(*coords(o, S, W.e(l)));
  RW.close();
  R.weights = RW;
  (void)sub;
  return R;
}

// ---------------------------------------------------------------- Wedderburn

std::optional<Span<DomK>> wedderburn_complement(const AlgK& a, const Span<DomK>* contain) {
  const DomK& d = a.d;
  const int n = a.n;
  auto R = radical_field(a);
  if (R.rank() == 0) return full_span(d, n);
  auto pw = radical_powers(a, R);  // pw[t] = R^t, last = 0
  const int L = static_cast<int>(pw.size()) - 1;
  // quotient basis lifts: the given complement first, then standard vectors
  Mat<Scalar> sigma;
  int fixed = 0;
  if (contain) {
    sigma = contain->rows;
    fixed = contain->rank();
  }
  {
    Mat<Scalar> rows = R.rows;
    rows.insert(rows.end(), sigma.begin(), sigma.end());
    auto span = echelon(d, rows, n);
    if (span.rank() != R.rank() + fixed) return std::nullopt;
    for (int j : std_completion(d, span)) sigma.push_back(a.basis(j));
  }
  const int m = static_cast<int>(sigma.size());
  for (int t = 1; t < L; ++t) {
    // basis of A adapted to R^{t+1} subset R^t: [R^{t+1}; W_t; sigma; rest]
    auto Wt = relative_complement(d, pw[t], pw[t + 1]);
    const int r = static_cast<int>(Wt.size());
    Mat<Scalar> Bt = pw[t + 1].rows;
    Bt.insert(Bt.end(), Wt.begin(), Wt.end());
    RowSolver<DomK> layer(d, Bt, n);
    const int off = pw[t + 1].rank();
    auto mod_next = [&](const Vec<Scalar>& v) {
      auto x = layer.solve(v);
      if (!x) throw std::logic_error("wedderburn: element not in R^t");
      return Vec<Scalar>(x->begin() + off, x->end());
    };
    Mat<Scalar> full = R.rows;
    full.insert(full.end(), sigma.begin(), sigma.end());
    RowSolver<DomK> quo(d, full, n);
    auto mu = [&](const Vec<Scalar>& v) {
      auto x = quo.solve(v);
      return Vec<Scalar>(x->begin() + R.rank(), x->end());
    };
    // unknowns T[c][u], c in [fixed, m), u in [0, r)
    const int nu = (m - fixed) * r;
    if (nu == 0) continue;
    auto uidx = [&](int c, int u) { return (c - fixed) * r + u; };
    Mat<Scalar> M(nu, Vec<Scalar>(static_cast<size_t>(m) * m * r));
    Vec<Scalar> rhs(static_cast<size_t>(m) * m * r);
    std::vector<Mat<Scalar>> left(m), right(m);
    for (int x = 0; x < m; ++x) {
      for (int u = 0; u < r; ++u) {
        left[x].push_back(mod_next(a.mul(sigma[x], Wt[u])));
        right[x].push_back(mod_next(a.mul(Wt[u], sigma[x])));
      }
    }
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) {
        auto sxy = a.mul(sigma[x], sigma[y]);
        auto coef = mu(sxy);
        Vec<Scalar> delta = sxy;
        for (int c = 0; c < m; ++c)
          if (!coef[c].is_zero()) axpy(d, delta, coef[c], sigma[c]);
        auto dl = mod_next(delta);
        const size_t base = (static_cast<size_t>(x) * m + y) * r;
        for (int w = 0; w < r; ++w) rhs[base + w] = -dl[w];
        for (int u = 0; u < r; ++u)
          for (int w = 0; w < r; ++w) {
            if (y >= fixed) M[uidx(y, u)][base + w] += left[x][u][w];
            if (x >= fixed) M[uidx(x, u)][base + w] += right[y][u][w];
          }
        for (int c = fixed; c < m; ++c)
          if (!coef[c].is_zero())
            for (int u = 0; u < r; ++u) M[uidx(c, u)][base + u] -= coef[c];
      }
    auto sol = solve_left(d, M, static_cast<int>(rhs.size()), rhs);
    if (!sol) return std::nullopt;
    for (int c = fixed; c < m; ++c)
      for (int u = 0; u < r; ++u) {
        const auto& v = (*sol)[uidx(c, u)];
        if (v.is_zero()) continue;
        for (int j = 0; j < n; ++j) sigma[c][j] += v * Wt[u][j];
      }
  }
  auto S = echelon(d, sigma, n);
  auto sub = subalgebra(a, S);
  if (!sub || S.rank() + R.rank() != n) return std::nullopt;
  if (radical_field(*sub).rank() != 0) return std::nullopt;
  return S;
}

SubalgebraRadicalReport subalgebra_radical_check(const AlgK& A, const Span<DomK>& a,
                                                 const Span<DomK>& b) {
  SubalgebraRadicalReport r;
  const DomK& d = A.d;
  auto sa = subalgebra(A, a), sb = subalgebra(A, b);
  r.closed = sa && sb && is_subspan(d, a, b);
  if (!r.closed) return r;
  auto radA = radical_field(A);
  auto embed = [&](const Span<DomK>& base, const Span<DomK>& inner) {
    Mat<Scalar> rows;
    for (const auto& c : inner.rows) {
      Vec<Scalar> v(A.n);
      for (int i = 0; i < base.rank(); ++i)
        if (!c[i].is_zero()) for (int j = 0; j < A.n; ++j) v[j] += c[i] * base.rows[i][j];
      rows.push_back(v);
    }
    return echelon(d, std::move(rows), A.n);
  };
  auto radb = embed(b, radical_field(*sb));
  auto rada = embed(a, radical_field(*sa));
  auto b_cap = span_intersect(d, b, radA);
  auto a_cap = span_intersect(d, a, radA);
  auto a_capb = span_intersect(d, a, radb);
  r.rad_a = rada.rank();
  r.rad_b = radb.rank();
  r.b_cap_radA = b_cap.rank();
  r.a_cap_radA = a_cap.rank();
  r.a_cap_radb = a_capb.rank();
  r.b_equality = b_cap == radb;
  r.a_equality = a_cap == a_capb && a_capb == rada;
  return r;
}

}  // namespace grforge
