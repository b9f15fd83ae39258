#include "grforge/fixtures.hpp"

#include <random>
#include <set>

namespace grforge {

namespace {

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

Mat<Scalar> unit_matrix(int n, int i, int j) {
  Mat<Scalar> m(n, Vec<Scalar>(n));
  m[i][j] = Scalar(1);
  return m;
}

void set_sc(AlgO& a, int i, int j, int k, const Scalar& v) {
  auto& row = a.sc[static_cast<size_t>(i) * a.n + j];
  for (auto& [kk, c] : row)
    if (kk == k) {
      c += v;
      return;
    }
  row.emplace_back(k, v);
}

StructureAlgebra blank(const RingSpec& rs, int n, std::string name) {
  StructureAlgebra A;
  A.rs = rs;
  A.name = std::move(name);
  A.alg.d = DomO{rs};
  A.alg.n = n;
  A.alg.unit.assign(n, Scalar());
  A.alg.sc.assign(static_cast<size_t>(n) * n, {});
  return A;
}

std::string lift_label_plain(const StructureAlgebra& a, const Vec<Scalar>& v) {
  int nz = -1;
  for (int j = 0; j < a.n(); ++j) {
    if (v[j].is_zero()) continue;
    if (nz >= 0) return "v";
    nz = j;
  }
  if (nz >= 0 && v[nz].is_one()) return a.labels[nz];
  return "v";
}

}  // namespace

StructureAlgebra algebra_from_matrices(const RingSpec& rs, std::vector<std::string> labels,
                                       const std::vector<Mat<Scalar>>& mats) {
  const int n = static_cast<int>(mats.size());
  const int N = n ? static_cast<int>(mats[0].size()) : 0;
  DomK k{rs};
  Mat<Scalar> rows;
  for (const auto& m : mats) rows.push_back(flatten(m));
  RowSolver<DomK> solver(k, rows, N * N);
  StructureAlgebra A = blank(rs, n, "");
  A.labels = std::move(labels);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto c = solver.solve(flatten(matmul(mats[i], mats[j])));
      if (!c) throw std::invalid_argument("algebra_from_matrices: span not closed");
      for (int t = 0; t < n; ++t) {
        if ((*c)[t].is_zero()) continue;
        if (!in_O((*c)[t], rs)) throw std::invalid_argument("algebra_from_matrices: lattice not closed");
        set_sc(A.alg, i, j, t, (*c)[t]);
      }
    }
  Mat<Scalar> id(N, Vec<Scalar>(N));
  for (int i = 0; i < N; ++i) id[i][i] = Scalar(1);
  auto u = solver.solve(flatten(id));
  if (!u) throw std::invalid_argument("algebra_from_matrices: identity not in span");
  A.alg.unit = *u;
  return A;
}

StructureAlgebra zigzag5(const RingSpec& rs, const Scalar& beta_scale) {
  StructureAlgebra A = blank(rs, 5, beta_scale.is_one() ? "z5" : "z5s");
  A.labels = {"e1", "e2", "alpha", beta_scale.is_one() ? "beta" : "beta'", "gamma"};
  enum { E1, E2, AL, BE, GA };
  auto& a = A.alg;
  set_sc(a, E1, E1, E1, 1);
  set_sc(a, E2, E2, E2, 1);
  // alpha = e2 alpha e1, beta = e1 beta e2, gamma = e1 gamma e1
  set_sc(a, E2, AL, AL, 1);
  set_sc(a, AL, E1, AL, 1);
  set_sc(a, E1, BE, BE, 1);
  set_sc(a, BE, E2, BE, 1);
  set_sc(a, E1, GA, GA, 1);
  set_sc(a, GA, E1, GA, 1);
  set_sc(a, BE, AL, GA, beta_scale);
  a.unit = {Scalar(1), Scalar(1), Scalar(), Scalar(), Scalar()};
  WeightDatum W;
  W.X = {"1", "2"};
  W.Lambda = {"1", "2"};
  W.less = {{"1", "2"}};
  W.idem = {a.basis(E1), a.basis(E2)};
  W.close();
  A.weights = W;
  return A;
}

StructureAlgebra matrix_algebra(const RingSpec& rs, int n) {
  std::vector<Mat<Scalar>> mats;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      mats.push_back(unit_matrix(n, i, j));
      labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  auto A = algebra_from_matrices(rs, labels, mats);
  A.name = "M" + std::to_string(n);
  WeightDatum W;
  for (int i = 0; i < n; ++i) {
    W.X.push_back(std::to_string(i + 1));
    W.idem.push_back(A.alg.basis(i * n + i));
  }
  W.Lambda = {"1"};
  W.close();
  A.weights = W;
  return A;
}

StructureAlgebra upper_triangular(const RingSpec& rs, int n) {
  std::vector<Mat<Scalar>> mats;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      mats.push_back(unit_matrix(n, i, j));
      labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  auto A = algebra_from_matrices(rs, labels, mats);
  A.name = "T" + std::to_string(n);
  WeightDatum W;
  int k = 0;
  for (int i = 0; i < n; ++i) {
    W.X.push_back(std::to_string(i + 1));
    W.idem.push_back(A.alg.basis(k));
    if (i) W.less.emplace_back(std::to_string(i), std::to_string(i + 1));
    k += n - i;
  }
  W.Lambda = W.X;
  W.close();
  A.weights = W;
  return A;
}

StructureAlgebra truncated_polynomial(const RingSpec& rs, int n) {
  StructureAlgebra A = blank(rs, n, "O[x]/x^" + std::to_string(n));
  for (int i = 0; i < n; ++i) {
    A.labels.push_back(i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i));
    for (int j = 0; i + j < n; ++j) set_sc(A.alg, i, j, i + j, 1);
  }
  A.alg.unit[0] = Scalar(1);
  return A;
}

StructureAlgebra rank_one(const RingSpec& rs) {
  StructureAlgebra A = blank(rs, 1, "O");
  A.labels = {"1"};
  set_sc(A.alg, 0, 0, 0, 1);
  A.alg.unit[0] = Scalar(1);
  WeightDatum W;
  W.X = {"*"};
  W.Lambda = {"*"};
  W.idem = {A.alg.unit};
  W.close();
  A.weights = W;
  return A;
}

StructureAlgebra direct_product(const StructureAlgebra& a, const StructureAlgebra& b) {
  const int na = a.n(), nb = b.n();
  StructureAlgebra C = blank(a.rs, na + nb, a.name + "+" + b.name);
  for (const auto& l : a.labels) C.labels.push_back("a:" + l);
  for (const auto& l : b.labels) C.labels.push_back("b:" + l);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j)
      for (const auto& [k, v] : a.alg.prod(i, j)) set_sc(C.alg, i, j, k, v);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j)
      for (const auto& [k, v] : b.alg.prod(i, j)) set_sc(C.alg, na + i, na + j, na + k, v);
  for (int i = 0; i < na; ++i) C.alg.unit[i] = a.alg.unit[i];
  for (int i = 0; i < nb; ++i) C.alg.unit[na + i] = b.alg.unit[i];
  if (a.weights && b.weights) {
    WeightDatum W;
    auto add = [&](const WeightDatum& w, const std::string& pre, int off, int len) {
      for (size_t i = 0; i < w.X.size(); ++i) {
        W.X.push_back(pre + w.X[i]);
        Vec<Scalar> e(na + nb);
        for (int t = 0; t < len; ++t) e[off + t] = w.idem[i][t];
        W.idem.push_back(e);
      }
      for (const auto& l : w.Lambda) W.Lambda.push_back(pre + l);
      for (const auto& [x, y] : w.less) W.less.emplace_back(pre + x, pre + y);
    };
    add(*a.weights, "a:", 0, na);
    add(*b.weights, "b:", na, nb);
    W.close();
    C.weights = W;
  }
  return C;
}

StructureAlgebra inflate(const StructureAlgebra& a, const std::string& nu, int copies) {
  if (!a.weights) throw std::invalid_argument("inflate: algebra has no weight datum");
  const auto& W = *a.weights;
  if (W.x_index(nu) < 0) throw std::invalid_argument("inflate: unknown weight " + nu);
  if (copies < 1) throw std::invalid_argument("inflate: copies must be positive");
  const RingSpec& rs = a.rs;
  DomO o{rs};
  auto ak = to_K(a.alg);
  // slots: one per weight, `copies` for nu
  std::vector<int> slot_weight;
  std::vector<std::string> slot_label;
  for (size_t i = 0; i < W.X.size(); ++i) {
    int c = W.X[i] == nu ? copies : 1;
    for (int t = 0; t < c; ++t) {
      slot_weight.push_back(static_cast<int>(i));
      slot_label.push_back(t == 0 ? W.X[i] : W.X[i] + "@" + std::to_string(t + 1));
    }
  }
  const int S = static_cast<int>(slot_weight.size());
  // corner lattices e_x A e_y
  std::map<std::pair<int, int>, Span<DomO>> corner;
  for (size_t x = 0; x < W.X.size(); ++x)
    for (size_t y = 0; y < W.X.size(); ++y) {
      Mat<Scalar> rows;
      for (int i = 0; i < a.n(); ++i) {
        auto v = ak.mul(ak.mul(W.idem[x], ak.basis(i)), W.idem[y]);
        if (!vec_is_zero(o, v)) rows.push_back(v);
      }
      corner[{static_cast<int>(x), static_cast<int>(y)}] = echelon(o, std::move(rows), a.n());
    }
  struct Elem { int i, j, t; };
  std::vector<Elem> basis;
  std::map<std::tuple<int, int, int>, int> index;
  for (int i = 0; i < S; ++i)
    for (int j = 0; j < S; ++j) {
      const auto& c = corner[{slot_weight[i], slot_weight[j]}];
      for (int t = 0; t < c.rank(); ++t) {
        index[{i, j, t}] = static_cast<int>(basis.size());
        basis.push_back({i, j, t});
      }
    }
  const int n = static_cast<int>(basis.size());
  StructureAlgebra B = blank(rs, n, a.name + "^" + nu);
  for (const auto& b : basis) {
    const auto& c = corner[{slot_weight[b.i], slot_weight[b.j]}];
    auto lab = lift_label_plain(a, c.rows[b.t]);
    B.labels.push_back(slot_label[b.i] + "|" + lab + "|" + slot_label[b.j]);
  }
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      const auto& x = basis[u];
      const auto& y = basis[v];
      if (x.j != y.i) continue;
      const auto& cx = corner[{slot_weight[x.i], slot_weight[x.j]}];
      const auto& cy = corner[{slot_weight[y.i], slot_weight[y.j]}];
      const auto& cz = corner[{slot_weight[x.i], slot_weight[y.j]}];
      auto prod = ak.mul(cx.rows[x.t], cy.rows[y.t]);
      auto co = coords(o, cz, prod);
      if (!co) throw std::logic_error("inflate: product outside corner");
      for (int t = 0; t < cz.rank(); ++t)
        if (!(*co)[t].is_zero()) set_sc(B.alg, u, v, index[{x.i, y.j, t}], (*co)[t]);
    }
  WeightDatum NW;
  for (int i = 0; i < S; ++i) {
    NW.X.push_back(slot_label[i]);
    const auto& c = corner[{slot_weight[i], slot_weight[i]}];
    auto co = coords(o, c, W.idem[slot_weight[i]]);
    Vec<Scalar> e(n);
    for (int t = 0; t < c.rank(); ++t) e[index[{i, i, t}]] = (*co)[t];
    NW.idem.push_back(e);
    for (int t = 0; t < n; ++t) B.alg.unit[t] += e[t];
  }
  NW.Lambda = W.Lambda;
  NW.less = W.less;
  NW.close();
  B.weights = NW;
  return B;
}

std::optional<StructureAlgebra> scale_basis(const StructureAlgebra& a, int j, int e) {
  const RingSpec& rs = a.rs;
  Scalar s = pi_pow(rs, e), si = s.inverse();
  StructureAlgebra B = a;
  B.name = a.name + "*";
  if (!a.alg.unit[j].is_zero()) return std::nullopt;
  for (int x = 0; x < a.n(); ++x)
    for (int y = 0; y < a.n(); ++y) {
      auto& row = B.alg.sc[static_cast<size_t>(x) * a.n() + y];
      Scalar f(1);
      if (x == j) f *= s;
      if (y == j) f *= s;
      for (auto& [k, v] : row) {
        v *= f;
        if (k == j) v *= si;
        if (!in_O(v, rs)) return std::nullopt;
      }
    }
  auto fix = [&](WeightDatum& W) {
    for (auto& idem : W.idem) {
      idem[j] *= si;
      if (!in_O(idem[j], rs)) return false;
    }
    return true;
  };
  if (B.weights && !fix(*B.weights)) return std::nullopt;
  if (B.weights_K) {
    for (auto& idem : B.weights_K->idem) idem[j] *= si;
  }
  return B;
}

StructureAlgebra perturb(const StructureAlgebra& a, uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  StructureAlgebra B = a;
  std::vector<int> candidates;
  for (int j = 0; j < a.n(); ++j) {
    bool used = !a.alg.unit[j].is_zero();
    if (a.weights)
      for (const auto& e : a.weights->idem) used = used || !e[j].is_zero();
    if (!used) candidates.push_back(j);
  }
  if (candidates.empty()) return B;
  std::uniform_int_distribution<size_t> pick(0, candidates.size() - 1);
  for (int t = 0; t < count; ++t) {
    int j = candidates[pick(rng)];
    if (auto s = scale_basis(B, j)) B = std::move(*s);
  }
  B.name = a.name + "~" + std::to_string(seed);
  return B;
}

}  // namespace grforge
