#pragma once

// Template definitions for module.hpp.

namespace grforge {

template <class D>
ModuleT<D> regular_module(const AlgebraT<D>& a) {
  ModuleT<D> M;
  M.d = a.d;
  M.m = a.n;
  M.n_alg = a.n;
  M.act.assign(a.n, std::vector<SparseRow<typename D::Elem>>(a.n));
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) M.act[i][j] = a.prod(i, j);
  return M;
}

template <class D>
std::vector<std::string> validate_module(const AlgebraT<D>& a, const ModuleT<D>& M) {
  std::vector<std::string> err;
  if (M.n_alg != a.n || static_cast<int>(M.act.size()) != a.n) {
    err.push_back("action count differs from algebra rank");
    return err;
  }
  for (int i = 0; i < a.n; ++i)
    if (static_cast<int>(M.act[i].size()) != M.m) {
      err.push_back("action of b" + std::to_string(i) + " has wrong size");
      return err;
    }
  for (int k = 0; k < M.m; ++k) {
    auto v = M.basis(k);
    if (M.apply_elem(a.unit, v) != v) {
      err.push_back("unit does not act as the identity on m" + std::to_string(k));
      break;
    }
  }
  for (int j = 0; j < a.n; ++j)
    for (int k = 0; k < M.m; ++k) {
      auto w = M.apply(j, M.basis(k));
      for (int i = 0; i < a.n; ++i) {
        Vec<typename D::Elem> bij(a.n, a.d.zero());
        for (const auto& [t, c] : a.prod(i, j)) bij[t] = c;
        if (M.apply(i, w) != M.apply_elem(bij, M.basis(k))) {
          err.push_back("b" + std::to_string(i) + "(b" + std::to_string(j) + " m" + std::to_string(k) +
                        ") != (b" + std::to_string(i) + " b" + std::to_string(j) + ") m" + std::to_string(k));
          return err;
        }
      }
    }
  return err;
}

template <class D>
Span<D> generated_submodule(const ModuleT<D>& M, Mat<typename D::Elem> S) {
  Span<D> cur = echelon(M.d, std::move(S), M.m);
  while (true) {
    Mat<typename D::Elem> rows = cur.rows;
    for (const auto& s : cur.rows)
      for (int i = 0; i < M.n_alg; ++i) {
        auto v = M.apply(i, s);
        if (!vec_is_zero(M.d, v)) rows.push_back(std::move(v));
      }
    auto next = echelon(M.d, std::move(rows), M.m);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

template <class D>
bool is_submodule(const ModuleT<D>& M, const Span<D>& S) {
  for (const auto& s : S.rows)
    for (int i = 0; i < M.n_alg; ++i)
      if (!contains(M.d, S, M.apply(i, s))) return false;
  return true;
}

template <class D>
ModuleT<D> submodule(const ModuleT<D>& M, const Span<D>& S) {
  ModuleT<D> R;
  R.d = M.d;
  R.m = S.rank();
  R.n_alg = M.n_alg;
  R.act.assign(M.n_alg, std::vector<SparseRow<typename D::Elem>>(R.m));
  for (int i = 0; i < M.n_alg; ++i)
    for (int j = 0; j < R.m; ++j) {
      auto c = coords(M.d, S, M.apply(i, S.rows[j]));
      if (!c) throw std::logic_error("submodule: span is not stable");
      for (int k = 0; k < R.m; ++k) {
        if (M.d.is_zero((*c)[k])) continue;
        if (!M.d.in_ring((*c)[k])) throw std::logic_error("submodule: lattice is not stable");
        R.act[i][j].emplace_back(k, (*c)[k]);
      }
    }
  return R;
}

template <class D>
Vec<typename D::Elem> QuotientMod<D>::project(const Vec<typename D::Elem>& v) const {
  auto c = vec_mat(mod.d, v, to_basis, static_cast<int>(to_basis.size()));
  return Vec<typename D::Elem>(c.begin() + krank, c.end());
}

template <class D>
Vec<typename D::Elem> QuotientMod<D>::lift_vec(const Vec<typename D::Elem>& q) const {
  Vec<typename D::Elem> v(to_basis.size(), mod.d.zero());
  for (size_t j = 0; j < lift.size(); ++j) v[lift[j]] = q[j];
  return v;
}

template <class D>
QuotientMod<D> quotient_module(const ModuleT<D>& M, const Span<D>& N) {
  QuotientMod<D> q;
  q.lift = std_completion(M.d, N);
  q.krank = N.rank();
  Mat<typename D::Elem> B = N.rows;
  for (int j : q.lift) B.push_back(M.basis(j));
  auto inv = mat_inverse(M.d, B, M.m);
  if (!inv) throw std::logic_error("quotient_module: basis not invertible");
  q.to_basis = std::move(*inv);
  const int r = static_cast<int>(q.lift.size());
  q.mod.d = M.d;
  q.mod.m = r;
  q.mod.n_alg = M.n_alg;
  q.mod.act.assign(M.n_alg, std::vector<SparseRow<typename D::Elem>>(r));
  for (int i = 0; i < M.n_alg; ++i)
    for (int j = 0; j < r; ++j) {
      auto w = q.project(M.apply(i, M.basis(q.lift[j])));
      for (int k = 0; k < r; ++k)
        if (!M.d.is_zero(w[k])) q.mod.act[i][j].emplace_back(k, w[k]);
    }
  return q;
}

template <class D>
Span<D> weight_space(const ModuleT<D>& M, const Vec<typename D::Elem>& e) {
  Mat<typename D::Elem> rows;
  for (int j = 0; j < M.m; ++j) {
    auto v = M.apply_elem(e, M.basis(j));
    if (!vec_is_zero(M.d, v)) rows.push_back(std::move(v));
  }
  return echelon(M.d, std::move(rows), M.m);
}

template <class D>
Span<D> ideal_times(const ModuleT<D>& M, const Mat<typename D::Elem>& J) {
  Mat<typename D::Elem> rows;
  for (const auto& x : J)
    for (int j = 0; j < M.m; ++j) {
      auto v = M.apply_elem(x, M.basis(j));
      if (!vec_is_zero(M.d, v)) rows.push_back(std::move(v));
    }
  return echelon(M.d, std::move(rows), M.m);
}

template <class D>
ModuleT<D> direct_sum(const ModuleT<D>& a, const ModuleT<D>& b) {
  ModuleT<D> s;
  s.d = a.d;
  s.m = a.m + b.m;
  s.n_alg = a.n_alg;
  s.act.assign(a.n_alg, std::vector<SparseRow<typename D::Elem>>(s.m));
  for (int i = 0; i < a.n_alg; ++i) {
    for (int j = 0; j < a.m; ++j) s.act[i][j] = a.act[i][j];
    for (int j = 0; j < b.m; ++j)
      for (const auto& [k, c] : b.act[i][j]) s.act[i][a.m + j].emplace_back(a.m + k, c);
  }
  return s;
}

template <class D>
std::vector<Mat<typename D::Elem>> hom_space(const ModuleT<D>& M1, const ModuleT<D>& M2,
                                             const std::vector<Vec<typename D::Elem>>& gens) {
  static_assert(D::is_field, "hom_space works over a field");
  const D& d = M1.d;
  const int m1 = M1.m, m2 = M2.m;
  const int unk = m1 * m2;
  if (unk == 0) return {};
  // rho1(g) Phi = Phi rho2(g), equation per (g, j, c)
  Mat<typename D::Elem> C(unk);
  const int neq = static_cast<int>(gens.size()) * m1 * m2;
  for (auto& r : C) r.assign(neq, d.zero());
  for (size_t g = 0; g < gens.size(); ++g) {
    Mat<typename D::Elem> r1(m1), r2(m2);
    for (int j = 0; j < m1; ++j) r1[j] = M1.apply_elem(gens[g], M1.basis(j));
    for (int b = 0; b < m2; ++b) r2[b] = M2.apply_elem(gens[g], M2.basis(b));
    for (int j = 0; j < m1; ++j)
      for (int c = 0; c < m2; ++c) {
        const int eq = (static_cast<int>(g) * m1 + j) * m2 + c;
        for (int a = 0; a < m1; ++a)
          if (!d.is_zero(r1[j][a])) C[a * m2 + c][eq] = d.add(C[a * m2 + c][eq], r1[j][a]);
        for (int b = 0; b < m2; ++b)
          if (!d.is_zero(r2[b][c])) C[j * m2 + b][eq] = d.sub(C[j * m2 + b][eq], r2[b][c]);
      }
  }
  auto ker = left_kernel(d, C, unk, neq);
  std::vector<Mat<typename D::Elem>> out;
  for (const auto& x : ker.rows) {
    Mat<typename D::Elem> P(m1, Vec<typename D::Elem>(m2, d.zero()));
    for (int a = 0; a < m1; ++a)
      for (int b = 0; b < m2; ++b) P[a][b] = x[a * m2 + b];
    out.push_back(std::move(P));
  }
  return out;
}

template <class D>
std::vector<Span<D>> radical_series(const ModuleT<D>& M, const Span<D>& radA) {
  std::vector<Span<D>> out{full_span(M.d, M.m)};
  while (out.back().rank() > 0) {
    const auto& cur = out.back();
    Mat<typename D::Elem> rows;
    for (const auto& r : radA.rows)
      for (const auto& v : cur.rows) {
        auto w = M.apply_elem(r, v);
        if (!vec_is_zero(M.d, w)) rows.push_back(std::move(w));
      }
    auto next = echelon(M.d, std::move(rows), M.m);
    if (next.rank() == cur.rank()) throw std::logic_error("radical_series: radical does not act nilpotently");
    out.push_back(std::move(next));
  }
  return out;
}

// ---------------------------------------------------------------- heads

template <class D>
HeadReport<D> head(const WAlg<D>& A, const Span<D>& radA, const ModuleT<D>& M) {
  HeadReport<D> h;
  h.radical = ideal_times(M, radA.rows);
  auto q = quotient_module(M, h.radical);
  h.module = q.mod;
  h.dim = q.mod.m;
  std::vector<std::string> support;
  for (size_t x = 0; x < A.W.X.size(); ++x) {
    int r = weight_space(h.module, A.e[x]).rank();
    h.weight_dims[A.W.X[x]] = r;
    if (r > 0 && A.W.in_lambda(A.W.X[x])) support.push_back(A.W.X[x]);
  }
  if (h.dim == 0) return h;
  auto gens = algebra_generators(A.alg);
  h.is_simple = hom_space(h.module, h.module, gens).size() == 1;
  if (h.is_simple && !support.empty()) h.label = A.W.maximal(support).front();
  return h;
}

template <class D>
SimpleTable<D> simple_modules(const WAlg<D>& A, const Span<D>& radA) {
  SimpleTable<D> T;
  long total = 0;
  for (const auto& l : A.W.Lambda) {
    auto S = standard_data(A, nullptr, l);
    Simple s;
    s.label = l;
    if (!S.trunc.pure) {
      T.problems.push_back("L(" + l + "): truncation not defined");
      T.simples.push_back(s);
      continue;
    }
    auto H = head(A, radA, S.Delta);
    s.dim = H.dim;
    s.weight_dims = H.weight_dims;
    total += static_cast<long>(H.dim) * H.dim;
    if (!H.is_simple) T.problems.push_back("L(" + l + "): head of the truncated projective is not simple");
    if (H.weight_dims[l] != 1) T.problems.push_back("L(" + l + "): weight space " + l + " has dimension " +
                                                    std::to_string(H.weight_dims[l]));
    for (const auto& mu : A.W.Lambda)
      if (H.weight_dims[mu] > 0 && !A.W.leq(mu, l))
        T.problems.push_back("L(" + l + "): weight " + mu + " occurs but is not below " + l);
    T.simples.push_back(std::move(s));
  }
  T.complete = total == A.alg.n - radA.rank();
  if (!T.complete) T.problems.push_back("simple modules do not exhaust A/rad A");
  return T;
}

template <class D>
std::optional<std::map<std::string, int>> composition_multiplicities(const WAlg<D>& A, const SimpleTable<D>& S,
                                                                     const ModuleT<D>& M, std::string* why) {
  std::map<std::string, int> dims;
  for (size_t x = 0; x < A.W.X.size(); ++x) dims[A.W.X[x]] = weight_space(M, A.e[x]).rank();
  std::map<std::string, int> mult;
  for (const auto& l : A.W.top_down()) {
    const Simple* L = S.find(l);
    int r = dims[l];
    for (const auto& [mu, c] : mult) r -= c * S.find(mu)->weight_dims.at(l);
    if (r < 0 || L->weight_dims.at(l) != 1) {
      if (why) *why = "negative or undefined multiplicity at " + l;
      return std::nullopt;
    }
    mult[l] = r;
  }
  for (const auto& x : A.W.X) {
    int s = 0;
    for (const auto& [l, c] : mult) s += c * S.find(l)->weight_dims.at(x);
    if (s != dims[x]) {
      if (why) *why = "weight " + x + " is inconsistent with the simple table";
      return std::nullopt;
    }
  }
  int total = 0;
  for (const auto& [l, c] : mult) total += c * S.find(l)->dim;
  if (total != M.m) {
    if (why) *why = "dimensions do not add up";
    return std::nullopt;
  }
  for (auto it = mult.begin(); it != mult.end();)
    it = it->second == 0 ? mult.erase(it) : std::next(it);
  return mult;
}

template <class D>
std::map<std::string, int> composition_by_heads(const WAlg<D>& A, const Span<D>& radA, const ModuleT<D>& M) {
  std::vector<std::pair<std::string, ModuleT<D>>> L;
  for (const auto& l : A.W.Lambda) {
    auto S = standard_data(A, nullptr, l);
    L.emplace_back(l, head(A, radA, S.Delta).module);
  }
  auto gens = algebra_generators(A.alg);
  std::map<std::string, int> mult;
  ModuleT<D> cur = M;
  while (cur.m > 0) {
    auto H = head(A, radA, cur);
    int found = 0;
    for (const auto& [l, Lm] : L) {
      int h = static_cast<int>(hom_space(H.module, Lm, gens).size());
      if (h) mult[l] += h;
      found += h * Lm.m;
    }
    if (found != H.dim) throw std::logic_error("composition_by_heads: head is not a sum of the known simples");
    cur = submodule(cur, H.radical);
  }
  return mult;
}

// ---------------------------------------------------------------- truncation

template <class D>
Truncation<D> truncate(const WAlg<D>& A, const ModuleT<D>& N, const std::vector<std::string>& gamma) {
  for (const auto& g : gamma)
    if (!A.W.in_lambda(g)) throw std::invalid_argument("truncate: " + g + " is not in Lambda");
  if (!A.W.is_ideal(gamma)) throw std::invalid_argument("truncate: weights do not form an ideal");
  Truncation<D> t;
  Mat<typename D::Elem> gens;
  for (const auto& nu : A.W.Lambda) {
    if (std::find(gamma.begin(), gamma.end(), nu) != gamma.end()) continue;
    auto ws = weight_space(N, A.idem(nu));
    gens.insert(gens.end(), ws.rows.begin(), ws.rows.end());
  }
  t.kernel = generated_submodule(N, std::move(gens));
  if constexpr (!D::is_field) {
    auto qb = quotient_free_basis(N.d.rs, ambient_lattice(N.d.rs, N.m), t.kernel);
    t.torsion = qb.torsion;
    t.pure = qb.torsion.empty();
  }
  if (t.pure) t.quotient = quotient_module(N, t.kernel);
  return t;
}

template <class D>
std::optional<WAlg<D>> truncated_algebra(const WAlg<D>& A, const std::vector<std::string>& gamma) {
  auto reg = regular_module(A.alg);
  auto t = truncate(A, reg, gamma);
  if (!t.pure) return std::nullopt;
  auto q = quotient_algebra(A.alg, t.kernel);
  WAlg<D> B;
  B.alg = q.alg;
  for (size_t x = 0; x < A.W.X.size(); ++x) {
    const auto& nu = A.W.X[x];
    if (A.W.in_lambda(nu) && std::find(gamma.begin(), gamma.end(), nu) == gamma.end()) continue;
    auto e = q.project(A.e[x]);
    if (vec_is_zero(A.alg.d, e)) continue;
    B.W.X.push_back(nu);
    if constexpr (std::is_same_v<typename D::Elem, Scalar>) B.W.idem.push_back(e);
    else B.W.idem.emplace_back();
    B.e.push_back(std::move(e));
  }
  B.W.Lambda = gamma;
  for (const auto& [a, b] : A.W.less)
    if (std::find(gamma.begin(), gamma.end(), a) != gamma.end() &&
        std::find(gamma.begin(), gamma.end(), b) != gamma.end())
      B.W.less.emplace_back(a, b);
  B.W.close();
  return B;
}

// ---------------------------------------------------------------- standard modules

template <class D>
StandardData<D> standard_data(const WAlg<D>& A, const std::type_identity_t<Span<D>>* radA, const std::string& lambda) {
  StandardData<D> S;
  S.label = lambda;
  const auto& e = A.idem(lambda);
  Mat<typename D::Elem> rows;
  for (int i = 0; i < A.alg.n; ++i) {
    auto v = A.alg.lmul_basis(i, e);
    if (!vec_is_zero(A.alg.d, v)) rows.push_back(std::move(v));
  }
  S.P_span = echelon(A.alg.d, std::move(rows), A.alg.n);
  S.P = submodule(regular_module(A.alg), S.P_span);
  S.trunc = truncate(A, S.P, A.W.down_set(lambda));
  if (!S.trunc.pure) return S;
  S.Delta = S.trunc.quotient.mod;
  auto top = weight_space(S.Delta, e);
  S.generated_by_top = generated_submodule(S.Delta, top.rows).rank() == S.Delta.m;
  if constexpr (D::is_field) {
    if (radA) {
      auto hp = head(A, *radA, S.P);
      S.head_simple_P = hp.is_simple;
      auto hd = head(A, *radA, S.Delta);
      S.head_Delta_is_L = hd.is_simple && hd.label == lambda;
    }
  }
  return S;
}

template <class D>
std::optional<Mat<typename D::Elem>> delta_power_iso(const StandardData<D>& S, const ModuleT<D>& N,
                                                     const Mat<typename D::Elem>& us, const Span<D>& R,
                                                     std::string* why) {
  const D& d = N.d;
  const int pr = S.P.m;
  Mat<typename D::Elem> out;
  for (const auto& u : us) {
    // image of each P-basis element p_j = (row j of P_span) under x e -> x u
    Mat<typename D::Elem> img(pr);
    for (int j = 0; j < pr; ++j) img[j] = N.apply_elem(S.P_span.rows[j], u);
    for (const auto& k : S.trunc.kernel.rows) {
      auto w = vec_mat(d, k, img, N.m);
      if (!vec_is_zero(d, w)) {
        if (why) *why = "map from P(" + S.label + ") does not vanish on the truncation kernel";
        return std::nullopt;
      }
    }
    for (int j : S.trunc.quotient.lift) out.push_back(img[j]);
  }
  const int expect = static_cast<int>(us.size()) * S.Delta.m;
  if (rank_of(d, out, N.m) != expect) {
    if (why) *why = "images of the copies of Delta(" + S.label + ") are not independent";
    return std::nullopt;
  }
  if (!(echelon(d, out, N.m) == R)) {
    if (why) *why = "images do not span the generated submodule";
    return std::nullopt;
  }
  return out;
}

template <class D>
DeltaFiltration<D> delta_filtration(const WAlg<D>& A, const std::map<std::string, StandardData<D>>& std_mods,
                                    const ModuleT<D>& N, const std::vector<std::string>* order) {
  const D& d = N.d;
  DeltaFiltration<D> out;
  Span<D> F = zero_span<D>(N.m);
  while (F.rank() < N.m) {
    auto q = quotient_module(N, F);
    const auto& Q = q.mod;
    std::vector<std::string> present;
    for (const auto& l : A.W.Lambda)
      if (weight_space(Q, A.idem(l)).rank() > 0) present.push_back(l);
    if (present.empty()) {
      out.failure = "quotient of rank " + std::to_string(Q.m) + " has no weight in Lambda";
      return out;
    }
    auto maxes = A.W.maximal(present);
    std::string l = maxes.front();
    if (order) {
      auto it = std::find_if(order->begin(), order->end(), [&](const std::string& s) {
        return std::find(maxes.begin(), maxes.end(), s) != maxes.end();
      });
      if (it != order->end()) l = *it;
    }
    FiltrationStep<D> st;
    st.label = l;
    auto U = weight_space(Q, A.idem(l));
    st.multiplicity = U.rank();
    auto R = generated_submodule(Q, U.rows);
    if constexpr (!D::is_field) st.pure = is_pure(d.rs, R, ambient_lattice(d.rs, Q.m));
    Mat<typename D::Elem> rows = F.rows;
    for (const auto& r : R.rows) rows.push_back(q.lift_vec(r));
    auto F2 = echelon(d, std::move(rows), N.m);
    st.sub = F2;
    auto sit = std_mods.find(l);
    if (sit == std_mods.end() || !sit->second.trunc.pure) {
      st.isomorphic = false;
      st.problem = "no standard module for " + l;
    } else {
      std::string why;
      auto w = delta_power_iso(sit->second, Q, U.rows, R, &why);
      st.isomorphic = w.has_value();
      if (w) st.witness = std::move(*w);
      else st.problem = why;
    }
    if (!st.pure && st.problem.empty()) st.problem = "generated submodule is not pure";
    bool bad = !st.pure || !st.isomorphic;
    out.steps.push_back(std::move(st));
    if (bad) {
      out.failure = "step " + std::to_string(out.steps.size()) + " (" + l + "): " + out.steps.back().problem;
      return out;
    }
    F = std::move(F2);
  }
  out.ok = true;
  return out;
}

}  // namespace grforge
