#include "grforge/suites.hpp"

#include <algorithm>

namespace grforge {

std::vector<std::vector<std::string>> poset_ideals(const WeightDatum& W, bool proper) {
  const int n = static_cast<int>(W.Lambda.size());
  if (n > 20) throw std::invalid_argument("poset_ideals: poset too large to enumerate");
  std::vector<std::vector<std::string>> out;
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (proper && mask == (1u << n) - 1) continue;
    std::vector<std::string> g;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) g.push_back(W.Lambda[i]);
    if (W.is_ideal(g)) out.push_back(std::move(g));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

std::optional<StructureAlgebra> truncated_structure(const StructureAlgebra& A, const std::vector<std::string>& gamma) {
  ModO empty;
  empty.d = DomO{A.rs};
  empty.n_alg = A.n();
  empty.act.assign(A.n(), {});
  auto t = truncated_action(A, empty, gamma);
  if (!t) return std::nullopt;
  return t->alg;
}

// ---------------------------------------------------------------- graded field algebras

namespace {

template <class D>
std::vector<Mat<typename D::Elem>> layers_of(const D& d, const std::vector<Span<D>>& series) {
  std::vector<Mat<typename D::Elem>> out;
  for (size_t m = 0; m + 1 < series.size(); ++m) {
    Span<D> cur = series[m + 1];
    Mat<typename D::Elem> layer;
    for (const auto& r : series[m].rows) {
      if (in_span(d, cur, r)) continue;
      layer.push_back(r);
      cur = span_sum(d, cur, echelon(d, {r}, cur.n));
    }
    out.push_back(std::move(layer));
  }
  return out;
}

// adapted coordinates of x truncated to degree s
template <class D>
Vec<typename D::Elem> truncate_to(const D& d, const Vec<typename D::Elem>& x, const Mat<typename D::Elem>& inv,
                                  const std::vector<int>& grade, int s) {
  auto c = vec_mat(d, x, inv, static_cast<int>(grade.size()));
  for (size_t k = 0; k < c.size(); ++k) {
    if (d.is_zero(c[k])) continue;
    if (grade[k] < s) throw std::logic_error("graded: element below its filtration degree");
    if (grade[k] > s) c[k] = d.zero();
  }
  return c;
}

}  // namespace

template <class D>
GradedFieldAlgebra<D> gr_field(const WAlg<D>& B) {
  const D& d = B.alg.d;
  const int n = B.alg.n;
  GradedFieldAlgebra<D> G;
  G.radical = radical_field(B.alg);
  auto layers = layers_of(d, radical_powers(B.alg, G.radical));
  for (size_t m = 0; m < layers.size(); ++m) {
    G.grade_ranks.push_back(static_cast<int>(layers[m].size()));
    for (auto& r : layers[m]) {
      G.lifts.push_back(r);
      G.grade.push_back(static_cast<int>(m));
    }
  }
  auto inv = mat_inverse(d, G.lifts, n);
  if (!inv) throw std::logic_error("gr_field: adapted lifts do not form a basis");
  G.lifts_inv = *inv;
  auto& g = G.alg.alg;
  g.d = d;
  g.n = n;
  g.sc.assign(static_cast<size_t>(n) * n, {});
  const int L = static_cast<int>(layers.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int s = G.grade[i] + G.grade[j];
      if (s >= L) continue;
      auto c = truncate_to(d, B.alg.mul(G.lifts[i], G.lifts[j]), G.lifts_inv, G.grade, s);
      auto& row = g.sc[static_cast<size_t>(i) * n + j];
      for (int k = 0; k < n; ++k)
        if (!d.is_zero(c[k])) row.emplace_back(k, c[k]);
    }
  g.unit = truncate_to(d, B.alg.unit, G.lifts_inv, G.grade, 0);
  G.alg.W = B.W;
  for (const auto& e : B.e) G.alg.e.push_back(truncate_to(d, e, G.lifts_inv, G.grade, 0));
  return G;
}

template <class D>
Vec<typename D::Elem> GradedFieldModule<D>::symbol(const Vec<E>& v, int s) const {
  return truncate_to(mod.d, v, lifts_inv, grade, s);
}

template <class D>
GradedFieldModule<D> gr_field_module(const WAlg<D>& B, const GradedFieldAlgebra<D>& G, const ModuleT<D>& M) {
  const D& d = M.d;
  const int m = M.m;
  GradedFieldModule<D> R;
  auto layers = layers_of(d, radical_series(M, G.radical));
  for (size_t s = 0; s < layers.size(); ++s) {
    R.grade_ranks.push_back(static_cast<int>(layers[s].size()));
    for (auto& r : layers[s]) {
      R.lifts.push_back(r);
      R.grade.push_back(static_cast<int>(s));
    }
  }
  if (m > 0) {
    auto inv = mat_inverse(d, R.lifts, m);
    if (!inv) throw std::logic_error("gr_field_module: adapted lifts do not form a basis");
    R.lifts_inv = *inv;
  }
  const int L = static_cast<int>(layers.size());
  R.mod.d = d;
  R.mod.m = m;
  R.mod.n_alg = B.alg.n;
  R.mod.act.assign(B.alg.n, std::vector<SparseRow<typename D::Elem>>(m));
  for (int i = 0; i < B.alg.n; ++i)
    for (int j = 0; j < m; ++j) {
      int s = G.grade[i] + R.grade[j];
      if (s >= L) continue;
      auto c = R.symbol(M.apply_elem(G.lifts[i], R.lifts[j]), s);
      for (int k = 0; k < m; ++k)
        if (!d.is_zero(c[k])) R.mod.act[i][j].emplace_back(k, c[k]);
    }
  return R;
}

// ---------------------------------------------------------------- shared comparisons

template <class D>
std::map<std::string, std::vector<int>> weight_grade_ranks(const WAlg<D>& A, const ModuleT<D>& M,
                                                           const std::vector<int>& grade) {
  int top = -1;
  for (int g : grade) top = std::max(top, g);
  std::map<std::string, std::vector<int>> out;
  for (size_t x = 0; x < A.W.X.size(); ++x) {
    auto& v = out[A.W.X[x]];
    for (int s = 0; s <= top; ++s) {
      Mat<typename D::Elem> rows;
      for (int j = 0; j < M.m; ++j)
        if (grade[j] == s) rows.push_back(M.apply_elem(A.e[x], M.basis(j)));
      v.push_back(rank_of(M.d, rows, M.m));
    }
  }
  return out;
}

template <class D>
bool is_standard_iso(const WAlg<D>& A, const StandardData<D>& S, const ModuleT<D>& M, std::string* why) {
  auto U = weight_space(M, A.idem(S.label));
  if (U.rank() != 1) {
    if (why) *why = "weight space of rank " + std::to_string(U.rank()) + ", expected 1";
    return false;
  }
  return delta_power_iso(S, M, {U.rows[0]}, full_span(M.d, M.m), why).has_value();
}

namespace {

using RankTable = std::map<std::string, std::vector<int>>;

bool same_table(RankTable a, RankTable b) {
  auto trim = [](RankTable& t) {
    for (auto& [k, v] : t)
      while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(a);
  trim(b);
  return a == b;
}

std::vector<int> totals(const std::vector<int>& grade) {
  std::vector<int> out;
  for (int g : grade) {
    if (g >= static_cast<int>(out.size())) out.resize(g + 1, 0);
    ++out[g];
  }
  return out;
}

template <class D>
void finish_truncation_check(TruncationCheck& R, const WAlg<D>& grA, const ModuleT<D>& grN, const std::vector<int>& gN,
                             const ModuleT<D>& grNG, const std::vector<int>& gNG, const Mat<typename D::Elem>& phi,
                             const std::vector<std::string>& gamma) {
  const D& d = grN.d;
  auto T = truncate(grA, grN, gamma);
  if (!T.pure) {
    R.problem = "(gr N)_Gamma is not a lattice";
    return;
  }
  R.equivariant = true;
  for (int i = 0; i < grA.alg.n && R.equivariant; ++i)
    for (int j = 0; j < grN.m; ++j)
      if (vec_mat(d, grN.apply(i, grN.basis(j)), phi, grNG.m) != grNG.apply(i, phi[j])) {
        R.equivariant = false;
        R.problem = "the map gr N -> gr N_Gamma is not gr A-linear";
        break;
      }
  R.surjective = echelon(d, phi, grNG.m) == full_span(d, grNG.m);
  if (!R.surjective && R.problem.empty()) R.problem = "gr N -> gr N_Gamma is not surjective";
  R.kernel_matches = left_kernel(d, phi, grN.m, grNG.m) == T.kernel;
  if (!R.kernel_matches && R.problem.empty()) R.problem = "kernel differs from the truncation kernel of gr N";
  std::vector<int> gq;
  for (int l : T.quotient.lift) gq.push_back(gN[l]);
  R.lhs_grade_ranks = totals(gNG);
  R.rhs_grade_ranks = totals(gq);
  R.lhs_ranks = weight_grade_ranks(grA, grNG, gNG);
  R.rhs_ranks = weight_grade_ranks(grA, T.quotient.mod, gq);
  R.ranks_equal = same_table(R.lhs_ranks, R.rhs_ranks) && R.lhs_grade_ranks == R.rhs_grade_ranks;
  if (!R.ranks_equal && R.problem.empty()) R.problem = "rank tables differ";
}

template <class D>
std::map<std::string, StandardData<D>> all_standard(const WAlg<D>& A) {
  std::map<std::string, StandardData<D>> out;
  for (const auto& l : A.W.Lambda) out.emplace(l, standard_data(A, nullptr, l));
  return out;
}

// k-level head of gr Delta(lambda)
bool gr_head_simple(const GradedAlgebra& G, const GradedModule& GM, const std::string& lambda) {
  auto Gk = at_k(G.alg);
  auto H = head(Gk, radical_field(Gk.alg), to_k(GM.mod));
  return H.is_simple && H.label == lambda;
}

}  // namespace

template <class D>
StandardComparison compare_standard(const WAlg<D>& grA, const std::vector<int>& alg_grade, const std::string& lambda,
                                    const ModuleT<D>& M, const std::vector<int>& grade) {
  const D& d = M.d;
  StandardComparison C;
  C.label = lambda;
  auto S = standard_data(grA, nullptr, lambda);
  C.isomorphic = is_standard_iso(grA, S, M, &C.problem);
  C.expected = weight_grade_ranks(grA, M, grade);
  int top = 0;
  for (int g : alg_grade) top = std::max(top, g);
  const auto& e = grA.idem(lambda);
  const auto& Dl = S.Delta;
  int total = 0;
  for (size_t x = 0; x < grA.W.X.size(); ++x) C.found[grA.W.X[x]];
  for (int s = 0; s <= top; ++s) {
    Mat<typename D::Elem> piece;
    for (int i = 0; i < grA.alg.n; ++i) {
      if (alg_grade[i] != s) continue;
      auto c = coords(d, S.P_span, grA.alg.mul(grA.alg.basis(i), e));
      if (!c) throw std::logic_error("compare_standard: element outside A e_lambda");
      piece.push_back(S.trunc.quotient.project(*c));
    }
    total += rank_of(d, piece, Dl.m);
    for (size_t x = 0; x < grA.W.X.size(); ++x) {
      Mat<typename D::Elem> rows;
      for (const auto& v : piece) rows.push_back(Dl.apply_elem(grA.e[x], v));
      C.found[grA.W.X[x]].push_back(rank_of(d, rows, Dl.m));
    }
  }
  if (total != Dl.m && C.problem.empty()) C.problem = "standard module of the graded algebra is not graded";
  C.ranks_equal = total == Dl.m && same_table(C.expected, C.found);
  if (!C.ranks_equal && C.problem.empty()) C.problem = "gradewise ranks differ";
  return C;
}

// ---------------------------------------------------------------- suites

Thm417Report thm_4_17_suite(const StructureAlgebra& A) {
  Thm417Report R;
  auto C = certify_qha(A);
  R.qha = C.ok;
  if (!R.qha) R.notes.push_back("A is not a split QHA: " + C.failure);
  R.lambda_standard = is_lambda_standard(A).standard;
  auto G = gr_algebra(A);
  auto WK = at_K(G.alg);
  auto CK = certify_chain(WK);
  R.gr_K_qha = CK.ok;
  if (!R.gr_K_qha) {
    R.notes.push_back("gr A_K is not a QHA with poset Lambda: " + CK.failure);
    auto lin = WK.W.Lambda;
    std::sort(lin.begin(), lin.end());
    if (lin.size() <= 6) do {
        auto W2 = WK;
        W2.W.less.clear();
        for (size_t i = 0; i + 1 < lin.size(); ++i) W2.W.less.emplace_back(lin[i + 1], lin[i]);
        W2.W.close();
        if (certify_chain(W2).ok) R.refined_orders.push_back(lin);
      } while (std::next_permutation(lin.begin(), lin.end()));
    if (!R.refined_orders.empty())
      R.notes.push_back("gr A_K certifies for " + std::to_string(R.refined_orders.size()) +
                        " total orders not implied by Lambda");
  }
  auto W = at_O(A);
  R.gr_K_standard = R.heads_simple = true;
  std::map<std::string, GradedModule> grD;
  for (const auto& l : A.weights->Lambda) {
    auto Dl = standard_data(W, nullptr, l).Delta;
    auto it = grD.emplace(l, gr_module(A, G, Dl)).first;
    std::string why;
    if (R.gr_K_qha && !is_standard_iso(WK, standard_data(WK, nullptr, l), to_K(it->second.mod), &why)) {
      R.gr_K_standard = false;
      R.notes.push_back("standard module of gr A_K at " + l + " is not gr Delta_K: " + why);
    }
    if (!gr_head_simple(G, it->second, l)) {
      R.heads_simple = false;
      R.notes.push_back("gr Delta(" + l + ") has no simple head");
    }
  }
  if (!R.gr_K_qha) R.gr_K_standard = false;
  auto CG = certify_qha(G.alg);
  R.conclusion_qha = CG.ok;
  if (!CG.ok) R.notes.push_back("gr A is not a split QHA: " + CG.failure);
  auto GW = at_O(G.alg);
  R.conclusion_standard = CG.ok;
  for (const auto& l : A.weights->Lambda) {
    R.comparisons.push_back(compare_standard(GW, G.grade, l, grD.at(l).mod, grD.at(l).grade));
    if (!R.comparisons.back().ok()) R.conclusion_standard = false;
  }
  R.falsified = R.hypotheses() && !(R.conclusion_qha && R.conclusion_standard);
  return R;
}

TruncationCheck cor_4_16_check(const StructureAlgebra& A, const ModO& N, const std::vector<std::string>& gamma) {
  TruncationCheck R;
  if (!A.weights || !A.weights->is_ideal(gamma)) throw std::invalid_argument("cor_4_16_check: Gamma is not an ideal");
  auto W = at_O(A);
  auto G = gr_algebra(A);
  R.hypotheses = true;
  if (!certify_qha(A).ok) {
    R.hypotheses = false;
    R.hypothesis_problem = "A is not a split QHA";
  } else if (!certify_chain(at_K(G.alg)).ok) {
    R.hypotheses = false;
    R.hypothesis_problem = "gr A_K is not a QHA with poset Lambda";
  } else {
    auto stds = all_standard(W);
    auto F = delta_filtration(W, stds, N);
    if (!F.ok) {
      R.hypotheses = false;
      R.hypothesis_problem = "N has no Delta-filtration: " + F.failure;
    } else {
      for (const auto& [nu, mult] : F.multiset())
        if (mult > 0 && !gr_head_simple(G, gr_module(A, G, stds.at(nu).Delta), nu)) {
          R.hypotheses = false;
          R.hypothesis_problem = "gr Delta(" + nu + ") has no simple head";
        }
    }
  }
  auto T = truncate(W, N, gamma);
  if (!T.pure) {
    R.problem = "N_Gamma is not a lattice";
    return R;
  }
  const auto& NG = T.quotient.mod;
  auto GM = gr_module(A, G, N);
  auto GMG = gr_module(A, G, NG);
  Mat<Scalar> phi;
  for (int j = 0; j < GM.mod.m; ++j) phi.push_back(GMG.symbol(T.quotient.project(GM.lifts[j]), GM.grade[j]));
  finish_truncation_check(R, at_O(G.alg), GM.mod, GM.grade, GMG.mod, GMG.grade, phi, gamma);
  return R;
}

bool FieldCaseReport::ok() const {
  if (!hypotheses()) return false;
  for (const auto& p : pims)
    if (!p.ok()) return false;
  for (const auto& s : standard)
    if (!s.ok()) return false;
  for (const auto& m : modules)
    if (m.hypotheses && !m.ok()) return false;
  return true;
}

template <class D>
WAlg<D> primitive_refinement(const WAlg<D>& B) {
  using E = typename D::Elem;
  const D& d = B.alg.d;
  const int n = B.alg.n;
  WAlg<D> out = B;
  out.W.X.clear();
  out.W.idem.clear();
  out.e.clear();
  bool changed = false;
  auto push = [&](const std::string& label, const Vec<E>& v) {
    out.W.X.push_back(label);
    out.e.push_back(v);
    Vec<Scalar> s(n);
    if constexpr (std::is_same_v<E, Scalar>) s = v;
    else
      for (int i = 0; i < n; ++i) s[i] = lift_residue(v[i]);
    out.W.idem.push_back(s);
  };
  for (size_t x = 0; x < B.W.X.size(); ++x) {
    const std::string& nu = B.W.X[x];
    const Vec<E>& e = B.e[x];
    if (!B.W.in_lambda(nu)) {
      push(nu, e);
      continue;
    }
    // the corner e B e on its own basis
    Mat<E> rows;
    for (int i = 0; i < n; ++i) rows.push_back(B.alg.mul(B.alg.lmul_basis(i, e), e));
    const Span<D> Cs = echelon(d, std::move(rows), n);
    const int c = Cs.rank();
    if (c == 1) {
      push(nu, e);
      continue;
    }
    RowSolver<D> solver(d, Cs.rows, n);
    AlgebraT<D> C;
    C.d = d;
    C.n = c;
    C.sc.assign(static_cast<size_t>(c) * c, {});
    for (int i = 0; i < c; ++i)
      for (int j = 0; j < c; ++j) {
        auto z = *solver.solve(B.alg.mul(Cs.rows[i], Cs.rows[j]));
        for (int k = 0; k < c; ++k)
          if (!d.is_zero(z[k])) C.sc[static_cast<size_t>(i) * c + j].emplace_back(k, z[k]);
      }
    C.unit = *solver.solve(e);
    // chi(x): the scalar of x on the lambda-weight line of Delta(lambda)
    const auto S = standard_data(B, nullptr, nu);
    const auto top = weight_space(S.Delta, e);
    if (top.rank() != 1) throw std::logic_error("primitive_refinement: Delta(lambda)_lambda is not a line");
    const Vec<E>& u = top.rows[0];
    int pu = 0;
    while (d.is_zero(u[pu])) ++pu;
    auto chi = [&](const Vec<E>& xc) {  // xc in C coordinates
      Vec<E> xb = vec_mat(d, xc, Cs.rows, n);
      Vec<E> w = S.Delta.apply_elem(xb, u);
      return d.div(w[pu], u[pu]);
    };
    const Span<D> R = radical_field(C);
    auto Q = quotient_algebra(C, R);
    const int q = Q.alg.n;
    auto qlift = [&](const Vec<E>& y) {
      Vec<E> r = zero_vec(d, c);
      for (int i = 0; i < q; ++i) r[Q.lift[i]] = y[i];
      return r;
    };
    // ker chi in Q, then its two-sided annihilator
    Mat<E> chis(q, Vec<E>(1));
    for (int i = 0; i < q; ++i) chis[i][0] = chi(qlift(Q.alg.basis(i)));
    const Span<D> ker = left_kernel(d, chis, q, 1);
    Mat<E> eqs(q);
    for (int i = 0; i < q; ++i)
      for (const auto& k : ker.rows) {
        auto l = Q.alg.mul(Q.alg.basis(i), k);
        auto r = Q.alg.mul(k, Q.alg.basis(i));
        eqs[i].insert(eqs[i].end(), l.begin(), l.end());
        eqs[i].insert(eqs[i].end(), r.begin(), r.end());
      }
    if (ker.rows.empty())
      for (auto& row : eqs) row.assign(1, d.zero());
    const Span<D> ann = left_kernel(d, eqs, q, static_cast<int>(eqs[0].size()));
    if (ann.rank() != 1) throw std::logic_error("primitive_refinement: L(lambda) component is not split of rank one");
    Vec<E> f = qlift(ann.rows[0]);
    const E scale = d.div(d.one(), chi(f));
    for (auto& t : f) t = d.mul(t, scale);
    for (int it = 0; it < 64; ++it) {
      const Vec<E> f2 = C.mul(f, f);
      if (f2 == f) break;
      const Vec<E> f3 = C.mul(f2, f);
      for (int i = 0; i < c; ++i) f[i] = d.sub(d.mul(d.from_int(3), f2[i]), d.mul(d.from_int(2), f3[i]));
    }
    if (C.mul(f, f) != f) throw std::logic_error("primitive_refinement: idempotent lifting did not converge");
    const Vec<E> fb = vec_mat(d, f, Cs.rows, n);
    push(nu, fb);
    if (fb != e) {
      changed = true;
      Vec<E> rest = e;
      for (int i = 0; i < n; ++i) rest[i] = d.sub(rest[i], fb[i]);
      push(nu + "~", rest);
    }
  }
  if (!changed) return B;
  return out;
}

template <class D>
FieldCaseReport field_case_suite(const WAlg<D>& B0, const std::vector<std::string>& gamma,
                                 const std::vector<ModuleT<D>>* modules) {
  WAlg<D> B = B0;
  std::string refine_problem;
  try {
    B = primitive_refinement(B0);
  } catch (const std::logic_error& e) {
    refine_problem = e.what();
  }
  const D& d = B.alg.d;
  if (!B.W.is_ideal(gamma)) throw std::invalid_argument("field_case_suite: Gamma is not an ideal");
  FieldCaseReport R;
  R.gamma = gamma;
  if (!refine_problem.empty()) R.notes.push_back(refine_problem);
  auto CB = certify_chain(B);
  R.qha = CB.ok;
  if (!R.qha) R.notes.push_back("B is not a QHA: " + CB.failure);
  auto G = gr_field(B);
  auto CG = certify_chain(G.alg);
  R.gr_qha = CG.ok;
  if (!R.gr_qha) R.notes.push_back("gr B is not a QHA: " + CG.failure);
  auto grad = radical_field(G.alg.alg);
  auto stdB = all_standard(B);
  auto stdG = all_standard(G.alg);
  for (const auto& g : gamma) {
    PimCheck P;
    P.label = g;
    const auto& S = stdB.at(g);
    auto TP = truncate(B, S.P, gamma);
    auto GP = gr_field_module(B, G, TP.quotient.mod);
    auto c = coords(d, S.P_span, B.idem(g));
    auto top = GP.symbol(TP.quotient.project(*c), 0);
    P.surjective = generated_submodule(GP.mod, {top}).rank() == GP.mod.m;
    P.dims_equal = truncate(G.alg, stdG.at(g).P, gamma).quotient.mod.m == GP.mod.m;
    auto H = head(G.alg, grad, GP.mod);
    P.head_simple = H.is_simple && H.label == g;
    R.pims.push_back(P);
  }
  for (const auto& l : B.W.Lambda) {
    auto GD = gr_field_module(B, G, stdB.at(l).Delta);
    R.standard.push_back(compare_standard(G.alg, G.grade, l, GD.mod, GD.grade));
  }
  std::vector<ModuleT<D>> defaults;
  if (!modules) {
    defaults.push_back(regular_module(B.alg));
    for (const auto& l : B.W.Lambda) {
      defaults.push_back(stdB.at(l).P);
      defaults.push_back(stdB.at(l).Delta);
    }
    modules = &defaults;
  }
  for (const auto& M : *modules) {
    TruncationCheck T;
    auto GM = gr_field_module(B, G, M);
    T.hypotheses = delta_filtration(B, stdB, M).ok && delta_filtration(G.alg, stdG, GM.mod).ok;
    if (!T.hypotheses) {
      T.hypothesis_problem = "M or gr M has no standard filtration";
      ++R.skipped_modules;
    }
    auto Tr = truncate(B, M, gamma);
    auto GMG = gr_field_module(B, G, Tr.quotient.mod);
    Mat<typename D::Elem> phi;
    for (int j = 0; j < GM.mod.m; ++j) phi.push_back(GMG.symbol(Tr.quotient.project(GM.lifts[j]), GM.grade[j]));
    finish_truncation_check(T, G.alg, GM.mod, GM.grade, GMG.mod, GMG.grade, phi, gamma);
    R.modules.push_back(std::move(T));
  }
  return R;
}

Thm53Inputs default_thm_5_3_inputs(const StructureAlgebra& A, const GradedSubalgebraDatum& a, const std::string& lambda) {
  DomO o{A.rs};
  Thm53Inputs in;
  in.Pdagger = standard_data(at_O(A), nullptr, lambda).P_span.rows;
  in.v = A.weights->e(lambda);
  for (size_t j = 0; j < a.graded.size(); ++j) {
    if (a.grade[j] != 0) continue;
    auto x = A.alg.mul(a.graded[j], in.v);
    if (!vec_is_zero(o, x)) in.P0.push_back(std::move(x));
  }
  in.P0 = echelon(o, in.P0, A.n()).rows;
  return in;
}

Thm55Report thm_5_5_check(const StructureAlgebra& A, const GradedSubalgebraDatum& a, const std::vector<std::string>& gamma,
                          const std::map<std::string, Thm53Inputs>* inputs) {
  if (!A.weights || !A.weights->is_ideal(gamma)) throw std::invalid_argument("thm_5_5_check: Gamma is not an ideal");
  Thm55Report R;
  R.gamma = gamma;
  R.hypotheses = true;
  for (const auto& l : gamma) {
    auto in = inputs && inputs->count(l) ? inputs->at(l) : default_thm_5_3_inputs(A, a, l);
    auto P = thm_5_3_pipeline(A, a, l, in.Pdagger, in.v, in.P0);
    if (!P.hypotheses()) R.hypotheses = false;
    R.pipelines.emplace(l, std::move(P));
  }
  auto AG = truncated_structure(A, gamma);
  if (!AG) {
    R.problem = "A_Gamma is not an O-lattice";
    R.falsified = R.hypotheses;
    return R;
  }
  auto G = gr_algebra(*AG);
  auto C = certify_qha(G.alg);
  R.qha = C.ok;
  if (!C.ok) R.problem = "gr A_Gamma is not a split QHA: " + C.failure;
  auto W = at_O(*AG);
  auto GW = at_O(G.alg);
  for (const auto& l : gamma) {
    auto GM = gr_module(*AG, G, standard_data(W, nullptr, l).Delta);
    R.comparisons.push_back(compare_standard(GW, G.grade, l, GM.mod, GM.grade));
  }
  R.falsified = R.hypotheses && !R.passed();
  return R;
}

#define GRFORGE_SUITES(D)                                                                                         \
  template GradedFieldAlgebra<D> gr_field(const WAlg<D>&);                                                        \
  template struct GradedFieldModule<D>;                                                                           \
  template GradedFieldModule<D> gr_field_module(const WAlg<D>&, const GradedFieldAlgebra<D>&, const ModuleT<D>&); \
  template WAlg<D> primitive_refinement(const WAlg<D>&);                                                        \
  template FieldCaseReport field_case_suite(const WAlg<D>&, const std::vector<std::string>&,                      \
                                            const std::vector<ModuleT<D>>*);
GRFORGE_SUITES(DomK)
GRFORGE_SUITES(DomF)
#undef GRFORGE_SUITES

#define GRFORGE_COMPARE(D)                                                                                          \
  template std::map<std::string, std::vector<int>> weight_grade_ranks(const WAlg<D>&, const ModuleT<D>&,            \
                                                                      const std::vector<int>&);                     \
  template bool is_standard_iso(const WAlg<D>&, const StandardData<D>&, const ModuleT<D>&, std::string*);           \
  template StandardComparison compare_standard(const WAlg<D>&, const std::vector<int>&, const std::string&,         \
                                               const ModuleT<D>&, const std::vector<int>&);
GRFORGE_COMPARE(DomO)
GRFORGE_COMPARE(DomK)
GRFORGE_COMPARE(DomF)
#undef GRFORGE_COMPARE

}  // namespace grforge
