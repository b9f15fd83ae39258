#include "grforge/tight.hpp"

#include "grforge/qha.hpp"

namespace grforge {

namespace {

template <class D>
AlgebraT<D> on_basis(const AlgebraT<D>& a, const Mat<typename D::Elem>& B, const char* what) {
  using E = typename D::Elem;
  const int m = static_cast<int>(B.size());
  RowSolver<D> solver(a.d, B, a.n);
  AlgebraT<D> r;
  r.d = a.d;
  r.n = m;
  r.sc.assign(static_cast<size_t>(m) * m, {});
  auto u = solver.solve(a.unit);
  if (!u) throw std::invalid_argument(std::string(what) + ": identity not in the span");
  r.unit = *u;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      auto c = solver.solve(a.mul(B[i], B[j]));
      if (!c) throw std::invalid_argument(std::string(what) + ": span not closed under products");
      auto& row = r.sc[static_cast<size_t>(i) * m + j];
      for (int k = 0; k < m; ++k) {
        const E& x = (*c)[k];
        if (a.d.is_zero(x)) continue;
        if (!a.d.in_ring(x)) throw std::invalid_argument(std::string(what) + ": lattice not closed under products");
        row.emplace_back(k, x);
      }
    }
  return r;
}

Mat<Scalar> to_A(const Mat<Scalar>& rows_in_sub, const Mat<Scalar>& basis, const DomK& k, int n) {
  Mat<Scalar> out;
  for (const auto& r : rows_in_sub) out.push_back(vec_mat(k, r, basis, n));
  return out;
}

SpaceK kspan(const DomK& k, Mat<Scalar> rows, int n) { return echelon(k, std::move(rows), n); }

StructureAlgebra bare(const RingSpec& rs, const AlgO& a) {
  StructureAlgebra S;
  S.rs = rs;
  S.alg = a;
  for (int j = 0; j < a.n; ++j) S.labels.push_back("b" + std::to_string(j));
  S.name = "sub";
  return S;
}

}  // namespace

GradedSubalgebraDatum GradedSubalgebraDatum::from_basis(Mat<Scalar> basis, std::vector<int> grade) {
  GradedSubalgebraDatum a;
  a.span = basis;
  a.graded = std::move(basis);
  a.grade = std::move(grade);
  return a;
}

int GradedSubalgebraDatum::top_grade() const {
  int t = 0;
  for (int g : grade) t = std::max(t, g);
  return t;
}

AlgO subalgebra_of(const StructureAlgebra& A, const GradedSubalgebraDatum& a) {
  return on_basis(A.alg, a.span, "subalgebra");
}

AlgK graded_subalgebra_K(const StructureAlgebra& A, const GradedSubalgebraDatum& a) {
  return on_basis(to_K(A.alg), a.graded, "graded subalgebra");
}

ModO restrict_module(const ModO& M, const Mat<Scalar>& S) {
  ModO r;
  r.d = M.d;
  r.m = M.m;
  r.n_alg = static_cast<int>(S.size());
  r.act.assign(r.n_alg, std::vector<SparseRow<Scalar>>(M.m));
  for (int i = 0; i < r.n_alg; ++i)
    for (int j = 0; j < M.m; ++j) {
      auto y = M.apply_elem(S[i], M.basis(j));
      for (int k = 0; k < M.m; ++k)
        if (!y[k].is_zero()) r.act[i][j].emplace_back(k, y[k]);
    }
  return r;
}

ModO lattice_module(const ModO& M, const Mat<Scalar>& rows) {
  const RingSpec& rs = M.d.rs;
  DomK k{rs};
  const int m = static_cast<int>(rows.size());
  RowSolver<DomK> solver(k, rows, M.m);
  ModO r;
  r.d = M.d;
  r.m = m;
  r.n_alg = M.n_alg;
  r.act.assign(M.n_alg, std::vector<SparseRow<Scalar>>(m));
  for (int i = 0; i < M.n_alg; ++i)
    for (int j = 0; j < m; ++j) {
      auto c = solver.solve(M.apply(i, rows[j]));
      if (!c) throw std::invalid_argument("lattice_module: span is not stable");
      for (int t = 0; t < m; ++t) {
        if ((*c)[t].is_zero()) continue;
        if (!in_O((*c)[t], rs)) throw std::invalid_argument("lattice_module: lattice is not stable");
        r.act[i][j].emplace_back(t, (*c)[t]);
      }
    }
  return r;
}

TightReport is_tight(const AlgO& a, const ModO& M) {
  const RingSpec& rs = a.d.rs;
  if (M.n_alg != a.n) throw std::invalid_argument("is_tight: module is not over this algebra");
  TightReport R;
  auto ak = to_K(a);
  auto pw = radical_powers(ak, radical_field(ak));
  R.nilpotency = static_cast<int>(pw.size()) - 1;
  auto mk = to_K(M);
  for (int r = 1; r < static_cast<int>(pw.size()); ++r) {
    auto lhs = saturate(rs, ideal_times(mk, pw[r].rows).rows, M.m);
    auto rad_r = saturate(rs, pw[r].rows, a.n);
    auto rhs = ideal_times(M, rad_r.rows);
    if (!(lhs == rhs)) {
      R.first_failure = r;
      return R;
    }
  }
  R.tight = true;
  return R;
}

TightGradingReport is_tightly_graded(const AlgK& a, const std::vector<int>& grade) {
  const DomK& k = a.d;
  const int n = a.n;
  TightGradingReport R;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& [t, c] : a.prod(i, j))
        if (grade[t] != grade[i] + grade[j]) throw std::invalid_argument("is_tightly_graded: grading is not multiplicative");
  R.positive = std::all_of(grade.begin(), grade.end(), [](int g) { return g >= 0; });
  if (!R.positive) R.reasons.push_back("negative degrees occur");
  int top = 0;
  for (int g : grade) top = std::max(top, g);
  std::vector<Mat<Scalar>> piece(top + 1);
  for (int i = 0; i < n; ++i)
    if (grade[i] >= 0) piece[grade[i]].push_back(a.basis(i));
  R.unit_in_degree_zero = true;
  for (int i = 0; i < n; ++i)
    if (!a.unit[i].is_zero() && grade[i] != 0) R.unit_in_degree_zero = false;
  if (!R.unit_in_degree_zero) R.reasons.push_back("identity is not homogeneous of degree 0");
  if (R.unit_in_degree_zero && !piece[0].empty()) {
    auto a0 = subalgebra(a, kspan(k, piece[0], n));
    R.degree_zero_semisimple = a0 && radical_field(*a0).rank() == 0;
  }
  if (!R.degree_zero_semisimple) R.reasons.push_back("degree 0 is not semisimple");
  R.generated_in_degree_one = true;
  auto cur = kspan(k, piece.size() > 1 ? piece[1] : Mat<Scalar>{}, n);
  for (int r = 2; r <= top; ++r) {
    Mat<Scalar> prods;
    for (const auto& x : piece[1])
      for (const auto& y : cur.rows) prods.push_back(a.mul(x, y));
    cur = kspan(k, std::move(prods), n);
    if (!(cur == kspan(k, piece[r], n))) R.generated_in_degree_one = false;
  }
  if (!R.generated_in_degree_one) R.reasons.push_back("not generated in degree 1");
  auto pw = radical_powers(a, radical_field(a));
  R.radical_matches_grading = true;
  for (int r = 0; r <= std::max(top + 1, static_cast<int>(pw.size()) - 1); ++r) {
    Mat<Scalar> tail;
    for (int s = r; s <= top; ++s) tail.insert(tail.end(), piece[s].begin(), piece[s].end());
    auto rad_r = r < static_cast<int>(pw.size()) ? pw[r] : zero_span<DomK>(n);
    if (!(rad_r == kspan(k, std::move(tail), n))) R.radical_matches_grading = false;
  }
  if (!R.radical_matches_grading) R.reasons.push_back("rad^r differs from the sum of degrees >= r");
  R.tight = R.positive && R.unit_in_degree_zero && R.degree_zero_semisimple && R.generated_in_degree_one &&
            R.radical_matches_grading;
  return R;
}

std::optional<DeltaGrading> induced_delta_grading(const StructureAlgebra& A, const GradedSubalgebraDatum& a,
                                                  const std::string& lambda) {
  auto WK = at_K(A);
  auto S = standard_data(WK, nullptr, lambda);
  DomK k{A.rs};
  auto c = coords(k, S.P_span, WK.idem(lambda));
  if (!c) return std::nullopt;
  auto v = S.trunc.quotient.project(*c);
  DeltaGrading g;
  const int top = a.top_grade();
  Mat<Scalar> all;
  for (int r = 0; r <= top; ++r) {
    Mat<Scalar> rows;
    for (size_t j = 0; j < a.graded.size(); ++j)
      if (a.grade[j] == r) rows.push_back(S.Delta.apply_elem(a.graded[j], v));
    auto sp = kspan(k, std::move(rows), S.Delta.m);
    for (const auto& x : sp.rows) {
      g.vectors.push_back(x);
      g.grade.push_back(r);
      all.push_back(x);
    }
  }
  if (static_cast<int>(all.size()) != S.Delta.m || rank_of(k, all, S.Delta.m) != S.Delta.m) return std::nullopt;
  return g;
}

Conditions51 conditions_5_1_check(const StructureAlgebra& A, const GradedSubalgebraDatum& a,
                                  const std::map<std::string, DeltaGrading>* delta_gradings) {
  const RingSpec& rs = A.rs;
  DomK k{rs};
  DomO o{rs};
  const int n = A.n();
  Conditions51 C;
  auto AK = to_K(A.alg);
  // (1)
  auto aK = graded_subalgebra_K(A, a);
  C.grading = is_tightly_graded(aK, a.grade);
  C.c1 = C.grading.tight;
  if (!C.c1)
    for (const auto& r : C.grading.reasons) C.witnesses.push_back("(1) " + r);
  // (2)
  auto radA = radical_field(AK);
  auto rad_a = to_A(radical_field(aK).rows, a.graded, k, n);
  Mat<Scalar> left, right;
  for (const auto& x : rad_a)
    for (int j = 0; j < n; ++j) {
      left.push_back(AK.rmul_basis(x, j));
      right.push_back(AK.lmul_basis(j, x));
    }
  bool l2 = kspan(k, left, n) == radA, r2 = kspan(k, right, n) == radA;
  C.c2 = l2 && r2;
  if (!l2) C.witnesses.push_back("(2) (rad a_K) A_K has dimension " + std::to_string(kspan(k, left, n).rank()) +
                                 ", rad A_K has dimension " + std::to_string(radA.rank()));
  if (!r2) C.witnesses.push_back("(2) A_K (rad a_K) differs from rad A_K");
  // A_{K,0}
  Mat<Scalar> a0;
  for (size_t j = 0; j < a.graded.size(); ++j)
    if (a.grade[j] == 0) a0.push_back(a.graded[j]);
  if (a.complement_K0) {
    C.complement_K0 = *a.complement_K0;
  } else {
    Mat<Scalar> gens = a0;
    if (A.weights)
      for (const auto& e : A.weights->idem) gens.push_back(e);
    auto S = kspan(k, gens, n);
    while (true) {
      Mat<Scalar> more = S.rows;
      for (const auto& x : S.rows)
        for (const auto& y : S.rows) more.push_back(AK.mul(x, y));
      auto S2 = kspan(k, std::move(more), n);
      if (S2.rank() == S.rank()) break;
      S = std::move(S2);
    }
    auto W0 = wedderburn_complement(AK, &S);
    if (W0) C.complement_K0 = W0->rows;
    else C.witnesses.push_back("(4) no Wedderburn complement containing a_{K,0} and the weight idempotents");
  }
  auto K0 = kspan(k, C.complement_K0, n);
  // (3) and (4)
  C.c3 = C.c4 = !C.complement_K0.empty();
  for (const auto& x : a0)
    if (!in_span(k, K0, x)) {
      C.c4 = false;
      C.witnesses.push_back("(4) A_{K,0} does not contain a_{K,0}");
      break;
    }
  if (A.weights) {
    for (const auto& e : A.weights->idem)
      if (!in_span(k, K0, e)) {
        C.c4 = false;
        C.witnesses.push_back("(4) A_{K,0} misses a weight idempotent");
        break;
      }
    auto WK = at_K(A);
    for (const auto& l : A.weights->Lambda) {
      std::optional<DeltaGrading> g;
      if (delta_gradings && delta_gradings->count(l)) g = delta_gradings->at(l);
      else g = induced_delta_grading(A, a, l);
      if (!g) {
        C.c3 = false;
        C.delta_problems[l] = "no graded structure on Delta_K(" + l + ")";
        continue;
      }
      auto S = standard_data(WK, nullptr, l);
      const auto& D = S.Delta;
      int top = 0;
      for (int x : g->grade) top = std::max(top, x);
      std::vector<SpaceK> piece(top + 1);
      for (int r = 0; r <= top; ++r) {
        Mat<Scalar> rows;
        for (size_t j = 0; j < g->vectors.size(); ++j)
          if (g->grade[j] == r) rows.push_back(g->vectors[j]);
        piece[r] = kspan(k, std::move(rows), D.m);
      }
      bool graded = true;
      for (size_t i = 0; i < a.graded.size() && graded; ++i)
        for (int s = 0; s <= top && graded; ++s)
          for (const auto& w : piece[s].rows) {
            auto y = D.apply_elem(a.graded[i], w);
            int t = s + a.grade[i];
            if (t > top ? !vec_is_zero(k, y) : !in_span(k, piece[t], y)) {
              graded = false;
              break;
            }
          }
      Mat<Scalar> gen;
      for (size_t i = 0; i < a.graded.size(); ++i)
        for (const auto& w : piece[0].rows) gen.push_back(D.apply_elem(a.graded[i], w));
      bool generated = rank_of(k, gen, D.m) == D.m;
      if (!graded || !generated) {
        C.c3 = false;
        C.delta_problems[l] = !graded ? "grading of Delta_K(" + l + ") is not compatible with a_K"
                                      : "Delta_K(" + l + ") is not generated in degree 0";
      }
      for (const auto& x : C.complement_K0) {
        bool ok = true;
        for (const auto& w : piece[0].rows) ok = ok && in_span(k, piece[0], D.apply_elem(x, w));
        if (!ok) {
          C.c4 = false;
          C.delta_problems[l] += (C.delta_problems[l].empty() ? "" : "; ") +
                                 std::string("Delta_K(" + l + ")_0 is not A_{K,0}-stable");
          break;
        }
      }
    }
  }
  // (5): a is the direct sum of its pure graded pieces
  auto span = make_lattice(rs, a.span, n);
  auto sum = make_lattice(rs, a.graded, n);
  C.direct_sum = sum == span && sum.rank() == static_cast<int>(a.graded.size());
  if (!C.direct_sum) C.witnesses.push_back("(5) the graded pieces do not add up to a");
  C.pure_pieces = true;
  for (int r = 0; r <= a.top_grade(); ++r) {
    Mat<Scalar> rows;
    for (size_t j = 0; j < a.graded.size(); ++j)
      if (a.grade[j] == r) rows.push_back(a.graded[j]);
    auto piece = make_lattice(rs, rows, n);
    if (!(pure_closure(rs, piece, span) == piece)) {
      C.pure_pieces = false;
      C.witnesses.push_back("(5) a_" + std::to_string(r) + " differs from a cap a_{K," + std::to_string(r) + "}");
    }
  }
  C.c5 = C.grading.positive && C.direct_sum && C.pure_pieces;
  if (C.c1 && C.c5) {
    // x -> [x] from a on its graded basis to gr a
    auto ao = on_basis(A.alg, a.graded, "graded subalgebra");
    auto S = bare(rs, ao);
    auto G = gr_algebra(S);
    Mat<Scalar> phi;
    bool homogeneous = true;
    for (int j = 0; j < ao.n; ++j) {
      Vec<Scalar> x = ao.basis(j);
      try {
        auto s = symbol(G, x, a.grade[j]);
        for (int t = 0; t < ao.n; ++t)
          if (!s[t].is_zero() && G.grade[t] != a.grade[j]) homogeneous = false;
        phi.push_back(std::move(s));
      } catch (const std::invalid_argument&) {
        homogeneous = false;
        phi.push_back(Vec<Scalar>(ao.n));
      }
    }
    auto inv = mat_inverse(o, phi, ao.n);
    bool invertible = inv.has_value();
    if (inv)
      for (const auto& r : *inv)
        for (const auto& x : r) invertible = invertible && in_O(x, rs);
    bool mult = true;
    for (int i = 0; i < ao.n && mult; ++i)
      for (int j = 0; j < ao.n; ++j) {
        auto lhs = vec_mat(o, ao.mul(ao.basis(i), ao.basis(j)), phi, ao.n);
        if (lhs != G.alg.alg.mul(phi[i], phi[j])) {
          mult = false;
          break;
        }
      }
    C.symbol_iso = homogeneous && invertible && mult;
    if (!C.symbol_iso) C.witnesses.push_back("(5) x -> [x] is not a graded isomorphism a -> gr a");
  }
  return C;
}

Prop52Verdicts prop_5_2_verdicts(const AlgO& a, const std::vector<int>& grade, const ModO& M) {
  const RingSpec& rs = a.d.rs;
  Prop52Verdicts V;
  V.tight = is_tight(a, M).tight;
  auto ak = to_K(a);
  auto pw = radical_powers(ak, radical_field(ak));
  auto mk = to_K(M);
  int top = 0;
  for (int g : grade) top = std::max(top, g);
  V.graded_radical = true;
  for (int r = 1; r <= std::max(top, static_cast<int>(pw.size()) - 1); ++r) {
    Mat<Scalar> tail;
    for (int j = 0; j < a.n; ++j)
      if (grade[j] >= r) tail.push_back(a.basis(j));
    auto lhs = ideal_times(M, tail);
    auto rhs = r < static_cast<int>(pw.size()) ? saturate(rs, ideal_times(mk, pw[r].rows).rows, M.m)
                                               : zero_span<DomO>(M.m);
    if (!(lhs == rhs)) V.graded_radical = false;
  }
  auto S = bare(rs, a);
  auto G = gr_algebra(S);
  auto GM = gr_module(S, G, M);
  Mat<Scalar> zero;
  for (int j = 0; j < GM.mod.m; ++j)
    if (GM.grade[j] == 0) zero.push_back(GM.mod.basis(j));
  V.generated_by_zero = generated_submodule(GM.mod, std::move(zero)) == ambient_lattice(rs, GM.mod.m);
  return V;
}

EKLambda e_k_lambda(const StructureAlgebra& A, const std::string& lambda) {
  bool refined = A.weights_K && A.weights_K->x_index(lambda) >= 0;
  auto WK = at_K(A, refined);
  auto S = standard_data(WK, nullptr, lambda);
  DomK k{A.rs};
  EKLambda r;
  r.dim_P = S.P.m;
  r.dim_Delta = S.Delta.m;
  r.kernel = kspan(k, to_A(S.trunc.kernel.rows, S.P_span.rows, k, A.n()), A.n());
  if (r.kernel.rank() != r.dim_P - r.dim_Delta) throw std::logic_error("e_k_lambda: no surjection onto Delta_K");
  return r;
}

Thm53Report thm_5_3_pipeline(const StructureAlgebra& A, const GradedSubalgebraDatum& a, const std::string& lambda,
                             const Mat<Scalar>& Pdagger_in, const Vec<Scalar>& v_in, const Mat<Scalar>& P0_in) {
  const RingSpec& rs = A.rs;
  DomO o{rs};
  DomK k{rs};
  const int n = A.n();
  Thm53Report R;
  // common rescaling into A
  long shift = 0;
  auto scan = [&](const Vec<Scalar>& x) {
    for (const auto& c : x)
      if (!c.is_zero()) shift = std::max(shift, -*valuation(c, rs));
  };
  for (const auto& r : Pdagger_in) scan(r);
  scan(v_in);
  for (const auto& r : P0_in) scan(r);
  auto sc = pi_pow(rs, shift);
  auto rescale = [&](Vec<Scalar> x) {
    scale(o, x, sc);
    return x;
  };
  Mat<Scalar> Pd, P0;
  for (const auto& r : Pdagger_in) Pd.push_back(rescale(r));
  for (const auto& r : P0_in) P0.push_back(rescale(r));
  auto v = rescale(v_in);
  if (shift) R.notes.push_back("inputs rescaled by pi^" + std::to_string(shift));

  auto C51 = conditions_5_1_check(A, a);
  R.conditions_5_1 = C51.all();
  if (!R.conditions_5_1) R.notes.push_back("the graded subalgebra conditions fail");
  auto chain = certify_qha(A);
  auto std_rep = is_lambda_standard(A);
  R.hypothesis_4_7 = chain.ok && std_rep.standard;
  if (!R.hypothesis_4_7) R.notes.push_back("A is not a Lambda-standard split QHA");

  auto reg = regular_module(A.alg);
  auto PdL = make_lattice(rs, Pd, n);
  const auto& e = A.weights->e(lambda);
  bool weight = A.alg.mul(e, v) == v && lattice_contains(rs, PdL, v);
  if (!is_submodule(reg, PdL)) R.notes.push_back("P-dagger is not A-stable");
  // (i)
  R.cond_i = weight && is_submodule(reg, PdL) && generated_submodule(reg, {v}) == PdL;
  if (!R.cond_i) R.notes.push_back("(i) A v differs from P-dagger");
  // (ii)
  auto AK = to_K(A.alg);
  auto radA = radical_field(AK);
  Mat<Scalar> rp;
  for (const auto& x : radA.rows)
    for (const auto& y : PdL.rows) rp.push_back(AK.mul(x, y));
  auto radP = kspan(k, std::move(rp), n);
  Mat<Scalar> radP_int;
  for (const auto& r : radP.rows) radP_int.push_back(clear_denominators(r));
  auto cap = pure_closure(rs, make_lattice(rs, radP_int, n), PdL);
  auto P0L = make_lattice(rs, P0, n);
  R.cond_ii_sum = lattice_subset(rs, P0L, PdL) && lattice_sum(rs, P0L, cap) == PdL && P0L.rank() + cap.rank() == PdL.rank();
  if (!R.cond_ii_sum) R.notes.push_back("(ii) P-dagger is not P0 plus its radical part");
  auto PK = kspan(k, PdL.rows, n);
  auto regK = to_K(reg);
  auto PKmod = submodule(regK, PK);
  auto WK = at_K(A);
  auto tr = truncate(WK, PKmod, A.weights->down_set(lambda));
  auto Ek = to_A(tr.kernel.rows, PK.rows, k, n);
  Mat<Scalar> VK = P0;
  VK.insert(VK.end(), Ek.begin(), Ek.end());
  auto Vsp = kspan(k, VK, n);
  R.cond_ii_stable = true;
  for (const auto& x : C51.complement_K0)
    for (const auto& w : Vsp.rows)
      if (!in_span(k, Vsp, AK.mul(x, w))) R.cond_ii_stable = false;
  if (C51.complement_K0.empty()) R.cond_ii_stable = false;
  if (!R.cond_ii_stable) R.notes.push_back("(ii) K P0 + E_K(lambda) is not A_{K,0}-stable");
  // (iii)
  auto sub = subalgebra_of(A, a);
  if (is_submodule(reg, PdL)) {
    auto Pmod = submodule(reg, PdL);
    R.cond_iii = is_tight(sub, restrict_module(Pmod, a.span)).tight;
  }
  if (!R.cond_iii) R.notes.push_back("(iii) P-dagger is not tight over a");
  // the standard module restricted to a, and its graded head
  auto Delta = standard_data(at_O(A), nullptr, lambda).Delta;
  R.delta_tight = is_tight(sub, restrict_module(Delta, a.span)).tight;
  auto G = gr_algebra(A);
  auto GM = gr_module(A, G, Delta);
  auto Gk = at_k(G.alg);
  auto radk = radical_field(Gk.alg);
  auto H = head(Gk, radk, to_k(GM.mod));
  auto Lk = simple_modules(Gk, radk);
  const auto* L = Lk.find(lambda);
  R.head_is_L = H.is_simple && H.label == lambda && L && L->dim == H.dim;
  R.divergence = R.hypotheses() && !(R.delta_tight && R.head_is_L);
  return R;
}

}  // namespace grforge
