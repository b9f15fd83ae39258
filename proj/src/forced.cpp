#include "grforge/forced.hpp"

#include "grforge/qha.hpp"

namespace grforge {

namespace {

SpaceK to_space(const RingSpec& rs, const LatticeRep& L) { return echelon(DomK{rs}, L.rows, L.n); }

// dim e_lambda S for a submodule S of M over K
int weight_dim(const ModK& M, const Vec<Scalar>& e, const SpaceK& S) {
  Mat<Scalar> rows;
  for (const auto& r : S.rows) rows.push_back(M.apply_elem(e, r));
  return rank_of(M.d, rows, M.m);
}

const WeightDatum& weights_of(const StructureAlgebra& A) {
  if (!A.weights) throw std::invalid_argument("algebra has no weight datum");
  return *A.weights;
}

std::vector<int> section_ranks(const RingSpec& rs, const LatticeRep& R, const std::vector<LatticeRep>& F) {
  std::vector<int> r;
  for (size_t g = 0; g + 1 < F.size(); ++g)
    r.push_back(lattice_intersection(rs, R, F[g]).rank() - lattice_intersection(rs, R, F[g + 1]).rank());
  return r;
}

}  // namespace

NPrime n_prime(const StructureAlgebra& A, const ModO& N, const std::string& lambda) {
  const auto& W = weights_of(A);
  if (!W.in_lambda(lambda)) throw std::invalid_argument("n_prime: " + lambda + " is not in Lambda");
  auto NK = to_K(N);
  Mat<Scalar> gens;
  for (const auto& mu : W.Lambda) {
    if (!W.lt(lambda, mu)) continue;
    auto ws = weight_space(NK, W.e(mu));
    gens.insert(gens.end(), ws.rows.begin(), ws.rows.end());
  }
  NPrime r;
  r.span = generated_submodule(NK, std::move(gens));
  r.lattice = saturate(A.rs, r.span.rows, N.m);
  return r;
}

PrimitivityContext::PrimitivityContext(const StructureAlgebra& A, const ModO& N)
    : A_(&A), N_(&N), filtration_(module_filtration(A, N)) {
  weights_of(A);
}

const NPrime& PrimitivityContext::nprime(const std::string& lambda) const {
  auto it = nprime_.find(lambda);
  if (it == nprime_.end()) it = nprime_.emplace(lambda, n_prime(*A_, *N_, lambda)).first;
  return it->second;
}

LatticeRep PrimitivityContext::weight_lattice(const std::string& lambda) const {
  return weight_space(*N_, A_->weights->e(lambda));
}

PrimitivityReport PrimitivityContext::test(const Vec<Scalar>& v, const std::string& lambda) const {
  const RingSpec& rs = A_->rs;
  const auto& W = *A_->weights;
  const int m = N_->m;
  if (!W.in_lambda(lambda)) throw std::invalid_argument("primitivity_test: " + lambda + " is not in Lambda");
  if (N_->apply_elem(W.e(lambda), v) != v) throw std::invalid_argument("primitivity_test: not a weight vector");
  for (const auto& x : v)
    if (!in_O(x, rs)) throw std::invalid_argument("primitivity_test: vector not in the lattice");
  PrimitivityReport R;
  R.v = v;
  R.lambda = lambda;
  const auto& np = nprime(lambda);
  auto ambient = ambient_lattice(rs, m);
  auto with_v = [&](const LatticeRep& L) {
    Mat<Scalar> rows = L.rows;
    rows.push_back(v);
    return make_lattice(rs, std::move(rows), m);
  };
  R.pure_primitive = is_pure(rs, with_v(np.lattice), ambient);
  R.primitive = !lattice_contains(rs, np.lattice, v) && R.pure_primitive;
  const int L = static_cast<int>(filtration_.size()) - 1;
  R.grade = 0;
  while (R.grade < L && lattice_contains(rs, filtration_[R.grade + 1], v)) ++R.grade;
  Mat<Scalar> rows = np.span.rows;
  if (R.grade + 1 <= L) rows.insert(rows.end(), filtration_[R.grade + 1].rows.begin(), filtration_[R.grade + 1].rows.end());
  auto Fi = saturate(rs, rows, m);
  R.pure_strong = is_pure(rs, with_v(Fi), ambient);
  R.strongly_primitive = !vec_is_zero(DomO{rs}, v) && !lattice_contains(rs, Fi, v) && R.pure_strong;
  if (R.primitive) {
    // weights of N_K / N'_K(lambda)
    auto q = quotient_module(to_K(*N_), np.span);
    for (const auto& mu : W.Lambda)
      if (W.lt(lambda, mu) && weight_space(q.mod, W.e(mu)).rank() > 0) R.top_weight = false;
    if (weight_space(q.mod, W.e(lambda)).rank() == 0) R.top_weight = false;
  }
  return R;
}

PrimitivityReport primitivity_test(const StructureAlgebra& A, const ModO& N, const Vec<Scalar>& v,
                                   const std::string& lambda) {
  return PrimitivityContext(A, N).test(v, lambda);
}

GrBModule gr_b(const StructureAlgebra& A, const GradedModule& GM, const ModO& N) {
  const RingSpec& rs = A.rs;
  const auto& W = weights_of(A);
  GrBModule out;
  out.acting = A.name;
  auto NK = to_K(N);
  const auto& F = GM.filtration;
  const int L = static_cast<int>(F.size()) - 1;
  Mat<Scalar> gens;
  for (const auto& l : W.Lambda) {
    const auto& e = W.e(l);
    auto NL = weight_space(N, e);
    if (NL.rank() == 0) continue;
    auto np = n_prime(A, N, l);
    for (int i = 0; i < L; ++i) {
      int top = weight_dim(NK, e, span_sum(NK.d, to_space(rs, F[i]), np.span));
      int below = weight_dim(NK, e, span_sum(NK.d, to_space(rs, F[i + 1]), np.span));
      if (top == below) continue;
      out.strata.emplace_back(l, i);
      for (const auto& r : lattice_intersection(rs, F[i], NL).rows) {
        auto s = GM.symbol(r, i);
        if (!vec_is_zero(GM.mod.d, s)) gens.push_back(std::move(s));
      }
    }
  }
  out.lattice = generated_submodule(GM.mod, std::move(gens));
  for (int s = 0; s < L; ++s) {
    Mat<Scalar> rows;
    for (int k = 0; k < GM.mod.m; ++k)
      if (GM.grade[k] == s) rows.push_back(GM.mod.basis(k));
    out.grade_ranks.push_back(
        lattice_intersection(rs, out.lattice, make_lattice(rs, std::move(rows), GM.mod.m)).rank());
  }
  return out;
}

std::optional<TruncatedAction> truncated_action(const StructureAlgebra& A, const ModO& N,
                                                const std::vector<std::string>& gamma) {
  auto WA = at_O(A);
  auto reg = regular_module(A.alg);
  auto t = truncate(WA, reg, gamma);
  if (!t.pure) return std::nullopt;
  DomO o{A.rs};
  for (const auto& r : t.kernel.rows)
    for (int j = 0; j < N.m; ++j)
      if (!vec_is_zero(o, N.apply_elem(r, N.basis(j)))) return std::nullopt;
  auto q = quotient_algebra(A.alg, t.kernel);
  TruncatedAction out;
  auto& B = out.alg;
  B.rs = A.rs;
  B.alg = q.alg;
  B.name = A.name + "_Gamma";
  for (int l : q.lift) B.labels.push_back(A.labels.empty() ? std::to_string(l) : A.labels[l]);
  const auto& W = *A.weights;
  WeightDatum V;
  for (size_t x = 0; x < W.X.size(); ++x) {
    const auto& nu = W.X[x];
    if (W.in_lambda(nu) && std::find(gamma.begin(), gamma.end(), nu) == gamma.end()) continue;
    auto e = q.project(W.idem[x]);
    if (vec_is_zero(o, e)) continue;
    V.X.push_back(nu);
    V.idem.push_back(std::move(e));
  }
  V.Lambda = gamma;
  for (const auto& [a, b] : W.less)
    if (std::find(gamma.begin(), gamma.end(), a) != gamma.end() &&
        std::find(gamma.begin(), gamma.end(), b) != gamma.end())
      V.less.emplace_back(a, b);
  V.close();
  B.weights = V;
  out.mod.d = o;
  out.mod.m = N.m;
  out.mod.n_alg = q.alg.n;
  for (int l : q.lift) out.mod.act.push_back(N.act[l]);
  return out;
}

Lemma49Report lemma_4_9_check(const StructureAlgebra& A, const std::string& lambda) {
  Lemma49Report R;
  auto C = certify_qha(A);
  if (!C.ok) {
    R.refused = true;
    R.reason = "not a split QHA: step " + std::to_string(C.failed_step) + " condition " + C.failed_condition;
    return R;
  }
  auto S = is_lambda_standard(A);
  if (!S.standard) {
    R.refused = true;
    R.reason = "weight datum is not Lambda-standard: " + S.failures.front().what;
    return R;
  }
  auto G = gr_algebra(A);
  auto D = standard_data(at_O(A), nullptr, lambda).Delta;
  auto GM = gr_module(A, G, D);
  auto Gk = at_k(G.alg);
  auto radk = radical_field(Gk.alg);
  R.simple_head = head(Gk, radk, to_k(GM.mod)).is_simple;
  R.grb_equals_gr = gr_b(A, GM, D).full();
  R.biconditional = R.simple_head == R.grb_equals_gr;
  return R;
}

GradedFiltration gr_delta_filtration(const StructureAlgebra& A, const ModO& N, const std::vector<std::string>* order) {
  const RingSpec& rs = A.rs;
  const auto& W = weights_of(A);
  auto WA = at_O(A);
  auto G = gr_algebra(A);
  std::map<std::string, StandardData<DomO>> table;
  std::map<std::string, std::vector<int>> gr_ranks;
  for (const auto& l : W.Lambda) {
    auto S = standard_data(WA, nullptr, l);
    if (S.trunc.pure) gr_ranks[l] = gr_module(A, G, S.Delta).grade_ranks;
    table.emplace(l, std::move(S));
  }
  GradedFiltration out;
  ModO cur = N;
  while (cur.m > 0) {
    std::vector<std::string> present;
    for (const auto& l : W.Lambda)
      if (weight_space(cur, W.e(l)).rank() > 0) present.push_back(l);
    if (present.empty()) {
      out.failure = "a quotient has no weight in Lambda";
      return out;
    }
    auto maxes = W.maximal(present);
    std::string l = maxes.front();
    if (order) {
      auto it = std::find_if(order->begin(), order->end(), [&](const std::string& s) {
        return std::find(maxes.begin(), maxes.end(), s) != maxes.end();
      });
      if (it != order->end()) l = *it;
    }
    auto GMc = gr_module(A, G, cur);
    const auto& F = GMc.filtration;
    const int L = static_cast<int>(F.size()) - 1;
    auto NL = weight_space(cur, W.e(l));
    int m1 = 0;
    while (m1 < L && lattice_subset(rs, NL, F[m1 + 1])) ++m1;
    auto NL_deep = lattice_intersection(rs, NL, F[std::min(m1 + 1, L)]);
    auto M = complement_in(rs, NL, NL_deep);
    GradedSection sec;
    sec.label = l;
    sec.shift = m1;
    sec.multiplicity = static_cast<int>(M.size());
    auto R = generated_submodule(cur, M);
    sec.pure = is_pure(rs, R, ambient_lattice(rs, cur.m));
    std::string why;
    const auto& S = table.at(l);
    if (!S.trunc.pure) {
      sec.isomorphic = false;
      why = "no standard module for " + l;
    } else {
      sec.isomorphic = delta_power_iso(S, cur, M, R, &why).has_value();
    }
    if (!sec.pure || !sec.isomorphic) {
      sec.problem = sec.pure ? why : "R is not pure";
      out.sections.push_back(std::move(sec));
      out.failure = "section " + std::to_string(out.sections.size()) + " (" + l + "): " + out.sections.back().problem;
      return out;
    }
    // (4.2): rad^s R_K = R_K cap rad^{m1+s} N_K, compared by rank
    auto Rmod = submodule(cur, R);
    auto FR = module_filtration(A, Rmod);
    for (int s = 0; m1 + s <= L; ++s) {
      int lhs = s < static_cast<int>(FR.size()) ? FR[s].rank() : 0;
      int rhs = lattice_intersection(rs, R, F[m1 + s]).rank();
      if (lhs != rhs) sec.radical_compatible = false;
    }
    sec.grade_ranks = section_ranks(rs, R, F);
    std::vector<int> expect(L, 0);
    const auto& gd = gr_ranks.at(l);
    for (size_t g = 0; g < gd.size(); ++g) {
      if (m1 + static_cast<int>(g) >= L) {
        if (gd[g]) sec.radical_compatible = false;
        continue;
      }
      expect[m1 + g] = gd[g] * sec.multiplicity;
    }
    if (expect != sec.grade_ranks) sec.radical_compatible = false;
    if (!sec.radical_compatible) out.k_level_ok = false;
    // the section gr^b N cap gr^# R inside gr N
    auto sharp = symbol_lattice(GMc, R);
    auto grb = gr_b(A, GMc, cur);
    auto section = lattice_intersection(rs, grb.lattice, sharp);
    Mat<Scalar> tops;
    for (const auto& u : M) tops.push_back(GMc.symbol(u, m1));
    auto lower = generated_submodule(GMc.mod, std::move(tops));
    sec.sandwich = lattice_subset(rs, lower, section) && lattice_subset(rs, section, sharp);
    sec.standard = section == sharp && sec.radical_compatible;
    if (!sec.standard && !sec.sandwich) sec.problem = "section is not sandwiched";
    // conditions (1)-(3)
    auto NK = to_K(cur);
    auto gen_l = generated_submodule(NK, NL.rows);
    sec.cond1 = true;
    for (const auto& r : R.rows) sec.cond1 = sec.cond1 && in_span(NK.d, gen_l, r);
    auto RL = lattice_intersection(rs, R, NL);
    sec.cond2 = true;
    for (int i = 0; i <= L; ++i) {
      auto sum = lattice_sum(rs, RL, lattice_intersection(rs, F[i], NL));
      sec.cond2 = sec.cond2 && is_pure(rs, sum, NL);
    }
    sec.cond3 = lattice_sum(rs, RL, NL_deep) == NL && RL.rank() + NL_deep.rank() == NL.rank();
    if (sec.cond3) {
      ++out.cond3_tested;
      if (!sec.cond2) ++out.cond3_without_cond2;
    }
    auto q = quotient_module(cur, R);
    if (q.mod.m > 0) {
      auto GMq = gr_module(A, G, q.mod);
      auto grbq = gr_b(A, GMq, q.mod);
      Mat<Scalar> phi;
      for (int k = 0; k < cur.m; ++k) phi.push_back(GMq.symbol(q.project(GMc.lifts[k]), GMc.grade[k]));
      Mat<Scalar> img;
      for (const auto& r : grb.lattice.rows) img.push_back(vec_mat(DomO{rs}, r, phi, q.mod.m));
      sec.grb_surjects = make_lattice(rs, std::move(img), q.mod.m) == grbq.lattice;
    } else {
      sec.grb_surjects = true;
    }
    out.sections.push_back(std::move(sec));
    cur = std::move(q.mod);
  }
  for (size_t i = 0; i < out.sections.size(); ++i)
    for (size_t j = i + 1; j < out.sections.size(); ++j)
      if (W.lt(out.sections[i].label, out.sections[j].label)) out.ordering_ok = false;
  auto df = delta_filtration(WA, table, N);
  out.matches_delta_filtration = df.ok && df.multiset() == out.multiset();
  out.ok = out.ordering_ok && out.k_level_ok;
  if (!out.k_level_ok) out.failure = "a section is not compatible with the K-level radical filtration";
  return out;
}

}  // namespace grforge
