#include "grforge/module.hpp"

namespace grforge {

ModK to_K(const ModO& M) {
  ModK r;
  r.d = DomK{M.d.rs};
  r.m = M.m;
  r.n_alg = M.n_alg;
  r.act = M.act;
  return r;
}

ModF to_k(const ModO& M) {
  ModF r;
  r.d = DomF{M.d.rs.p};
  r.m = M.m;
  r.n_alg = M.n_alg;
  r.act.assign(M.n_alg, std::vector<SparseRow<uint32_t>>(M.m));
  for (int i = 0; i < M.n_alg; ++i)
    for (int j = 0; j < M.m; ++j)
      for (const auto& [k, c] : M.act[i][j]) {
        uint32_t x = residue(c, M.d.rs);
        if (x) r.act[i][j].emplace_back(k, x);
      }
  return r;
}

static const WeightDatum& require_weights(const StructureAlgebra& A) {
  if (!A.weights) throw std::invalid_argument("algebra has no weight datum");
  return *A.weights;
}

WAlg<DomO> at_O(const StructureAlgebra& A) {
  WAlg<DomO> w;
  w.alg = A.alg;
  w.W = require_weights(A);
  w.e = w.W.idem;
  return w;
}

WAlg<DomK> at_K(const StructureAlgebra& A, bool refined) {
  WAlg<DomK> w;
  w.alg = to_K(A.alg);
  w.W = refined && A.weights_K ? *A.weights_K : require_weights(A);
  w.e = w.W.idem;
  return w;
}

WAlg<DomF> at_k(const StructureAlgebra& A) {
  WAlg<DomF> w;
  w.alg = to_k(A.alg);
  w.W = require_weights(A);
  for (const auto& e : w.W.idem) w.e.push_back(reduce_vec(e, A.rs));
  return w;
}

std::vector<LatticeRep> module_filtration(const StructureAlgebra& A, const ModO& M) {
  const RingSpec& rs = A.rs;
  auto ak = to_K(A.alg);
  auto rad = radical_field(ak);
  auto pw = radical_powers(ak, rad);
  auto mk = to_K(M);
  std::vector<LatticeRep> F{ambient_lattice(rs, M.m)};
  for (size_t s = 1; s < pw.size() && F.back().rank() > 0; ++s)
    F.push_back(saturate(rs, ideal_times(mk, pw[s].rows).rows, M.m));
  if (F.back().rank() > 0) F.push_back(saturate(rs, {}, M.m));
  return F;
}

Vec<Scalar> GradedModule::coords(const Vec<Scalar>& v) const {
  return vec_mat(mod.d, v, lifts_inv, mod.m);
}

Vec<Scalar> GradedModule::symbol(const Vec<Scalar>& v, int s) const {
  auto c = coords(v);
  for (int k = 0; k < mod.m; ++k) {
    if (c[k].is_zero()) continue;
    if (grade[k] < s) throw std::invalid_argument("symbol: vector below the given degree");
    if (grade[k] > s) c[k] = Scalar();
  }
  return c;
}

int GradedModule::degree(const Vec<Scalar>& v) const {
  auto c = coords(v);
  int best = static_cast<int>(filtration.size()) - 1;
  for (int k = 0; k < mod.m; ++k)
    if (!c[k].is_zero()) best = std::min(best, grade[k]);
  return best;
}

GradedModule gr_module(const StructureAlgebra& A, const GradedAlgebra& G, const ModO& M) {
  const RingSpec& rs = A.rs;
  DomO o{rs};
  GradedModule GM;
  GM.filtration = module_filtration(A, M);
  const int L = static_cast<int>(GM.filtration.size()) - 1;
  for (int s = 0; s < L; ++s) {
    auto layer = complement_in(rs, GM.filtration[s], GM.filtration[s + 1]);
    GM.grade_ranks.push_back(static_cast<int>(layer.size()));
    for (auto& v : layer) {
      GM.lifts.push_back(std::move(v));
      GM.grade.push_back(s);
    }
  }
  auto inv = mat_inverse(o, GM.lifts, M.m);
  if (!inv) throw std::logic_error("gr_module: adapted lifts do not form a basis");
  GM.lifts_inv = std::move(*inv);
  const int na = G.alg.n();
  GM.mod.d = o;
  GM.mod.m = M.m;
  GM.mod.n_alg = na;
  GM.mod.act.assign(na, std::vector<SparseRow<Scalar>>(M.m));
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < M.m; ++j) {
      int s = G.grade[i] + GM.grade[j];
      auto c = GM.coords(M.apply_elem(G.lifts[i], GM.lifts[j]));
      for (int k = 0; k < M.m; ++k) {
        if (c[k].is_zero()) continue;
        if (GM.grade[k] < s) throw std::logic_error("gr_module: action below its filtration degree");
        if (GM.grade[k] == s) GM.mod.act[i][j].emplace_back(k, c[k]);
      }
    }
  return GM;
}

LatticeRep symbol_lattice(const GradedModule& GM, const LatticeRep& L) {
  const RingSpec& rs = GM.mod.d.rs;
  Mat<Scalar> rows;
  for (size_t s = 0; s + 1 < GM.filtration.size(); ++s) {
    auto cap = lattice_intersection(rs, L, GM.filtration[s]);
    for (const auto& r : cap.rows) {
      auto v = GM.symbol(r, static_cast<int>(s));
      if (!vec_is_zero(GM.mod.d, v)) rows.push_back(std::move(v));
    }
  }
  return make_lattice(rs, std::move(rows), GM.mod.m);
}

template <class D>
static bool standard_at(const WAlg<D>& A, const Span<D>& radA, const std::string& prime,
                        LambdaStandardReport& R, std::map<std::string, int>& dims) {
  bool uniform = true;
  long total = 0;
  for (const auto& l : A.W.Lambda) {
    auto S = standard_data(A, nullptr, l);
    if (!S.trunc.pure) {
      R.failures.push_back({prime, l, l, "truncated projective is not defined"});
      uniform = false;
      continue;
    }
    auto H = head(A, radA, S.Delta);
    dims[l] = H.dim;
    total += static_cast<long>(H.dim) * H.dim;
    if (!H.is_simple) R.failures.push_back({prime, l, l, "head of the truncated projective is not simple"});
    int d = H.weight_dims[l];
    if (d == 0) {
      uniform = false;
      R.failures.push_back({prime, l, l, "e_" + l + " kills L(" + l + ")"});
    } else if (d != 1) {
      R.failures.push_back({prime, l, l, "dim L(" + l + ")_" + l + " = " + std::to_string(d)});
    }
    for (const auto& mu : A.W.Lambda)
      if (H.weight_dims[mu] > 0 && !A.W.leq(mu, l))
        R.failures.push_back({prime, l, mu, "L(" + l + ")_" + mu + " != 0 but " + mu + " is not below " + l});
  }
  if (total != A.alg.n - radA.rank())
    R.failures.push_back({prime, "", "", "the L(lambda) do not exhaust the simple modules"});
  return uniform;
}

LambdaStandardReport is_lambda_standard(const StructureAlgebra& A) {
  LambdaStandardReport R;
  auto K = at_K(A);
  auto k = at_k(A);
  bool uK = standard_at(K, radical_field(K.alg), "0", R, R.dims_K);
  bool uk = standard_at(k, radical_field(k.alg), "m", R, R.dims_k);
  R.uniform = uK && uk;
  R.standard = R.failures.empty();
  return R;
}

}  // namespace grforge
