#include "grforge/qha.hpp"

#include <numeric>
#include <set>

namespace grforge {

namespace {

template <class D>
bool unit_in(const D& d, const typename D::Elem& c) {
  if constexpr (D::is_field)
    return !d.is_zero(c);
  else
    return !d.is_zero(c) && d.in_ring(c) && d.key(c) == 0;
}

// f A g
template <class D>
Span<D> corner(const AlgebraT<D>& a, const Vec<typename D::Elem>& f, const Vec<typename D::Elem>& g) {
  Mat<typename D::Elem> rows;
  for (int i = 0; i < a.n; ++i) rows.push_back(a.mul(a.rmul_basis(f, i), g));
  return echelon(a.d, std::move(rows), a.n);
}

template <class D>
Mat<typename D::Elem> left_ideal_rows(const AlgebraT<D>& a, const Vec<typename D::Elem>& f) {
  Mat<typename D::Elem> rows;
  for (int i = 0; i < a.n; ++i) rows.push_back(a.lmul_basis(i, f));
  return rows;
}

template <class D>
Mat<typename D::Elem> right_ideal_rows(const AlgebraT<D>& a, const Vec<typename D::Elem>& f) {
  Mat<typename D::Elem> rows;
  for (int i = 0; i < a.n; ++i) rows.push_back(a.rmul_basis(f, i));
  return rows;
}

template <class D>
Mat<typename D::Elem> two_sided_rows(const AlgebraT<D>& a, const Vec<typename D::Elem>& e) {
  Mat<typename D::Elem> rows;
  for (int j = 0; j < a.n; ++j) {
    auto ej = a.rmul_basis(e, j);
    for (int i = 0; i < a.n; ++i) rows.push_back(a.lmul_basis(i, ej));
  }
  return rows;
}

template <class D>
Mat<typename D::Elem> product_rows(const AlgebraT<D>& a, const Mat<typename D::Elem>& U,
                                   const Mat<typename D::Elem>& V) {
  Mat<typename D::Elem> rows;
  for (const auto& x : U)
    for (const auto& y : V) rows.push_back(a.mul(x, y));
  return rows;
}

template <class D>
Vec<typename D::Elem> vsub(const D& d, Vec<typename D::Elem> x, const Vec<typename D::Elem>& y) {
  for (size_t i = 0; i < x.size(); ++i) x[i] = d.sub(x[i], y[i]);
  return x;
}

template <class D>
Vec<typename D::Elem> vadd(const D& d, Vec<typename D::Elem> x, const Vec<typename D::Elem>& y) {
  for (size_t i = 0; i < x.size(); ++i) x[i] = d.add(x[i], y[i]);
  return x;
}

// c with x = c f, if any.
template <class D>
std::optional<typename D::Elem> multiple_of(const D& d, const Vec<typename D::Elem>& x,
                                            const Vec<typename D::Elem>& f) {
  for (size_t k = 0; k < f.size(); ++k) {
    if (d.is_zero(f[k])) continue;
    auto c = d.div(x[k], f[k]);
    auto y = f;
    scale(d, y, c);
    if (y != x) return std::nullopt;
    return c;
  }
  return std::nullopt;
}

template <class D>
Span<D> with_rows(const D& d, const Span<D>& base, Mat<typename D::Elem> extra) {
  extra.insert(extra.end(), base.rows.begin(), base.rows.end());
  return echelon(d, std::move(extra), base.n);
}

}  // namespace

template <class D>
std::string HeredityVerdict<D>::failed() const {
  if (!nonzero) return "nonzero";
  if (!quotient_free) return "i";
  if (!idempotent) return "ii";
  if (!projective) return "iii";
  if (!end_split) return "iv";
  return "";
}

template <class D>
MatrixUnits<D> find_matrix_units(const AlgebraT<D>& a, const Vec<typename D::Elem>& e,
                                 const std::vector<Vec<typename D::Elem>>& parts) {
  using E = typename D::Elem;
  const D& d = a.d;
  MatrixUnits<D> U;
  std::vector<Vec<E>> queue = parts.empty() ? std::vector<Vec<E>>{e} : parts;
  while (!queue.empty()) {
    auto f = queue.back();
    queue.pop_back();
    auto C = corner(a, f, f);
    if (C.rank() == 0) {
      U.problem = "a zero idempotent occurs in the corner";
      return U;
    }
    if (C.rank() == 1) {
      U.primitive.push_back(std::move(f));
      continue;
    }
    bool split = false;
    for (const auto& r : C.rows) {
      for (const auto& g : {r, vsub(d, f, r)}) {
        if (vec_is_zero(d, g) || g == f || a.mul(g, g) != g) continue;
        queue.push_back(g);
        queue.push_back(vsub(d, f, g));
        split = true;
        break;
      }
      if (split) break;
    }
    if (!split) {
      U.problem = "a corner of rank " + std::to_string(C.rank()) + " has no splitting idempotent among its basis vectors";
      return U;
    }
  }
  std::reverse(U.primitive.begin(), U.primitive.end());
  const int m = static_cast<int>(U.primitive.size());
  std::vector<int> comp(m);
  std::iota(comp.begin(), comp.end(), 0);
  auto find = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (corner(a, U.primitive[i], U.primitive[j]).rank() > 0) comp[find(j)] = find(i);
  std::vector<std::vector<int>> blocks;
  std::map<int, int> block_of;
  for (int i = 0; i < m; ++i) {
    int r = find(i);
    if (!block_of.count(r)) {
      block_of[r] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[block_of[r]].push_back(i);
  }
  for (const auto& b : blocks) {
    const int k = static_cast<int>(b.size());
    const auto& f1 = U.primitive[b[0]];
    std::vector<Vec<E>> col(k), row(k);
    col[0] = row[0] = f1;
    for (int j = 1; j < k; ++j) {
      const auto& fj = U.primitive[b[j]];
      auto X = corner(a, f1, fj), Y = corner(a, fj, f1);
      if (X.rank() != 1 || Y.rank() != 1) {
        U.problem = "an off-diagonal corner between equivalent idempotents is not of rank one";
        return U;
      }
      auto c = multiple_of(d, a.mul(X.rows[0], Y.rows[0]), f1);
      if (!c || !unit_in(d, *c)) {
        U.problem = "off-diagonal corners do not multiply onto the diagonal corner";
        return U;
      }
      row[j] = X.rows[0];
      col[j] = Y.rows[0];
      scale(d, col[j], d.div(d.one(), *c));
    }
    std::vector<std::vector<Vec<E>>> M(k, std::vector<Vec<E>>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) M[i][j] = i == 0 ? row[j] : a.mul(col[i], row[j]);
    U.units.push_back(std::move(M));
  }
  // relations, completeness and spanning
  Vec<E> sum = zero_vec(d, a.n);
  Mat<E> all;
  for (size_t s = 0; s < U.units.size(); ++s) {
    const auto& M = U.units[s];
    const int k = static_cast<int>(M.size());
    for (int i = 0; i < k; ++i) sum = vadd(d, sum, M[i][i]);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        all.push_back(M[i][j]);
        for (size_t t = 0; t < U.units.size(); ++t) {
          const auto& N = U.units[t];
          for (size_t x = 0; x < N.size(); ++x)
            for (size_t y = 0; y < N.size(); ++y) {
              auto p = a.mul(M[i][j], N[x][y]);
              bool want = s == t && static_cast<int>(x) == j;
              if (want ? p != M[i][y] : !vec_is_zero(d, p)) {
                U.problem = "matrix unit relations fail";
                return U;
              }
            }
        }
      }
  }
  if (sum != e) {
    U.problem = "diagonal matrix units do not sum to e";
    return U;
  }
  const int total = static_cast<int>(all.size());
  if (echelon(d, std::move(all), a.n) != corner(a, e, e) || total != corner(a, e, e).rank()) {
    U.problem = "matrix units do not form a basis of eAe";
    return U;
  }
  U.ok = true;
  return U;
}

template <class D>
HeredityVerdict<D> heredity_check(const AlgebraT<D>& a, const Vec<typename D::Elem>& e,
                                  const std::vector<Vec<typename D::Elem>>& parts) {
  const D& d = a.d;
  if (a.mul(e, e) != e) throw std::invalid_argument("heredity_check: e is not idempotent");
  HeredityVerdict<D> V;
  V.J = echelon(d, two_sided_rows(a, e), a.n);
  V.nonzero = V.J.rank() > 0;
  if (!V.nonzero) {
    V.problem = "AeA = 0";
    return V;
  }
  if constexpr (std::is_same_v<D, DomO>) {
    const RingSpec& rs = d.rs;
    auto qb = quotient_free_basis(rs, ambient_lattice(rs, a.n), V.J);
    V.torsion = qb.torsion;
    V.quotient_free = qb.torsion.empty();
    if (!V.quotient_free) {
      for (const auto& r : saturate(rs, V.J.rows, a.n).rows)
        if (!contains(d, V.J, r)) {
          V.torsion_witness = r;
          break;
        }
      V.problem = "A/AeA has torsion";
    }
  } else {
    V.quotient_free = true;
  }
  V.idempotent = echelon(d, product_rows(a, V.J.rows, V.J.rows), a.n) == V.J;
  if (!V.idempotent && V.problem.empty()) V.problem = "J^2 != J";
  V.units = find_matrix_units(a, e, parts);
  if (!V.units.ok) {
    if (V.problem.empty()) V.problem = "eAe is not a product of matrix algebras: " + V.units.problem;
    return V;
  }
  int total = 0;
  std::vector<Vec<typename D::Elem>> reps;
  for (const auto& M : V.units.units) {
    const auto& f = M[0][0];
    reps.push_back(f);
    int left = rank_of(d, left_ideal_rows(a, f), a.n);
    int right = rank_of(d, right_ideal_rows(a, f), a.n);
    V.multiplicities.push_back(right);
    total += left * right;
  }
  V.projective = total == V.J.rank();
  if (!V.projective) {
    if (V.problem.empty()) V.problem = "the multiplication map Ae (x) eA -> AeA is not bijective";
    return V;
  }
  V.end_split = true;
  for (size_t s = 0; s < reps.size(); ++s)
    for (size_t t = 0; t < reps.size(); ++t)
      if (corner(a, reps[s], reps[t]).rank() != (s == t ? 1 : 0)) V.end_split = false;
  if (!V.end_split && V.problem.empty()) V.problem = "End(J) is not a product of matrix algebras";
  return V;
}

HeredityVerdict<DomO> is_split_heredity_ideal(const StructureAlgebra& A, const Vec<Scalar>& e,
                                              const std::vector<Vec<Scalar>>& parts) {
  return heredity_check(A.alg, e, parts);
}

template <class D>
ChainCertificate<D> certify_chain(const WAlg<D>& A, const std::vector<std::string>* linear) {
  using E = typename D::Elem;
  const D& d = A.alg.d;
  const int n = A.alg.n;
  ChainCertificate<D> C;
  AlgebraT<D> cur = A.alg;
  std::vector<Vec<E>> idem = A.e;
  Mat<E> L = identity(d, n);  // current basis -> original
  Span<D> Jcum = zero_span<D>(n);
  std::vector<std::string> remaining = A.W.Lambda;
  auto lift = [&](const Vec<E>& v) {
    Vec<E> r = zero_vec(d, n);
    for (int c = 0; c < cur.n; ++c)
      if (!d.is_zero(v[c])) axpy(d, r, d.neg(v[c]), L[c]);
    return r;
  };
  while (!remaining.empty()) {
    ChainStep<D> step;
    if (linear) {
      std::string next;
      for (const auto& l : *linear)
        if (std::find(remaining.begin(), remaining.end(), l) != remaining.end()) {
          next = l;
          break;
        }
      auto mx = A.W.maximal(remaining);
      if (next.empty() || std::find(mx.begin(), mx.end(), next) == mx.end()) {
        C.failure = "the supplied order is not a linear extension of the poset";
        C.failed_step = static_cast<int>(C.steps.size());
        return C;
      }
      step.removed = {next};
    } else {
      step.removed = A.W.maximal(remaining);
    }
    Vec<E> e = zero_vec(d, cur.n);
    std::vector<Vec<E>> parts;
    step.e = zero_vec(d, n);
    for (const auto& l : step.removed) {
      const auto& el = idem[A.W.x_index(l)];
      e = vadd(d, e, el);
      parts.push_back(el);
      step.e = vadd(d, step.e, A.idem(l));
      step.delta_ranks[l] = rank_of(d, left_ideal_rows(cur, el), cur.n);
    }
    step.verdict = heredity_check(cur, e, parts);
    if (!step.verdict.ok()) {
      step.J = Jcum;
      C.failed_step = static_cast<int>(C.steps.size());
      C.failed_condition = step.verdict.failed();
      C.failure = step.verdict.problem;
      C.steps.push_back(std::move(step));
      return C;
    }
    Mat<E> rows;
    for (const auto& r : step.verdict.J.rows) rows.push_back(lift(r));
    Jcum = with_rows(d, Jcum, std::move(rows));
    step.J = Jcum;
    for (const auto& M : step.verdict.units.units) {
      std::vector<std::vector<Vec<E>>> LM;
      for (const auto& r : M) {
        LM.emplace_back();
        for (const auto& u : r) LM.back().push_back(lift(u));
      }
      step.units.push_back(std::move(LM));
    }
    auto Q = quotient_algebra(cur, step.verdict.J);
    Mat<E> L2;
    for (int q : Q.lift) L2.push_back(L[q]);
    for (auto& x : idem) x = Q.project(x);
    L = std::move(L2);
    cur = std::move(Q.alg);
    for (const auto& l : step.removed) remaining.erase(std::find(remaining.begin(), remaining.end(), l));
    C.steps.push_back(std::move(step));
  }
  if (cur.n != 0) {
    C.failure = "the quotient by the last ideal is nonzero";
    C.failed_step = static_cast<int>(C.steps.size());
    C.failed_condition = "exhausted";
    return C;
  }
  C.ok = true;
  return C;
}

ChainCertificate<DomO> certify_qha(const StructureAlgebra& A, const std::vector<std::string>* linear) {
  return certify_chain(at_O(A), linear);
}

template <class D>
CheckerReport check_certificate(const WAlg<D>& A, const ChainCertificate<D>& C) {
  using E = typename D::Elem;
  const D& d = A.alg.d;
  const AlgebraT<D>& a = A.alg;
  const int n = a.n;
  CheckerReport R;
  auto note = [&](size_t i, const std::string& what, bool mine, bool theirs) {
    if (mine != theirs)
      R.mismatches.push_back("step " + std::to_string(i) + " " + what + ": checker " + (mine ? "true" : "false") +
                             ", certificate " + (theirs ? "true" : "false"));
  };
  Span<D> prev = zero_span<D>(n);
  std::set<std::string> seen;
  bool valid = true;
  for (size_t i = 0; i < C.steps.size(); ++i) {
    const auto& st = C.steps[i];
    const bool last_failed = C.failed_step == static_cast<int>(i);
    std::vector<std::string> rem;
    for (const auto& l : A.W.Lambda)
      if (!seen.count(l)) rem.push_back(l);
    auto mx = A.W.maximal(rem);
    Vec<E> e = zero_vec(d, n);
    for (const auto& l : st.removed) {
      if (seen.count(l) || std::find(mx.begin(), mx.end(), l) == mx.end())
        R.mismatches.push_back("step " + std::to_string(i) + " removes " + l + ", which is not maximal");
      e = vadd(d, e, A.idem(l));
    }
    if (e != st.e) R.mismatches.push_back("step " + std::to_string(i) + " idempotent differs");
    auto gen = with_rows(d, prev, two_sided_rows(a, e));
    const int rp = prev.rank();
    bool nonzero = gen.rank() > rp;
    note(i, "nonzero", nonzero, st.verdict.nonzero);
    bool qfree = true;
    if constexpr (std::is_same_v<D, DomO>) qfree = is_pure(d.rs, gen, ambient_lattice(d.rs, n));
    bool idem_ok = with_rows(d, prev, product_rows(a, gen.rows, gen.rows)) == gen;
    bool proj = false, endok = false;
    bool have_units = !st.units.empty();
    if (have_units) {
      bool rel = true;
      Vec<E> sum = zero_vec(d, n);
      Mat<E> all;
      for (size_t s = 0; s < st.units.size(); ++s) {
        const auto& M = st.units[s];
        for (size_t x = 0; x < M.size(); ++x) {
          sum = vadd(d, sum, M[x][x]);
          for (size_t y = 0; y < M.size(); ++y) all.push_back(M[x][y]);
        }
        for (size_t t = 0; t < st.units.size(); ++t) {
          const auto& N = st.units[t];
          for (size_t x = 0; x < M.size(); ++x)
            for (size_t y = 0; y < M.size(); ++y)
              for (size_t u = 0; u < N.size(); ++u)
                for (size_t v = 0; v < N.size(); ++v) {
                  auto p = a.mul(M[x][y], N[u][v]);
                  if (s == t && y == u) p = vsub(d, p, M[x][v]);
                  rel = rel && contains(d, prev, p);
                }
        }
      }
      rel = rel && contains(d, prev, vsub(d, sum, e));
      Mat<E> eae;
      for (int k = 0; k < n; ++k) eae.push_back(a.mul(a.rmul_basis(e, k), e));
      rel = rel && with_rows(d, prev, all) == with_rows(d, prev, eae);
      int total = 0;
      for (const auto& M : st.units) {
        const auto& f = M[0][0];
        int left = with_rows(d, prev, left_ideal_rows(a, f)).rank() - rp;
        int right = with_rows(d, prev, right_ideal_rows(a, f)).rank() - rp;
        total += left * right;
      }
      proj = rel && total == gen.rank() - rp;
      endok = proj;
      for (size_t s = 0; s < st.units.size() && proj; ++s)
        for (size_t t = 0; t < st.units.size(); ++t) {
          Mat<E> c;
          for (int k = 0; k < n; ++k) c.push_back(a.mul(a.rmul_basis(st.units[s][0][0], k), st.units[t][0][0]));
          if (with_rows(d, prev, c).rank() - rp != (s == t ? 1 : 0)) endok = false;
        }
    }
    if (nonzero && qfree && idem_ok) {
      note(i, "quotient_free", qfree, st.verdict.quotient_free);
      note(i, "idempotent", idem_ok, st.verdict.idempotent);
      if (have_units || !last_failed) {
        note(i, "projective", proj, st.verdict.projective);
        note(i, "end_split", endok, st.verdict.end_split);
      }
    } else if (nonzero) {
      note(i, "quotient_free", qfree, st.verdict.quotient_free);
      if (qfree) note(i, "idempotent", idem_ok, st.verdict.idempotent);
    }
    bool step_ok = nonzero && qfree && idem_ok && proj && endok;
    valid = valid && step_ok;
    if (!last_failed && st.J != gen) R.mismatches.push_back("step " + std::to_string(i) + " ideal differs");
    if (last_failed) break;
    for (const auto& l : st.removed) seen.insert(l);
    prev = gen;
  }
  valid = valid && C.failed_step < 0 && seen.size() == A.W.Lambda.size() && prev.rank() == n;
  R.valid_chain = valid;
  if (valid != C.ok) R.mismatches.push_back("overall verdict differs");
  R.agrees = R.mismatches.empty();
  return R;
}

#define GRFORGE_QHA(D)                                                                              \
  template struct HeredityVerdict<D>;                                                               \
  template MatrixUnits<D> find_matrix_units(const AlgebraT<D>&, const Vec<D::Elem>&,                \
                                            const std::vector<Vec<D::Elem>>&);                      \
  template HeredityVerdict<D> heredity_check(const AlgebraT<D>&, const Vec<D::Elem>&,               \
                                             const std::vector<Vec<D::Elem>>&);                     \
  template ChainCertificate<D> certify_chain(const WAlg<D>&, const std::vector<std::string>*);      \
  template CheckerReport check_certificate(const WAlg<D>&, const ChainCertificate<D>&);

GRFORGE_QHA(DomO)
GRFORGE_QHA(DomK)
GRFORGE_QHA(DomF)

}  // namespace grforge
