#pragma once

// Randomized lattice checks shared by the unit tests and the acceptance run.

#include <string>

#include "grforge/lattice.hpp"
#include "oracles.hpp"

namespace props {

using namespace grforge;

struct Tally {
  long trials = 0;
  long failures = 0;
  std::string first_failure;
  void fail(const std::string& what) {
    if (!failures++) first_failure = what;
  }
  bool ok() const { return failures == 0 && trials > 0; }
};

inline Scalar random_entry(std::mt19937_64& rng, const RingSpec& rs, long bound) {
  std::uniform_int_distribution<long> u(-bound, bound);
  if (!rs.cyclotomic()) return Scalar(u(rng));
  std::vector<mpq_class> c(rs.width());
  for (auto& q : c) q = u(rng) / 2;  // keep cyclotomic entries smaller
  return Scalar::from_coeffs(c);
}

inline Mat<Scalar> random_matrix(std::mt19937_64& rng, const RingSpec& rs, int rows, int n, long bound) {
  Mat<Scalar> m(rows, Vec<Scalar>(n));
  for (auto& r : m)
    for (auto& x : r) x = random_entry(rng, rs, bound);
  return m;
}

// Random pair N in M inside O^n. N is built from O-combinations of M's rows
// with extra powers of the uniformizer so that both pure and non-pure cases
// occur.
inline std::pair<LatticeRep, LatticeRep> random_pair(std::mt19937_64& rng, const RingSpec& rs, int n) {
  std::uniform_int_distribution<int> rk(0, n);
  int rm = rk(rng);
  auto M = make_lattice(rs, random_matrix(rng, rs, rm, n, rs.p * rs.p), n);
  int rn = M.rank() ? std::uniform_int_distribution<int>(0, M.rank())(rng) : 0;
  Mat<Scalar> gens;
  Scalar pi = uniformizer(rs);
  std::uniform_int_distribution<int> coin(0, 3);
  for (int i = 0; i < rn; ++i) {
    Vec<Scalar> v(n);
    for (int j = 0; j < M.rank(); ++j) {
      Scalar c = random_entry(rng, rs, rs.p);
      if (coin(rng) == 0) c *= pi;
      if (c.is_zero()) continue;
      for (int t = 0; t < n; ++t) v[t] += c * M.rows[j][t];
    }
    if (coin(rng) == 0) for (auto& x : v) x *= pi;
    gens.push_back(v);
  }
  auto N = make_lattice(rs, gens, n);
  return {N, M};
}

inline oracle::QMat to_q(const Mat<Scalar>& m) {
  oracle::QMat q;
  for (const auto& r : m) {
    oracle::QVec v;
    for (const auto& x : r) v.push_back(x.rational());
    q.push_back(v);
  }
  return q;
}

// Saturation and residue-injectivity purity verdicts agree; pure_closure idempotent,
// monotone and rank preserving; quotient torsion empty iff pure.
inline void purity_trials(Tally& t, std::mt19937_64& rng, const RingSpec& rs, int count, int max_n) {
  for (int it = 0; it < count; ++it) {
    int n = std::uniform_int_distribution<int>(1, max_n)(rng);
    auto [N, M] = random_pair(rng, rs, n);
    ++t.trials;
    bool a = is_pure(rs, N, M);
    bool b = is_pure_by_residue(rs, N, M);
    if (a != b) t.fail("purity routes disagree at trial " + std::to_string(it));
    auto C = pure_closure(rs, N, M);
    if (!(pure_closure(rs, C, M) == C)) t.fail("pure_closure not idempotent");
    if (C.rank() != N.rank()) t.fail("pure_closure changed rank");
    if (!lattice_subset(rs, N, C)) t.fail("pure_closure not containing N");
    auto qb = quotient_free_basis(rs, M, N);
    if (qb.torsion.empty() != a) t.fail("torsion report disagrees with purity");
    if (static_cast<int>(qb.free_lifts.size()) != M.rank() - N.rank()) t.fail("free rank wrong");
  }
}

// Intersection against a box search with the independent rational
// membership oracle (rational flavor, ambient rank <= 3, entries bounded by
// p^2). The box is exhaustive except for p = 5 at rank 3, where the inner box
// of radius p is exhaustive and the outer box is sampled.
inline void intersection_trials(Tally& t, std::mt19937_64& rng, int p, int count) {
  RingSpec rs = rational_spec(p);
  for (int it = 0; it < count; ++it) {
    int n = std::uniform_int_distribution<int>(1, 3)(rng);
    auto A = make_lattice(rs, random_matrix(rng, rs, std::uniform_int_distribution<int>(0, n)(rng), n, p * p), n);
    auto B = make_lattice(rs, random_matrix(rng, rs, std::uniform_int_distribution<int>(0, n)(rng), n, p * p), n);
    auto I = lattice_intersection(rs, A, B);
    ++t.trials;
    oracle::Membership ma(to_q(A.rows), p), mb(to_q(B.rows), p), mi(to_q(I.rows), p);
    bool bad = false;
    auto probe = [&](const std::vector<long>& v) {
      oracle::QVec x(v.begin(), v.end());
      if ((ma(x) && mb(x)) != mi(x)) bad = true;
    };
    const long outer = static_cast<long>(p) * p;
    const bool sampled = (p > 3 && n == 3);
    const long box = sampled ? p : outer;
    std::vector<long> v(n, -box);
    while (!bad) {
      probe(v);
      int k = 0;
      while (k < n && v[k] == box) v[k++] = -box;
      if (k == n) break;
      ++v[k];
    }
    if (sampled) {
      std::uniform_int_distribution<long> u(-outer, outer);
      for (int s = 0; s < 4000 && !bad; ++s) {
        for (auto& x : v) x = u(rng);
        probe(v);
      }
    }
    for (const auto& r : to_q(I.rows))
      if (!ma(r) || !mb(r)) bad = true;
    if (bad) t.fail("intersection disagrees with box oracle at trial " + std::to_string(it));
  }
}

}  // namespace props
