#include <random>

#include "doctest.h"
#include "grforge/fixtures.hpp"
#include "grforge/tight.hpp"

using namespace grforge;

namespace {

Vec<Scalar> vec(std::initializer_list<long> xs) {
  Vec<Scalar> v;
  for (long x : xs) v.push_back(Scalar(x));
  return v;
}

Mat<Scalar> unit_rows(int n) {
  Mat<Scalar> m;
  for (int i = 0; i < n; ++i) {
    Vec<Scalar> r(n);
    r[i] = Scalar(1);
    m.push_back(r);
  }
  return m;
}

// e1, e2 | alpha, beta | gamma
GradedSubalgebraDatum path_grading() { return GradedSubalgebraDatum::from_basis(unit_rows(5), {0, 0, 1, 1, 2}); }

}  // namespace

TEST_CASE("tight lattices") {
  auto rs = rational_spec(3);
  auto Z = zigzag5(rs);
  auto A = at_O(Z);
  auto P1 = standard_data(A, nullptr, "1").P;
  CHECK(is_tight(Z.alg, P1).tight);
  auto D2 = standard_data(A, nullptr, "2").Delta;  // e2, beta
  auto N = lattice_module(D2, {vec({3, 0}), vec({0, 1})});
  auto r = is_tight(Z.alg, N);
  CHECK_FALSE(r.tight);
  CHECK(r.first_failure == 1);
  CHECK(is_tight(Z.alg, lattice_module(D2, {})).tight);
  CHECK_THROWS(lattice_module(D2, {vec({1, 0})}));

  for (const auto& F : {Z, upper_triangular(rs, 3), matrix_algebra(rs, 2), rank_one(rs)}) {
    auto W = at_O(F);
    for (const auto& l : F.weights->Lambda) CHECK(is_tight(F.alg, standard_data(W, nullptr, l).P).tight);
  }
}

TEST_CASE("tight gradings of field algebras") {
  auto rs = rational_spec(3);
  CHECK(is_tightly_graded(to_K(zigzag5(rs).alg), {0, 0, 1, 1, 2}).tight);
  auto x2 = to_K(truncated_polynomial(rs, 2).alg);
  auto g0 = is_tightly_graded(x2, {0, 0});
  CHECK_FALSE(g0.tight);
  CHECK_FALSE(g0.degree_zero_semisimple);
  CHECK(is_tightly_graded(to_K(truncated_polynomial(rs, 3).alg), {0, 1, 2}).tight);
  CHECK_THROWS(is_tightly_graded(to_K(truncated_polynomial(rs, 3).alg), {0, 1, 3}));
  auto gen = is_tightly_graded(to_K(truncated_polynomial(rs, 3).alg), {0, 2, 4});
  CHECK_FALSE(gen.tight);
}

TEST_CASE("conditions on a graded subalgebra") {
  auto rs = rational_spec(3);
  auto Z = zigzag5(rs);
  auto C = conditions_5_1_check(Z, path_grading());
  CHECK(C.c1);
  CHECK(C.c2);
  CHECK(C.c3);
  CHECK(C.c4);
  CHECK(C.c5);
  CHECK(C.symbol_iso);
  CHECK(C.all());
  DomK k{rs};
  auto K0 = echelon(k, C.complement_K0, 5);
  CHECK(K0 == echelon(k, {vec({1, 0, 0, 0, 0}), vec({0, 1, 0, 0, 0})}, 5));

  auto small = GradedSubalgebraDatum::from_basis({vec({1, 1, 0, 0, 0}), vec({0, 0, 0, 0, 1})}, {0, 1});
  auto S = conditions_5_1_check(Z, small);
  CHECK(S.c1);
  CHECK_FALSE(S.c2);

  GradedSubalgebraDatum over;
  over.span = unit_rows(5);
  over.graded = {vec({1, 0, 0, 0, 0}), vec({0, 1, 0, 0, 0}), vec({0, 0, 3, 0, 0}), vec({0, 0, 0, 3, 0}),
                 vec({0, 0, 0, 0, 9})};
  over.grade = {0, 0, 1, 1, 2};
  auto O = conditions_5_1_check(Z, over);
  CHECK(O.c1);
  CHECK_FALSE(O.c5);
  CHECK_FALSE(O.pure_pieces);

  auto bad = path_grading();
  bad.grade = {0, 0, 1, 2, 2};
  CHECK_THROWS(conditions_5_1_check(Z, bad));
}

TEST_CASE("kernel of the projective onto the standard module") {
  auto rs = rational_spec(3);
  auto Z = zigzag5(rs);
  DomK k{rs};
  auto E1 = e_k_lambda(Z, "1");
  CHECK(E1.kernel.rank() == 2);
  CHECK(E1.kernel == echelon(k, {vec({0, 0, 1, 0, 0}), vec({0, 0, 0, 0, 1})}, 5));
  CHECK(E1.dim_P - E1.dim_Delta == 2);
  CHECK(e_k_lambda(Z, "2").kernel.rank() == 0);
  auto T = upper_triangular(rs, 3);
  CHECK(e_k_lambda(T, "3").kernel.rank() == 0);
}

TEST_CASE("tightness of standard modules from a tight projective") {
  auto rs = rational_spec(3);
  auto Z = zigzag5(rs);
  auto a = path_grading();
  auto W = at_O(Z);
  auto P1 = standard_data(W, nullptr, "1").P_span.rows;
  auto r1 = thm_5_3_pipeline(Z, a, "1", P1, vec({1, 0, 0, 0, 0}), {vec({1, 0, 0, 0, 0})});
  CHECK(r1.conditions_5_1);
  CHECK(r1.hypothesis_4_7);
  CHECK(r1.cond_i);
  CHECK(r1.cond_ii_sum);
  CHECK(r1.cond_ii_stable);
  CHECK(r1.cond_iii);
  CHECK(r1.delta_tight);
  CHECK(r1.head_is_L);
  CHECK_FALSE(r1.divergence);

  auto P2 = standard_data(W, nullptr, "2").P_span.rows;
  auto r2 = thm_5_3_pipeline(Z, a, "2", P2, vec({0, 1, 0, 0, 0}), {vec({0, 1, 0, 0, 0})});
  CHECK(r2.hypotheses());
  CHECK(r2.delta_tight);
  CHECK(r2.head_is_L);

  auto r3 = thm_5_3_pipeline(Z, a, "1", P1, vec({3, 0, 0, 0, 0}), {vec({1, 0, 0, 0, 0})});
  CHECK_FALSE(r3.cond_i);
  CHECK_FALSE(r3.hypotheses());
}

TEST_CASE("three characterisations of tightness agree") {
  auto rs = rational_spec(3);
  auto Z = zigzag5(rs);
  auto reg = regular_module(Z.alg);
  std::mt19937_64 rng(20261014);
  std::uniform_int_distribution<long> coef(-4, 4);
  int tight = 0, loose = 0;
  for (int t = 0; t < 120; ++t) {
    Mat<Scalar> gens;
    int g = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < g; ++i) {
      Vec<Scalar> v(5);
      for (auto& c : v) c = Scalar(coef(rng));
      gens.push_back(v);
    }
    auto L = generated_submodule(reg, gens);
    if (L.rank() == 0) continue;
    auto M = lattice_module(reg, L.rows);
    auto V = prop_5_2_verdicts(Z.alg, {0, 0, 1, 1, 2}, M);
    CHECK(V.agree());
    (V.tight ? tight : loose)++;
  }
  CHECK(tight > 0);
  CHECK(loose > 0);
}
