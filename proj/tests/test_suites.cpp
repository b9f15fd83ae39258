#include "doctest.h"
#include "grforge/fixtures.hpp"
#include "grforge/suites.hpp"

using namespace grforge;

namespace {

GradedSubalgebraDatum path_grading() {
  Mat<Scalar> b(5, Vec<Scalar>(5));
  for (int i = 0; i < 5; ++i) b[i][i] = Scalar(1);
  return GradedSubalgebraDatum::from_basis(b, {0, 0, 1, 1, 2});
}

}  // namespace

TEST_CASE("poset ideals") {
  auto rs = rational_spec(3);
  auto Z = zigzag5(rs);
  auto I = poset_ideals(*Z.weights);
  REQUIRE(I.size() == 2);
  CHECK(I[0] == std::vector<std::string>{"1"});
  CHECK(poset_ideals(*Z.weights, true).size() == 1);
  CHECK(poset_ideals(*upper_triangular(rs, 3).weights, true).size() == 2);
  auto T = truncated_structure(Z, {"1"});
  REQUIRE(T);
  CHECK(T->n() == 1);
}

TEST_CASE("graded algebra of a split QHA") {
  auto rs = rational_spec(3);
  auto R = thm_4_17_suite(zigzag5(rs));
  CHECK(R.qha);
  CHECK(R.gr_K_qha);
  CHECK(R.gr_K_standard);
  CHECK(R.heads_simple);
  CHECK(R.lambda_standard);
  CHECK(R.conclusion_qha);
  CHECK(R.conclusion_standard);
  CHECK(R.passed());
  CHECK_FALSE(R.falsified);
  REQUIRE(R.comparisons.size() == 2);
  CHECK(R.comparisons[0].expected.at("1") == std::vector<int>{1});
  CHECK(R.comparisons[1].expected.at("2") == std::vector<int>{1, 0});
  CHECK(R.comparisons[1].expected.at("1") == std::vector<int>{0, 1});

  auto S = thm_4_17_suite(zigzag5(rs, Scalar(3)));
  CHECK_FALSE(S.qha);
  CHECK_FALSE(S.hypotheses());
  CHECK_FALSE(S.falsified);

  for (const auto& F : {upper_triangular(rs, 3), matrix_algebra(rs, 2), rank_one(rs)}) {
    auto T = thm_4_17_suite(F);
    CHECK(T.passed());
    CHECK_FALSE(T.falsified);
  }
}

TEST_CASE("truncation commutes with gr") {
  auto rs = rational_spec(3);
  auto Z = zigzag5(rs);
  auto W = at_O(Z);
  auto P1 = standard_data(W, nullptr, "1").P;
  auto c = cor_4_16_check(Z, P1, {"1"});
  CHECK(c.hypotheses);
  CHECK(c.isomorphic());
  CHECK(c.ranks_equal);
  CHECK(c.lhs_grade_ranks == std::vector<int>{1});
  CHECK(c.rhs_grade_ranks == std::vector<int>{1});
  auto full = cor_4_16_check(Z, P1, {"1", "2"});
  CHECK(full.ok());
  CHECK(full.lhs_grade_ranks == std::vector<int>{1, 1, 1});
  auto D2 = standard_data(W, nullptr, "2").Delta;
  auto z = cor_4_16_check(Z, D2, {"1"});
  CHECK(z.ok());
  CHECK(z.lhs_grade_ranks.empty());
  auto reg = cor_4_16_check(Z, regular_module(Z.alg), {"1"});
  CHECK(reg.ok());
  CHECK_THROWS(cor_4_16_check(Z, P1, {"2"}));
  auto bad = cor_4_16_check(zigzag5(rs, Scalar(3)), regular_module(Z.alg), {"1"});
  CHECK_FALSE(bad.hypotheses);
}

TEST_CASE("field case") {
  auto rs = rational_spec(3);
  auto Z = zigzag5(rs);
  auto k = field_case_suite(at_k(Z), {"1"});
  CHECK(k.hypotheses());
  CHECK(k.ok());
  CHECK(k.pims.size() == 1);
  CHECK(k.skipped_modules == 0);
  auto K = field_case_suite(at_K(Z), {"1"});
  CHECK(K.ok());
  CHECK(field_case_suite(at_K(Z), {"1", "2"}).ok());
  auto G = gr_field(at_K(Z));
  CHECK(G.grade_ranks == std::vector<int>{2, 2, 1});
  auto s = field_case_suite(at_k(zigzag5(rs, Scalar(3))), {"1"});
  CHECK_FALSE(s.hypotheses());
  CHECK_FALSE(s.ok());
  for (const auto& g : poset_ideals(*upper_triangular(rs, 3).weights, true))
    CHECK(field_case_suite(at_k(upper_triangular(rs, 3)), g).ok());
}

TEST_CASE("gr of truncated algebras") {
  auto rs = rational_spec(3);
  auto Z = zigzag5(rs);
  for (const auto& g : poset_ideals(*Z.weights)) {
    auto R = thm_5_5_check(Z, path_grading(), g);
    CHECK(R.hypotheses);
    CHECK(R.qha);
    CHECK(R.passed());
    CHECK_FALSE(R.falsified);
  }
}
