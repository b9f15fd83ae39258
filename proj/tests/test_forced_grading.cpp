#include "doctest.h"
#include "grforge/fixtures.hpp"
#include "grforge/forced.hpp"

using namespace grforge;

namespace {

Vec<Scalar> vec(std::initializer_list<long> xs) {
  Vec<Scalar> v;
  for (long x : xs) v.push_back(Scalar(x));
  return v;
}

}  // namespace

TEST_CASE("higher-weight submodules") {
  auto rs = rational_spec(3);
  auto Z = zigzag5(rs);
  auto A = at_O(Z);
  auto P1 = standard_data(A, nullptr, "1").P;  // basis e1, alpha, gamma
  auto D2 = standard_data(A, nullptr, "2").Delta;
  CHECK(n_prime(Z, D2, "1").lattice.rank() == 2);
  auto np = n_prime(Z, P1, "1");
  CHECK(np.lattice == make_lattice(rs, {vec({0, 1, 0}), vec({0, 0, 1})}, 3));
  CHECK(n_prime(Z, P1, "2").lattice.rank() == 0);
  CHECK_THROWS(n_prime(Z, P1, "3"));
}

TEST_CASE("primitive and strongly primitive vectors") {
  auto rs = rational_spec(3);
  auto Z = zigzag5(rs);
  auto A = at_O(Z);
  auto P1 = standard_data(A, nullptr, "1").P;
  auto D2 = standard_data(A, nullptr, "2").Delta;  // basis e2, beta
  auto r = primitivity_test(Z, D2, vec({1, 0}), "2");
  CHECK(r.primitive);
  CHECK(r.strongly_primitive);
  CHECK(r.grade == 0);
  CHECK(r.top_weight);
  auto r3 = primitivity_test(Z, D2, vec({3, 0}), "2");
  CHECK_FALSE(r3.primitive);
  CHECK_FALSE(r3.strongly_primitive);
  auto g = primitivity_test(Z, P1, vec({0, 0, 1}), "1");
  CHECK_FALSE(g.primitive);
  CHECK(g.grade == 2);
  auto e = primitivity_test(Z, P1, vec({1, 0, 4}), "1");
  CHECK(e.primitive);
  CHECK(e.strongly_primitive);
  CHECK(e.grade == 0);
  CHECK_THROWS(primitivity_test(Z, P1, vec({0, 1, 0}), "1"));
}

TEST_CASE("the submodule generated by strongly primitive symbols") {
  auto rs = rational_spec(3);
  auto Z = zigzag5(rs);
  auto A = at_O(Z);
  auto G = gr_algebra(Z);
  auto P1 = standard_data(A, nullptr, "1").P;
  auto D2 = standard_data(A, nullptr, "2").Delta;
  auto b2 = gr_b(Z, gr_module(Z, G, D2), D2);
  CHECK(b2.full());
  auto b1 = gr_b(Z, gr_module(Z, G, P1), P1);
  CHECK(b1.full());
  CHECK(b1.grade_ranks == std::vector<int>{1, 1, 1});
  CHECK(b1.acting == "z5");

  for (const auto& l : {"1", "2"}) {
    auto c = lemma_4_9_check(Z, l);
    CHECK_FALSE(c.refused);
    CHECK(c.simple_head);
    CHECK(c.grb_equals_gr);
    CHECK(c.biconditional);
  }
  CHECK(lemma_4_9_check(zigzag5(rs, Scalar(3)), "1").refused);

  // Delta(1) is an A_Gamma-module for Gamma = {1}
  auto D1 = standard_data(A, nullptr, "1").Delta;
  auto T = truncated_action(Z, D1, {"1"});
  REQUIRE(T);
  CHECK(T->alg.n() == 1);
  auto GT = gr_algebra(T->alg);
  CHECK(gr_b(T->alg, gr_module(T->alg, GT, T->mod), T->mod).full());
  CHECK_FALSE(truncated_action(Z, P1, {"1"}));
}

TEST_CASE("graded Delta-filtrations") {
  auto rs = rational_spec(3);
  auto Z = zigzag5(rs);
  auto A = at_O(Z);
  auto P1 = standard_data(A, nullptr, "1").P;
  auto f = gr_delta_filtration(Z, P1);
  CHECK(f.ok);
  REQUIRE(f.sections.size() == 2);
  CHECK(f.sections[0].label == "2");
  CHECK(f.sections[0].shift == 1);
  CHECK(f.sections[1].label == "1");
  CHECK(f.sections[1].shift == 0);
  CHECK(f.sections[0].standard);
  CHECK(f.sections[1].standard);
  CHECK(f.sections[0].grade_ranks == std::vector<int>{0, 1, 1});
  CHECK(f.matches_delta_filtration);
  CHECK(f.ordering_ok);

  auto D2 = standard_data(A, nullptr, "2").Delta;
  auto f2 = gr_delta_filtration(Z, D2);
  REQUIRE(f2.sections.size() == 1);
  CHECK(f2.sections[0].standard);

  auto R = regular_module(Z.alg);
  auto fr = gr_delta_filtration(Z, R);
  CHECK(fr.ok);
  REQUIRE(fr.sections.size() == 3);
  CHECK(fr.sections[0].label == "2");
  CHECK(fr.sections[0].shift == 0);
  CHECK(fr.sections[1].label == "2");
  CHECK(fr.sections[1].shift == 1);
  CHECK(fr.sections[2].label == "1");
  CHECK(fr.multiset() == std::map<std::string, int>{{"1", 1}, {"2", 2}});
  CHECK(fr.matches_delta_filtration);
  for (const auto& s : fr.sections) {
    CHECK(s.standard);
    CHECK(s.grb_surjects);
  }
  CHECK(fr.cond3_without_cond2 == 0);
}
