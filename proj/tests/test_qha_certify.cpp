#include "doctest.h"
#include "grforge/fixtures.hpp"
#include "grforge/qha.hpp"

using namespace grforge;

namespace {

enum { E1, E2, AL, BE, GA };

Vec<Scalar> unit_vec(int n, int i) {
  Vec<Scalar> v(n);
  v[i] = Scalar(1);
  return v;
}

}  // namespace

TEST_CASE("split heredity ideals") {
  auto rs = rational_spec(3);
  auto Z = zigzag5(rs);
  auto v = is_split_heredity_ideal(Z, unit_vec(5, E2));
  CHECK(v.ok());
  CHECK(v.J.rank() == 4);  // e2, alpha, beta, gamma
  CHECK(v.units.block_sizes() == std::vector<int>{1});
  CHECK(v.multiplicities == std::vector<int>{2});

  auto Zs = zigzag5(rs, Scalar(3));
  auto vs = is_split_heredity_ideal(Zs, unit_vec(5, E2));
  CHECK_FALSE(vs.quotient_free);
  CHECK(vs.failed() == "i");
  CHECK(vs.torsion == std::vector<long>{1});
  CHECK(vs.torsion_witness == unit_vec(5, GA));
  CHECK(vs.idempotent);

  // M2(O) x O with e the identity of the matrix block
  auto P = direct_product(matrix_algebra(rs, 2), rank_one(rs));
  Vec<Scalar> e(5);
  e[0] = e[3] = Scalar(1);
  auto vp = is_split_heredity_ideal(P, e);
  CHECK(vp.ok());
  CHECK(vp.units.block_sizes() == std::vector<int>{2});
  CHECK(vp.J.rank() == 4);

  CHECK_THROWS(is_split_heredity_ideal(Z, unit_vec(5, AL)));
  CHECK(is_split_heredity_ideal(Z, Vec<Scalar>(5)).failed() == "nonzero");
}

TEST_CASE("heredity chains") {
  auto rs = rational_spec(3);
  auto Z = zigzag5(rs);
  auto C = certify_qha(Z);
  REQUIRE(C.ok);
  REQUIRE(C.steps.size() == 2);
  CHECK(C.steps[0].removed == std::vector<std::string>{"2"});
  CHECK(C.steps[1].removed == std::vector<std::string>{"1"});
  CHECK(C.delta_ranks() == std::map<std::string, int>{{"1", 1}, {"2", 2}});
  CHECK(C.steps[1].J.rank() == 5);
  auto chk = check_certificate(at_O(Z), C);
  CHECK(chk.agrees);
  CHECK(chk.valid_chain);

  auto Cs = certify_qha(zigzag5(rs, Scalar(3)));
  CHECK_FALSE(Cs.ok);
  CHECK(Cs.failed_step == 0);
  CHECK(Cs.failed_condition == "i");
  CHECK(check_certificate(at_O(zigzag5(rs, Scalar(3))), Cs).agrees);

  CHECK(certify_qha(gr_algebra(Z).alg).ok);
  CHECK(certify_qha(upper_triangular(rs, 3)).ok);
  CHECK(certify_qha(matrix_algebra(rs, 2)).ok);
  CHECK(certify_qha(rank_one(rs)).ok);
  CHECK(certify_qha(inflate(Z, "1")).ok);

  // with the vertex labels exchanged the order 1 < 2 is the wrong one
  auto S = Z;
  std::swap(S.weights->idem[0], S.weights->idem[1]);
  auto CS = certify_qha(S);
  CHECK_FALSE(CS.ok);
  CHECK(check_certificate(at_O(S), CS).agrees);

  std::vector<std::string> good{"2", "1"}, bad{"1", "2"};
  CHECK(certify_qha(Z, &good).ok);
  CHECK_FALSE(certify_qha(Z, &bad).ok);

  auto CK = certify_chain(at_K(Z));
  CHECK(CK.ok);
  CHECK(check_certificate(at_K(Z), CK).agrees);
  auto Ck = certify_chain(at_k(Z));
  CHECK(Ck.ok);
  CHECK(Ck.delta_ranks() == std::map<std::string, int>{{"1", 1}, {"2", 2}});
  // beta' reduces to zero: A e2 (x) e2 A has rank 4 but A e2 A has rank 3
  auto Cks = certify_chain(at_k(zigzag5(rs, Scalar(3))));
  CHECK_FALSE(Cks.ok);
  CHECK(Cks.failed_condition == "iii");
  CHECK(check_certificate(at_k(zigzag5(rs, Scalar(3))), Cks).agrees);
}

TEST_CASE("checker agrees on perturbed fixtures") {
  auto rs = rational_spec(3);
  int rejected = 0;
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    auto A = perturb(seed % 2 ? zigzag5(rs) : upper_triangular(rs, 3), seed, 2);
    auto C = certify_qha(A);
    CHECK(check_certificate(at_O(A), C).agrees);
    rejected += !C.ok;
  }
  CHECK(rejected > 0);
}
