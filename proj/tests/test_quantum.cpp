#include "doctest.h"
#include "grforge/fixtures.hpp"
#include "grforge/qha.hpp"
#include "grforge/quantum.hpp"
#include "grforge/suites.hpp"

using namespace grforge;

namespace {

long binomial(long n, long k) {
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("p-regularity of sl2 weights") {
  CHECK(p_regular_sl2(0, 3));
  CHECK(p_regular_sl2(1, 3));
  CHECK_FALSE(p_regular_sl2(2, 3));
  CHECK_FALSE(p_regular_sl2(-1, 5));
  CHECK(p_regular_sl2(3, 5));
}

TEST_CASE("q-Schur algebras of gl2 have the Schur dimension and are split quasi-hereditary") {
  for (int p : {3, 5})
    for (int d : {2, 3, 4}) {
      CAPTURE(p);
      CAPTURE(d);
      auto Q = qschur(2, d, p);
      const auto& A = Q.alg;
      CHECK(A.n() == binomial(4 + d - 1, d));
      CHECK(validate_algebra(A).empty());
      REQUIRE(A.weights);
      CHECK(validate_weights(A, *A.weights, true).empty());
      CHECK(A.weights->X.size() == static_cast<size_t>(d + 1));
      CHECK(A.weights->Lambda.size() == static_cast<size_t>(d / 2 + 1));
      auto cert = certify_qha(A);
      CHECK(cert.ok);
    }
  CHECK_THROWS(qschur(3, 2, 3));
  CHECK_THROWS(qschur(2, 7, 3));
}

TEST_CASE("q-Schur regular weights") {
  auto Q = qschur(2, 3, 3);
  CHECK(Q.alg.n() == 20);
  // sl2 weights 3 and 1: 3 + 1 = 4 and 1 + 1 = 2 are prime to 3
  CHECK(Q.regular == std::vector<std::string>{"3,0", "2,1"});
  auto R = qschur(2, 4, 3);
  // sl2 weights 4, 2, 0: 2 + 1 = 3 is singular
  CHECK(R.regular == std::vector<std::string>{"4,0", "2,2"});
}

TEST_CASE("small quantum sl2 at p = 3") {
  auto U = usl2(3);
  const auto& A = U.alg;
  CHECK(A.n() == 27);
  CHECK(validate_algebra(A).empty());
  CHECK(U.regular == std::vector<std::string>{"0", "1"});
  // blocks {0, 1} and the Steinberg weight {2}
  REQUIRE(U.block_weights.size() == 2);
  CHECK(U.block_weights[0] == std::vector<std::string>{"0", "1"});
  CHECK(U.block_weights[1] == std::vector<std::string>{"2"});
  // E F - F E = [K; 0]: the basis elements are F^a k_m E^c
  const auto& a = A.alg;
  auto find = [&](const std::string& s) {
    for (int i = 0; i < A.n(); ++i)
      if (A.labels[i] == s) return i;
    return -1;
  };
  const RingSpec rs = A.rs;
  Vec<Scalar> E(27), F(27);
  for (int m = 0; m < 3; ++m) {
    E[find("k" + std::to_string(m) + ".E")] = Scalar(1);
    F[find("F.k" + std::to_string(m))] = Scalar(1);
  }
  Vec<Scalar> comm = a.mul(E, F);
  const Vec<Scalar> fe = a.mul(F, E);
  for (int i = 0; i < 27; ++i) comm[i] -= fe[i];
  Vec<Scalar> h(27);
  for (int m = 0; m < 3; ++m) h[find("k" + std::to_string(m))] = qint(rs, m);
  CHECK(comm == h);
  // E^3 = 0
  CHECK(a.mul(a.mul(E, E), E) == Vec<Scalar>(27));
}

TEST_CASE("small quantum sl2 blocks split over O") {
  auto U = usl2(3);
  REQUIRE(U.blocks_integral);
  // the Steinberg block is a 3 x 3 matrix block, so of rank 9
  auto St = block_algebra(U, 1);
  CHECK(St.n() == 9);
  CHECK(validate_algebra(St).empty());
  auto R = block_algebra(U, 0);
  CHECK(R.n() == 18);
  CHECK(validate_algebra(R).empty());
}

TEST_CASE("primitive refinement of q-Schur weight idempotents") {
  auto A = qschur(2, 2, 5).alg;
  // semisimple over K: e_{1,1} B e_{1,1} has rank 2, one line per L(2,0) and L(1,1)
  for (int level = 0; level < 2; ++level) {
    auto check = [&](const auto& B) {
      auto R = primitive_refinement(B);
      CHECK(R.W.X == std::vector<std::string>{"2,0", "1,1", "1,1~", "0,2"});
      const auto& f = R.idem("1,1");
      CHECK(R.alg.mul(f, f) == f);
      Mat<std::decay_t<decltype(f[0])>> rows;
      for (int i = 0; i < R.alg.n; ++i) rows.push_back(R.alg.mul(R.alg.lmul_basis(i, f), f));
      CHECK(rank_of(R.alg.d, rows, R.alg.n) == 1);
      auto same = primitive_refinement(R);
      CHECK(same.W.X == R.W.X);
    };
    if (level == 0) check(at_K(A));
    else check(at_k(A));
  }
  auto Z = at_K(zigzag5(rational_spec(3)));
  CHECK(primitive_refinement(Z).W.X == Z.W.X);
}
