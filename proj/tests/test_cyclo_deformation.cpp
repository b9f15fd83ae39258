#include "doctest.h"
#include "grforge/cyclo.hpp"

using namespace grforge;

TEST_CASE("root data") {
  struct Case {
    const char* type;
    size_t roots;
  };
  for (auto c : {Case{"A1", 1}, Case{"A2", 3}, Case{"A4", 10}, Case{"B2", 4}, Case{"B3", 9}, Case{"C3", 9},
                 Case{"D4", 12}, Case{"E6", 36}, Case{"E7", 63}, Case{"E8", 120}, Case{"F4", 24}, Case{"G2", 6}})
    CHECK(root_datum(c.type).positive.size() == c.roots);
  auto B2 = root_datum("B2");
  CHECK(B2.d == std::vector<int>{2, 1, 1, 2});
  CHECK(B2.find({1, 2}) == 3);
  auto G2 = root_datum("G2");
  CHECK(G2.d == std::vector<int>{1, 3, 1, 1, 3, 3});
  CHECK(G2.find({3, 2}) >= 0);
  CHECK(G2.find({2, 2}) < 0);
  auto F4 = root_datum("F4");
  int longs = 0;
  for (int d : F4.d) longs += d == 2;
  CHECK(longs == 12);
  CHECK(root_datum("A2").d == std::vector<int>{1, 1, 1});
  CHECK_THROWS(root_datum("D3"));
  CHECK_THROWS(root_datum("X2"));
}

TEST_CASE("the units u_alpha") {
  auto a = unit_u_alpha(5, 3);
  auto rs5 = cyclotomic_spec(5);
  CHECK(a.u == Scalar::zeta_pow(rs5, 2) + Scalar::zeta_pow(rs5, 1) + Scalar(1));
  CHECK(a.identity);
  CHECK(a.unit);
  CHECK(a.residue == 3);
  auto b = unit_u_alpha(3, 2);
  CHECK(b.residue == 2);
  CHECK(b.unit);
  CHECK(unit_u_alpha(7, 1).u == Scalar(1));
  CHECK_THROWS(unit_u_alpha(3, 3));
  CHECK_THROWS(unit_u_alpha(4, 1));
  for (int p : {3, 5, 7}) {
    auto f = p_as_pi_power(p);
    CHECK(f.unit_ok);
    CHECK(f.residue == static_cast<uint32_t>(p - 1));
  }
}

TEST_CASE("truncated series arithmetic") {
  auto x = TruncatedSeries::variable(1, 4, 0);
  auto one = TruncatedSeries::constant(1, 4, Scalar(1));
  auto inv = inverse_series(one + x);
  CHECK(inv.coefficient({3}) == Scalar(-1));
  CHECK(inv * (one + x) == one);
  auto l = log_series(one + x);
  CHECK(l.coefficient({2}) == Scalar(mpq_class(-1, 2)));
  CHECK(l.degree() == 3);
  CHECK(x.pow(4).is_zero());
  CHECK_THROWS(inverse_series(x));
}

TEST_CASE("K_beta and H'_beta") {
  auto rs = cyclotomic_spec(5);
  auto A2 = root_datum("A2");
  int b = A2.find({1, 1});
  auto k = k_beta(A2, 5, b);
  CHECK(k.integral);
  CHECK(k.recursive);
  // H' = x + y + (zeta - 1) x y
  CHECK(k.Hprime.coefficient({1, 0}) == Scalar(1));
  CHECK(k.Hprime.coefficient({0, 1}) == Scalar(1));
  CHECK(k.Hprime.coefficient({1, 1}) == Scalar::zeta_pow(rs, 1) - Scalar(1));
  CHECK(k.Hprime.terms().size() == 3);
  auto s = k_beta(A2, 5, 0);
  CHECK(s.K.coefficient({1, 0}) == Scalar::zeta_pow(rs, 1) - Scalar(1));
  auto G2 = root_datum("G2");
  for (int beta = 0; beta < 6; ++beta) {
    auto g = k_beta(G2, 5, beta);
    CHECK(g.integral);
    CHECK(g.recursive);
  }
  CHECK_THROWS(k_beta(G2, 3, 0));
  CHECK_THROWS(k_beta(A2, 5, 7));
}

TEST_CASE("appendix identities") {
  auto r = appendix_identity_suite(root_datum("A1"), 5, 8);
  CHECK(r.all());
  CHECK(appendix_identity_suite(root_datum("A1"), 3, 8).all());
  auto b = appendix_identity_suite(root_datum("B2"), 3, 8);
  CHECK(b.all());
  CHECK(b.items.size() == 4 * (4 + 2 * 2));
  CHECK_THROWS(appendix_identity_suite(root_datum("G2"), 3, 8));
  CHECK_THROWS(appendix_identity_suite(root_datum("A1"), 5, 1));
  // (zeta - 1)^3 / 3 at p = 3
  auto rs = cyclotomic_spec(3);
  auto z1 = Scalar::zeta_pow(rs, 1) - Scalar(1);
  CHECK(*valuation(z1.pow(3), rs) == 3);
  CHECK(*valuation(Scalar(3), rs) == 2);
  CHECK(in_O(z1.pow(3) / Scalar(3), rs));
}

TEST_CASE("comultiplication of H'") {
  auto A1 = root_datum("A1");
  CHECK(comult_check(A1, 3, 0, 8).ok());
  CHECK(comult_check(root_datum("B2"), 5, 1, 8).ok());
  CHECK(comult_check(root_datum("B2"), 5, 3, 8).ok());
  CHECK(comult_check(A1, 3, 0, 1).ok());
}
