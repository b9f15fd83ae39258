#include "doctest.h"
#include "kernel_properties.hpp"

using namespace grforge;

namespace {

Scalar cyc(const RingSpec& rs, std::vector<long> c) {
  std::vector<mpq_class> q(rs.width());
  for (size_t i = 0; i < c.size(); ++i) q[i] = c[i];
  return Scalar::from_coeffs(q);
}

LatticeRep lat(const RingSpec& rs, std::vector<std::vector<long>> rows, int n) {
  Mat<Scalar> m;
  for (auto& r : rows) {
    Vec<Scalar> v;
    for (long x : r) v.emplace_back(x);
    m.push_back(v);
  }
  return make_lattice(rs, m, n);
}

}  // namespace

TEST_CASE("valuation examples") {
  auto r3 = rational_spec(3);
  CHECK(*valuation(Scalar(6), r3) == 1);
  CHECK(!valuation(Scalar(0), r3).has_value());
  auto c5 = cyclotomic_spec(5);
  CHECK(*valuation(Scalar::zeta_pow(c5, 1) - Scalar(1), c5) == 1);
  auto c3 = cyclotomic_spec(3);
  // frozen oracle: v_p(N(3)) = v_3(3^2) = 2
  CHECK(oracle::cyclo_valuation({3, 0}, 3) == 2);
  CHECK(*valuation(Scalar(3), c3) == 2);
  CHECK_THROWS(residue(Scalar(mpq_class(1, 3)), r3));
}

TEST_CASE("cyclotomic valuation agrees with the norm oracle") {
  std::mt19937_64 rng(oracle::seed());
  for (int p : {3, 5, 7}) {
    auto rs = cyclotomic_spec(p);
    for (int it = 0; it < 200; ++it) {
      auto x = props::random_entry(rng, rs, 20);
      if (it % 3 == 0) x *= pi_pow(rs, it % 5);
      if (x.is_zero()) continue;
      auto q = x.coeffs(rs);
      CHECK(*valuation(x, rs) == oracle::cyclo_valuation(q, p));
      auto y = props::random_entry(rng, rs, 20);
      if (y.is_zero()) continue;
      CHECK(*valuation(x * y, rs) == *valuation(x, rs) + *valuation(y, rs));
      CHECK((x / y) * y == x);
      if (in_O(x, rs) && in_O(y, rs))
        CHECK(residue(x * y, rs) == (residue(x, rs) * residue(y, rs)) % p);
    }
  }
}

TEST_CASE("residue and unit examples") {
  auto c5 = cyclotomic_spec(5);
  CHECK(residue(Scalar::zeta_pow(c5, 1), c5) == 1);
  CHECK(residue(Scalar(3), rational_spec(3)) == 0);
  CHECK(residue(cyc(c5, {1, 1, 1}), c5) == 3);
  CHECK(is_unit(Scalar(2), rational_spec(3)));
  auto c3 = cyclotomic_spec(3);
  CHECK(!is_unit(Scalar::zeta_pow(c3, 1) - Scalar(1), c3));
  CHECK(is_unit(cyc(c5, {1, 1}), c5));
}

TEST_CASE("canonical quotient gives digit representatives") {
  auto c5 = cyclotomic_spec(5);
  std::mt19937_64 rng(oracle::seed() + 1);
  for (int it = 0; it < 100; ++it) {
    auto x = props::random_entry(rng, c5, 30);
    long e = it % 4 + 1;
    auto q = canonical_quotient(x, c5, e);
    CHECK(in_O(q, c5));
    auto r = x - q * pi_pow(c5, e);
    // the representative is the same for x and x + pi^e
    auto q2 = canonical_quotient(x + pi_pow(c5, e), c5, e);
    CHECK(x + pi_pow(c5, e) - q2 * pi_pow(c5, e) == r);
  }
}

TEST_CASE("lattice operation examples") {
  auto r3 = rational_spec(3);
  auto L1 = lat(r3, {{3, 0}, {0, 1}}, 2);
  auto L2 = lat(r3, {{1, 1}}, 2);
  CHECK(lattice_intersection(r3, L1, L2) == lat(r3, {{3, 3}}, 2));
  CHECK(lattice_intersection(r3, L1, L1) == L1);
  CHECK(lattice_intersection(r3, L1, ambient_lattice(r3, 2)) == L1);

  auto amb = ambient_lattice(r3, 2);
  CHECK(pure_closure(r3, lat(r3, {{3, 3}}, 2), amb) == lat(r3, {{1, 1}}, 2));
  CHECK(pure_closure(r3, L2, amb) == L2);

  CHECK(!is_pure(r3, lat(r3, {{3, 0}}, 2), amb));
  CHECK(is_pure(r3, lat(r3, {{1, 2}}, 2), amb));
  CHECK(is_pure(r3, zero_span<DomO>(2), amb));
  CHECK(!is_pure_by_residue(r3, lat(r3, {{3, 0}}, 2), amb));

  auto q1 = quotient_free_basis(r3, amb, lat(r3, {{1, 0}}, 2));
  CHECK(q1.torsion.empty());
  REQUIRE(q1.free_lifts.size() == 1);
  CHECK(q1.free_lifts[0] == Vec<Scalar>{Scalar(0), Scalar(1)});
  auto q2 = quotient_free_basis(r3, ambient_lattice(r3, 1), lat(r3, {{3}}, 1));
  CHECK(q2.free_lifts.empty());
  CHECK(q2.torsion == std::vector<long>{1});
  auto q3 = quotient_free_basis(r3, amb, lat(r3, {{3, 3}}, 2));
  CHECK(q3.free_lifts.size() == 1);
  CHECK(q3.torsion == std::vector<long>{1});
}

TEST_CASE("canonical form is unique") {
  auto r5 = rational_spec(5);
  auto a = lat(r5, {{5, 10}, {0, 25}}, 2);
  auto b = lat(r5, {{5, 35}, {5, -15}, {10, 20}}, 2);
  CHECK(a == b);
  auto c3 = cyclotomic_spec(3);
  Scalar z = Scalar::zeta_pow(c3, 1);
  auto x = make_lattice(c3, {{z - Scalar(1), Scalar(3)}}, 2);
  auto y = make_lattice(c3, {{(z - Scalar(1)) * z, Scalar(3) * z}}, 2);
  CHECK(x == y);
}

TEST_CASE("randomized purity and intersection properties") {
  std::mt19937_64 rng(oracle::seed() + 2);
  props::Tally t;
  props::purity_trials(t, rng, rational_spec(3), 100, 6);
  props::purity_trials(t, rng, cyclotomic_spec(5), 40, 4);
  props::intersection_trials(t, rng, 3, 20);
  CHECK_MESSAGE(t.ok(), t.first_failure);
}
