#include <map>

#include "doctest.h"
#include "grforge/fixtures.hpp"
#include "oracles.hpp"

using namespace grforge;

namespace {

// Path-algebra oracle for 1 -> 2 -> 1 with alpha*beta = 0: paths are words
// read right to left, product is concatenation when endpoints match.
struct Path {
  std::string word;  // "" for idempotents
  int s, t;
};

std::vector<Path> z5_paths() {
  return {{"", 1, 1}, {"", 2, 2}, {"a", 1, 2}, {"b", 2, 1}, {"ba", 1, 1}};
}

// index of x*y in the path list, or -1 for zero
int path_product(const std::vector<Path>& P, int x, int y) {
  if (P[x].s != P[y].t) return -1;
  std::string w = P[x].word + P[y].word;
  if (w.find("ab") != std::string::npos) return -1;
  for (size_t k = 0; k < P.size(); ++k)
    if (P[k].word == w && P[k].s == P[y].s && P[k].t == P[x].t) return static_cast<int>(k);
  return -1;
}

Span<DomK> kspan(const RingSpec& rs, Mat<Scalar> rows, int n) { return echelon(DomK{rs}, std::move(rows), n); }

Vec<Scalar> sv(std::initializer_list<long> xs) {
  Vec<Scalar> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

StructureAlgebra cyclic_group_algebra(const RingSpec& rs, int m) {
  StructureAlgebra A = truncated_polynomial(rs, m);
  for (auto& row : A.alg.sc) row.clear();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) A.alg.sc[i * m + j].emplace_back((i + j) % m, Scalar(1));
  return A;
}

}  // namespace

TEST_CASE("zigzag fixture agrees with the path-algebra oracle") {
  auto rs = rational_spec(3);
  auto A = zigzag5(rs);
  auto P = z5_paths();
  CHECK(validate_algebra(A).empty());
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      int k = path_product(P, i, j);
      const auto& row = A.alg.prod(i, j);
      if (k < 0) {
        CHECK(row.empty());
      } else {
        REQUIRE(row.size() == 1);
        CHECK(row[0].first == k);
        CHECK(row[0].second == Scalar(1));
      }
    }
}

TEST_CASE("load-time validation") {
  auto rs = rational_spec(3);
  auto A = zigzag5(rs);
  A.alg.sc[3 * 5 + 0].emplace_back(3, Scalar(1));  // beta*e1 = beta breaks associativity
  auto err = validate_algebra(A);
  CHECK(!err.empty());
  bool assoc = false;
  for (auto& e : err) assoc = assoc || e.find("associativity") != std::string::npos;
  CHECK(assoc);

  auto B = zigzag5(rs);
  B.alg.sc[4 * 5 + 0][0].second = Scalar(mpq_class(1, 3));  // outside O
  CHECK(!validate_algebra(B).empty());

  auto C = zigzag5(rs);
  C.weights->idem[0] = sv({1, 0, 1, 0, 0});
  CHECK(!validate_algebra(C).empty());

  CHECK(validate_algebra(rank_one(rs)).empty());
  auto D = rank_one(rs);
  D.weights.reset();
  CHECK(validate_algebra(D).empty());
}

TEST_CASE("base change") {
  auto rs = rational_spec(3);
  auto Zs = zigzag5(rs, Scalar(3));
  auto k = to_k(Zs.alg);
  CHECK(k.prod(3, 2).empty());  // beta' alpha = 3 gamma = 0 over k
  auto K = to_K(Zs.alg);
  CHECK(K.prod(3, 2).size() == 1);
  CHECK(to_k(rank_one(rs).alg).n == 1);
}

TEST_CASE("radicals over K and over k") {
  auto rs = rational_spec(3);
  auto Z = zigzag5(rs);
  auto RK = radical_field(to_K(Z.alg));
  CHECK(RK == kspan(rs, {sv({0, 0, 1, 0, 0}), sv({0, 0, 0, 1, 0}), sv({0, 0, 0, 0, 1})}, 5));
  auto Rk = radical_field(to_k(Z.alg));
  CHECK(Rk.rank() == 3);
  auto rc = check_radical(to_K(Z.alg), RK);
  CHECK(rc.nilpotent);
  CHECK(rc.quotient_semisimple);
  CHECK(rc.nilpotency == 3);

  auto T2 = upper_triangular(rs, 2);
  CHECK(radical_field(to_K(T2.alg)) == kspan(rs, {sv({0, 1, 0})}, 3));
  CHECK(radical_field(to_K(matrix_algebra(rs, 2).alg)).rank() == 0);

  // characteristic p: the plain trace form is degenerate on these
  for (int p : {3, 5}) {
    auto rp = rational_spec(p);
    auto M = matrix_algebra(rp, p);
    CHECK(radical_field(to_k(M.alg)).rank() == 0);
    auto G = cyclic_group_algebra(rp, p);
    auto Gk = to_k(G.alg);
    auto J = radical_field(Gk);
    CHECK(J.rank() == p - 1);
    auto c = check_radical(Gk, J);
    CHECK(c.nilpotent);
    CHECK(c.quotient_semisimple);
    CHECK(c.nilpotency == p);
    CHECK(radical_field(to_K(G.alg)).rank() == 0);
    auto Gpp = cyclic_group_algebra(rp, p * p);
    CHECK(radical_field(to_k(Gpp.alg)).rank() == p * p - 1);
  }
  // C_6 at p = 3 has two blocks, each of dimension 3 with radical of dimension 2
  auto G6 = cyclic_group_algebra(rs, 6);
  CHECK(radical_field(to_k(G6.alg)).rank() == 4);
}

TEST_CASE("radical-power lattices and the forced grading") {
  auto rs = rational_spec(3);
  auto Z = zigzag5(rs);
  auto F = radical_filtration(Z);
  CHECK(radical_power_lattice(Z, 0) == ambient_lattice(rs, 5));
  CHECK(radical_power_lattice(Z, 1) == make_lattice(rs, {sv({0, 0, 1, 0, 0}), sv({0, 0, 0, 1, 0}), sv({0, 0, 0, 0, 1})}, 5));
  CHECK(radical_power_lattice(Z, 2) == make_lattice(rs, {sv({0, 0, 0, 0, 1})}, 5));
  CHECK(radical_power_lattice(Z, 3).rank() == 0);
  CHECK(radical_power_lattice(Z, 7).rank() == 0);

  auto G = gr_algebra(Z);
  CHECK(G.grade_ranks == std::vector<int>{2, 2, 1});
  CHECK(respects_grading(G.alg.alg, G.grade));
  CHECK(validate_algebra(G.alg).empty());
  // path-length grading: gr(Z5) has the same structure constants
  std::map<std::string, int> at;
  for (int i = 0; i < 5; ++i) at[G.alg.labels[i]] = i;
  REQUIRE(at.count("[beta]"));
  REQUIRE(at.count("[alpha]"));
  REQUIRE(at.count("[gamma]"));
  const auto& ba = G.alg.alg.prod(at["[beta]"], at["[alpha]"]);
  REQUIRE(ba.size() == 1);
  CHECK(ba[0].first == at["[gamma]"]);
  CHECK(ba[0].second == Scalar(1));

  auto Zs = zigzag5(rs, Scalar(3));
  auto Gs = gr_algebra(Zs);
  CHECK(Gs.grade_ranks == std::vector<int>{2, 2, 1});
  std::map<std::string, int> as;
  for (int i = 0; i < 5; ++i) as[Gs.alg.labels[i]] = i;
  REQUIRE(as.count("[beta']"));
  const auto& bas = Gs.alg.alg.prod(as["[beta']"], as["[alpha]"]);
  REQUIRE(bas.size() == 1);
  CHECK(bas[0].first == as["[gamma]"]);
  CHECK(bas[0].second == Scalar(3));
  REQUIRE(Gs.alg.weights);
  CHECK(validate_weights(Gs.alg, *Gs.alg.weights, true).empty());

  auto M = gr_algebra(matrix_algebra(rs, 2));
  CHECK(M.grade_ranks == std::vector<int>{4});

  // rank preservation and agreement with gr over K
  for (const auto& A : {Z, Zs, upper_triangular(rs, 3), truncated_polynomial(rs, 4)}) {
    auto g = gr_algebra(A);
    int total = 0;
    for (int r : g.grade_ranks) total += r;
    CHECK(total == A.n());
    auto ak = to_K(A.alg);
    auto pw = radical_powers(ak, radical_field(ak));
    for (size_t m = 0; m + 1 < pw.size(); ++m)
      CHECK(g.grade_ranks[m] == pw[m].rank() - pw[m + 1].rank());
  }
}

TEST_CASE("symbols in the graded algebra") {
  auto rs = rational_spec(5);
  auto Zs = zigzag5(rs, Scalar(5));
  auto G = gr_algebra(Zs);
  auto x = sv({0, 0, 2, 5, 7});
  auto s1 = symbol(G, x, 1);
  auto s2 = symbol(G, sv({0, 0, 0, 0, 7}), 2);
  int nz1 = 0;
  for (auto& c : s1) nz1 += !c.is_zero();
  CHECK(nz1 == 2);
  int nz2 = 0;
  for (auto& c : s2) nz2 += !c.is_zero();
  CHECK(nz2 == 1);
  CHECK_THROWS(symbol(G, sv({1, 0, 0, 0, 0}), 1));
}

TEST_CASE("Morita reduction") {
  auto rs = rational_spec(3);
  auto Z = zigzag5(rs);
  auto R = morita_reduce(Z);
  CHECK(R.n() == 5);
  CHECK(validate_algebra(R).empty());

  auto I = inflate(Z, "1");
  CHECK(validate_algebra(I).empty());
  CHECK(I.n() == 13);
  auto RI = morita_reduce(I);
  CHECK(RI.n() == 5);
  CHECK(validate_algebra(RI).empty());
  auto g1 = gr_algebra(RI), g0 = gr_algebra(Z);
  CHECK(g1.grade_ranks == g0.grade_ranks);

  auto S = direct_product(Z, rank_one(rs));
  S.weights->Lambda = {"a:1", "a:2"};
  S.weights->less = {{"a:1", "a:2"}};
  S.weights->close();
  CHECK(morita_reduce(S).n() == 5);
}

TEST_CASE("Wedderburn complements") {
  auto rs = rational_spec(3);
  DomK k{rs};
  auto Z = to_K(zigzag5(rs).alg);
  auto W = wedderburn_complement(Z);
  REQUIRE(W);
  CHECK(*W == kspan(rs, {sv({1, 0, 0, 0, 0}), sv({0, 1, 0, 0, 0})}, 5));

  auto P = to_K(truncated_polynomial(rs, 2).alg);
  auto WP = wedderburn_complement(P);
  REQUIRE(WP);
  CHECK(*WP == kspan(rs, {sv({1, 0})}, 2));
  auto M = to_K(matrix_algebra(rs, 2).alg);
  CHECK(wedderburn_complement(M)->rank() == 4);

  // a twisted basis forces actual lifting
  Mat<Scalar> B = {sv({1, 0, 1, 0, 0}), sv({0, 1, 0, 1, 1}), sv({0, 0, 1, 0, 0}), sv({0, 0, 0, 1, 0}),
                   sv({0, 0, 0, 0, 1})};
  auto Zt = rebase(Z, B);
  auto Wt = wedderburn_complement(Zt);
  REQUIRE(Wt);
  CHECK(Wt->rank() == 2);
  auto sub = subalgebra(Zt, *Wt);
  REQUIRE(sub);
  CHECK(radical_field(*sub).rank() == 0);
  CHECK(span_sum(k, *Wt, radical_field(Zt)).rank() == 5);

  auto T3 = to_K(upper_triangular(rs, 3).alg);
  Mat<Scalar> C = {sv({1, 1, 0, 0, 0, 0}), sv({0, 1, 0, 1, 1, 0}), sv({0, 0, 1, 0, 1, 0}), sv({0, 0, 0, 1, 0, 0}),
                   sv({0, 0, 0, 0, 1, 0}), sv({0, 0, 0, 0, 1, 1})};
  auto T3t = rebase(T3, C);
  auto W3 = wedderburn_complement(T3t);
  REQUIRE(W3);
  CHECK(W3->rank() == 3);
  CHECK(subalgebra(T3t, *W3));

  // containing a given complement of a subalgebra: K*1
  auto one = kspan(rs, {Zt.unit}, 5);
  auto Wc = wedderburn_complement(Zt, &one);
  REQUIRE(Wc);
  CHECK(is_subspan(k, one, *Wc));
}

TEST_CASE("subalgebra radical identities") {
  auto rs = rational_spec(3);
  auto Z = to_K(zigzag5(rs).alg);
  auto full = full_span(DomK{rs}, 5);
  auto a = kspan(rs, {sv({1, 1, 0, 0, 0}), sv({0, 0, 1, 0, 0}), sv({0, 0, 0, 1, 0}), sv({0, 0, 0, 0, 1})}, 5);
  auto r = subalgebra_radical_check(Z, a, full);
  CHECK(r.closed);
  CHECK(r.a_equality);
  CHECK(r.b_equality);
  CHECK(r.rad_a == 3);

  auto one = kspan(rs, {sv({1, 1, 0, 0, 0})}, 5);
  auto r1 = subalgebra_radical_check(Z, one, full);
  CHECK(r1.closed);
  CHECK(r1.rad_a == 0);
  CHECK(r1.a_equality);

  auto g = kspan(rs, {sv({1, 1, 0, 0, 0}), sv({0, 0, 0, 0, 1})}, 5);
  auto rg = subalgebra_radical_check(Z, g, full);
  CHECK(rg.closed);
  CHECK(rg.rad_a == 1);
  CHECK(rg.a_cap_radA == 1);
  CHECK(rg.a_equality);

  auto bad = kspan(rs, {sv({1, 1, 0, 0, 0}), sv({0, 0, 1, 0, 0}), sv({0, 0, 0, 1, 0})}, 5);
  CHECK(!subalgebra_radical_check(Z, bad, full).closed);
}

TEST_CASE("cyclotomic radical filtration") {
  auto rs = cyclotomic_spec(5);
  auto Zs = zigzag5(rs, uniformizer(rs));
  auto G = gr_algebra(Zs);
  CHECK(G.grade_ranks == std::vector<int>{2, 2, 1});
  auto k = to_k(Zs.alg);
  CHECK(radical_field(k).rank() == 3);
}
