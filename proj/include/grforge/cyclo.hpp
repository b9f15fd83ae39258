#pragma once

#include <map>
#include <string>
#include <vector>

#include "grforge/scalar.hpp"

namespace grforge {

struct RootDatum {
  std::string type;  // "A2", "B2", "G2", ...
  int rank = 0;
  std::vector<std::vector<int>> cartan;  // cartan[i][j] = <alpha_i^vee, alpha_j>
  std::vector<int> sym;                  // (alpha_i, alpha_i) / 2, least value 1
  std::vector<std::vector<int>> positive;  // coefficients n_alpha, by height; simple roots first
  std::vector<int> d;                      // d_beta, parallel to positive

  int height(int beta) const;
  int simple_index(int beta) const;  // -1 unless simple
  int find(const std::vector<int>& coeffs) const;
  std::string root_name(int beta) const;
};

// Types A_r, B_r (r >= 2), C_r (r >= 2), D_r (r >= 4), E6, E7, E8, F4, G2,
// written "A3", "G2", ...
RootDatum root_datum(const std::string& type);

struct UnitU {
  Scalar u;
  bool identity = false;  // zeta^d - 1 = u (zeta - 1)
  bool unit = false;
  uint32_t residue = 0;
};

// u = zeta^{d-1} + ... + zeta + 1; throws when p | d.
UnitU unit_u_alpha(int p, int d);

struct PiPowerFactor {
  Scalar unit;  // p / (zeta - 1)^{p-1}
  bool unit_ok = false;
  uint32_t residue = 0;
};

PiPowerFactor p_as_pi_power(int p);

// Polynomials in `vars` commuting variables over K(zeta), with terms of total
// degree >= order discarded. order <= 0 keeps everything.
class TruncatedSeries {
 public:
  using Monomial = std::vector<int>;

  TruncatedSeries(int vars = 0, int order = 0) : vars_(vars), order_(order) {}
  static TruncatedSeries constant(int vars, int order, const Scalar& c);
  static TruncatedSeries variable(int vars, int order, int i);

  int vars() const { return vars_; }
  int order() const { return order_; }
  const std::map<Monomial, Scalar>& terms() const { return terms_; }
  Scalar coefficient(const Monomial& m) const;
  Scalar constant_term() const;
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // -1 for zero

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const Scalar& c);
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(TruncatedSeries a, const Scalar& c) { return a *= c; }
  bool operator==(const TruncatedSeries& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }

  TruncatedSeries pow(int e) const;
  // coefficientwise division; the caller checks integrality
  TruncatedSeries divided(const Scalar& c) const;
  // reinterpretation at another order, dropping terms of degree >= order
  TruncatedSeries with_order(int order) const;
  // algebra map sending variable i to images[i]
  TruncatedSeries substitute(const std::vector<TruncatedSeries>& images) const;
  // variables shifted to positions offset.. in a ring with `vars` variables
  TruncatedSeries embedded(int vars, int offset) const;

  bool integral(const RingSpec& rs) const;
  std::optional<long> min_valuation(const RingSpec& rs) const;
  std::string str() const;

 private:
  void add_term(const Monomial& m, const Scalar& c);
  int vars_;
  int order_;
  std::map<Monomial, Scalar> terms_;
};

// f^{-1} by the geometric series; throws unless f has a nonzero constant term
// and a finite order.
TruncatedSeries inverse_series(const TruncatedSeries& f);
// log f for f with constant term 1.
TruncatedSeries log_series(const TruncatedSeries& f);

struct KBeta {
  TruncatedSeries K;       // in the simple H'_alpha, exact
  TruncatedSeries Hprime;  // (K_beta - 1) / (zeta^{d_beta} - 1)
  bool integral = false;
  bool recursive = false;  // agrees with the xy - 1 = (x - 1) y + (y - 1) recursion
};

// Variables are H'_alpha for the simple roots; K_alpha = 1 + (zeta^{d_alpha} - 1) H'_alpha.
KBeta k_beta(const RootDatum& R, int p, int beta);

struct AppendixItem {
  int item = 0;  // 1..6
  int root = 0;
  int j = -1;    // for items (4) and (5)
  bool ok = false;
  std::string detail;
};

struct AppendixReport {
  std::string type;
  int p = 0, order = 0;
  std::vector<AppendixItem> items;
  bool item_ok(int item) const;
  bool all() const;
};

// Items (1)-(6) for every positive root; throws for even p, non-prime p, p = 3
// with G2, or order < 2.
AppendixReport appendix_identity_suite(const RootDatum& R, int p, int order);

struct ComultReport {
  bool direct = false;        // (K(x)K(y) - 1)/(zeta^d - 1) = H'(x)K(y) + H'(y)
  bool homomorphism = false;  // the formula on simple roots extends multiplicatively
  bool ok() const { return direct && homomorphism; }
};

ComultReport comult_check(const RootDatum& R, int p, int beta, int order);

}  // namespace grforge
