#include "grforge/cyclo.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace grforge {

// ---------------------------------------------------------------- root data

int RootDatum::height(int beta) const {
  const auto& n = positive.at(beta);
  return std::accumulate(n.begin(), n.end(), 0);
}

int RootDatum::simple_index(int beta) const {
  if (height(beta) != 1) return -1;
  const auto& n = positive[beta];
  return static_cast<int>(std::find(n.begin(), n.end(), 1) - n.begin());
}

int RootDatum::find(const std::vector<int>& coeffs) const {
  auto it = std::find(positive.begin(), positive.end(), coeffs);
  return it == positive.end() ? -1 : static_cast<int>(it - positive.begin());
}

std::string RootDatum::root_name(int beta) const {
  std::string s;
  const auto& n = positive.at(beta);
  for (int i = 0; i < rank; ++i) {
    if (n[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (n[i] > 1) s += std::to_string(n[i]);
    s += "a" + std::to_string(i + 1);
  }
  return s;
}

namespace {

std::vector<std::vector<int>> cartan_of(char t, int r) {
  std::vector<std::vector<int>> c(r, std::vector<int>(r, 0));
  for (int i = 0; i < r; ++i) c[i][i] = 2;
  auto link = [&](int i, int j) { c[i][j] = c[j][i] = -1; };
  switch (t) {
    case 'A':
      for (int i = 0; i + 1 < r; ++i) link(i, i + 1);
      break;
    case 'B':
      for (int i = 0; i + 1 < r; ++i) link(i, i + 1);
      c[r - 1][r - 2] = -2;
      break;
    case 'C':
      for (int i = 0; i + 1 < r; ++i) link(i, i + 1);
      c[r - 2][r - 1] = -2;
      break;
    case 'D':
      for (int i = 0; i + 2 < r; ++i) link(i, i + 1);
      link(r - 3, r - 1);
      break;
    case 'E':
      link(0, 2);
      link(1, 3);
      for (int i = 2; i + 1 < r; ++i) link(i, i + 1);
      break;
    case 'F':
      link(0, 1);
      link(1, 2);
      link(2, 3);
      c[2][1] = -2;
      break;
    case 'G':
      link(0, 1);
      c[0][1] = -3;
      break;
    default:
      throw std::invalid_argument("root_datum: unknown type");
  }
  return c;
}

}  // namespace

RootDatum root_datum(const std::string& type) {
  if (type.size() < 2) throw std::invalid_argument("root_datum: malformed type " + type);
  char t = type[0];
  int r = 0;
  try {
    r = std::stoi(type.substr(1));
  } catch (const std::exception&) {
    throw std::invalid_argument("root_datum: malformed type " + type);
  }
  bool ok = (t == 'A' && r >= 1) || ((t == 'B' || t == 'C') && r >= 2) || (t == 'D' && r >= 4) ||
            (t == 'E' && r >= 6 && r <= 8) || (t == 'F' && r == 4) || (t == 'G' && r == 2);
  if (!ok) throw std::invalid_argument("root_datum: unsupported type " + type);
  RootDatum R;
  R.type = type;
  R.rank = r;
  R.cartan = cartan_of(t, r);
  // symmetrizer s_i c_ij = s_j c_ji along the Dynkin diagram
  std::vector<mpq_class> s(r, 0);
  s[0] = 1;
  std::queue<int> q;
  q.push(0);
  while (!q.empty()) {
    int i = q.front();
    q.pop();
    for (int j = 0; j < r; ++j)
      if (j != i && R.cartan[i][j] != 0 && s[j] == 0) {
        s[j] = s[i] * R.cartan[i][j] / R.cartan[j][i];
        q.push(j);
      }
  }
  mpq_class lo = *std::min_element(s.begin(), s.end());
  for (auto& x : s) {
    x /= lo;
    if (x.get_den() != 1) throw std::logic_error("root_datum: symmetrizer not integral");
    R.sym.push_back(static_cast<int>(x.get_num().get_si()));
  }
  // positive roots by root strings
  for (int i = 0; i < r; ++i) {
    std::vector<int> e(r, 0);
    e[i] = 1;
    R.positive.push_back(e);
  }
  std::set<std::vector<int>> seen(R.positive.begin(), R.positive.end());
  for (size_t b = 0; b < R.positive.size(); ++b) {
    for (int i = 0; i < r; ++i) {
      auto beta = R.positive[b];
      int pair = 0;  // <beta, alpha_i^vee>
      for (int j = 0; j < r; ++j) pair += beta[j] * R.cartan[i][j];
      int down = 0;
      auto x = beta;
      while (true) {
        --x[i];
        if (!seen.count(x)) break;
        ++down;
      }
      if (down - pair > 0) {
        auto up = beta;
        ++up[i];
        if (seen.insert(up).second) R.positive.push_back(up);
      }
    }
  }
  std::stable_sort(R.positive.begin(), R.positive.end(), [](const auto& a, const auto& b) {
    return std::accumulate(a.begin(), a.end(), 0) < std::accumulate(b.begin(), b.end(), 0);
  });
  for (const auto& n : R.positive) {
    long len = 0;  // (beta, beta)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) len += static_cast<long>(n[i]) * n[j] * R.sym[i] * R.cartan[i][j];
    R.d.push_back(static_cast<int>(len / 2));
  }
  return R;
}

// ---------------------------------------------------------------- scalars

namespace {

void require_prime(int p) {
  if (p % 2 == 0 || !is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime");
}

Scalar zpow(const RingSpec& rs, long k) { return Scalar::zeta_pow(rs, k); }

}  // namespace

UnitU unit_u_alpha(int p, int d) {
  require_prime(p);
  if (d <= 0) throw std::invalid_argument("unit_u_alpha: d must be positive");
  if (d % p == 0) throw std::invalid_argument("unit_u_alpha: p divides d");
  auto rs = cyclotomic_spec(p);
  UnitU r;
  for (int i = 0; i < d; ++i) r.u += zpow(rs, i);
  r.identity = zpow(rs, d) - Scalar(1) == r.u * (zpow(rs, 1) - Scalar(1));
  r.unit = is_unit(r.u, rs);
  r.residue = residue(r.u, rs);
  return r;
}

PiPowerFactor p_as_pi_power(int p) {
  require_prime(p);
  auto rs = cyclotomic_spec(p);
  PiPowerFactor f;
  f.unit = Scalar(p) / (zpow(rs, 1) - Scalar(1)).pow(p - 1);
  f.unit_ok = in_O(f.unit, rs) && is_unit(f.unit, rs);
  if (f.unit_ok) f.residue = residue(f.unit, rs);
  return f;
}

// ---------------------------------------------------------------- truncated series

TruncatedSeries TruncatedSeries::constant(int vars, int order, const Scalar& c) {
  TruncatedSeries s(vars, order);
  s.add_term(Monomial(vars, 0), c);
  return s;
}

TruncatedSeries TruncatedSeries::variable(int vars, int order, int i) {
  TruncatedSeries s(vars, order);
  Monomial m(vars, 0);
  m[i] = 1;
  s.add_term(m, Scalar(1));
  return s;
}

void TruncatedSeries::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  if (order_ > 0 && std::accumulate(m.begin(), m.end(), 0) >= order_) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Scalar TruncatedSeries::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar() : it->second;
}

Scalar TruncatedSeries::constant_term() const { return coefficient(Monomial(vars_, 0)); }

int TruncatedSeries::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
  return d;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  if (o.vars_ != vars_) throw std::invalid_argument("series: variable count mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  if (o.vars_ != vars_) throw std::invalid_argument("series: variable count mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

static int combine_order(int a, int b) {
  if (a <= 0) return b;
  if (b <= 0) return a;
  return std::min(a, b);
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.vars_ != b.vars_) throw std::invalid_argument("series: variable count mismatch");
  TruncatedSeries r(a.vars_, combine_order(a.order_, b.order_));
  TruncatedSeries::Monomial m(a.vars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      for (int i = 0; i < a.vars_; ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  return r;
}

TruncatedSeries TruncatedSeries::pow(int e) const {
  if (e < 0) throw std::invalid_argument("series: negative power");
  auto r = constant(vars_, order_, Scalar(1));
  auto b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

TruncatedSeries TruncatedSeries::divided(const Scalar& c) const { return *this * c.inverse(); }

TruncatedSeries TruncatedSeries::with_order(int order) const {
  TruncatedSeries r(vars_, order);
  for (const auto& [m, c] : terms_) r.add_term(m, c);
  return r;
}

TruncatedSeries TruncatedSeries::substitute(const std::vector<TruncatedSeries>& images) const {
  if (static_cast<int>(images.size()) != vars_) throw std::invalid_argument("series: wrong number of images");
  int v = images.empty() ? 0 : images[0].vars();
  int order = order_;
  for (const auto& x : images) order = combine_order(order, x.order());
  TruncatedSeries r(v, order);
  for (const auto& [m, c] : terms_) {
    auto t = constant(v, order, c);
    for (int i = 0; i < vars_; ++i)
      if (m[i]) t = t * images[i].pow(m[i]);
    r += t;
  }
  return r;
}

TruncatedSeries TruncatedSeries::embedded(int vars, int offset) const {
  TruncatedSeries r(vars, order_);
  for (const auto& [m, c] : terms_) {
    Monomial n(vars, 0);
    for (int i = 0; i < vars_; ++i) n[offset + i] = m[i];
    r.add_term(n, c);
  }
  return r;
}

bool TruncatedSeries::integral(const RingSpec& rs) const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return in_O(t.second, rs); });
}

std::optional<long> TruncatedSeries::min_valuation(const RingSpec& rs) const {
  std::optional<long> v;
  for (const auto& [m, c] : terms_) {
    long x = *valuation(c, rs);
    if (!v || x < *v) v = x;
  }
  return v;
}

std::string TruncatedSeries::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")";
    for (int i = 0; i < vars_; ++i)
      if (m[i]) s += "*x" + std::to_string(i + 1) + (m[i] > 1 ? "^" + std::to_string(m[i]) : "");
  }
  return s;
}

TruncatedSeries inverse_series(const TruncatedSeries& f) {
  if (f.order() <= 0) throw std::invalid_argument("inverse_series: needs a finite order");
  auto c = f.constant_term();
  if (c.is_zero()) throw std::invalid_argument("inverse_series: zero constant term");
  auto one = TruncatedSeries::constant(f.vars(), f.order(), Scalar(1));
  auto g = f.divided(c) - one;  // no constant term
  auto r = one;
  auto t = one;
  for (int m = 1; m < f.order(); ++m) {
    t = t * g * Scalar(-1);
    r += t;
  }
  return r.divided(c);
}

TruncatedSeries log_series(const TruncatedSeries& f) {
  if (f.order() <= 0) throw std::invalid_argument("log_series: needs a finite order");
  if (!f.constant_term().is_one()) throw std::invalid_argument("log_series: constant term must be 1");
  auto g = f - TruncatedSeries::constant(f.vars(), f.order(), Scalar(1));
  TruncatedSeries r(f.vars(), f.order());
  auto t = TruncatedSeries::constant(f.vars(), f.order(), Scalar(1));
  for (int k = 1; k < f.order(); ++k) {
    t = t * g;
    r += t * Scalar(mpq_class(k % 2 ? 1 : -1, k));
  }
  return r;
}

// ---------------------------------------------------------------- K_beta and H'_beta

namespace {

struct Ctx {
  RingSpec rs;
  const RootDatum* R;
  int order;
  Scalar z(long k) const { return Scalar::zeta_pow(rs, k); }
  Scalar zd1(int d) const { return z(d) - Scalar(1); }  // zeta^d - 1
  TruncatedSeries one() const { return TruncatedSeries::constant(R->rank, order, Scalar(1)); }
  TruncatedSeries c(const Scalar& x) const { return TruncatedSeries::constant(R->rank, order, x); }
  TruncatedSeries K(int beta) const {
    auto r = one();
    const auto& n = R->positive[beta];
    for (int i = 0; i < R->rank; ++i) {
      auto Ki = one() + TruncatedSeries::variable(R->rank, order, i) * zd1(R->d[i]);
      r = r * Ki.pow(n[i]);
    }
    return r;
  }
};

void check_setup(const RootDatum& R, int p) {
  require_prime(p);
  if (R.type == "G2" && p == 3) throw std::invalid_argument("type G2 requires p > 3");
  for (int d : R.d)
    if (d % p == 0) throw std::invalid_argument("p divides some d_alpha");
}

}  // namespace

KBeta k_beta(const RootDatum& R, int p, int beta) {
  check_setup(R, p);
  if (beta < 0 || beta >= static_cast<int>(R.positive.size())) throw std::invalid_argument("k_beta: not a positive root");
  Ctx C{cyclotomic_spec(p), &R, 0};
  KBeta out;
  out.K = C.K(beta);
  out.Hprime = (out.K - C.one()).divided(C.zd1(R.d[beta]));
  out.integral = out.K.integral(C.rs) && out.Hprime.integral(C.rs);
  // H'_beta from H'_{beta - alpha_i} and H'_i with unit coefficients
  std::vector<TruncatedSeries> H(R.positive.size());
  bool units = true;
  for (size_t b = 0; b < R.positive.size(); ++b) {
    int s = R.simple_index(static_cast<int>(b));
    if (s >= 0) {
      H[b] = TruncatedSeries::variable(R.rank, 0, s);
      continue;
    }
    for (int i = 0; i < R.rank; ++i) {
      auto prev = R.positive[b];
      if (--prev[i] < 0) continue;
      int q = R.find(prev);
      if (q < 0 || q >= static_cast<int>(b)) continue;
      auto Ki = C.one() + TruncatedSeries::variable(R.rank, 0, i) * C.zd1(R.d[i]);
      Scalar a = C.zd1(R.d[q]) / C.zd1(R.d[b]);
      Scalar c = C.zd1(R.d[i]) / C.zd1(R.d[b]);
      units = units && is_unit(a, C.rs) && is_unit(c, C.rs);
      H[b] = H[q] * Ki * a + TruncatedSeries::variable(R.rank, 0, i) * c;
      break;
    }
  }
  out.recursive = units && H[beta] == out.Hprime;
  return out;
}

// ---------------------------------------------------------------- appendix items

bool AppendixReport::item_ok(int item) const {
  bool any = false;
  for (const auto& i : items)
    if (i.item == item) {
      any = true;
      if (!i.ok) return false;
    }
  return any;
}

bool AppendixReport::all() const {
  for (int i = 1; i <= 6; ++i)
    if (!item_ok(i)) return false;
  return true;
}

AppendixReport appendix_identity_suite(const RootDatum& R, int p, int order) {
  check_setup(R, p);
  if (order < 2) throw std::invalid_argument("appendix_identity_suite: order must be at least 2");
  AppendixReport rep;
  rep.type = R.type;
  rep.p = p;
  rep.order = order;
  const RingSpec rs = cyclotomic_spec(p);
  Ctx X{rs, &R, 0};      // exact
  Ctx T{rs, &R, order};  // truncated
  auto add = [&](int item, int root, int j, bool ok, std::string detail = {}) {
    rep.items.push_back({item, root, j, ok, std::move(detail)});
  };
  for (int b = 0; b < static_cast<int>(R.positive.size()); ++b) {
    const int d = R.d[b];
    const Scalar zd = X.z(d), zmd = X.z(-d);
    const Scalar q = zd - zmd;  // zeta^d - zeta^{-d}
    auto kb = k_beta(R, p, b);
    const auto& Kx = kb.K;
    const auto& H = kb.Hprime;
    // (1) K = 1 + (zeta^d - 1) H' with H' integral
    add(1, b, -1, kb.integral && Kx == X.one() + H * X.zd1(d), kb.integral ? "" : "H' not integral");
    // (2) K^{-1} by the geometric series
    auto K = Kx.with_order(order);
    auto Kinv = inverse_series(K);
    bool inv_ok = Kinv.integral(rs) && K * Kinv == T.one();
    add(2, b, -1, inv_ok, inv_ok ? "" : "K^{-1} has a non-integral coefficient");
    // (3) [K;0] = K^{-1} zeta^d (K + 1)/(zeta^d + 1) H'
    auto P3 = (Kx + X.one()) * H * (zd / (zd + Scalar(1)));
    bool exact3 = P3 * q == Kx * Kx - X.one() && P3.integral(rs) && is_unit(zd + Scalar(1), rs);
    auto K0 = (K - Kinv).divided(q);
    auto displayed3 = Kinv * T.c(zmd.inverse()) * (K + T.one()).divided(zd + Scalar(1)) * H.with_order(order);
    bool trunc3 = K0 == Kinv * P3.with_order(order) && K0 == displayed3;
    add(3, b, -1, exact3 && trunc3, exact3 ? (trunc3 ? "" : "truncated identity fails") : "factorization fails");
    // (4) and (5) for 1 <= j < p
    for (int j = 1; j < p; ++j) {
      const Scalar zj = X.z(static_cast<long>(d) * j), zmj = X.z(-static_cast<long>(d) * j);
      const Scalar qj = (zj - zmj) / q;  // [j]_d
      auto P4 = H * (zd / (zd + Scalar(1))) * (Kx * zj + X.c(zmj)) + Kx * qj;
      bool exact4 = P4 * q == Kx * Kx * zj - X.c(zmj) && P4.integral(rs) && in_O(qj, rs);
      auto Kj = (K * zj - Kinv * zmj).divided(q);
      auto displayed4 = H.with_order(order) * ((zd + Scalar(1)) * zmd).inverse() * (T.c(zj) + Kinv * zmj) + T.c(qj);
      bool trunc4 = Kj == Kinv * P4.with_order(order) && Kj == displayed4;
      add(4, b, j, exact4 && trunc4, exact4 ? (trunc4 ? "" : "truncated identity fails") : "factorization fails");
      bool unit = is_unit(Kj.constant_term(), rs);
      bool inv5 = false;
      if (unit) {
        auto Kj_inv = inverse_series(Kj);
        inv5 = Kj_inv.integral(rs) && Kj * Kj_inv == T.one();
      }
      add(5, b, j, inv5, unit ? (inv5 ? "" : "inverse not integral") : "constant term is not a unit");
    }
    // (6) log K, with (zeta^d - 1)^r / r in O for r < order
    bool coeffs = true;
    for (int r = 1; r < order; ++r) coeffs = coeffs && in_O(X.zd1(d).pow(r) / Scalar(r), rs);
    auto L = log_series(K);
    bool ok6 = coeffs && L.integral(rs);
    add(6, b, -1, ok6, ok6 ? "" : "log K has a non-integral coefficient");
  }
  // log K_beta = sum n_alpha log K_alpha
  for (int b = 0; b < static_cast<int>(R.positive.size()); ++b) {
    if (R.simple_index(b) >= 0) continue;
    TruncatedSeries sum(R.rank, order);
    for (int i = 0; i < R.rank; ++i) sum += log_series(T.K(i)) * Scalar(R.positive[b][i]);
    if (!(log_series(T.K(b)) == sum)) add(6, b, -1, false, "log K_beta is not additive");
  }
  return rep;
}

ComultReport comult_check(const RootDatum& R, int p, int beta, int order) {
  check_setup(R, p);
  if (beta < 0 || beta >= static_cast<int>(R.positive.size())) throw std::invalid_argument("comult_check: not a positive root");
  const RingSpec rs = cyclotomic_spec(p);
  const int r = R.rank;
  Ctx X{rs, &R, 0};
  auto kb = k_beta(R, p, beta);
  auto K = kb.K.with_order(order), H = kb.Hprime.with_order(order);
  auto left = [&](const TruncatedSeries& f) { return f.embedded(2 * r, 0); };
  auto right = [&](const TruncatedSeries& f) { return f.embedded(2 * r, r); };
  auto one = TruncatedSeries::constant(2 * r, order, Scalar(1));
  ComultReport out;
  auto lhs = (left(K) * right(K) - one).divided(X.zd1(R.d[beta]));
  auto rhs = left(H) * right(K) + right(H);
  out.direct = lhs == rhs;
  // Delta(H'_i) = H'_i (x) K_i + 1 (x) H'_i on the generators
  std::vector<TruncatedSeries> images;
  for (int i = 0; i < r; ++i) {
    auto Ki = X.one() + TruncatedSeries::variable(r, 0, i) * X.zd1(R.d[i]);
    images.push_back(left(TruncatedSeries::variable(r, order, i)) * right(Ki.with_order(order)) +
                     right(TruncatedSeries::variable(r, order, i)));
  }
  out.homomorphism = H.substitute(images) == rhs;
  return out;
}

}  // namespace grforge
