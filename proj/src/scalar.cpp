#include "grforge/scalar.hpp"

#include <climits>
#include <stdexcept>

namespace grforge {

std::string RingSpec::name() const {
  return (flavor == Flavor::Rational ? "rational_local/" : "cyclotomic_local/") +
         std::to_string(p);
}

bool is_odd_prime(long p) {
  if (p < 3 || p % 2 == 0) return false;
  for (long q = 3; q * q <= p; q += 2)
    if (p % q == 0) return false;
  return true;
}

RingSpec rational_spec(int p) {
  if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime");
  return {Flavor::Rational, p};
}

RingSpec cyclotomic_spec(int p) {
  if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime");
  return {Flavor::Cyclotomic, p};
}

void Scalar::normalize() {
  for (auto& q : c_) q.canonicalize();
  if (c_.size() > 1) {
    bool rat = true;
    for (size_t i = 1; i < c_.size(); ++i)
      if (sgn(c_[i]) != 0) { rat = false; break; }
    if (rat) c_.resize(1);
  }
  if (c_.empty()) c_.assign(1, mpq_class(0));
}

Scalar Scalar::from_coeffs(std::vector<mpq_class> c) {
  Scalar s;
  s.c_ = std::move(c);
  s.normalize();
  return s;
}

// Fold a coefficient vector of length p (exponents mod p) into the power basis.
static std::vector<mpq_class> fold_cyclic(std::vector<mpq_class>& acc) {
  const size_t p = acc.size();
  std::vector<mpq_class> out(p - 1);
  for (size_t i = 0; i + 1 < p; ++i) out[i] = acc[i] - acc[p - 1];
  return out;
}

Scalar Scalar::zeta_pow(const RingSpec& rs, long k) {
  if (!rs.cyclotomic()) return Scalar(1);
  const int p = rs.p;
  long e = ((k % p) + p) % p;
  std::vector<mpq_class> acc(p);
  acc[e] = 1;
  return from_coeffs(fold_cyclic(acc));
}

std::vector<mpq_class> Scalar::coeffs(const RingSpec& rs) const {
  std::vector<mpq_class> out(rs.width());
  if (c_.size() == 1) {
    out[0] = c_[0];
  } else {
    if (static_cast<int>(c_.size()) != rs.width())
      throw std::logic_error("scalar width does not match ring");
    out = c_;
  }
  return out;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  normalize();
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.c_.size() == 1 || b.c_.size() == 1) {
    const Scalar& s = a.c_.size() == 1 ? a : b;
    const Scalar& v = a.c_.size() == 1 ? b : a;
    if (sgn(s.c_[0]) == 0) return Scalar();
    Scalar r = v;
    for (auto& q : r.c_) q *= s.c_[0];
    return r;
  }
  if (a.c_.size() != b.c_.size()) throw std::logic_error("mixed cyclotomic widths");
  const size_t p = a.c_.size() + 1;
  std::vector<mpq_class> acc(p);
  for (size_t i = 0; i + 1 < p; ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (size_t j = 0; j + 1 < p; ++j) {
      if (sgn(b.c_[j]) == 0) continue;
      acc[(i + j) % p] += a.c_[i] * b.c_[j];
    }
  }
  return Scalar::from_coeffs(fold_cyclic(acc));
}

Scalar& Scalar::operator*=(const Scalar& o) {
  *this = *this * o;
  return *this;
}

bool Scalar::operator<(const Scalar& o) const {
  if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] < o.c_[i]) return true;
    if (o.c_[i] < c_[i]) return false;
  }
  return false;
}

Scalar Scalar::galois(int a) const {
  if (c_.size() == 1) return *this;
  const size_t p = c_.size() + 1;
  std::vector<mpq_class> acc(p);
  for (size_t i = 0; i + 1 < p; ++i) acc[(a * i) % p] += c_[i];
  return from_coeffs(fold_cyclic(acc));
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (c_.size() == 1) return Scalar(mpq_class(1) / c_[0]);
  const int p = static_cast<int>(c_.size()) + 1;
  Scalar y(1);
  for (int a = 2; a < p; ++a) y *= galois(a);
  Scalar n = *this * y;
  if (!n.is_rational()) throw std::logic_error("norm not rational");
  return y * Scalar(mpq_class(1) / n.c_[0]);
}

mpq_class Scalar::norm(const RingSpec& rs) const {
  if (!rs.cyclotomic()) return c_[0];
  Scalar y = *this;
  for (int a = 2; a < rs.p; ++a) y *= galois(a);
  return y.c_[0];
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

std::string q_to_string(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class q_from_string(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string Scalar::str() const {
  if (c_.size() == 1) return q_to_string(c_[0]);
  std::string s = "[";
  for (size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + q_to_string(c_[i]);
  return s + "]";
}

static long vp_int(const mpz_class& z, int p) {
  if (z == 0) return 0;
  mpz_class t = z;
  long v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++v;
  }
  return v;
}

static long vp_rat(const mpq_class& q, int p) {
  return vp_int(q.get_num(), p) - vp_int(q.get_den(), p);
}

bool in_O(const Scalar& x, const RingSpec& rs) {
  for (const auto& q : x.raw())
    if (mpz_divisible_ui_p(q.get_den().get_mpz_t(), rs.p)) return false;
  return true;
}

uint32_t mod_p(const mpq_class& q, int p) {
  long n = mpz_fdiv_ui(q.get_num().get_mpz_t(), p);
  long d = mpz_fdiv_ui(q.get_den().get_mpz_t(), p);
  if (d == 0) throw std::domain_error("denominator divisible by p");
  return static_cast<uint32_t>((n * static_cast<long>(inv_mod(d, p))) % p);
}

uint32_t pow_mod(uint32_t a, uint64_t e, int p) {
  uint64_t r = 1, b = a % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<uint32_t>(r);
}

uint32_t inv_mod(uint32_t a, int p) {
  if (a % p == 0) throw std::domain_error("inverse of zero mod p");
  return pow_mod(a, p - 2, p);
}

uint32_t residue(const Scalar& x, const RingSpec& rs) {
  if (!in_O(x, rs)) throw std::domain_error("residue of element outside O");
  uint64_t s = 0;
  for (const auto& q : x.raw()) s += mod_p(q, rs.p);
  return static_cast<uint32_t>(s % rs.p);
}

Scalar uniformizer(const RingSpec& rs) {
  if (!rs.cyclotomic()) return Scalar(rs.p);
  return Scalar::zeta_pow(rs, 1) - Scalar(1);
}

Scalar pi_pow(const RingSpec& rs, long e) { return uniformizer(rs).pow(e); }

Scalar divide_by_pi(const Scalar& x, const RingSpec& rs) {
  if (!rs.cyclotomic()) return x * Scalar(mpq_class(1, rs.p));
  std::vector<mpq_class> c = x.coeffs(rs);
  const int p = rs.p;
  mpq_class s = 0;
  for (auto& q : c) s += q;
  // Shift by a multiple of phi_p so the polynomial vanishes at 1.
  mpq_class t = s / p;
  std::vector<mpq_class> f(p);
  for (int i = 0; i + 1 < p; ++i) f[i] = c[i] - t;
  f[p - 1] = -t;
  // Synthetic division by (v - 1).
  std::vector<mpq_class> g(p - 1);
  mpq_class carry = 0;
  for (int i = p - 1; i >= 1; --i) {
    carry += f[i];
    g[i - 1] = carry;
  }
  return Scalar::from_coeffs(std::move(g));
}

std::optional<long> valuation(const Scalar& x, const RingSpec& rs) {
  if (x.is_zero()) return std::nullopt;
  if (!rs.cyclotomic()) return vp_rat(x.rational(), rs.p);
  long m = LONG_MAX;
  for (const auto& q : x.raw())
    if (sgn(q) != 0) m = std::min(m, vp_rat(q, rs.p));
  Scalar y = x;
  if (m != 0) {
    mpz_class pm;
    mpz_ui_pow_ui(pm.get_mpz_t(), rs.p, m > 0 ? m : -m);
    y = m > 0 ? x * Scalar(mpq_class(1) / mpq_class(pm)) : x * Scalar(mpq_class(pm));
  }
  long v = m * (rs.p - 1);
  for (int i = 0; i < rs.p - 1 && residue(y, rs) == 0; ++i) {
    y = divide_by_pi(y, rs);
    ++v;
  }
  if (residue(y, rs) == 0) throw std::logic_error("valuation did not terminate");
  return v;
}

bool is_unit(const Scalar& x, const RingSpec& rs) {
  return in_O(x, rs) && residue(x, rs) != 0;
}

Scalar lift_residue(uint32_t a) { return Scalar(static_cast<long>(a)); }

Scalar canonical_quotient(const Scalar& x, const RingSpec& rs, long e) {
  if (e <= 0) return x;
  if (!rs.cyclotomic()) {
    mpz_class pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), rs.p, e);
    const mpq_class& q = x.rational();
    mpz_class inv;
    if (!mpz_invert(inv.get_mpz_t(), q.get_den().get_mpz_t(), pe.get_mpz_t()))
      throw std::domain_error("canonical_quotient outside O");
    mpz_class r = q.get_num() * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), pe.get_mpz_t());
    return Scalar((q - mpq_class(r)) / mpq_class(pe));
  }
  Scalar y = x;
  for (long i = 0; i < e; ++i) {
    uint32_t d = residue(y, rs);
    y = divide_by_pi(y - Scalar(static_cast<long>(d)), rs);
  }
  return y;
}

Scalar qint(const RingSpec& rs, long n) {
  if (!rs.cyclotomic()) return Scalar(n);
  if (n < 0) return -qint(rs, -n);
  Scalar s;
  for (long j = 0; j < n; ++j) s += Scalar::zeta_pow(rs, 2 * j - (n - 1));
  return s;
}

Scalar qfactorial(const RingSpec& rs, long n) {
  Scalar r(1);
  for (long i = 2; i <= n; ++i) r *= qint(rs, i);
  return r;
}

Scalar qbinomial(const RingSpec& rs, long n, long k) {
  if (k < 0 || n < 0 || k > n) return Scalar();
  // Pascal rule [n,k] = v^{-k}[n-1,k] + v^{n-k}[n-1,k-1] evaluated at zeta.
  std::vector<Scalar> row{Scalar(1)};
  for (long m = 1; m <= n; ++m) {
    std::vector<Scalar> next(m + 1);
    for (long j = 0; j <= m; ++j) {
      Scalar s;
      if (j < m) s += Scalar::zeta_pow(rs, -j) * row[j];
      if (j > 0) s += Scalar::zeta_pow(rs, m - j) * row[j - 1];
      next[j] = s;
    }
    row = std::move(next);
  }
  return row[k];
}

}  // namespace grforge
