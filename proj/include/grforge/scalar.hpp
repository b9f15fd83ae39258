#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace grforge {

enum class Flavor { Rational, Cyclotomic };
enum class Level { K, O, k };

// A p-modular system: (Q, Z_(p), F_p) or (Q(zeta), Z_(p)[zeta], F_p).
struct RingSpec {
  Flavor flavor = Flavor::Rational;
  int p = 3;

  int width() const { return flavor == Flavor::Rational ? 1 : p - 1; }
  // v(p) in units of the uniformizer
  int ramification() const { return flavor == Flavor::Rational ? 1 : p - 1; }
  bool cyclotomic() const { return flavor == Flavor::Cyclotomic; }
  std::string name() const;
  bool operator==(const RingSpec&) const = default;
};

RingSpec rational_spec(int p);
RingSpec cyclotomic_spec(int p);
bool is_odd_prime(long p);

// Element of K. Rational values are stored with width 1; cyclotomic values
// with width p-1 in the power basis 1, zeta, ..., zeta^{p-2}. A cyclotomic
// value that happens to be rational is stored at width 1, which keeps the
// representation unique.
class Scalar {
 public:
  Scalar() : c_{mpq_class(0)} {}
  Scalar(long n) : c_{mpq_class(n)} {}
  Scalar(int n) : c_{mpq_class(n)} {}
  Scalar(const mpq_class& q) : c_{q} { c_[0].canonicalize(); }
  static Scalar from_coeffs(std::vector<mpq_class> c);
  static Scalar zeta_pow(const RingSpec& rs, long k);

  bool is_zero() const { return c_.size() == 1 && sgn(c_[0]) == 0; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_rational() const { return c_.size() == 1; }
  const mpq_class& rational() const { return c_[0]; }
  const std::vector<mpq_class>& raw() const { return c_; }
  std::vector<mpq_class> coeffs(const RingSpec& rs) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  bool operator==(const Scalar& o) const { return c_ == o.c_; }
  bool operator!=(const Scalar& o) const { return !(c_ == o.c_); }
  bool operator<(const Scalar& o) const;

  Scalar inverse() const;
  // sigma_a : zeta -> zeta^a
  Scalar galois(int a) const;
  // Absolute norm down to Q.
  mpq_class norm(const RingSpec& rs) const;
  Scalar pow(long e) const;
  std::string str() const;

 private:
  void normalize();
  std::vector<mpq_class> c_;
};

std::string q_to_string(const mpq_class& q);
mpq_class q_from_string(const std::string& s);

// Valuation with v(pi) = 1, where pi = p (rational) or zeta - 1 (cyclotomic).
std::optional<long> valuation(const Scalar& x, const RingSpec& rs);
bool in_O(const Scalar& x, const RingSpec& rs);
// Residue map O -> F_p sending zeta to 1.
uint32_t residue(const Scalar& x, const RingSpec& rs);
bool is_unit(const Scalar& x, const RingSpec& rs);
Scalar uniformizer(const RingSpec& rs);
Scalar pi_pow(const RingSpec& rs, long e);
// x / pi for x in O with residue 0.
Scalar divide_by_pi(const Scalar& x, const RingSpec& rs);
// Writes x = r + q * pi^e with r the canonical representative of x mod pi^e;
// returns q.
Scalar canonical_quotient(const Scalar& x, const RingSpec& rs, long e);
// Lift of a residue class to O.
Scalar lift_residue(uint32_t a);

uint32_t mod_p(const mpq_class& q, int p);
uint32_t inv_mod(uint32_t a, int p);
uint32_t pow_mod(uint32_t a, uint64_t e, int p);

// The quantum integer [n] = (zeta^n - zeta^-n)/(zeta - zeta^-1).
Scalar qint(const RingSpec& rs, long n);
Scalar qfactorial(const RingSpec& rs, long n);
Scalar qbinomial(const RingSpec& rs, long n, long k);

}  // namespace grforge
