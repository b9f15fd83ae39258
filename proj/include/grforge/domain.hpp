#pragma once

#include <vector>

#include "grforge/scalar.hpp"

namespace grforge {

template <class E> using Vec = std::vector<E>;
template <class E> using Mat = std::vector<std::vector<E>>;

// Coefficient domains for the generic echelon code. key() is the pivot-size
// measure (valuation over O, constant over a field); pivot_unit(a) rescales a
// pivot to its canonical form; reduce_quot(x, e) gives q with x - q*pivot the
// canonical representative modulo a pivot of key e.

// The DVR O.
struct DomO {
  RingSpec rs;
  using Elem = Scalar;
  static constexpr bool is_field = false;
  Elem zero() const { return Scalar(); }
  Elem one() const { return Scalar(1); }
  Elem from_int(long n) const { return Scalar(n); }
  bool is_zero(const Elem& x) const { return x.is_zero(); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem div(const Elem& a, const Elem& b) const { return a / b; }
  long key(const Elem& a) const { return *valuation(a, rs); }
  Elem pivot_unit(const Elem& a) const { return pi_pow(rs, key(a)) / a; }
  Elem reduce_quot(const Elem& x, long e) const { return canonical_quotient(x, rs, e); }
  bool in_ring(const Elem& x) const { return in_O(x, rs); }
};

// The fraction field K (shares element type with O).
struct DomK {
  RingSpec rs;
  using Elem = Scalar;
  static constexpr bool is_field = true;
  Elem zero() const { return Scalar(); }
  Elem one() const { return Scalar(1); }
  Elem from_int(long n) const { return Scalar(n); }
  bool is_zero(const Elem& x) const { return x.is_zero(); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem div(const Elem& a, const Elem& b) const { return a / b; }
  long key(const Elem&) const { return 0; }
  Elem pivot_unit(const Elem& a) const { return a.inverse(); }
  Elem reduce_quot(const Elem& x, long) const { return x; }
  bool in_ring(const Elem&) const { return true; }
};

// The residue field F_p.
struct DomF {
  int p = 3;
  using Elem = uint32_t;
  static constexpr bool is_field = true;
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long n) const { return static_cast<Elem>(((n % p) + p) % p); }
  bool is_zero(Elem x) const { return x == 0; }
  Elem add(Elem a, Elem b) const { Elem s = a + b; return s >= static_cast<Elem>(p) ? s - p : s; }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
  Elem mul(Elem a, Elem b) const { return static_cast<Elem>(static_cast<uint64_t>(a) * b % p); }
  Elem neg(Elem a) const { return a ? p - a : 0; }
  Elem div(Elem a, Elem b) const { return mul(a, inv_mod(b, p)); }
  long key(Elem) const { return 0; }
  Elem pivot_unit(Elem a) const { return inv_mod(a, p); }
  Elem reduce_quot(Elem x, long) const { return x; }
  bool in_ring(Elem) const { return true; }
};

inline Vec<uint32_t> reduce_vec(const Vec<Scalar>& v, const RingSpec& rs) {
  Vec<uint32_t> r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = residue(v[i], rs);
  return r;
}

inline Mat<uint32_t> reduce_mat(const Mat<Scalar>& m, const RingSpec& rs) {
  Mat<uint32_t> r;
  r.reserve(m.size());
  for (const auto& row : m) r.push_back(reduce_vec(row, rs));
  return r;
}

}  // namespace grforge
