#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dmiso/finite_field.hpp"
#include "dmiso/local_field.hpp"

namespace dmiso {

// f = sum f_i tau^i in K{tau}, with tau x = sigma(x) tau.
template <class K>
class SkewPoly {
 public:
  using Ctx = typename K::Ctx;

  SkewPoly() = default;
  SkewPoly(Ctx ctx, std::vector<K> c);
  static SkewPoly tau(Ctx ctx, int64_t k = 1);
  static SkewPoly constant(const K& c) { return SkewPoly(c.ctx(), {c}); }

  Ctx ctx() const { return ctx_; }
  int64_t degree() const { return (int64_t)c_.size() - 1; }  // -1 for zero
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(int64_t i) const;

  SkewPoly operator+(const SkewPoly& o) const;
  SkewPoly operator-(const SkewPoly& o) const;
  SkewPoly operator*(const SkewPoly& o) const;
  bool operator==(const SkewPoly& o) const;

  std::string str() const;

 private:
  void trim();
  Ctx ctx_{};
  std::vector<K> c_;
};

// Additive polynomial x -> sum f_i x^{q^i} (finite base only).
Fq evaluate_additive(const SkewPoly<Fq>& f, const Fq& x);

// Element sum_{n >= lo} c_n tau^{-n} of F((tau^{-1})) over a finite field,
// known modulo tau^{-prec}. Coefficients may live in extensions of the base
// and are embedded on demand.
class SkewLaurent {
 public:
  SkewLaurent() = default;
  SkewLaurent(const FiniteField* base, int64_t lo, std::vector<Fq> c, int64_t prec);
  static SkewLaurent zero(const FiniteField* base) { return SkewLaurent(base, 0, {}, kExact); }
  static SkewLaurent one(const FiniteField* base) { return constant(Fq::one(base)); }
  static SkewLaurent constant(const Fq& c) { return SkewLaurent(&c.field(), 0, {c}, kExact); }
  static SkewLaurent tau_inv_power(const FiniteField* base, int64_t n);  // tau^{-n}
  static SkewLaurent from_poly(const SkewPoly<Fq>& f);

  const FiniteField* base() const { return base_; }
  int64_t lo() const { return lo_; }
  int64_t prec() const { return prec_; }
  int64_t top() const { return lo_ + (int64_t)c_.size(); }
  const std::vector<Fq>& coeffs() const { return c_; }
  Fq coeff(int64_t n) const;  // coefficient of tau^{-n}

  bool is_zero() const { return c_.empty(); }
  bool is_exact() const { return prec_ >= kExact; }
  int64_t v_tau_inv() const;  // ZeroToPrecision when zero

  SkewLaurent operator+(const SkewLaurent& o) const;
  SkewLaurent operator-(const SkewLaurent& o) const;
  SkewLaurent operator-() const;
  SkewLaurent operator*(const SkewLaurent& o) const;
  bool operator==(const SkewLaurent& o) const { return (*this - o).is_zero(); }

  // Inverse with n relative terms; NotAUnit for zero.
  SkewLaurent inverse(int64_t n) const;
  SkewLaurent truncate(int64_t prec) const;
  // Apply x -> x^{q^k} to every coefficient.
  SkewLaurent coeff_frob(int64_t k) const;
  // Smallest field holding all coefficients.
  const FiniteField& coefficient_field() const;

  std::string str() const;

 private:
  void normalize();
  const FiniteField* base_ = nullptr;
  int64_t lo_ = 0;
  std::vector<Fq> c_;
  int64_t prec_ = kExact;
};

// u f u^{-1}, inverting u to the relative precision of f's window.
SkewLaurent conjugate(const SkewLaurent& u, const SkewLaurent& f, int64_t n);

extern template class SkewPoly<Fq>;
extern template class SkewPoly<Laurent>;

}  // namespace dmiso
