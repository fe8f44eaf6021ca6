#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dmiso/finite_field.hpp"
#include "dmiso/local_field.hpp"

namespace dmiso {

// Truncated Laurent series sum c_n z^n over K (K = Fq or Laurent), known
// modulo z^prec. sigma acts on coefficients and fixes z.
template <class K>
class ZSeries {
 public:
  using Ctx = typename K::Ctx;
  using Scalar = K;

  ZSeries() = default;
  ZSeries(Ctx ctx, int64_t lo, std::vector<K> c, int64_t prec);
  static ZSeries zero(Ctx ctx) { return ZSeries(ctx, 0, {}, kExact); }
  static ZSeries zero_to(Ctx ctx, int64_t prec) { return ZSeries(ctx, 0, {}, prec); }
  static ZSeries one(Ctx ctx) { return constant(K::one(ctx)); }
  static ZSeries constant(const K& c) { return monomial(c, 0); }
  static ZSeries monomial(const K& c, int64_t e);
  static ZSeries z_power(Ctx ctx, int64_t e) { return monomial(K::one(ctx), e); }

  Ctx ctx() const { return ctx_; }
  int64_t lo() const { return lo_; }
  int64_t top() const { return lo_ + (int64_t)c_.size(); }
  int64_t prec() const { return prec_; }
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(int64_t n) const;  // PrecisionLoss at or beyond prec

  bool is_zero() const { return c_.empty(); }
  bool is_exact_zero() const { return c_.empty() && prec_ >= kExact; }
  bool is_exact() const;  // z-exact with exact coefficients
  bool z_exact() const { return prec_ >= kExact; }
  bool is_monomial() const { return c_.size() == 1; }

  int64_t order() const;  // ZeroToPrecision when no nonzero coefficient
  std::optional<int64_t> order_opt() const;
  int64_t val_bound() const { return c_.empty() ? prec_ : lo_; }
  K leading() const;

  ZSeries operator+(const ZSeries& o) const;
  ZSeries operator-(const ZSeries& o) const;
  ZSeries operator*(const ZSeries& o) const;
  ZSeries operator-() const;
  ZSeries& operator+=(const ZSeries& o) { return *this = *this + o; }
  ZSeries& operator-=(const ZSeries& o) { return *this = *this - o; }
  ZSeries& operator*=(const ZSeries& o) { return *this = *this * o; }
  bool operator==(const ZSeries& o) const { return (*this - o).is_zero(); }
  bool operator!=(const ZSeries& o) const { return !(*this == o); }

  ZSeries sigma() const { return sigma_pow(1); }
  ZSeries sigma_pow(int64_t k) const;
  ZSeries shift(int64_t k) const;  // times z^k
  ZSeries truncate(int64_t prec) const;
  ZSeries scale(const K& c) const;
  // Inverse with relative precision at most rel (exact for exact monomials).
  ZSeries inv(int64_t rel) const;
  // Part with exponents < bound (exact if the series is known there).
  ZSeries below(int64_t bound) const;
  // (x - below(bound)) * z^{-bound}, i.e. the quotient by z^bound.
  ZSeries quotient(int64_t bound) const;
  ZSeries map(const std::function<K(const K&)>& f) const;

  std::string str() const;

 private:
  void normalize();

  Ctx ctx_{};
  int64_t lo_ = 0;
  std::vector<K> c_;
  int64_t prec_ = kExact;
};

extern template class ZSeries<Fq>;
extern template class ZSeries<Laurent>;

using ZFq = ZSeries<Fq>;
using ZLoc = ZSeries<Laurent>;

}  // namespace dmiso
