#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dmiso/finite_field.hpp"

namespace dmiso {

constexpr int64_t kExact = int64_t(1) << 40;

// F_{q^m}((zeta)) truncated to the exponent window [n_min, n_max).
class LocalField {
 public:
  static const LocalField& get(const FiniteField& F, int64_t n_min, int64_t n_max);
  const FiniteField& residue_field() const { return *F_; }
  int64_t n_min() const { return n_min_; }
  int64_t n_max() const { return n_max_; }
  uint64_t q() const { return F_->q(); }
  std::string name() const;

 private:
  LocalField(const FiniteField& F, int64_t lo, int64_t hi) : F_(&F), n_min_(lo), n_max_(hi) {}
  const FiniteField* F_;
  int64_t n_min_, n_max_;
};

// Element of a LocalField, known modulo zeta^prec (prec == kExact: exact).
class Laurent {
 public:
  using Ctx = const LocalField*;

  Laurent() = default;
  static Laurent zero(Ctx L) { return Laurent(L, 0, {}, kExact); }
  static Laurent one(Ctx L) { return monomial(L, 1, 0); }
  static Laurent from_int(Ctx L, int64_t c) { return monomial(L, L->residue_field().from_int(c), 0); }
  static Laurent monomial(Ctx L, uint64_t c, int64_t e);
  static Laurent constant(Ctx L, const Fq& c);
  static Laurent zero_to(Ctx L, int64_t prec) { return Laurent(L, 0, {}, prec); }
  // coefficients c[i] at exponent lo + i, known below prec
  Laurent(Ctx L, int64_t lo, std::vector<uint64_t> c, int64_t prec);

  Ctx ctx() const { return L_; }
  const FiniteField& field() const { return L_->residue_field(); }
  int64_t lo() const { return lo_; }
  int64_t prec() const { return prec_; }
  int64_t top() const { return lo_ + (int64_t)c_.size(); }  // one past last stored
  const std::vector<uint64_t>& coeffs() const { return c_; }
  uint64_t coeff(int64_t e) const;  // throws PrecisionLoss at or beyond prec

  bool is_zero() const { return c_.empty(); }
  bool is_exact_zero() const { return c_.empty() && prec_ >= kExact; }
  bool is_exact() const { return prec_ >= kExact; }
  bool is_one() const;

  // Least exponent with a nonzero coefficient; throws ZeroToPrecision.
  int64_t valuation() const;
  std::optional<int64_t> valuation_opt() const;
  // Lower bound on the valuation (prec for zero-to-precision).
  int64_t val_bound() const { return c_.empty() ? prec_ : lo_; }
  Fq residue() const;

  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator*(const Laurent& o) const;
  Laurent operator-() const;
  Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
  Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
  // Agreement to the common precision.
  bool operator==(const Laurent& o) const { return (*this - o).is_zero(); }
  bool operator!=(const Laurent& o) const { return !(*this == o); }
  bool identical(const Laurent& o) const;

  Laurent inv() const;  // throws ZeroToPrecision / PrecisionLoss
  Laurent frob() const;
  Laurent sigma_pow(int64_t k) const;  // k >= 0, or k < 0 when roots exist
  Laurent shift(int64_t k) const;      // times zeta^k
  Laurent truncate(int64_t prec) const;
  Laurent scale(const Fq& c) const;
  // q-th root: nullopt with a witness exponent when some known coefficient
  // sits at an exponent not divisible by q.
  std::optional<Laurent> qth_root(int64_t* witness = nullptr) const;
  // zeta -> omega^e in the window of `target` (same residue field).
  Laurent ramify(const LocalField& target, int64_t e) const;

  std::string str() const;

 private:
  void normalize();

  const LocalField* L_ = nullptr;
  int64_t lo_ = 0;
  std::vector<uint64_t> c_;
  int64_t prec_ = kExact;
};

int64_t prec_add(int64_t a, int64_t b);  // saturating at kExact

}  // namespace dmiso
