#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "dmiso/errors.hpp"

namespace dmiso {

// F_{q^m} with q = p^a, stored as F_p[x]/(f) where f is the least monic
// irreducible of degree a*m in the lexicographic order on its coefficient
// vector (read as a base-p integer). Elements are packed base-p digit integers.
class FiniteField {
 public:
  // Interned; the reference stays valid for the lifetime of the process.
  static const FiniteField& get(uint32_t p, uint32_t a, uint32_t m);
  // p^n below 2^62, the packed limit
  static bool fits(uint32_t p, uint64_t n);

  uint32_t p() const { return p_; }
  uint32_t a() const { return a_; }
  uint32_t m() const { return m_; }
  uint32_t n() const { return n_; }  // absolute degree a*m
  uint64_t q() const { return q_; }
  uint64_t order() const { return order_; }
  const std::vector<uint32_t>& modulus() const { return modulus_; }

  uint64_t add(uint64_t x, uint64_t y) const;
  uint64_t sub(uint64_t x, uint64_t y) const;
  uint64_t neg(uint64_t x) const;
  uint64_t mul(uint64_t x, uint64_t y) const;
  uint64_t inv(uint64_t x) const;  // throws NotAUnit on 0
  uint64_t pow(uint64_t x, uint64_t e) const;
  uint64_t scal(uint32_t c, uint64_t x) const;  // c in F_p
  // sigma^k, i.e. x -> x^{q^k}; k may be negative.
  uint64_t frob(uint64_t x, int64_t k) const;
  uint64_t from_int(int64_t c) const;  // image of Z
  // Class of x for n > 1; the least primitive root for prime fields.
  uint64_t generator() const;

  std::vector<uint32_t> digits(uint64_t x) const;
  uint64_t pack(const std::vector<uint32_t>& d) const;

  // True when this field contains `sub` (same p, sub.n() | n()).
  bool contains(const FiniteField& sub) const;
  uint64_t embed_from(const FiniteField& sub, uint64_t x) const;
  // Preimage of x under embed_from; throws Input when x is outside sub.
  uint64_t restrict_to(const FiniteField& sub, uint64_t x) const;
  bool in_subfield(uint64_t x, uint32_t sub_n) const;  // x^{p^sub_n} == x

  std::string name() const;

 private:
  FiniteField(uint32_t p, uint32_t a, uint32_t m);
  void build_tables();
  uint64_t mul_poly(uint64_t x, uint64_t y) const;
  uint64_t apply_linear(const std::vector<uint32_t>& mat, uint64_t x) const;
  const std::vector<uint32_t>& frob_matrix(uint32_t k) const;

  uint32_t p_, a_, m_, n_;
  uint64_t q_, order_;
  uint64_t primitive_ = 0;
  std::vector<uint32_t> modulus_;  // length n+1, monic
  std::vector<uint64_t> pw_;       // p^i
  bool tables_ = false;
  std::vector<uint32_t> log_, exp_;
  std::vector<std::vector<uint32_t>> frob_mats_;  // sigma^k as F_p matrices, k < m
};

// Element of some F_{q^m}. Binary operations between elements of nested
// fields embed into the larger one.
class Fq {
 public:
  using Ctx = const FiniteField*;

  Fq() = default;
  Fq(const FiniteField& f, uint64_t v) : f_(&f), v_(v) {}
  static Fq zero(Ctx f) { return Fq(*f, 0); }
  static Fq one(Ctx f) { return Fq(*f, 1); }
  static Fq from_int(Ctx f, int64_t c) { return Fq(*f, f->from_int(c)); }

  Ctx ctx() const { return f_; }
  const FiniteField& field() const { return *f_; }
  uint64_t raw() const { return v_; }

  bool is_zero() const { return v_ == 0; }
  bool is_exact_zero() const { return v_ == 0; }
  bool is_exact() const { return true; }
  bool is_one() const { return v_ == 1; }

  Fq operator+(const Fq& o) const;
  Fq operator-(const Fq& o) const;
  Fq operator*(const Fq& o) const;
  Fq operator-() const { return Fq(*f_, f_->neg(v_)); }
  Fq& operator+=(const Fq& o) { return *this = *this + o; }
  Fq& operator-=(const Fq& o) { return *this = *this - o; }
  Fq& operator*=(const Fq& o) { return *this = *this * o; }
  bool operator==(const Fq& o) const;
  bool operator!=(const Fq& o) const { return !(*this == o); }

  Fq inv() const { return Fq(*f_, f_->inv(v_)); }
  Fq pow(uint64_t e) const { return Fq(*f_, f_->pow(v_, e)); }
  Fq frob(int64_t k = 1) const { return Fq(*f_, f_->frob(v_, k)); }
  Fq sigma_pow(int64_t k) const { return frob(k); }
  Fq qth_root() const { return frob(-1); }
  Fq embed(const FiniteField& big) const;

  std::string str() const;

 private:
  const FiniteField* f_ = nullptr;
  uint64_t v_ = 0;
};

// Common field of two elements (the larger of a nested pair).
const FiniteField& join_fields(const FiniteField& x, const FiniteField& y);

bool is_prime(uint64_t n);
std::vector<uint64_t> prime_factors(uint64_t n);

}  // namespace dmiso
