#include "dmiso/skew.hpp"

#include <algorithm>
#include <sstream>

namespace dmiso {

template <class K>
SkewPoly<K>::SkewPoly(Ctx ctx, std::vector<K> c) : ctx_(ctx), c_(std::move(c)) {
  trim();
}

template <class K>
void SkewPoly<K>::trim() {
  while (!c_.empty() && c_.back().is_exact_zero()) c_.pop_back();
}

template <class K>
SkewPoly<K> SkewPoly<K>::tau(Ctx ctx, int64_t k) {
  std::vector<K> c((size_t)k + 1, K::zero(ctx));
  c[(size_t)k] = K::one(ctx);
  return SkewPoly(ctx, std::move(c));
}

template <class K>
K SkewPoly<K>::coeff(int64_t i) const {
  if (i < 0 || i > degree()) return K::zero(ctx_);
  return c_[(size_t)i];
}

template <class K>
SkewPoly<K> SkewPoly<K>::operator+(const SkewPoly& o) const {
  size_t n = std::max(c_.size(), o.c_.size());
  std::vector<K> c(n, K::zero(ctx_));
  for (size_t i = 0; i < n; ++i) c[i] = coeff((int64_t)i) + o.coeff((int64_t)i);
  return SkewPoly(ctx_, std::move(c));
}

template <class K>
SkewPoly<K> SkewPoly<K>::operator-(const SkewPoly& o) const {
  size_t n = std::max(c_.size(), o.c_.size());
  std::vector<K> c(n, K::zero(ctx_));
  for (size_t i = 0; i < n; ++i) c[i] = coeff((int64_t)i) - o.coeff((int64_t)i);
  return SkewPoly(ctx_, std::move(c));
}

template <class K>
SkewPoly<K> SkewPoly<K>::operator*(const SkewPoly& o) const {
  if (c_.empty() || o.c_.empty()) return SkewPoly(ctx_, {});
  std::vector<K> c(c_.size() + o.c_.size() - 1, K::zero(ctx_));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_exact_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j].sigma_pow((int64_t)i);
  }
  return SkewPoly(ctx_, std::move(c));
}

template <class K>
bool SkewPoly<K>::operator==(const SkewPoly& o) const {
  size_t n = std::max(c_.size(), o.c_.size());
  for (size_t i = 0; i < n; ++i)
    if (coeff((int64_t)i) != o.coeff((int64_t)i)) return false;
  return true;
}

template <class K>
std::string SkewPoly<K>::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    os << (first ? "" : " + ") << "(" << c_[i].str() << ")*tau^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

template class SkewPoly<Fq>;
template class SkewPoly<Laurent>;

Fq evaluate_additive(const SkewPoly<Fq>& f, const Fq& x) {
  Fq acc = Fq::zero(&x.field());
  Fq xp = x;
  for (int64_t i = 0; i <= f.degree(); ++i) {
    acc = acc + f.coeff(i) * xp;
    xp = xp.frob(1);
  }
  return acc;
}

SkewLaurent::SkewLaurent(const FiniteField* base, int64_t lo, std::vector<Fq> c, int64_t prec)
    : base_(base), lo_(lo), c_(std::move(c)), prec_(prec) {
  normalize();
}

void SkewLaurent::normalize() {
  if (prec_ < kExact && lo_ + (int64_t)c_.size() > prec_) c_.resize((size_t)std::max<int64_t>(0, prec_ - lo_));
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  size_t z = 0;
  while (z < c_.size() && c_[z].is_zero()) ++z;
  if (z) {
    c_.erase(c_.begin(), c_.begin() + (long)z);
    lo_ += (int64_t)z;
  }
  if (c_.empty()) lo_ = 0;
}

SkewLaurent SkewLaurent::tau_inv_power(const FiniteField* base, int64_t n) {
  return SkewLaurent(base, n, {Fq::one(base)}, kExact);
}

SkewLaurent SkewLaurent::from_poly(const SkewPoly<Fq>& f) {
  int64_t d = f.degree();
  if (d < 0) return zero(f.ctx());
  std::vector<Fq> c((size_t)d + 1);
  for (int64_t i = 0; i <= d; ++i) c[(size_t)(d - i)] = f.coeff(i);
  return SkewLaurent(f.ctx(), -d, std::move(c), kExact);
}

Fq SkewLaurent::coeff(int64_t n) const {
  if (n >= prec_) fail(ErrorKind::PrecisionLoss, "tau^-1 coefficient beyond precision");
  if (n < lo_ || n >= top()) return Fq::zero(base_);
  return c_[(size_t)(n - lo_)];
}

int64_t SkewLaurent::v_tau_inv() const {
  if (c_.empty()) fail(ErrorKind::ZeroToPrecision, "tau^-1 valuation of zero to precision");
  return lo_;
}

SkewLaurent SkewLaurent::operator+(const SkewLaurent& o) const {
  int64_t p = std::min(prec_, o.prec_);
  if (c_.empty() && o.c_.empty()) return SkewLaurent(base_, 0, {}, p);
  int64_t lo = std::min(c_.empty() ? o.lo_ : lo_, o.c_.empty() ? lo_ : o.lo_);
  int64_t hi = std::max(c_.empty() ? lo : top(), o.c_.empty() ? lo : o.top());
  if (p < kExact) hi = std::min(hi, p);
  if (hi <= lo) return SkewLaurent(base_, 0, {}, p);
  std::vector<Fq> c((size_t)(hi - lo), Fq::zero(base_));
  for (int64_t e = lo; e < hi; ++e) {
    Fq s = Fq::zero(base_);
    if (e >= lo_ && e < top()) s = c_[(size_t)(e - lo_)];
    if (e >= o.lo_ && e < o.top()) s = s + o.c_[(size_t)(e - o.lo_)];
    c[(size_t)(e - lo)] = s;
  }
  return SkewLaurent(base_, lo, std::move(c), p);
}

SkewLaurent SkewLaurent::operator-() const {
  std::vector<Fq> c;
  for (const auto& x : c_) c.push_back(-x);
  return SkewLaurent(base_, lo_, std::move(c), prec_);
}

SkewLaurent SkewLaurent::operator-(const SkewLaurent& o) const { return *this + (-o); }

SkewLaurent SkewLaurent::operator*(const SkewLaurent& o) const {
  auto vb = [](const SkewLaurent& x) { return x.c_.empty() ? x.prec_ : x.lo_; };
  if ((c_.empty() && is_exact()) || (o.c_.empty() && o.is_exact())) return zero(base_);
  int64_t p = std::min(prec_add(prec_, vb(o)), prec_add(o.prec_, vb(*this)));
  if (c_.empty() || o.c_.empty()) return SkewLaurent(base_, 0, {}, p);
  int64_t lo = lo_ + o.lo_;
  int64_t hi = top() + o.top() - 1;
  if (p < kExact) hi = std::min(hi, p);
  if (hi <= lo) return SkewLaurent(base_, 0, {}, p);
  std::vector<Fq> c((size_t)(hi - lo), Fq::zero(base_));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    int64_t ei = lo_ + (int64_t)i;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      int64_t e = ei + o.lo_ + (int64_t)j;
      if (e >= hi) break;
      if (o.c_[j].is_zero()) continue;
      // tau^{-ei} b = sigma^{-ei}(b) tau^{-ei}
      c[(size_t)(e - lo)] = c[(size_t)(e - lo)] + c_[i] * o.c_[j].frob(-ei);
    }
  }
  return SkewLaurent(base_, lo, std::move(c), p);
}

SkewLaurent SkewLaurent::inverse(int64_t n) const {
  if (c_.empty()) fail(ErrorKind::NotAUnit, "inverse of zero in F((tau^-1))");
  int64_t v = lo_;
  int64_t R = n;
  if (prec_ < kExact) R = std::min(R, prec_ - v);
  if (c_.size() == 1 && prec_ >= kExact) {
    // (c tau^{-v})^{-1} = tau^{v} c^{-1} = sigma^{v}(c^{-1}) tau^{v}
    return SkewLaurent(base_, -v, {c_[0].inv().frob(v)}, kExact);
  }
  if (R <= 0) fail(ErrorKind::PrecisionLoss, "inverse has no known terms");
  // h_j for j = -v .. -v + R - 1; (f h)_k = sum_i f_i sigma^{-i}(h_{k-i})
  std::vector<Fq> h((size_t)R, Fq::zero(base_));
  Fq fvi = c_[0].inv();
  for (int64_t t = 0; t < R; ++t) {
    int64_t k = t;  // target exponent of the product
    Fq s = Fq::zero(base_);
    if (k == 0) s = Fq::one(base_);
    for (int64_t i = v + 1; i <= v + t && i < top(); ++i) {
      int64_t j = k - i;
      Fq fi = c_[(size_t)(i - v)];
      if (fi.is_zero()) continue;
      s = s - fi * h[(size_t)(j + v)].frob(-i);
    }
    // f_v sigma^{-v}(h_{k-v}) = s
    h[(size_t)t] = (fvi * s).frob(v);
  }
  return SkewLaurent(base_, -v, std::move(h), -v + R);
}

SkewLaurent SkewLaurent::truncate(int64_t prec) const {
  if (prec >= prec_) return *this;
  return SkewLaurent(base_, lo_, c_, prec);
}

SkewLaurent SkewLaurent::coeff_frob(int64_t k) const {
  std::vector<Fq> c;
  for (const auto& x : c_) c.push_back(x.frob(k));
  return SkewLaurent(base_, lo_, std::move(c), prec_);
}

const FiniteField& SkewLaurent::coefficient_field() const {
  const FiniteField* f = base_;
  for (const auto& x : c_) f = &join_fields(*f, x.field());
  return *f;
}

std::string SkewLaurent::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    os << (first ? "" : " + ") << c_[i].str() << "*tau^" << -(lo_ + (int64_t)i);
    first = false;
  }
  if (first) os << "0";
  if (prec_ < kExact) os << " + O(tau^" << -prec_ << ")";
  return os.str();
}

SkewLaurent conjugate(const SkewLaurent& u, const SkewLaurent& f, int64_t n) {
  return u * f * u.inverse(n);
}

}  // namespace dmiso
