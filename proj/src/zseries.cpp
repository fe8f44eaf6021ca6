#include "dmiso/zseries.hpp"

#include <algorithm>
#include <sstream>

namespace dmiso {

template <class K>
ZSeries<K>::ZSeries(Ctx ctx, int64_t lo, std::vector<K> c, int64_t prec)
    : ctx_(ctx), lo_(lo), c_(std::move(c)), prec_(prec) {
  normalize();
}

template <class K>
ZSeries<K> ZSeries<K>::monomial(const K& c, int64_t e) {
  return ZSeries(c.ctx(), e, {c}, kExact);
}

template <class K>
void ZSeries<K>::normalize() {
  if (prec_ < kExact && lo_ + (int64_t)c_.size() > prec_) {
    int64_t keep = std::max<int64_t>(0, prec_ - lo_);
    c_.resize((size_t)keep);
  }
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  size_t z = 0;
  while (z < c_.size() && c_[z].is_zero()) ++z;
  if (z) {
    c_.erase(c_.begin(), c_.begin() + (long)z);
    lo_ += (int64_t)z;
  }
  if (c_.empty()) lo_ = 0;
}

template <class K>
K ZSeries<K>::coeff(int64_t n) const {
  if (n >= prec_) fail(ErrorKind::PrecisionLoss, "z-coefficient beyond precision at exponent " + std::to_string(n));
  if (n < lo_ || n >= top()) return K::zero(ctx_);
  return c_[(size_t)(n - lo_)];
}

template <class K>
bool ZSeries<K>::is_exact() const {
  if (prec_ < kExact) return false;
  for (const auto& c : c_)
    if (!c.is_exact()) return false;
  return true;
}

template <class K>
int64_t ZSeries<K>::order() const {
  if (c_.empty()) fail(ErrorKind::ZeroToPrecision, "z-order of zero to precision");
  return lo_;
}

template <class K>
std::optional<int64_t> ZSeries<K>::order_opt() const {
  if (c_.empty()) return std::nullopt;
  return lo_;
}

template <class K>
K ZSeries<K>::leading() const {
  if (c_.empty()) fail(ErrorKind::ZeroToPrecision, "leading coefficient of zero");
  return c_.front();
}

template <class K>
ZSeries<K> ZSeries<K>::operator+(const ZSeries& o) const {
  int64_t p = std::min(prec_, o.prec_);
  if (c_.empty() && o.c_.empty()) return ZSeries(ctx_, 0, {}, p);
  int64_t lo = std::min(c_.empty() ? o.lo_ : lo_, o.c_.empty() ? lo_ : o.lo_);
  int64_t hi = std::max(c_.empty() ? lo : top(), o.c_.empty() ? lo : o.top());
  if (p < kExact) hi = std::min(hi, p);
  if (hi <= lo) return ZSeries(ctx_, 0, {}, p);
  std::vector<K> c((size_t)(hi - lo), K::zero(ctx_));
  for (size_t i = 0; i < c_.size(); ++i) {
    int64_t e = lo_ + (int64_t)i;
    if (e < hi) c[(size_t)(e - lo)] = c_[i];
  }
  for (size_t i = 0; i < o.c_.size(); ++i) {
    int64_t e = o.lo_ + (int64_t)i;
    if (e < hi) c[(size_t)(e - lo)] = c[(size_t)(e - lo)] + o.c_[i];
  }
  return ZSeries(ctx_, lo, std::move(c), p);
}

template <class K>
ZSeries<K> ZSeries<K>::operator-() const {
  std::vector<K> c;
  c.reserve(c_.size());
  for (const auto& x : c_) c.push_back(-x);
  return ZSeries(ctx_, lo_, std::move(c), prec_);
}

template <class K>
ZSeries<K> ZSeries<K>::operator-(const ZSeries& o) const {
  return *this + (-o);
}

template <class K>
ZSeries<K> ZSeries<K>::operator*(const ZSeries& o) const {
  if (is_exact_zero() || o.is_exact_zero()) return zero(ctx_);
  int64_t p = std::min(prec_add(prec_, o.val_bound()), prec_add(o.prec_, val_bound()));
  if (c_.empty() || o.c_.empty()) return ZSeries(ctx_, 0, {}, p);
  int64_t lo = lo_ + o.lo_;
  int64_t hi = top() + o.top() - 1;
  if (p < kExact) hi = std::min(hi, p);
  if (hi <= lo) return ZSeries(ctx_, 0, {}, p);
  std::vector<K> c((size_t)(hi - lo), K::zero(ctx_));
  std::vector<bool> touched((size_t)(hi - lo), false);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_exact_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      int64_t e = lo + (int64_t)(i + j);
      if (e >= hi) break;
      if (o.c_[j].is_exact_zero()) continue;
      size_t k = (size_t)(e - lo);
      c[k] = touched[k] ? c[k] + c_[i] * o.c_[j] : c_[i] * o.c_[j];
      touched[k] = true;
    }
  }
  return ZSeries(ctx_, lo, std::move(c), p);
}

template <class K>
ZSeries<K> ZSeries<K>::sigma_pow(int64_t k) const {
  if (k == 0) return *this;
  std::vector<K> c;
  c.reserve(c_.size());
  for (const auto& x : c_) c.push_back(x.sigma_pow(k));
  return ZSeries(ctx_, lo_, std::move(c), prec_);
}

template <class K>
ZSeries<K> ZSeries<K>::shift(int64_t k) const {
  return ZSeries(ctx_, lo_ + k, c_, prec_add(prec_, k));
}

template <class K>
ZSeries<K> ZSeries<K>::truncate(int64_t prec) const {
  if (prec >= prec_) return *this;
  return ZSeries(ctx_, lo_, c_, prec);
}

template <class K>
ZSeries<K> ZSeries<K>::scale(const K& s) const {
  if (s.is_exact_zero()) return zero(ctx_);
  std::vector<K> c;
  c.reserve(c_.size());
  for (const auto& x : c_) c.push_back(x * s);
  return ZSeries(ctx_, lo_, std::move(c), prec_);
}

template <class K>
ZSeries<K> ZSeries<K>::inv(int64_t rel) const {
  if (c_.empty()) fail(ErrorKind::ZeroToPrecision, "inverse of a series that is zero to precision");
  int64_t v = lo_;
  K u0i = c_[0].inv();
  if (c_.size() == 1 && prec_ >= kExact) return ZSeries(ctx_, -v, {u0i}, kExact);
  int64_t R = rel;
  if (prec_ < kExact) R = std::min(R, prec_ - v);
  if (R <= 0) fail(ErrorKind::PrecisionLoss, "series inverse has no known terms");
  std::vector<K> y((size_t)R, K::zero(ctx_));
  y[0] = u0i;
  for (int64_t k = 1; k < R; ++k) {
    K s = K::zero(ctx_);
    bool any = false;
    for (int64_t j = 1; j <= k && j < (int64_t)c_.size(); ++j) {
      if (c_[(size_t)j].is_exact_zero()) continue;
      K t = c_[(size_t)j] * y[(size_t)(k - j)];
      s = any ? s + t : t;
      any = true;
    }
    y[(size_t)k] = any ? -(s * u0i) : K::zero(ctx_);
  }
  return ZSeries(ctx_, -v, std::move(y), -v + R);
}

template <class K>
ZSeries<K> ZSeries<K>::below(int64_t bound) const {
  if (bound > prec_) fail(ErrorKind::PrecisionLoss, "series not known up to the reduction bound");
  std::vector<K> c;
  for (int64_t e = lo_; e < std::min(bound, top()); ++e) c.push_back(c_[(size_t)(e - lo_)]);
  return ZSeries(ctx_, lo_, std::move(c), kExact);
}

template <class K>
ZSeries<K> ZSeries<K>::quotient(int64_t bound) const {
  std::vector<K> c;
  int64_t start = std::max(lo_, bound);
  for (int64_t e = start; e < top(); ++e) c.push_back(c_[(size_t)(e - lo_)]);
  int64_t p = prec_ >= kExact ? kExact : prec_ - bound;
  return ZSeries(ctx_, start - bound, std::move(c), p);
}

template <class K>
ZSeries<K> ZSeries<K>::map(const std::function<K(const K&)>& f) const {
  std::vector<K> c;
  c.reserve(c_.size());
  for (const auto& x : c_) c.push_back(f(x));
  return ZSeries(c.empty() ? ctx_ : c.front().ctx(), lo_, std::move(c), prec_);
}

template <class K>
std::string ZSeries<K>::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].str() << ")*z^" << (lo_ + (int64_t)i);
  }
  if (first) os << "0";
  if (prec_ < kExact) os << " + O(z^" << prec_ << ")";
  return os.str();
}

template class ZSeries<Fq>;
template class ZSeries<Laurent>;

}  // namespace dmiso
