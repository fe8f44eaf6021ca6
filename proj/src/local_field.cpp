#include "dmiso/local_field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

namespace dmiso {

int64_t prec_add(int64_t a, int64_t b) {
  if (a >= kExact || b >= kExact) return kExact;
  return a + b;
}

const LocalField& LocalField::get(const FiniteField& F, int64_t n_min, int64_t n_max) {
  require_input(n_min < n_max, "zeta window must satisfy n_min < n_max");
  require_input(n_min > -100000 && n_max < 100000, "zeta window too large");
  static std::mutex mu;
  static std::map<std::tuple<const FiniteField*, int64_t, int64_t>, std::unique_ptr<LocalField>> reg;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_tuple(&F, n_min, n_max);
  auto it = reg.find(key);
  if (it != reg.end()) return *it->second;
  auto* L = new LocalField(F, n_min, n_max);
  reg[key].reset(L);
  return *L;
}

std::string LocalField::name() const {
  std::ostringstream os;
  os << F_->name() << "((zeta))[" << n_min_ << "," << n_max_ << ")";
  return os.str();
}

Laurent::Laurent(Ctx L, int64_t lo, std::vector<uint64_t> c, int64_t prec)
    : L_(L), lo_(lo), c_(std::move(c)), prec_(prec) {
  normalize();
}

Laurent Laurent::monomial(Ctx L, uint64_t c, int64_t e) {
  if (c == 0) return zero(L);
  return Laurent(L, e, {c}, kExact);
}

Laurent Laurent::constant(Ctx L, const Fq& c) {
  return monomial(L, L->residue_field().embed_from(c.field(), c.raw()), 0);
}

void Laurent::normalize() {
  if (prec_ < kExact || (!c_.empty() && lo_ + (int64_t)c_.size() > L_->n_max()))
    prec_ = std::min(prec_, L_->n_max());
  // drop coefficients at or beyond prec
  if (!c_.empty() && lo_ + (int64_t)c_.size() > prec_) {
    int64_t keep = std::max<int64_t>(0, prec_ - lo_);
    c_.resize((size_t)keep);
  }
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  size_t z = 0;
  while (z < c_.size() && c_[z] == 0) ++z;
  if (z) {
    c_.erase(c_.begin(), c_.begin() + (long)z);
    lo_ += (int64_t)z;
  }
  if (c_.empty()) lo_ = 0;
  if (!c_.empty() && lo_ < L_->n_min())
    fail(ErrorKind::PrecisionLoss, "support below zeta window at exponent " + std::to_string(lo_));
  if (prec_ < L_->n_min() && prec_ < kExact)
    fail(ErrorKind::PrecisionLoss, "precision fell below zeta window");
}

uint64_t Laurent::coeff(int64_t e) const {
  if (e >= prec_) fail(ErrorKind::PrecisionLoss, "coefficient beyond precision at exponent " + std::to_string(e));
  if (e < lo_ || e >= top()) return 0;
  return c_[(size_t)(e - lo_)];
}

bool Laurent::is_one() const { return is_exact() && c_.size() == 1 && lo_ == 0 && c_[0] == 1; }

int64_t Laurent::valuation() const {
  if (c_.empty()) fail(ErrorKind::ZeroToPrecision, "valuation of zero to precision");
  return lo_;
}

std::optional<int64_t> Laurent::valuation_opt() const {
  if (c_.empty()) return std::nullopt;
  return lo_;
}

Fq Laurent::residue() const {
  if (!c_.empty() && lo_ < 0) fail(ErrorKind::NotIntegral, "residue of a non-integral element");
  if (prec_ <= 0) fail(ErrorKind::PrecisionLoss, "residue beyond precision");
  return Fq(field(), coeff(0));
}

Laurent Laurent::operator+(const Laurent& o) const {
  const FiniteField& F = field();
  if (c_.empty() && o.c_.empty()) return Laurent(L_, 0, {}, std::min(prec_, o.prec_));
  int64_t p = std::min(prec_, o.prec_);
  int64_t lo = std::min(c_.empty() ? o.lo_ : lo_, o.c_.empty() ? lo_ : o.lo_);
  int64_t hi = std::max(top(), o.top());
  if (p < kExact) hi = std::min(hi, p);
  if (hi <= lo) return Laurent(L_, 0, {}, p);
  std::vector<uint64_t> c((size_t)(hi - lo), 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    int64_t e = lo_ + (int64_t)i;
    if (e < hi) c[(size_t)(e - lo)] = c_[i];
  }
  for (size_t i = 0; i < o.c_.size(); ++i) {
    int64_t e = o.lo_ + (int64_t)i;
    if (e < hi) c[(size_t)(e - lo)] = F.add(c[(size_t)(e - lo)], o.c_[i]);
  }
  return Laurent(L_, lo, std::move(c), p);
}

Laurent Laurent::operator-() const {
  std::vector<uint64_t> c(c_);
  for (auto& x : c) x = field().neg(x);
  return Laurent(L_, lo_, std::move(c), prec_);
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (-o); }

Laurent Laurent::operator*(const Laurent& o) const {
  if (is_exact_zero() || o.is_exact_zero()) return zero(L_);
  int64_t p = std::min(prec_add(prec_, o.val_bound()), prec_add(o.prec_, val_bound()));
  if (c_.empty() || o.c_.empty()) return Laurent(L_, 0, {}, std::min(p, L_->n_max()));
  const FiniteField& F = field();
  int64_t lo = lo_ + o.lo_;
  int64_t hi = top() + o.top() - 1;
  int64_t cap = std::min<int64_t>(p, L_->n_max());
  hi = std::min(hi, cap);
  if (hi <= lo) return Laurent(L_, 0, {}, cap);
  std::vector<uint64_t> c((size_t)(hi - lo), 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i]) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      int64_t e = lo_ + o.lo_ + (int64_t)(i + j);
      if (e >= hi) break;
      c[(size_t)(e - lo)] = F.add(c[(size_t)(e - lo)], F.mul(c_[i], o.c_[j]));
    }
  }
  return Laurent(L_, lo, std::move(c), p);
}

bool Laurent::identical(const Laurent& o) const {
  return L_ == o.L_ && lo_ == o.lo_ && c_ == o.c_ && prec_ == o.prec_;
}

Laurent Laurent::inv() const {
  if (c_.empty()) fail(ErrorKind::ZeroToPrecision, "inverse of zero to precision");
  const FiniteField& F = field();
  int64_t v = lo_;
  if (is_exact() && c_.size() == 1) return Laurent(L_, -v, {F.inv(c_[0])}, kExact);
  // relative precision of the result
  int64_t rel = is_exact() ? L_->n_max() + v : prec_ - v;
  int64_t out_prec = is_exact() ? L_->n_max() : prec_ - 2 * v;
  rel = std::min(rel, L_->n_max() + v);
  if (rel <= 0) fail(ErrorKind::PrecisionLoss, "inverse has no known coefficients in window");
  std::vector<uint64_t> u((size_t)rel, 0);
  uint64_t i0 = F.inv(c_[0]);
  for (int64_t k = 0; k < rel; ++k) {
    uint64_t s = k == 0 ? 1 : 0;
    for (int64_t j = 1; j <= k && j < (int64_t)c_.size(); ++j) s = F.sub(s, F.mul(c_[(size_t)j], u[(size_t)(k - j)]));
    u[(size_t)k] = F.mul(s, i0);
  }
  return Laurent(L_, -v, std::move(u), out_prec);
}

Laurent Laurent::frob() const {
  const FiniteField& F = field();
  int64_t q = (int64_t)F.q();
  int64_t p = prec_ >= kExact ? kExact : prec_ * q;
  if (c_.empty()) return Laurent(L_, 0, {}, std::min(p, L_->n_max()));
  int64_t lo = lo_ * q;
  int64_t hi = (top() - 1) * q + 1;
  int64_t cap = std::min(p, L_->n_max());
  hi = std::min(hi, cap);
  if (hi <= lo) return Laurent(L_, 0, {}, cap);
  std::vector<uint64_t> c((size_t)(hi - lo), 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    int64_t e = (lo_ + (int64_t)i) * q;
    if (e >= hi) break;
    c[(size_t)(e - lo)] = F.frob(c_[i], 1);
  }
  return Laurent(L_, lo, std::move(c), p);
}

Laurent Laurent::sigma_pow(int64_t k) const {
  Laurent x = *this;
  if (k >= 0) {
    for (int64_t i = 0; i < k; ++i) x = x.frob();
    return x;
  }
  for (int64_t i = 0; i < -k; ++i) {
    auto r = x.qth_root();
    if (!r) fail(ErrorKind::Input, "no q-th root for negative Frobenius power");
    x = *r;
  }
  return x;
}

Laurent Laurent::shift(int64_t k) const {
  return Laurent(L_, lo_ + k, c_, prec_add(prec_, k));
}

Laurent Laurent::truncate(int64_t prec) const {
  if (prec >= prec_) return *this;
  return Laurent(L_, lo_, c_, prec);
}

Laurent Laurent::scale(const Fq& c) const {
  const FiniteField& F = field();
  uint64_t cv = F.embed_from(c.field(), c.raw());
  if (cv == 0) return zero(L_);
  std::vector<uint64_t> out(c_);
  for (auto& x : out) x = F.mul(x, cv);
  return Laurent(L_, lo_, std::move(out), prec_);
}

std::optional<Laurent> Laurent::qth_root(int64_t* witness) const {
  const FiniteField& F = field();
  int64_t q = (int64_t)F.q();
  for (size_t i = 0; i < c_.size(); ++i) {
    int64_t e = lo_ + (int64_t)i;
    if (c_[i] && ((e % q) + q) % q != 0) {
      if (witness) *witness = e;
      return std::nullopt;
    }
  }
  auto div_floor = [q](int64_t a) { return a >= 0 ? a / q : -((-a + q - 1) / q); };
  int64_t p = prec_ >= kExact ? kExact : -div_floor(-prec_);  // ceil(prec/q)
  if (c_.empty()) return Laurent(L_, 0, {}, p);
  int64_t lo = div_floor(lo_);
  int64_t hi = div_floor(top() - 1) + 1;
  std::vector<uint64_t> c((size_t)(hi - lo), 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i]) continue;
    int64_t e = (lo_ + (int64_t)i) / q;
    c[(size_t)(e - lo)] = F.frob(c_[i], -1);
  }
  return Laurent(L_, lo, std::move(c), p);
}

Laurent Laurent::ramify(const LocalField& target, int64_t e) const {
  invariant(&target.residue_field() == &field(), "ramify: residue fields differ");
  int64_t p = prec_ >= kExact ? kExact : prec_ * e;
  if (c_.empty()) return Laurent(&target, 0, {}, p);
  std::vector<uint64_t> c((size_t)((top() - 1 - lo_) * e + 1), 0);
  for (size_t i = 0; i < c_.size(); ++i) c[i * (size_t)e] = c_[i];
  return Laurent(&target, lo_ * e, std::move(c), p);
}

std::string Laurent::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i]) continue;
    if (!first) os << " + ";
    first = false;
    os << Fq(field(), c_[i]).str() << "*zeta^" << (lo_ + (int64_t)i);
  }
  if (first) os << "0";
  if (prec_ < kExact) os << " + O(zeta^" << prec_ << ")";
  return os.str();
}

}  // namespace dmiso
