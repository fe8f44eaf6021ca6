#include "dmiso/finite_field.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>
#include <tuple>

namespace dmiso {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Input: return "InputError";
    case ErrorKind::PrecisionLoss: return "PrecisionLoss";
    case ErrorKind::ZeroToPrecision: return "ZeroToPrecision";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NotStable: return "NotStable";
    case ErrorKind::ExtensionExhausted: return "ExtensionExhausted";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::Internal: return "InternalError";
  }
  return "Unknown";
}

namespace {

using u128 = unsigned __int128;

uint64_t mulmod64(uint64_t a, uint64_t b, uint64_t m) { return (u128)a * b % m; }

uint64_t powmod64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

uint64_t pollard(uint64_t n) {
  if (n % 2 == 0) return 2;
  std::mt19937_64 rng(n);
  while (true) {
    uint64_t x = rng() % n, y = x, c = rng() % (n - 1) + 1, d = 1;
    auto f = [&](uint64_t v) { return (mulmod64(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_rec(uint64_t n, std::vector<uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  for (uint64_t s : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    if (n % s == 0) {
      out.push_back(s);
      factor_rec(n / s, out);
      return;
    }
  }
  uint64_t d = pollard(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

// Dense polynomials over F_p, low degree first.
using Poly = std::vector<uint32_t>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly polymulmod(const Poly& x, const Poly& y, const Poly& f, uint32_t p) {
  if (x.empty() || y.empty()) return {};
  std::vector<uint64_t> r(x.size() + y.size() - 1, 0);
  for (size_t i = 0; i < x.size(); ++i) {
    if (!x[i]) continue;
    for (size_t j = 0; j < y.size(); ++j) r[i + j] = (r[i + j] + (uint64_t)x[i] * y[j]) % p;
  }
  size_t n = f.size() - 1;  // f monic
  for (size_t k = r.size(); k-- > n;) {
    uint64_t c = r[k] % p;
    if (!c) continue;
    for (size_t i = 0; i <= n; ++i) r[k - n + i] = (r[k - n + i] + (p - c) * f[i]) % p;
  }
  Poly out(std::min(r.size(), n));
  for (size_t i = 0; i < out.size(); ++i) out[i] = (uint32_t)(r[i] % p);
  trim(out);
  return out;
}

Poly polypowmod(Poly b, uint64_t e, const Poly& f, uint32_t p) {
  Poly r{1};
  while (e) {
    if (e & 1) r = polymulmod(r, b, f, p);
    b = polymulmod(b, b, f, p);
    e >>= 1;
  }
  return r;
}

struct Key {
  uint32_t p, a, m;
  bool operator<(const Key& o) const { return std::tie(p, a, m) < std::tie(o.p, o.a, o.m); }
};

std::mutex& registry_mu() {
  static std::mutex mu;
  return mu;
}
std::map<Key, std::unique_ptr<FiniteField>>& registry() {
  static std::map<Key, std::unique_ptr<FiniteField>> r;
  return r;
}
std::map<std::pair<uint32_t, uint32_t>, Poly>& modulus_cache() {
  static std::map<std::pair<uint32_t, uint32_t>, Poly> c;
  return c;
}

uint64_t ipow(uint64_t b, uint32_t e) {
  uint64_t r = 1;
  for (uint32_t i = 0; i < e; ++i) r *= b;
  return r;
}

// Least monic irreducible polynomial of degree n over F_p (Rabin test).
Poly polygcd(Poly a, Poly b, uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a mod b
    uint64_t inv = powmod64(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
      uint64_t c = a.back() * inv % p;
      size_t sh = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i) a[sh + i] = (uint32_t)((a[sh + i] + (p - c) * b[i]) % p);
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

const Poly& lex_irreducible(uint32_t p, uint32_t n) {
  auto& cache = modulus_cache();
  auto it = cache.find({p, n});
  if (it != cache.end()) return it->second;
  std::vector<uint64_t> ls = prime_factors(n);
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
  uint64_t count = ipow(p, n);
  for (uint64_t c = 0; c < count; ++c) {
    Poly f(n + 1);
    uint64_t t = c;
    for (uint32_t i = 0; i < n; ++i) {
      f[i] = (uint32_t)(t % p);
      t /= p;
    }
    f[n] = 1;
    if (n == 1) return cache[{p, n}] = f;
    if (f[0] == 0) continue;
    // x^{p^k} mod f for k = 1..n
    std::vector<Poly> frobx(n + 1);
    frobx[0] = Poly{0, 1};
    for (uint32_t k = 1; k <= n; ++k) frobx[k] = polypowmod(frobx[k - 1], p, f, p);
    Poly xx{0, 1};
    if (frobx[n] != xx) continue;
    bool ok = true;
    for (uint64_t l : ls) {
      Poly h = frobx[n / l];
      h.resize(std::max<size_t>(h.size(), 2), 0);
      h[1] = (h[1] + p - 1) % p;
      trim(h);
      Poly g = polygcd(f, h, p);
      if (g.size() != 1) {
        ok = false;
        break;
      }
    }
    if (ok) return cache[{p, n}] = f;
  }
  fail(ErrorKind::Internal, "no irreducible polynomial found");
}

}  // namespace

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t s : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % s == 0) return n == s;
  }
  uint64_t d = n - 1;
  int r = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++r;
  }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  factor_rec(n, out);
  std::sort(out.begin(), out.end());
  return out;
}

const FiniteField& FiniteField::get(uint32_t p, uint32_t a, uint32_t m) {
  std::lock_guard<std::mutex> lk(registry_mu());
  Key k{p, a, m};
  auto& reg = registry();
  auto it = reg.find(k);
  if (it != reg.end()) return *it->second;
  auto* f = new FiniteField(p, a, m);
  reg[k].reset(f);
  return *f;
}

bool FiniteField::fits(uint32_t p, uint64_t n) { return (long double)n * std::log2((long double)p) < 62.0L; }

FiniteField::FiniteField(uint32_t p, uint32_t a, uint32_t m) : p_(p), a_(a), m_(m), n_(a * m) {
  require_input(p >= 2 && p < (1u << 16) && is_prime(p), "field characteristic must be a prime below 65536");
  require_input(a >= 1 && m >= 1, "field exponents must be positive");
  require_input(fits(p, n_), "field order exceeds 2^62");
  q_ = ipow(p, a);
  order_ = ipow(p, n_);
  pw_.resize(n_ + 1);
  pw_[0] = 1;
  for (uint32_t i = 1; i <= n_; ++i) pw_[i] = pw_[i - 1] * p;
  modulus_ = lex_irreducible(p, n_);
  // sigma as an F_p-linear map; column i is (x^i)^q.
  std::vector<uint32_t> base(n_ * n_, 0);
  for (uint32_t i = 0; i < n_; ++i) {
    uint64_t xi = n_ == 1 ? 1 : pw_[i];
    uint64_t img = pow(xi, q_);
    auto d = digits(img);
    for (uint32_t r = 0; r < n_; ++r) base[r * n_ + i] = d[r];
  }
  frob_mats_.clear();
  std::vector<uint32_t> id(n_ * n_, 0);
  for (uint32_t i = 0; i < n_; ++i) id[i * n_ + i] = 1;
  frob_mats_.push_back(id);
  for (uint32_t k = 1; k < m_; ++k) {
    const auto& prev = frob_mats_.back();
    std::vector<uint32_t> nxt(n_ * n_, 0);
    for (uint32_t r = 0; r < n_; ++r)
      for (uint32_t c = 0; c < n_; ++c) {
        uint64_t s = 0;
        for (uint32_t t = 0; t < n_; ++t) s += (uint64_t)base[r * n_ + t] * prev[t * n_ + c];
        nxt[r * n_ + c] = (uint32_t)(s % p_);
      }
    frob_mats_.push_back(std::move(nxt));
  }
  build_tables();
}

uint64_t FiniteField::generator() const { return n_ > 1 ? p_ : primitive_; }

void FiniteField::build_tables() {
  auto qs = prime_factors(order_ - 1);
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  if (n_ == 1 || order_ <= (1ull << 18)) {
    for (uint64_t g = 1; g < order_; ++g) {
      bool prim = true;
      for (uint64_t l : qs) {
        uint64_t e = (order_ - 1) / l, r = 1, b = g;
        while (e) {
          if (e & 1) r = mul_poly(r, b);
          b = mul_poly(b, b);
          e >>= 1;
        }
        if (r == 1) {
          prim = false;
          break;
        }
      }
      if (prim) {
        primitive_ = g;
        break;
      }
    }
  }
  if (order_ > (1ull << 18) || order_ < 3) return;
  uint64_t g = primitive_;
  exp_.assign(2 * (order_ - 1), 0);
  log_.assign(order_, 0);
  uint64_t x = 1;
  for (uint64_t i = 0; i < order_ - 1; ++i) {
    exp_[i] = exp_[i + order_ - 1] = (uint32_t)x;
    log_[x] = (uint32_t)i;
    x = mul_poly(x, g);
  }
  tables_ = true;
}

std::vector<uint32_t> FiniteField::digits(uint64_t x) const {
  std::vector<uint32_t> d(n_);
  for (uint32_t i = 0; i < n_; ++i) {
    d[i] = (uint32_t)(x % p_);
    x /= p_;
  }
  return d;
}

uint64_t FiniteField::pack(const std::vector<uint32_t>& d) const {
  uint64_t x = 0;
  for (size_t i = std::min<size_t>(d.size(), n_); i-- > 0;) x = x * p_ + d[i] % p_;
  return x;
}

uint64_t FiniteField::add(uint64_t x, uint64_t y) const {
  if (p_ == 2) return x ^ y;
  if (n_ == 1) return (x + y) % p_;
  uint64_t r = 0;
  for (uint32_t i = 0; i < n_ && (x || y); ++i) {
    uint64_t d = (x % p_ + y % p_) % p_;
    r += d * pw_[i];
    x /= p_;
    y /= p_;
  }
  return r;
}

uint64_t FiniteField::neg(uint64_t x) const {
  if (p_ == 2) return x;
  uint64_t r = 0;
  for (uint32_t i = 0; i < n_ && x; ++i) {
    uint64_t d = x % p_;
    r += ((p_ - d) % p_) * pw_[i];
    x /= p_;
  }
  return r;
}

uint64_t FiniteField::sub(uint64_t x, uint64_t y) const { return add(x, neg(y)); }

uint64_t FiniteField::scal(uint32_t c, uint64_t x) const {
  c %= p_;
  if (c == 0) return 0;
  if (c == 1) return x;
  uint64_t r = 0;
  for (uint32_t i = 0; i < n_ && x; ++i) {
    r += (x % p_) * c % p_ * pw_[i];
    x /= p_;
  }
  return r;
}

uint64_t FiniteField::from_int(int64_t c) const {
  int64_t r = c % (int64_t)p_;
  if (r < 0) r += p_;
  return (uint64_t)r;
}

uint64_t FiniteField::mul_poly(uint64_t x, uint64_t y) const {
  if (n_ == 1) return x * y % p_;
  auto dx = digits(x), dy = digits(y);
  Poly px(dx.begin(), dx.end()), py(dy.begin(), dy.end());
  trim(px);
  trim(py);
  Poly r = polymulmod(px, py, modulus_, p_);
  r.resize(n_, 0);
  return pack(r);
}

uint64_t FiniteField::mul(uint64_t x, uint64_t y) const {
  if (x == 0 || y == 0) return 0;
  if (tables_) return exp_[log_[x] + log_[y]];
  return mul_poly(x, y);
}

uint64_t FiniteField::pow(uint64_t x, uint64_t e) const {
  if (e == 0) return 1;
  if (x == 0) return 0;
  if (tables_) return exp_[(uint64_t)((u128)log_[x] * e % (order_ - 1))];
  uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

uint64_t FiniteField::inv(uint64_t x) const {
  if (x == 0) fail(ErrorKind::NotAUnit, "inverse of zero in " + name());
  if (tables_) return exp_[(order_ - 1 - log_[x]) % (order_ - 1)];
  return pow(x, order_ - 2);
}

uint64_t FiniteField::apply_linear(const std::vector<uint32_t>& mat, uint64_t x) const {
  auto d = digits(x);
  std::vector<uint32_t> out(n_, 0);
  for (uint32_t r = 0; r < n_; ++r) {
    uint64_t s = 0;
    for (uint32_t c = 0; c < n_; ++c) s += (uint64_t)mat[r * n_ + c] * d[c];
    out[r] = (uint32_t)(s % p_);
  }
  return pack(out);
}

const std::vector<uint32_t>& FiniteField::frob_matrix(uint32_t k) const { return frob_mats_[k]; }

uint64_t FiniteField::frob(uint64_t x, int64_t k) const {
  int64_t kk = k % (int64_t)m_;
  if (kk < 0) kk += m_;
  if (kk == 0 || x == 0 || x == 1) return x;
  if (tables_) {
    uint64_t e = powmod64(q_, (uint64_t)kk, order_ - 1);
    return exp_[(uint64_t)((u128)log_[x] * e % (order_ - 1))];
  }
  return apply_linear(frob_mats_[kk], x);
}

bool FiniteField::contains(const FiniteField& sub) const { return sub.p_ == p_ && n_ % sub.n_ == 0; }

namespace {

using BigPoly = std::vector<uint64_t>;

void btrim(BigPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

BigPoly bmod(BigPoly a, const BigPoly& g, const FiniteField& F) {
  btrim(a);
  uint64_t li = F.inv(g.back());
  while (a.size() >= g.size()) {
    uint64_t c = F.mul(a.back(), li);
    size_t sh = a.size() - g.size();
    for (size_t i = 0; i < g.size(); ++i) a[sh + i] = F.sub(a[sh + i], F.mul(c, g[i]));
    btrim(a);
  }
  return a;
}

BigPoly bmulmod(const BigPoly& a, const BigPoly& b, const BigPoly& g, const FiniteField& F) {
  if (a.empty() || b.empty()) return {};
  BigPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  return bmod(r, g, F);
}

BigPoly bpowmod(BigPoly b, uint64_t e, const BigPoly& g, const FiniteField& F) {
  BigPoly r{1};
  r = bmod(r, g, F);
  while (e) {
    if (e & 1) r = bmulmod(r, b, g, F);
    b = bmulmod(b, b, g, F);
    e >>= 1;
  }
  return r;
}

BigPoly bgcd(BigPoly a, BigPoly b, const FiniteField& F) {
  btrim(a);
  btrim(b);
  while (!b.empty()) {
    a = bmod(a, b, F);
    std::swap(a, b);
  }
  if (!a.empty()) {
    uint64_t li = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, li);
  }
  return a;
}

BigPoly bdiv(BigPoly a, const BigPoly& g, const FiniteField& F) {
  btrim(a);
  uint64_t li = F.inv(g.back());
  BigPoly qt(a.size() >= g.size() ? a.size() - g.size() + 1 : 0, 0);
  while (a.size() >= g.size()) {
    uint64_t c = F.mul(a.back(), li);
    size_t sh = a.size() - g.size();
    qt[sh] = c;
    for (size_t i = 0; i < g.size(); ++i) a[sh + i] = F.sub(a[sh + i], F.mul(c, g[i]));
    btrim(a);
  }
  return qt;
}

// One root of a split squarefree polynomial (Cantor-Zassenhaus).
uint64_t split_root(BigPoly g, const FiniteField& F) {
  std::mt19937_64 rng(0x5eedULL + F.order());
  while (g.size() > 2) {
    uint64_t delta = rng() % F.order();
    BigPoly w;
    if (F.p() == 2) {
      BigPoly t{0, delta};
      t = bmod(t, g, F);
      BigPoly acc = t;
      for (uint32_t i = 1; i < F.n(); ++i) {
        t = bmulmod(t, t, g, F);
        acc.resize(std::max(acc.size(), t.size()), 0);
        for (size_t k = 0; k < t.size(); ++k) acc[k] = F.add(acc[k], t[k]);
        btrim(acc);
      }
      w = acc;
    } else {
      BigPoly t{delta, 1};
      w = bpowmod(bmod(t, g, F), (F.order() - 1) / 2, g, F);
      if (w.empty()) w.push_back(0);
      w[0] = F.sub(w[0], 1);
      btrim(w);
    }
    BigPoly h = bgcd(g, w, F);
    if (h.size() <= 1 || h.size() == g.size()) continue;
    BigPoly other = bdiv(g, h, F);
    g = (h.size() <= other.size()) ? h : other;
    uint64_t li = F.inv(g.back());
    for (auto& c : g) c = F.mul(c, li);
  }
  return F.neg(F.mul(g[0], F.inv(g[1])));
}

std::recursive_mutex& emb_mu() {
  static std::recursive_mutex mu;
  return mu;
}
std::map<std::tuple<uint32_t, uint32_t, uint32_t>, std::vector<uint64_t>>& emb_cache() {
  static std::map<std::tuple<uint32_t, uint32_t, uint32_t>, std::vector<uint64_t>> c;
  return c;
}

const std::vector<uint64_t>& canonical_basis(uint32_t p, uint32_t d, uint32_t n);

uint64_t embed_value(uint32_t p, uint32_t d, uint32_t n, uint64_t x) {
  if (d == n || d == 1) return x;
  const FiniteField& F = FiniteField::get(p, 1, n);
  const FiniteField& S = FiniteField::get(p, 1, d);
  const auto& b = canonical_basis(p, d, n);
  auto dg = S.digits(x);
  uint64_t r = 0;
  for (uint32_t i = 0; i < d; ++i)
    if (dg[i]) r = F.add(r, F.scal(dg[i], b[i]));
  return r;
}

std::vector<uint64_t> powers_of(uint64_t beta, uint32_t d, const FiniteField& F) {
  std::vector<uint64_t> b(d);
  uint64_t acc = 1;
  for (uint32_t i = 0; i < d; ++i) {
    b[i] = acc;
    acc = F.mul(acc, beta);
  }
  return b;
}

// Images of 1, x, ..., x^{d-1} of F_{p^d} inside F_{p^n}. Maximal subfields
// take the least conjugate root agreeing with earlier maximal subfields on
// their intersections; other subfields factor through the least maximal
// subfield containing them.
const std::vector<uint64_t>& canonical_basis(uint32_t p, uint32_t d, uint32_t n) {
  std::lock_guard<std::recursive_mutex> lk(emb_mu());
  auto key = std::make_tuple(p, d, n);
  auto it = emb_cache().find(key);
  if (it != emb_cache().end()) return it->second;
  const FiniteField& F = FiniteField::get(p, 1, n);
  std::vector<uint32_t> maxd;
  for (uint64_t l : prime_factors(n)) maxd.push_back(n / (uint32_t)l);
  std::sort(maxd.begin(), maxd.end());
  maxd.erase(std::unique(maxd.begin(), maxd.end()), maxd.end());
  bool is_max = std::find(maxd.begin(), maxd.end(), d) != maxd.end();
  std::vector<uint64_t> basis;
  if (!is_max) {
    uint32_t top = 0;
    for (uint32_t D : maxd)
      if (D % d == 0) {
        top = D;
        break;
      }
    const auto& inner = canonical_basis(p, d, top);
    basis.resize(d);
    for (uint32_t i = 0; i < d; ++i) basis[i] = embed_value(p, top, n, inner[i]);
    return emb_cache()[key] = basis;
  }
  const FiniteField& S = FiniteField::get(p, 1, d);
  BigPoly g(S.modulus().begin(), S.modulus().end());
  uint64_t r0;
  if (F.order() <= (1u << 16)) {
    r0 = 0;
    for (uint64_t x = 1; x < F.order(); ++x) {
      uint64_t acc = 0;
      for (size_t k = g.size(); k-- > 0;) acc = F.add(F.mul(acc, x), g[k]);
      if (acc == 0) {
        r0 = x;
        break;
      }
    }
  } else {
    r0 = split_root(g, F);
  }
  std::vector<uint64_t> roots;
  uint64_t r = r0;
  for (uint32_t i = 0; i < d; ++i) {
    roots.push_back(r);
    r = F.pow(r, p);
  }
  std::sort(roots.begin(), roots.end());
  for (uint64_t beta : roots) {
    auto cand = powers_of(beta, d, F);
    bool ok = true;
    for (uint32_t D : maxd) {
      if (D >= d) break;
      uint32_t c = std::gcd(D, d);
      if (c == 1) continue;
      const auto& in_d = canonical_basis(p, c, d);
      const auto& via_D = canonical_basis(p, c, D);
      for (uint32_t i = 0; i < c && ok; ++i) {
        auto dg = S.digits(in_d[i]);
        uint64_t lhs = 0;
        for (uint32_t k = 0; k < d; ++k)
          if (dg[k]) lhs = F.add(lhs, F.scal(dg[k], cand[k]));
        if (lhs != embed_value(p, D, n, via_D[i])) ok = false;
      }
      if (!ok) break;
    }
    if (ok) return emb_cache()[key] = cand;
  }
  fail(ErrorKind::Internal, "no compatible embedding found");
}

}  // namespace

uint64_t FiniteField::embed_from(const FiniteField& sub, uint64_t x) const {
  if (&sub == this || sub.n_ == n_) return x;
  if (!contains(sub)) fail(ErrorKind::Input, "cannot embed " + sub.name() + " into " + name());
  return embed_value(p_, sub.n_, n_, x);
}

uint64_t FiniteField::restrict_to(const FiniteField& sub, uint64_t x) const {
  if (&sub == this || sub.n_ == n_) return x;
  if (!contains(sub)) fail(ErrorKind::Input, "cannot restrict to " + sub.name());
  if (sub.n_ == 1) {
    if (x >= p_) fail(ErrorKind::Input, "element not in prime field");
    return x;
  }
  const auto& b = canonical_basis(p_, sub.n_, n_);
  uint32_t k = sub.n_;
  // Solve sum c_i b_i = x over F_p by elimination on the n x (k+1) system.
  std::vector<std::vector<uint32_t>> rows(n_, std::vector<uint32_t>(k + 1));
  for (uint32_t i = 0; i < k; ++i) {
    auto d = digits(b[i]);
    for (uint32_t r = 0; r < n_; ++r) rows[r][i] = d[r];
  }
  auto dx = digits(x);
  for (uint32_t r = 0; r < n_; ++r) rows[r][k] = dx[r];
  uint32_t piv = 0;
  std::vector<int> where(k, -1);
  for (uint32_t c = 0; c < k && piv < n_; ++c) {
    uint32_t s = piv;
    while (s < n_ && rows[s][c] == 0) ++s;
    if (s == n_) continue;
    std::swap(rows[s], rows[piv]);
    uint64_t iv = powmod64(rows[piv][c], p_ - 2, p_);
    for (auto& v : rows[piv]) v = (uint32_t)(v * iv % p_);
    for (uint32_t r = 0; r < n_; ++r) {
      if (r == piv || rows[r][c] == 0) continue;
      uint64_t f = rows[r][c];
      for (uint32_t t = 0; t <= k; ++t) rows[r][t] = (uint32_t)((rows[r][t] + (uint64_t)(p_ - f) * rows[piv][t]) % p_);
    }
    where[c] = (int)piv++;
  }
  for (uint32_t r = piv; r < n_; ++r)
    if (rows[r][k]) fail(ErrorKind::Input, "element not in subfield " + sub.name());
  std::vector<uint32_t> c(k, 0);
  for (uint32_t i = 0; i < k; ++i)
    if (where[i] >= 0) c[i] = rows[where[i]][k];
  return sub.pack(c);
}

bool FiniteField::in_subfield(uint64_t x, uint32_t sub_n) const {
  uint64_t y = x;
  for (uint32_t i = 0; i < sub_n; ++i) y = pow(y, p_);
  return y == x;
}

std::string FiniteField::name() const {
  std::ostringstream os;
  os << "F_" << p_;
  if (n_ > 1) os << "^" << n_;
  return os.str();
}

const FiniteField& join_fields(const FiniteField& x, const FiniteField& y) {
  if (&x == &y) return x;
  if (x.n() >= y.n() && x.contains(y)) return x;
  if (y.contains(x)) return y;
  fail(ErrorKind::Input, "incompatible fields " + x.name() + " and " + y.name());
}

Fq Fq::embed(const FiniteField& big) const {
  if (f_ == &big) return *this;
  return Fq(big, big.embed_from(*f_, v_));
}

Fq Fq::operator+(const Fq& o) const {
  if (f_ == o.f_) return Fq(*f_, f_->add(v_, o.v_));
  const auto& j = join_fields(*f_, *o.f_);
  return Fq(j, j.add(embed(j).v_, o.embed(j).v_));
}

Fq Fq::operator-(const Fq& o) const {
  if (f_ == o.f_) return Fq(*f_, f_->sub(v_, o.v_));
  const auto& j = join_fields(*f_, *o.f_);
  return Fq(j, j.sub(embed(j).v_, o.embed(j).v_));
}

Fq Fq::operator*(const Fq& o) const {
  if (f_ == o.f_) return Fq(*f_, f_->mul(v_, o.v_));
  const auto& j = join_fields(*f_, *o.f_);
  return Fq(j, j.mul(embed(j).v_, o.embed(j).v_));
}

bool Fq::operator==(const Fq& o) const {
  if (f_ == o.f_) return v_ == o.v_;
  if (!f_ || !o.f_) return v_ == o.v_;
  const auto& j = join_fields(*f_, *o.f_);
  return embed(j).v_ == o.embed(j).v_;
}

std::string Fq::str() const {
  if (!f_) return "0";
  auto d = f_->digits(v_);
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << "]";
  return os.str();
}

}  // namespace dmiso
