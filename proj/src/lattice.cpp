#include "dmiso/lattice.hpp"

#include <numeric>

namespace dmiso {

template <class K>
int64_t Lattice<K>::index() const {
  return std::accumulate(diag.begin(), diag.end(), int64_t(0));
}

template <class K>
bool Lattice<K>::operator==(const Lattice& o) const {
  if (diag != o.diag) return false;
  return mat_equal(basis, o.basis);
}

template <class K>
Lattice<K> hermite(const SMat<K>& gens, int64_t rel) {
  using S = ZSeries<K>;
  size_t n = gens.rows(), m = gens.cols();
  invariant(m >= n && n > 0, "lattice needs at least rank-many generators");
  auto ctx = gens(0, 0).ctx();
  SMat<K> w = gens;
  std::vector<int64_t> k(n);
  for (size_t i = 0; i < n; ++i) {
    size_t best = m;
    int64_t bo = 0;
    bool best_mono = false;
    for (size_t j = i; j < m; ++j) {
      auto o = w(i, j).order_opt();
      if (!o) continue;
      bool mono = w(i, j).is_monomial() && w(i, j).z_exact();
      if (best == m || *o < bo || (*o == bo && mono && !best_mono)) {
        best = j;
        bo = *o;
        best_mono = mono;
      }
    }
    if (best == m) fail(ErrorKind::PrecisionLoss, "lattice generators are rank deficient to precision");
    // a zero-to-precision entry could hide a smaller order
    for (size_t j = i; j < m; ++j)
      if (w(i, j).is_zero() && w(i, j).prec() < bo)
        fail(ErrorKind::PrecisionLoss, "pivot order not certified within z-precision");
    w.swap_cols(i, best);
    k[i] = bo;
    const S& piv = w(i, i);
    S scale = piv.is_monomial() && piv.z_exact() ? S::constant(piv.leading().inv()) : piv.shift(-bo).inv(rel);
    for (size_t r = i; r < n; ++r)
      if (!w(r, i).is_exact_zero()) w(r, i) = w(r, i) * scale;
    w(i, i) = S::z_power(ctx, bo);
    for (size_t j = i + 1; j < m; ++j) {
      const S e = w(i, j);
      if (e.is_exact_zero()) continue;
      S c = e.shift(-bo);
      for (size_t r = i + 1; r < n; ++r)
        if (!w(r, i).is_exact_zero()) w(r, j) = w(r, j) - c * w(r, i);
      w(i, j) = S::zero(ctx);
    }
  }
  // Reduce left of the diagonal modulo z^{k_i}.
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < i; ++j) {
      const S e = w(i, j);
      if (e.is_exact_zero()) continue;
      if (e.prec() < k[i]) fail(ErrorKind::PrecisionLoss, "lattice reduction needs more z-precision");
      S c = e.quotient(k[i]);
      if (!c.is_zero()) {
        for (size_t r = i + 1; r < n; ++r)
          if (!w(r, i).is_exact_zero()) w(r, j) = w(r, j) - c * w(r, i);
      }
      w(i, j) = e.below(k[i]);
    }
  }
  Lattice<K> out;
  out.basis = SMat<K>(n, n, S::zero(ctx));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j <= i; ++j) out.basis(i, j) = w(i, j);
  out.diag = k;
  return out;
}

template <class K>
Lattice<K> standard_lattice(typename K::Ctx ctx, size_t n) {
  Lattice<K> t;
  t.basis = identity_mat<K>(ctx, n);
  t.diag.assign(n, 0);
  return t;
}

template <class K>
Lattice<K> lattice_sum(const Lattice<K>& a, const Lattice<K>& b, int64_t rel) {
  return hermite<K>(hcat<K>(a.basis, b.basis), rel);
}

template <class K>
Lattice<K> lattice_shift(const Lattice<K>& a, int64_t s) {
  Lattice<K> t;
  t.basis = mat_shift<K>(a.basis, s);
  t.diag = a.diag;
  for (auto& d : t.diag) d += s;
  return t;
}

template <class K>
Lattice<K> tau_image(const SMat<K>& a, const Lattice<K>& t, int64_t k, int64_t rel) {
  SMat<K> ak = tau_power_matrix<K>(a, k);
  return hermite<K>(mat_mul(ak, sigma_mat<K>(t.basis, k)), rel);
}

template <class K>
SMat<K> triangular_inverse(const Lattice<K>& t) {
  using S = ZSeries<K>;
  size_t n = t.rank();
  auto ctx = t.basis(0, 0).ctx();
  SMat<K> x(n, n, S::zero(ctx));
  for (size_t j = 0; j < n; ++j) {
    for (size_t i = j; i < n; ++i) {
      S s = i == j ? S::one(ctx) : S::zero(ctx);
      for (size_t r = j; r < i; ++r)
        if (!t.basis(i, r).is_exact_zero() && !x(r, j).is_exact_zero()) s -= t.basis(i, r) * x(r, j);
      x(i, j) = s.shift(-t.diag[i]);
    }
  }
  return x;
}

template <class K>
bool lattice_contains(const Lattice<K>& big, const Lattice<K>& small, int64_t) {
  SMat<K> c = mat_mul(triangular_inverse(big), small.basis);
  for (size_t i = 0; i < c.rows(); ++i)
    for (size_t j = 0; j < c.cols(); ++j) {
      const auto& e = c(i, j);
      if (e.is_zero()) {
        if (e.prec() < 0) fail(ErrorKind::PrecisionLoss, "containment not decidable at this precision");
        continue;
      }
      if (e.order() < 0) return false;
    }
  return true;
}

#define DMISO_LATTICE_INST(K)                                                       \
  template struct Lattice<K>;                                                       \
  template Lattice<K> hermite<K>(const SMat<K>&, int64_t);                          \
  template Lattice<K> standard_lattice<K>(typename K::Ctx, size_t);                 \
  template Lattice<K> lattice_sum<K>(const Lattice<K>&, const Lattice<K>&, int64_t); \
  template Lattice<K> lattice_shift<K>(const Lattice<K>&, int64_t);                 \
  template Lattice<K> tau_image<K>(const SMat<K>&, const Lattice<K>&, int64_t, int64_t); \
  template SMat<K> triangular_inverse<K>(const Lattice<K>&);                        \
  template bool lattice_contains<K>(const Lattice<K>&, const Lattice<K>&, int64_t);

DMISO_LATTICE_INST(Fq)
DMISO_LATTICE_INST(Laurent)

}  // namespace dmiso
