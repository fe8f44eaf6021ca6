#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "dmiso/errors.hpp"
#include "dmiso/zseries.hpp"

namespace dmiso {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t r, size_t c, const T& fill) : r_(r), c_(c), a_(r * c, fill) {}

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  T& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  const T& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

  void swap_cols(size_t i, size_t j) {
    for (size_t r = 0; r < r_; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }

 private:
  size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

template <class K>
using SMat = Matrix<ZSeries<K>>;

template <class K>
SMat<K> identity_mat(typename K::Ctx ctx, size_t n) {
  SMat<K> m(n, n, ZSeries<K>::zero(ctx));
  for (size_t i = 0; i < n; ++i) m(i, i) = ZSeries<K>::one(ctx);
  return m;
}

template <class T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  invariant(a.cols() == b.rows(), "matrix product shape mismatch");
  Matrix<T> c(a.rows(), b.cols(), a(0, 0) - a(0, 0));
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) {
      T s = c(i, j);
      for (size_t k = 0; k < a.cols(); ++k) {
        if (a(i, k).is_exact_zero() || b(k, j).is_exact_zero()) continue;
        s += a(i, k) * b(k, j);
      }
      c(i, j) = s;
    }
  return c;
}

template <class T>
Matrix<T> mat_sub(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> c = a;
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows(), a(0, 0));
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> k(a.rows() * b.rows(), a.cols() * b.cols(), a(0, 0));
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j)
      for (size_t r = 0; r < b.rows(); ++r)
        for (size_t s = 0; s < b.cols(); ++s) k(i * b.rows() + r, j * b.cols() + s) = a(i, j) * b(r, s);
  return k;
}

template <class T>
Matrix<T> mat_map(const Matrix<T>& a, const std::function<T(const T&)>& f) {
  Matrix<T> out = a;
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) out(i, j) = f(a(i, j));
  return out;
}

template <class K>
SMat<K> sigma_mat(const SMat<K>& a, int64_t k) {
  if (k == 0) return a;
  return mat_map<ZSeries<K>>(a, [k](const ZSeries<K>& x) { return x.sigma_pow(k); });
}

template <class K>
SMat<K> hcat(const SMat<K>& a, const SMat<K>& b) {
  invariant(a.rows() == b.rows(), "hcat row mismatch");
  SMat<K> c(a.rows(), a.cols() + b.cols(), a(0, 0));
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

// A sigma(A) ... sigma^{k-1}(A): the matrix of tau^k.
template <class K>
SMat<K> tau_power_matrix(const SMat<K>& a, int64_t k) {
  SMat<K> acc = a;
  for (int64_t i = 1; i < k; ++i) acc = mat_mul(acc, sigma_mat(a, i));
  return acc;
}

// Characteristic polynomial det(X - A), coefficients of X^0..X^n, by the
// division-free Berkowitz recursion.
template <class K>
std::vector<ZSeries<K>> charpoly(const SMat<K>& a) {
  size_t n = a.rows();
  auto ctx = a(0, 0).ctx();
  using S = ZSeries<K>;
  std::vector<S> p{S::one(ctx)};  // highest degree first
  for (size_t k = 1; k <= n; ++k) {
    size_t m = k - 1;  // size of the leading block
    // first column of the Toeplitz matrix
    std::vector<S> col;
    col.push_back(S::one(ctx));
    col.push_back(-a(m, m));
    std::vector<S> v(m, S::zero(ctx));  // A_{m}^j R
    for (size_t i = 0; i < m; ++i) v[i] = a(i, m);
    for (size_t j = 0; j + 1 < k; ++j) {
      S s = S::zero(ctx);
      for (size_t i = 0; i < m; ++i) s += a(m, i) * v[i];
      col.push_back(-s);
      std::vector<S> nv(m, S::zero(ctx));
      for (size_t r = 0; r < m; ++r)
        for (size_t c = 0; c < m; ++c)
          if (!a(r, c).is_exact_zero() && !v[c].is_exact_zero()) nv[r] += a(r, c) * v[c];
      v = nv;
    }
    std::vector<S> np(k + 1, S::zero(ctx));
    for (size_t i = 0; i <= k; ++i)
      for (size_t j = 0; j < p.size() && j <= i; ++j)
        if (i - j < col.size()) np[i] += col[i - j] * p[j];
    p = np;
  }
  std::reverse(p.begin(), p.end());
  return p;
}

template <class K>
ZSeries<K> det(const SMat<K>& a) {
  auto cp = charpoly(a);
  return (a.rows() % 2) ? -cp[0] : cp[0];
}

// Inverse over K((z)) by Gauss-Jordan with minimal-order pivots; rel is the
// relative precision used for inverting non-monomial pivots.
template <class K>
SMat<K> mat_inverse(const SMat<K>& a, int64_t rel) {
  size_t n = a.rows();
  invariant(n == a.cols(), "inverse of non-square matrix");
  auto ctx = a(0, 0).ctx();
  SMat<K> m = a;
  SMat<K> inv = identity_mat<K>(ctx, n);
  std::vector<size_t> perm(n);
  for (size_t c = 0; c < n; ++c) {
    size_t best = n;
    int64_t bo = 0;
    bool best_mono = false;
    for (size_t r = c; r < n; ++r) {
      auto o = m(r, c).order_opt();
      if (!o) continue;
      bool mono = m(r, c).is_monomial() && m(r, c).z_exact();
      if (best == n || *o < bo || (*o == bo && mono && !best_mono)) {
        best = r;
        bo = *o;
        best_mono = mono;
      }
    }
    if (best == n) fail(ErrorKind::PrecisionLoss, "matrix is singular to precision");
    for (size_t j = 0; j < n; ++j) {
      std::swap(m(c, j), m(best, j));
      std::swap(inv(c, j), inv(best, j));
    }
    ZSeries<K> pi = m(c, c).inv(rel);
    for (size_t j = 0; j < n; ++j) {
      m(c, j) = m(c, j) * pi;
      inv(c, j) = inv(c, j) * pi;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c || m(r, c).is_exact_zero()) continue;
      ZSeries<K> f = m(r, c);
      for (size_t j = 0; j < n; ++j) {
        if (!m(c, j).is_exact_zero()) m(r, j) = m(r, j) - f * m(c, j);
        if (!inv(c, j).is_exact_zero()) inv(r, j) = inv(r, j) - f * inv(c, j);
      }
    }
  }
  return inv;
}

template <class K>
bool mat_equal(const SMat<K>& a, const SMat<K>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

template <class K>
SMat<K> mat_shift(const SMat<K>& a, int64_t k) {
  return mat_map<ZSeries<K>>(a, [k](const ZSeries<K>& x) { return x.shift(k); });
}

}  // namespace dmiso
