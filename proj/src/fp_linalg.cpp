#include "dmiso/fp_linalg.hpp"

#include "dmiso/errors.hpp"

namespace dmiso {

uint32_t fp_inv(uint32_t x, uint32_t p) {
  uint64_t r = 1, b = x % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return (uint32_t)r;
}

void FpMatrix::set_col(size_t c, const FpVec& v) {
  for (size_t r = 0; r < rows_; ++r) at(r, c) = v[r] % p_;
}

std::vector<size_t> FpMatrix::rref(std::vector<uint32_t>& m, size_t cols) const {
  std::vector<size_t> piv;
  size_t row = 0;
  for (size_t c = 0; c < cols && row < rows_; ++c) {
    size_t s = row;
    while (s < rows_ && m[s * cols + c] == 0) ++s;
    if (s == rows_) continue;
    if (s != row)
      for (size_t k = 0; k < cols; ++k) std::swap(m[s * cols + k], m[row * cols + k]);
    uint64_t iv = fp_inv(m[row * cols + c], p_);
    for (size_t k = c; k < cols; ++k) m[row * cols + k] = (uint32_t)(m[row * cols + k] * iv % p_);
    for (size_t r = 0; r < rows_; ++r) {
      if (r == row) continue;
      uint64_t f = m[r * cols + c];
      if (!f) continue;
      uint64_t nf = p_ - f;
      for (size_t k = c; k < cols; ++k) {
        uint32_t v = m[row * cols + k];
        if (v) m[r * cols + k] = (uint32_t)((m[r * cols + k] + nf * v) % p_);
      }
    }
    piv.push_back(c);
    ++row;
  }
  return piv;
}

size_t FpMatrix::rank() const {
  auto m = a_;
  return rref(m, cols_).size();
}

std::vector<FpVec> FpMatrix::kernel() const {
  auto m = a_;
  auto piv = rref(m, cols_);
  std::vector<int> is_piv(cols_, -1);
  for (size_t i = 0; i < piv.size(); ++i) is_piv[piv[i]] = (int)i;
  std::vector<FpVec> out;
  for (size_t f = 0; f < cols_; ++f) {
    if (is_piv[f] >= 0) continue;
    FpVec v(cols_, 0);
    v[f] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = (p_ - m[i * cols_ + f]) % p_;
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<FpVec> FpMatrix::solve(const FpVec& b) const {
  size_t C = cols_ + 1;
  std::vector<uint32_t> m(rows_ * C);
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t c = 0; c < cols_; ++c) m[r * C + c] = a_[r * cols_ + c];
    m[r * C + cols_] = b[r] % p_;
  }
  auto piv = rref(m, C);
  if (!piv.empty() && piv.back() == cols_) return std::nullopt;
  FpVec x(cols_, 0);
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = m[i * C + cols_];
  return x;
}

void FpSpan::reduce(FpVec& v, FpVec* track) const {
  for (size_t i = 0; i < rows_.size(); ++i) {
    uint64_t f = v[lead_[i]];
    if (!f) continue;
    uint64_t nf = p_ - f;
    const FpVec& r = rows_[i];
    for (size_t k = lead_[i]; k < dim_; ++k)
      if (r[k]) v[k] = (uint32_t)((v[k] + nf * r[k]) % p_);
    if (track) {
      const FpVec& cb = combo_[i];
      for (size_t k = 0; k < cb.size(); ++k)
        if (cb[k]) (*track)[k] = (uint32_t)(((*track)[k] + f * cb[k]) % p_);
    }
  }
}

bool FpSpan::add(FpVec v) {
  invariant(v.size() == dim_, "span dimension mismatch");
  FpVec track(inserted_ + 1, 0);
  reduce(v, &track);
  // v_reduced = v_new - sum track_k * inserted_k
  size_t lead = 0;
  while (lead < dim_ && v[lead] == 0) ++lead;
  ++inserted_;
  for (auto& cb : combo_) cb.resize(inserted_, 0);
  if (lead == dim_) return false;
  FpVec cb(inserted_, 0);
  for (size_t k = 0; k + 1 < inserted_; ++k) cb[k] = (p_ - track[k]) % p_;
  cb[inserted_ - 1] = 1;
  uint64_t iv = fp_inv(v[lead], p_);
  for (auto& x : v) x = (uint32_t)(x * iv % p_);
  for (auto& x : cb) x = (uint32_t)(x * iv % p_);
  // keep rows in order of increasing lead for reduce()
  size_t pos = 0;
  while (pos < lead_.size() && lead_[pos] < lead) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(v));
  lead_.insert(lead_.begin() + pos, lead);
  combo_.insert(combo_.begin() + pos, std::move(cb));
  return true;
}

bool FpSpan::contains(FpVec v) const {
  reduce(v, nullptr);
  for (auto x : v)
    if (x) return false;
  return true;
}

std::optional<FpVec> FpSpan::coords(FpVec v) const {
  FpVec track(inserted_, 0);
  reduce(v, &track);
  for (auto x : v)
    if (x) return std::nullopt;
  return track;
}

}  // namespace dmiso
