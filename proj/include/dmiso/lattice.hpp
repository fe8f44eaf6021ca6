#pragma once

#include <vector>

#include "dmiso/matrix.hpp"

namespace dmiso {

// Full-rank K[[z]]-lattice in K((z))^n, held in its canonical column Hermite
// form: lower triangular, diagonal z^{k_i}, entries left of the diagonal in
// row i supported in exponents < k_i. Canonical forms are compared exactly.
template <class K>
struct Lattice {
  SMat<K> basis;
  std::vector<int64_t> diag;

  size_t rank() const { return diag.size(); }
  // z-order of the determinant; smaller means larger lattice.
  int64_t index() const;
  bool operator==(const Lattice& o) const;
  bool operator!=(const Lattice& o) const { return !(*this == o); }
};

// Lattice spanned by the columns of gens (n x m, m >= n, rank n).
// rel bounds the relative precision of pivot inverses.
template <class K>
Lattice<K> hermite(const SMat<K>& gens, int64_t rel);

template <class K>
Lattice<K> standard_lattice(typename K::Ctx ctx, size_t n);

template <class K>
Lattice<K> lattice_sum(const Lattice<K>& a, const Lattice<K>& b, int64_t rel);

template <class K>
Lattice<K> lattice_shift(const Lattice<K>& a, int64_t s);  // z^s T

// <tau^k T> for tau acting by v -> A sigma(v).
template <class K>
Lattice<K> tau_image(const SMat<K>& a, const Lattice<K>& t, int64_t k, int64_t rel);

// Exact inverse of a Hermite basis (monomial diagonal).
template <class K>
SMat<K> triangular_inverse(const Lattice<K>& t);

template <class K>
bool lattice_contains(const Lattice<K>& big, const Lattice<K>& small, int64_t rel);

extern template struct Lattice<Fq>;
extern template struct Lattice<Laurent>;

}  // namespace dmiso
