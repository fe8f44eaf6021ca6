#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "dmiso/lattice.hpp"
#include "dmiso/semilinear.hpp"

namespace dmiso {

using Rational = boost::rational<int64_t>;

// tau acts on column vectors by v -> A sigma(v).
template <class K>
struct Isocrystal {
  SMat<K> tau;
  size_t rank() const { return tau.rows(); }
  typename K::Ctx ctx() const { return tau(0, 0).ctx(); }
};

template <class K>
Isocrystal<K> make_isocrystal(const SMat<K>& a);  // Input error unless square, nonempty, det nonzero

// e_1 -> e_2 -> ... -> e_r -> z^s e_1
template <class K>
Isocrystal<K> simple_pure(typename K::Ctx ctx, int64_t s, int64_t r);

template <class K>
Isocrystal<K> tensor(const Isocrystal<K>& m, const Isocrystal<K>& n);
// Matrix A^{-T}; rel bounds the relative precision of the inverse.
template <class K>
Isocrystal<K> dual(const Isocrystal<K>& m, int64_t rel);
template <class K>
Isocrystal<K> ihom(const Isocrystal<K>& m, const Isocrystal<K>& n, int64_t rel);
template <class K>
Isocrystal<K> direct_sum(const Isocrystal<K>& m, const Isocrystal<K>& n);

enum class PurityVerdict { Certified, NotPureAt, Inconclusive };
const char* purity_verdict_name(PurityVerdict v);

template <class K>
struct PurityResult {
  PurityVerdict verdict = PurityVerdict::Inconclusive;
  int64_t s = 0, r = 1;
  std::optional<Lattice<K>> lattice;  // <tau^r T> = z^s T when certified
  int64_t iterations = 0;
  bool heuristic = false;  // NotPureAt from the divergence rule rather than a determinant mismatch
  std::string reason;
};

template <class K>
PurityResult<K> purity_check(const Isocrystal<K>& m, int64_t s, int64_t r, int64_t max_iters, int64_t rel);

// Replays <tau^r T> = z^s T for a stored lattice.
template <class K>
bool verify_purity(const Isocrystal<K>& m, int64_t s, int64_t r, const Lattice<K>& t, int64_t rel);

// Newton slopes of det(X - A sigma(A) ... sigma^{m-1}(A)) divided by m, with
// m the degree of the coefficient field over F_q. Sorted ascending.
std::vector<Rational> slopes_finiteK(const Isocrystal<Fq>& m);

template <class K>
struct LatticeChain {
  std::vector<Lattice<K>> lattices;  // T_0 .. T_r
  std::vector<int64_t> steps;        // dim_K T_n / T_{n+1}
  bool verified = false;
};

// Chain for a lattice with <tau^r T> = z T.
template <class K>
LatticeChain<K> lattice_chain(const Isocrystal<K>& m, const Lattice<K>& t, int64_t r, int64_t rel);

template <class K>
struct Pure0Lattice {
  Lattice<K> lattice;  // <tau T> = T
  SMat<K> tau_matrix;  // B^{-1} A sigma(B), in GL_n(K[[z]])
  bool verified = false;
};

// From a lattice with <tau^r T> = T.
template <class K>
Pure0Lattice<K> pure0_lattice(const Isocrystal<K>& m, const Lattice<K>& t, int64_t r, int64_t rel);

struct ModelCheck {
  Decision decision = Decision::Inconclusive;
  std::string failed;  // name of the failing condition
  std::optional<std::pair<size_t, size_t>> entry;
};

// A over R((z)) with unit determinant and invertible reduction mod zeta.
ModelCheck model_verify(const SMat<Laurent>& a);

// Coefficientwise residue map R((z)) -> k((z)).
SMat<Fq> reduce_mod_zeta(const SMat<Laurent>& a);

}  // namespace dmiso
