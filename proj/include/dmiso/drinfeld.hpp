#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dmiso/isocrystal.hpp"
#include "dmiso/skew.hpp"

namespace dmiso {

// phi_t = g_0 + g_1 tau + ... + g_r tau^r over K, tau x = x^q tau.
template <class K>
struct DrinfeldModule {
  SkewPoly<K> phi;
  int64_t rank() const { return phi.degree(); }
  typename K::Ctx ctx() const { return phi.ctx(); }
  K g(int64_t i) const { return phi.coeff(i); }
};

// Input error for empty or degree-0 phi_t or a vanishing top coefficient.
template <class K>
DrinfeldModule<K> make_drinfeld(typename K::Ctx ctx, const std::vector<K>& coeffs);

// K{tau} with basis 1, tau, ..., tau^{r-1} over K[t]; t acts by right
// composition with phi_t. Entries of tau are polynomials in t (series variable).
template <class K>
struct Motive {
  SMat<K> tau;
  int64_t coker_dim = -1;  // dim_K of coker of the linearised tau
  std::optional<K> coker_t;  // eigenvalue of t on the cokernel when it is a line
  bool coker_ok = false;     // coker_dim == 1 and coker_t == g_0
};

template <class K>
Motive<K> motive(const DrinfeldModule<K>& e);

// Motive with t = z^{-1}, over K((z)).
template <class K>
Isocrystal<K> m_infinity(const DrinfeldModule<K>& e);

// u phi_t u^{-1}: g_i -> g_i u^{1 - q^i}.
template <class K>
DrinfeldModule<K> conjugate_by(const DrinfeldModule<K>& e, const K& u);

enum class ReductionVerdict { Good, Stable, PotentiallyGood, BadNotPotentiallyGood };
const char* reduction_verdict_name(ReductionVerdict v);

struct ReductionReport {
  ReductionVerdict verdict = ReductionVerdict::Good;
  // v(u) of the scaling u phi_t u^{-1}: the least v(g_i)/(q^i - 1)
  Rational m;
  int64_t e = 1;            // denominator of m
  int64_t stable_rank = 0;  // largest i with v(g_i)/(q^i - 1) = m
  std::vector<std::optional<Rational>> scaled;  // v(g_i) - m (q^i - 1), i = 0..r
  std::vector<std::optional<int64_t>> valuations;
};

// Valued base only. Input error when v(g_0) < 0.
ReductionReport reduction_type(const DrinfeldModule<Laurent>& e);
// Replays the scaled valuations from the stated m.
bool check_reduction(const DrinfeldModule<Laurent>& e, const ReductionReport& rep);

// zeta -> omega^e over a window scaled by e.
DrinfeldModule<Laurent> ramify(const DrinfeldModule<Laurent>& e, int64_t ram);

// Same module over a window whose lower end leaves room for sigma^r of the
// most negative zeta-exponent in m_infinity.
DrinfeldModule<Laurent> widen_for_sigma(const DrinfeldModule<Laurent>& e);

struct GoodModel {
  DrinfeldModule<Laurent> scaled;  // integral, unit top coefficient
  Laurent u;                       // zeta^m
  SMat<Laurent> model;             // m_infinity(scaled), over R((z))
  ModelCheck check;
  DrinfeldModule<Fq> reduction;   // scaled mod zeta
  bool base_change_ok = false;    // model = B^{-1} A sigma(B), B = diag(u^{q^i})
};

// Requires a Good verdict; Internal error if the model fails verification.
GoodModel good_model(const DrinfeldModule<Laurent>& e);

// Reduction of the scaled module after ramifying so that m is integral.
struct StableObstruction {
  int64_t ramification = 1;
  DrinfeldModule<Fq> reduction;  // rank s
  PurityResult<Laurent> generic;  // m_infinity(E) at (-1, r)
  PurityResult<Fq> special;       // m_infinity(reduction) at (-1, s)
  std::vector<Rational> special_slopes;
  int64_t slope0_rank = 0;  // r - s
  bool incompatible = false;
};

struct CritReport {
  ReductionReport reduction;
  bool agree = false;
  std::string detail;
  std::optional<GoodModel> model;  // Good, or PotentiallyGood after ramifying
  int64_t ramification = 1;
  std::optional<StableObstruction> obstruction;
};

CritReport crit_crosscheck(const DrinfeldModule<Laurent>& e, int64_t max_iters, int64_t rel);

}  // namespace dmiso
