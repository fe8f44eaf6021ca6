#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dmiso/drinfeld.hpp"

namespace dmiso {

// Slope-0 Tate module over O/z^N for an isocrystal over F_{q^m}.
struct TateSlope0 {
  Lattice<Fq> lattice;  // tau-stable
  SMat<Fq> tau_integral;  // tau in a basis of the lattice
  uint32_t ext = 1;       // fixed space taken over F_{q^{m ext}}
  FixedSpace space;
  FrobeniusAction frobenius;  // q^m-Frobenius
  size_t rank = 0;
};

// Input error unless pure of slope 0; ExtensionExhausted when no e <= e_max
// gives a free module of full rank.
TateSlope0 tate_slope0(const Isocrystal<Fq>& m, int64_t N, uint32_t e_max, int64_t max_iters, int64_t rel);

struct FormalMotive {
  int64_t rank = 0;
  SkewLaurent phi_t;  // exact
  SkewLaurent phi_z;  // phi_t^{-1}
  int64_t valuation = 0;
  std::vector<std::pair<int64_t, SkewLaurent>> table;  // phi(t^k), k = -2..2
};

// tau_prec relative terms of phi(z).
FormalMotive formal_motive(const DrinfeldModule<Fq>& e, int64_t tau_prec);

// K((tau^{-1})) as a K((z))-module through right multiplication by phi(z), in
// the basis 1, tau^{-1}, ..., tau^{-(r-1)}, with tau acting on the left.
Isocrystal<Fq> formal_readback(const DrinfeldModule<Fq>& e, int64_t z_prec);

struct HomWitness {
  uint32_t ext = 0;  // 0 when nothing was found
  size_t dim_fq = 0;
};

// Nonzero tau-invariants of Hom(m, n) for m, n of equal slope; searches e <= e_max.
HomWitness hom_witness(const Isocrystal<Fq>& m, const Isocrystal<Fq>& n, int64_t N, uint32_t e_max, int64_t max_iters,
                       int64_t rel);

struct Conjugator {
  SkewLaurent u;  // u phi(z) u^{-1} = tau^{-r}
  uint32_t ext = 1;
  const FiniteField* field = nullptr;  // F_{q^{m ext}}
  int64_t precision = 0;               // tau^{-1}-terms of u actually reached
  bool verified = false;
};

// Leading coefficient: the least nonzero solution of sigma^{-r}(y) = c y in
// packed order, c the leading coefficient of phi(z); later coefficients take
// the solution with free variables zero, over the least multiple of the
// current degree that has one. Stops early once e_max is reached; the
// achieved precision is recorded. ExtensionExhausted when even u_0 fails.
Conjugator yu_conjugator(const DrinfeldModule<Fq>& e, int64_t tau_prec, uint32_t e_max);
bool check_conjugator(const DrinfeldModule<Fq>& e, const Conjugator& c);

struct WeilData {
  Rational lambda;
  int64_t frobenius_ord = 0;  // m for the geometric q^m-Frobenius
  Rational rho_valuation;     // v_D(rho(Frob))
  std::vector<Rational> powers;  // v_D(rho(Frob^k)), k = 1..4
  bool in_centraliser = false;   // rho(Frob) commutes with tau^{-r}
  bool admissible = false;
  Conjugator conjugator;
};

WeilData weil_valuation(const DrinfeldModule<Fq>& e, int64_t tau_prec, uint32_t e_max);
// Valuations from a given conjugator, at its precision.
WeilData weil_from_conjugator(const DrinfeldModule<Fq>& e, const Conjugator& c);

}  // namespace dmiso
