#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "dmiso/drinfeld.hpp"
#include "dmiso/semilinear.hpp"
#include "dmiso/tate_weil.hpp"

namespace dmiso::io {

using json = nlohmann::ordered_json;

struct PrecisionPolicy {
  int64_t z_prec = 8;
  int64_t zeta_lo = -8, zeta_hi = 8;  // [lo, hi)
  int64_t tauinv_prec = 16;
  int64_t ext_max = 8;
  int64_t max_iters = 32;
  uint64_t seed = 0;

  // relative precision for pivots and lattice inverses
  int64_t rel() const { return 2 * z_prec; }
};

PrecisionPolicy parse_policy(const json& j);  // missing keys keep defaults
json policy_json(const PrecisionPolicy& p);

// {"kind": "finite"|"local", "p", "a", "m", "window"?}
struct Base {
  const FiniteField* F = nullptr;
  const LocalField* L = nullptr;  // null for a finite base
  bool local() const { return L != nullptr; }
};

Base parse_base(const json& j, const PrecisionPolicy& pol);
json base_json(const Base& b);
json field_json(const FiniteField& F);
json local_json(const LocalField& L);

// finite-field elements: F_p digits, low first; an integer means its image of Z
Fq parse_fq(const json& j, const FiniteField& F);
json fq_json(const Fq& x);
json fq_json(const Fq& x, const FiniteField& F);  // after embedding

// {"coeffs": [[exp, elem], ...], "window": [n_min, n_max], "prec"?}
Laurent parse_laurent(const json& j, const LocalField& L);
json laurent_json(const Laurent& x);

// {"z_coeffs": [[exp, elem], ...], "window": [n_min, N]}, N null when exact
ZFq parse_zfq(const json& j, const FiniteField& F);
ZLoc parse_zloc(const json& j, const LocalField& L);
json zseries_json(const ZFq& x, const FiniteField& F);
json zseries_json(const ZLoc& x);

SMat<Fq> parse_mat_fq(const json& j, const FiniteField& F);
SMat<Laurent> parse_mat_loc(const json& j, const LocalField& L);
json mat_json(const SMat<Fq>& a, const FiniteField& F);
json mat_json(const SMat<Laurent>& a);

// Smallest field holding every coefficient; Fq containers serialize over it.
const FiniteField& coefficient_field(const SMat<Fq>& a);

json lattice_json(const Lattice<Fq>& t, const FiniteField& F);
json lattice_json(const Lattice<Laurent>& t);
Lattice<Fq> parse_lattice_fq(const json& j, const FiniteField& F);
Lattice<Laurent> parse_lattice_loc(const json& j, const LocalField& L);

std::string rational_str(const Rational& r);
Rational parse_rational(const json& j);

// {"field", "tau_inv_coeffs": [[n, elem], ...], "window": [lo, N]}, coefficient of tau^{-n}
json skew_laurent_json(const SkewLaurent& x, const FiniteField& F);
SkewLaurent parse_skew_laurent(const json& j, const FiniteField* base, const FiniteField& F);

// Documents. Isocrystal: {"rank", "base", "tau_matrix"}; Drinfeld: {"q",
// "base", "coeffs"}. Finite and local bases give separate alternatives.
struct IsoDoc {
  Base base;
  std::optional<Isocrystal<Fq>> fin;
  std::optional<Isocrystal<Laurent>> loc;
};
IsoDoc parse_isocrystal(const json& j, const PrecisionPolicy& pol);
json isocrystal_json(const Isocrystal<Fq>& m);  // over coefficient_field
json isocrystal_json(const Isocrystal<Laurent>& m);

struct DrinfeldDoc {
  Base base;
  std::optional<DrinfeldModule<Fq>> fin;
  std::optional<DrinfeldModule<Laurent>> loc;
};
DrinfeldDoc parse_drinfeld(const json& j, const PrecisionPolicy& pol);
json drinfeld_json(const DrinfeldModule<Fq>& e);
json drinfeld_json(const DrinfeldModule<Laurent>& e);

}  // namespace dmiso::io
