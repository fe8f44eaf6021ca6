#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "dmiso/zseries.hpp"

namespace dmiso {

// A_K = K[[z]], B_{O_K} = R((z)), Bbar = K (x)_R R((z)), B_K = K((z)).
enum class RingTag { AK, BOK, Bbar, BK };

const char* ring_tag_name(RingTag t);
std::optional<RingTag> parse_ring_tag(const std::string& s);
// AK <= BK and BOK <= Bbar <= BK.
bool ring_included(RingTag small, RingTag big);

enum class Decision { Yes, No, Inconclusive };
const char* decision_name(Decision d);

// Along n = start + j*period the coefficient valuations obey
// v_{j+1} = ratio * v_j + offset, with v_0 = start_valuation.
struct GrowthCertificate {
  int64_t start = 0;
  int64_t period = 1;
  int64_t ratio = 1;
  int64_t offset = 0;
  int64_t start_valuation = 0;

  // True when the recursion forces v_j -> -infinity.
  bool diverges() const;
  int64_t predicted(int64_t j) const;  // v_j, saturating
};

struct Membership {
  RingTag tag = RingTag::BK;
  Decision decision = Decision::Inconclusive;
  std::optional<int64_t> witness_exponent;   // offending z-exponent
  std::optional<int64_t> witness_valuation;  // its coefficient valuation
  std::optional<int64_t> lower_bound;        // Bbar: least valuation seen
  bool decreasing_trend = false;             // Bbar: tail valuations strictly falling
  std::string reason;
};

// For Bbar a "no" requires a growth certificate consistent with x; without one
// a falling tail yields Inconclusive.
Membership membership(const ZLoc& x, RingTag tag, const GrowthCertificate* growth = nullptr);
// Finite base: only AK and BK are meaningful (Input error otherwise).
Membership membership(const ZFq& x, RingTag tag);

// z-exponent -> zeta-valuation of each stored nonzero coefficient.
std::map<int64_t, int64_t> content_profile(const ZLoc& x);

// Checks the certificate against every coefficient of x it covers.
bool growth_consistent(const ZLoc& x, const GrowthCertificate& g);

// y with sigma(y) = x, or nullopt with the (z, zeta) exponent of a
// coefficient that has no q-th root.
std::optional<ZLoc> sigma_preimage(const ZLoc& x, int64_t* wit_z = nullptr, int64_t* wit_zeta = nullptr);

}  // namespace dmiso
