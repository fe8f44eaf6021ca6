#include "dmiso/difference_rings.hpp"

#include <algorithm>
#include <limits>

namespace dmiso {

const char* ring_tag_name(RingTag t) {
  switch (t) {
    case RingTag::AK: return "AK";
    case RingTag::BOK: return "BOK";
    case RingTag::Bbar: return "Bbar";
    case RingTag::BK: return "BK";
  }
  return "?";
}

std::optional<RingTag> parse_ring_tag(const std::string& s) {
  for (RingTag t : {RingTag::AK, RingTag::BOK, RingTag::Bbar, RingTag::BK})
    if (s == ring_tag_name(t)) return t;
  return std::nullopt;
}

bool ring_included(RingTag small, RingTag big) {
  if (small == big || big == RingTag::BK) return true;
  return small == RingTag::BOK && big == RingTag::Bbar;
}

const char* decision_name(Decision d) {
  switch (d) {
    case Decision::Yes: return "yes";
    case Decision::No: return "no";
    case Decision::Inconclusive: return "inconclusive";
  }
  return "?";
}

bool GrowthCertificate::diverges() const {
  if (ratio <= 1 || period <= 0) return false;
  // v_1 - v_0 = (ratio - 1) v_0 + offset; once negative, the gaps only grow
  return (ratio - 1) * start_valuation + offset < 0;
}

int64_t GrowthCertificate::predicted(int64_t j) const {
  constexpr int64_t lim = std::numeric_limits<int64_t>::min() / 8;
  int64_t v = start_valuation;
  for (int64_t i = 0; i < j; ++i) {
    if (v < lim / std::max<int64_t>(ratio, 1)) return lim;
    v = ratio * v + offset;
  }
  return v;
}

bool growth_consistent(const ZLoc& x, const GrowthCertificate& g) {
  if (g.period <= 0) return false;
  for (int64_t j = 0;; ++j) {
    int64_t n = g.start + j * g.period;
    if (n >= x.prec() || n >= x.top()) {
      // the first point must be covered
      return j > 0;
    }
    auto v = x.coeff(n).valuation_opt();
    if (!v || *v != g.predicted(j)) return false;
  }
}

namespace {

Membership base(RingTag tag) {
  Membership m;
  m.tag = tag;
  return m;
}

}  // namespace

Membership membership(const ZLoc& x, RingTag tag, const GrowthCertificate* growth) {
  Membership m = base(tag);
  if (tag == RingTag::BK) {
    m.decision = Decision::Yes;
    m.reason = "every truncated Laurent series lies in B_K";
    return m;
  }
  if (tag == RingTag::AK) {
    if (!x.is_zero() && x.lo() < 0) {
      m.decision = Decision::No;
      m.witness_exponent = x.lo();
      m.witness_valuation = x.leading().valuation_opt();
      m.reason = "nonzero coefficient at a negative power of z";
    } else if (x.prec() <= 0) {
      m.reason = "negative powers of z are not known";
    } else {
      m.decision = Decision::Yes;
      m.reason = "no negative powers of z";
    }
    return m;
  }
  auto prof = content_profile(x);
  std::optional<int64_t> low;
  for (auto [n, v] : prof)
    if (!low || v < *low) low = v;
  if (tag == RingTag::BOK) {
    for (auto [n, v] : prof)
      if (v < 0) {
        m.decision = Decision::No;
        m.witness_exponent = n;
        m.witness_valuation = v;
        m.reason = "coefficient with negative valuation";
        return m;
      }
    m.decision = Decision::Yes;
    m.lower_bound = low;
    m.reason = "all stored coefficients integral";
    return m;
  }
  // Bbar
  m.lower_bound = low;
  if (prof.size() >= 3) {
    auto it = prof.end();
    int64_t v3 = (--it)->second, v2 = (--it)->second, v1 = (--it)->second;
    m.decreasing_trend = v1 > v2 && v2 > v3;
  }
  if (growth) {
    if (!growth_consistent(x, *growth)) fail(ErrorKind::Input, "growth certificate does not match the series");
    if (growth->diverges()) {
      m.decision = Decision::No;
      m.witness_exponent = growth->start;
      m.witness_valuation = growth->start_valuation;
      m.reason = "certified geometric decrease of coefficient valuations";
      return m;
    }
  }
  if (m.decreasing_trend) {
    m.reason = "valuations fall across the window but no growth certificate was supplied";
    return m;
  }
  m.decision = Decision::Yes;
  m.reason = "valuations bounded below in the window";
  return m;
}

Membership membership(const ZFq& x, RingTag tag) {
  require_input(tag == RingTag::AK || tag == RingTag::BK, std::string("ring ") + ring_tag_name(tag) +
                                                            " needs a valued base field");
  Membership m = base(tag);
  if (tag == RingTag::BK) {
    m.decision = Decision::Yes;
    return m;
  }
  if (!x.is_zero() && x.lo() < 0) {
    m.decision = Decision::No;
    m.witness_exponent = x.lo();
    m.reason = "nonzero coefficient at a negative power of z";
  } else if (x.prec() <= 0) {
    m.reason = "negative powers of z are not known";
  } else {
    m.decision = Decision::Yes;
  }
  return m;
}

std::map<int64_t, int64_t> content_profile(const ZLoc& x) {
  std::map<int64_t, int64_t> out;
  for (size_t i = 0; i < x.coeffs().size(); ++i) {
    auto v = x.coeffs()[i].valuation_opt();
    if (v) out[x.lo() + (int64_t)i] = *v;
  }
  return out;
}

std::optional<ZLoc> sigma_preimage(const ZLoc& x, int64_t* wit_z, int64_t* wit_zeta) {
  std::vector<Laurent> c;
  for (size_t i = 0; i < x.coeffs().size(); ++i) {
    int64_t w = 0;
    auto r = x.coeffs()[i].qth_root(&w);
    if (!r) {
      if (wit_z) *wit_z = x.lo() + (int64_t)i;
      if (wit_zeta) *wit_zeta = w;
      return std::nullopt;
    }
    c.push_back(*r);
  }
  return ZLoc(x.ctx(), x.lo(), std::move(c), x.prec());
}

}  // namespace dmiso
