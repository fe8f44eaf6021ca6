#include "dmiso/drinfeld.hpp"

#include <algorithm>

namespace dmiso {

namespace {

int64_t ipow(int64_t b, int64_t e) {
  int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool is_integer(const Rational& x) { return x.denominator() == 1; }

}  // namespace

const char* reduction_verdict_name(ReductionVerdict v) {
  switch (v) {
    case ReductionVerdict::Good: return "Good";
    case ReductionVerdict::Stable: return "Stable";
    case ReductionVerdict::PotentiallyGood: return "PotentiallyGood";
    case ReductionVerdict::BadNotPotentiallyGood: return "BadNotPotentiallyGood";
  }
  return "?";
}

template <class K>
DrinfeldModule<K> make_drinfeld(typename K::Ctx ctx, const std::vector<K>& coeffs) {
  require_input(!coeffs.empty(), "phi_t needs at least one coefficient");
  SkewPoly<K> phi(ctx, coeffs);
  require_input(phi.degree() >= 1, "phi_t must have positive tau-degree");
  require_input(!phi.coeff(phi.degree()).is_zero(), "top coefficient vanishes to precision");
  return DrinfeldModule<K>{phi};
}

template <class K>
Motive<K> motive(const DrinfeldModule<K>& e) {
  using S = ZSeries<K>;
  const int64_t r = e.rank();
  auto ctx = e.ctx();
  K inv_top = e.g(r).inv();
  SMat<K> a((size_t)r, (size_t)r, S::zero(ctx));
  for (int64_t i = 0; i + 1 < r; ++i) a((size_t)i + 1, (size_t)i) = S::one(ctx);
  // tau^r = g_r^{-1} (t - g_0 - g_1 tau - ... - g_{r-1} tau^{r-1})
  a(0, (size_t)r - 1) = S(ctx, 0, {-(e.g(0) * inv_top), inv_top}, kExact);
  for (int64_t i = 1; i < r; ++i) a((size_t)i, (size_t)r - 1) = S::constant(-(e.g(i) * inv_top));

  Motive<K> out{a, -1, std::nullopt, false};
  // K[t]^r / A K[t]^r has dimension deg det A, and t acts with char poly det A
  S d = det(a);
  auto lo = d.order_opt();
  if (lo && *lo >= 0) {
    out.coker_dim = d.top() - 1;
    if (out.coker_dim == 1) {
      out.coker_t = -(d.coeff(0) * d.coeff(1).inv());
      out.coker_ok = *out.coker_t == e.g(0);
    }
  }
  return out;
}

template <class K>
Isocrystal<K> m_infinity(const DrinfeldModule<K>& e) {
  auto mot = motive(e);
  SMat<K> a = mot.tau;
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) {
      const auto& x = a(i, j);
      if (x.is_zero()) continue;
      invariant(x.lo() >= 0 && x.z_exact(), "motive entries are polynomials in t");
      std::vector<K> c(x.coeffs().rbegin(), x.coeffs().rend());
      a(i, j) = ZSeries<K>(e.ctx(), -(x.top() - 1), c, kExact);
    }
  return Isocrystal<K>{a};
}

template <class K>
DrinfeldModule<K> conjugate_by(const DrinfeldModule<K>& e, const K& u) {
  K ui = u.inv();
  std::vector<K> c;
  for (int64_t i = 0; i <= e.rank(); ++i) c.push_back(e.g(i) * u * ui.sigma_pow(i));
  return make_drinfeld<K>(e.ctx(), c);
}

ReductionReport reduction_type(const DrinfeldModule<Laurent>& e) {
  const int64_t r = e.rank();
  const int64_t q = (int64_t)e.ctx()->q();
  ReductionReport rep;
  for (int64_t i = 0; i <= r; ++i) {
    const Laurent g = e.g(i);
    if (g.is_exact_zero()) {
      rep.valuations.push_back(std::nullopt);
      continue;
    }
    auto v = g.valuation_opt();
    if (!v) fail(ErrorKind::ZeroToPrecision, "coefficient g_" + std::to_string(i) + " vanishes to precision");
    rep.valuations.push_back(*v);
  }
  require_input(!rep.valuations[0] || *rep.valuations[0] >= 0, "iota(t) is not integral");
  bool first = true;
  for (int64_t i = 1; i <= r; ++i) {
    if (!rep.valuations[(size_t)i]) continue;
    Rational c(*rep.valuations[(size_t)i], ipow(q, i) - 1);
    if (first || c < rep.m) rep.m = c;
    first = false;
  }
  for (int64_t i = 1; i <= r; ++i)
    if (rep.valuations[(size_t)i] && Rational(*rep.valuations[(size_t)i], ipow(q, i) - 1) == rep.m) rep.stable_rank = i;
  rep.e = rep.m.denominator();
  for (int64_t i = 0; i <= r; ++i) {
    if (!rep.valuations[(size_t)i]) rep.scaled.push_back(std::nullopt);
    else rep.scaled.push_back(Rational(*rep.valuations[(size_t)i]) - rep.m * Rational(ipow(q, i) - 1));
  }
  if (rep.stable_rank < r) rep.verdict = ReductionVerdict::Stable;
  else rep.verdict = is_integer(rep.m) ? ReductionVerdict::Good : ReductionVerdict::PotentiallyGood;
  return rep;
}

bool check_reduction(const DrinfeldModule<Laurent>& e, const ReductionReport& rep) {
  const int64_t r = e.rank();
  const int64_t q = (int64_t)e.ctx()->q();
  if ((int64_t)rep.scaled.size() != r + 1) return false;
  for (int64_t i = 0; i <= r; ++i) {
    const Laurent g = e.g(i);
    auto v = g.valuation_opt();
    if (!v) {
      if (rep.scaled[(size_t)i]) return false;
      continue;
    }
    Rational s = Rational(*v) - rep.m * Rational(ipow(q, i) - 1);
    if (!rep.scaled[(size_t)i] || *rep.scaled[(size_t)i] != s) return false;
    if (i >= 1 && s < Rational(0)) return false;
    if (i > rep.stable_rank && s <= Rational(0)) return false;
  }
  if (!rep.scaled[(size_t)rep.stable_rank] || *rep.scaled[(size_t)rep.stable_rank] != Rational(0)) return false;
  if (rep.e != rep.m.denominator()) return false;
  switch (rep.verdict) {
    case ReductionVerdict::Good: return rep.stable_rank == r && rep.e == 1;
    case ReductionVerdict::PotentiallyGood: return rep.stable_rank == r && rep.e > 1;
    case ReductionVerdict::Stable: return rep.stable_rank < r;
    case ReductionVerdict::BadNotPotentiallyGood: return false;
  }
  return false;
}

DrinfeldModule<Laurent> ramify(const DrinfeldModule<Laurent>& e, int64_t ram) {
  require_input(ram >= 1, "ramification index must be positive");
  const LocalField& L = *e.ctx();
  const LocalField& T = LocalField::get(L.residue_field(), L.n_min() * ram, L.n_max() * ram);
  std::vector<Laurent> c;
  for (int64_t i = 0; i <= e.rank(); ++i) c.push_back(e.g(i).ramify(T, ram));
  return make_drinfeld<Laurent>(&T, c);
}

DrinfeldModule<Laurent> widen_for_sigma(const DrinfeldModule<Laurent>& e) {
  const LocalField& L = *e.ctx();
  auto a = m_infinity(e).tau;
  int64_t low = 0;
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j)
      for (const auto& c : a(i, j).coeffs())
        if (auto v = c.valuation_opt()) low = std::min(low, *v);
  if (low == 0) return e;
  int64_t need = 4 * low * ipow((int64_t)L.q(), e.rank());
  if (need >= L.n_min()) return e;
  const LocalField& W = LocalField::get(L.residue_field(), need, L.n_max());
  std::vector<Laurent> c;
  for (int64_t i = 0; i <= e.rank(); ++i) c.push_back(e.g(i).ramify(W, 1));
  return make_drinfeld<Laurent>(&W, c);
}

namespace {

// g_i u^{1 - q^i} with u = zeta^m; high coefficients may leave the window
std::vector<Laurent> scaled_coeffs(const DrinfeldModule<Laurent>& e, int64_t m) {
  Laurent u = Laurent::monomial(e.ctx(), 1, m), ui = Laurent::monomial(e.ctx(), 1, -m);
  std::vector<Laurent> c;
  for (int64_t i = 0; i <= e.rank(); ++i) c.push_back(e.g(i) * u * ui.sigma_pow(i));
  return c;
}

// g_0..g_keep mod zeta
DrinfeldModule<Fq> reduce(const std::vector<Laurent>& g, int64_t keep) {
  const FiniteField& k = g[0].ctx()->residue_field();
  std::vector<Fq> c;
  for (int64_t i = 0; i <= keep; ++i) c.push_back(g[(size_t)i].residue());
  return make_drinfeld<Fq>(&k, c);
}

}  // namespace

GoodModel good_model(const DrinfeldModule<Laurent>& e) {
  auto rep = reduction_type(e);
  require_input(rep.verdict == ReductionVerdict::Good, "good_model needs a Good verdict");
  const int64_t m = rep.m.numerator();
  GoodModel out{make_drinfeld<Laurent>(e.ctx(), scaled_coeffs(e, m)), Laurent::monomial(e.ctx(), 1, m), {}, {}, {}, false};
  out.model = m_infinity(out.scaled).tau;
  out.check = model_verify(out.model);
  invariant(out.check.decision == Decision::Yes, "scaled motive failed model verification: " + out.check.failed);
  out.reduction = reduce(out.scaled.phi.coeffs(), e.rank());
  // the isomorphism m -> m u carries tau^i to u^{q^i} tau^i
  const size_t r = (size_t)e.rank();
  SMat<Laurent> b(r, r, ZLoc::zero(e.ctx())), bi = b;
  Laurent ui = out.u.inv();
  for (size_t i = 0; i < r; ++i) {
    b(i, i) = ZLoc::constant(out.u.sigma_pow((int64_t)i));
    bi(i, i) = ZLoc::constant(ui.sigma_pow((int64_t)i));
  }
  SMat<Laurent> a = m_infinity(e).tau;
  out.base_change_ok = mat_equal(out.model, mat_mul(mat_mul(bi, a), sigma_mat<Laurent>(b, 1)));
  invariant(out.base_change_ok, "good model is not a base change of the motive");
  return out;
}

CritReport crit_crosscheck(const DrinfeldModule<Laurent>& e, int64_t max_iters, int64_t rel) {
  CritReport out;
  out.reduction = reduction_type(e);
  const auto& rep = out.reduction;
  switch (rep.verdict) {
    case ReductionVerdict::Good:
      out.model = good_model(e);
      out.agree = out.model->check.decision == Decision::Yes && out.model->base_change_ok;
      out.detail = "good model over R((z)) verified and matches M_inf after base change";
      break;
    case ReductionVerdict::PotentiallyGood: {
      out.ramification = rep.e;
      auto ext = ramify(e, rep.e);
      auto rep2 = reduction_type(ext);
      if (rep2.verdict != ReductionVerdict::Good) {
        out.detail = std::string("ramified module is ") + reduction_verdict_name(rep2.verdict);
        break;
      }
      out.model = good_model(ext);
      out.agree = out.model->check.decision == Decision::Yes && out.model->base_change_ok;
      out.detail = "good model after ramification of index " + std::to_string(rep.e);
      break;
    }
    case ReductionVerdict::Stable:
    case ReductionVerdict::BadNotPotentiallyGood: {
      StableObstruction ob;
      ob.ramification = rep.e;
      auto ext = rep.e > 1 ? ramify(e, rep.e) : e;
      int64_t m = (rep.m * Rational(rep.e)).numerator();
      ob.reduction = reduce(scaled_coeffs(ext, m), rep.stable_rank);
      const int64_t r = e.rank(), s = rep.stable_rank;
      ob.generic = purity_check(m_infinity(widen_for_sigma(e)), -1, r, max_iters, rel);
      auto special = m_infinity(ob.reduction);
      ob.special = purity_check(special, -1, s, max_iters, rel);
      ob.special_slopes = slopes_finiteK(special);
      ob.slope0_rank = r - s;
      ob.incompatible = ob.generic.verdict == PurityVerdict::Certified && ob.special.verdict == PurityVerdict::Certified &&
                        ob.special_slopes == std::vector<Rational>((size_t)s, Rational(-1, s)) && s != r;
      out.agree = ob.incompatible;
      out.detail = "M_inf is pure of slope -1/" + std::to_string(r) + " but the stable reduction has rank " +
                   std::to_string(s) + " with slope -1/" + std::to_string(s) + " and a slope-0 part of rank " +
                   std::to_string(r - s);
      out.obstruction = std::move(ob);
      break;
    }
  }
  return out;
}

template DrinfeldModule<Fq> make_drinfeld<Fq>(const FiniteField*, const std::vector<Fq>&);
template DrinfeldModule<Laurent> make_drinfeld<Laurent>(const LocalField*, const std::vector<Laurent>&);
template Motive<Fq> motive<Fq>(const DrinfeldModule<Fq>&);
template Motive<Laurent> motive<Laurent>(const DrinfeldModule<Laurent>&);
template Isocrystal<Fq> m_infinity<Fq>(const DrinfeldModule<Fq>&);
template Isocrystal<Laurent> m_infinity<Laurent>(const DrinfeldModule<Laurent>&);
template DrinfeldModule<Fq> conjugate_by<Fq>(const DrinfeldModule<Fq>&, const Fq&);
template DrinfeldModule<Laurent> conjugate_by<Laurent>(const DrinfeldModule<Laurent>&, const Laurent&);

}  // namespace dmiso
