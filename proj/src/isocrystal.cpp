#include "dmiso/isocrystal.hpp"

#include <algorithm>

namespace dmiso {

const char* purity_verdict_name(PurityVerdict v) {
  switch (v) {
    case PurityVerdict::Certified: return "Certified";
    case PurityVerdict::NotPureAt: return "NotPureAt";
    case PurityVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

template <class K>
Isocrystal<K> make_isocrystal(const SMat<K>& a) {
  require_input(a.rows() > 0 && a.rows() == a.cols(), "tau matrix must be square and nonempty");
  require_input(det(a).order_opt().has_value(), "tau matrix is not invertible to precision");
  return Isocrystal<K>{a};
}

template <class K>
Isocrystal<K> simple_pure(typename K::Ctx ctx, int64_t s, int64_t r) {
  require_input(r > 0, "rank must be positive");
  SMat<K> a(r, r, ZSeries<K>::zero(ctx));
  for (int64_t i = 0; i + 1 < r; ++i) a(i + 1, i) = ZSeries<K>::one(ctx);
  a(0, r - 1) = ZSeries<K>::z_power(ctx, s);
  return Isocrystal<K>{a};
}

template <class K>
Isocrystal<K> tensor(const Isocrystal<K>& m, const Isocrystal<K>& n) {
  return Isocrystal<K>{kron(m.tau, n.tau)};
}

template <class K>
Isocrystal<K> dual(const Isocrystal<K>& m, int64_t rel) {
  return Isocrystal<K>{transpose(mat_inverse<K>(m.tau, rel))};
}

template <class K>
Isocrystal<K> ihom(const Isocrystal<K>& m, const Isocrystal<K>& n, int64_t rel) {
  return tensor(dual(m, rel), n);
}

template <class K>
Isocrystal<K> direct_sum(const Isocrystal<K>& m, const Isocrystal<K>& n) {
  size_t a = m.rank(), b = n.rank();
  SMat<K> t(a + b, a + b, ZSeries<K>::zero(m.ctx()));
  for (size_t i = 0; i < a; ++i)
    for (size_t j = 0; j < a; ++j) t(i, j) = m.tau(i, j);
  for (size_t i = 0; i < b; ++i)
    for (size_t j = 0; j < b; ++j) t(a + i, a + j) = n.tau(i, j);
  return Isocrystal<K>{t};
}

template <class K>
PurityResult<K> purity_check(const Isocrystal<K>& m, int64_t s, int64_t r, int64_t max_iters, int64_t rel) {
  require_input(r > 0, "purity denominator must be positive");
  PurityResult<K> out;
  out.s = s;
  out.r = r;
  const int64_t n = (int64_t)m.rank();
  try {
    auto dv = det(m.tau).order_opt();
    if (!dv) {
      out.reason = "determinant vanishes to precision";
      return out;
    }
    // a pure isocrystal of slope s/r has r v(det A) = n s
    if (r * *dv != n * s) {
      out.verdict = PurityVerdict::NotPureAt;
      out.reason = "r*v(det A) = " + std::to_string(r * *dv) + " differs from n*s = " + std::to_string(n * s);
      return out;
    }
    Lattice<K> t = standard_lattice<K>(m.ctx(), m.rank());
    const int64_t start = t.index();
    int64_t streak = 0;
    for (int64_t it = 1; it <= max_iters; ++it) {
      out.iterations = it;
      Lattice<K> img = tau_image<K>(m.tau, t, r, rel);
      Lattice<K> next = lattice_sum<K>(t, lattice_shift<K>(img, -s), rel);
      if (next == t) {
        if (img == lattice_shift<K>(t, s)) {
          out.verdict = PurityVerdict::Certified;
          out.lattice = t;
          out.reason = "<tau^r T> = z^s T";
        } else {
          out.reason = "iteration stabilised without equality";
        }
        return out;
      }
      streak = next.index() < t.index() ? streak + 1 : 0;
      t = next;
      if (streak >= r + 1 && start - t.index() > n * rel) {
        out.verdict = PurityVerdict::NotPureAt;
        out.heuristic = true;
        out.reason = "lattice index fell for " + std::to_string(streak) + " consecutive steps, total " +
                     std::to_string(start - t.index()) + " (divergence rule)";
        return out;
      }
    }
    out.reason = "no fixed point within the iteration budget";
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::PrecisionLoss && e.kind() != ErrorKind::ZeroToPrecision) throw;
    out.reason = std::string("precision exhausted: ") + e.what();
  }
  return out;
}

template <class K>
bool verify_purity(const Isocrystal<K>& m, int64_t s, int64_t r, const Lattice<K>& t, int64_t rel) {
  Lattice<K> canon = hermite<K>(t.basis, rel);
  if (canon != t) return false;
  return tau_image<K>(m.tau, canon, r, rel) == lattice_shift<K>(canon, s);
}

std::vector<Rational> slopes_finiteK(const Isocrystal<Fq>& m) {
  const FiniteField* f = m.ctx();
  for (size_t i = 0; i < m.rank(); ++i)
    for (size_t j = 0; j < m.rank(); ++j) {
      f = &join_fields(*f, *m.tau(i, j).ctx());
      for (const auto& c : m.tau(i, j).coeffs()) f = &join_fields(*f, c.field());
    }
  const int64_t deg = f->m();
  auto cp = charpoly(tau_power_matrix<Fq>(m.tau, deg));
  const size_t n = cp.size() - 1;
  // known points (i, v_i); unknown ones carry a lower bound
  std::vector<std::pair<int64_t, int64_t>> pts;
  std::vector<std::pair<int64_t, int64_t>> unknown;
  for (size_t i = 0; i <= n; ++i) {
    if (cp[i].is_exact_zero()) continue;
    if (auto v = cp[i].order_opt()) pts.push_back({(int64_t)i, *v});
    else unknown.push_back({(int64_t)i, cp[i].prec()});
  }
  if (pts.empty() || pts.front().first != 0) fail(ErrorKind::PrecisionLoss, "constant term of the characteristic polynomial is not known");
  // lower convex hull
  std::vector<std::pair<int64_t, int64_t>> hull;
  for (auto p : pts) {
    while (hull.size() >= 2) {
      auto [x1, y1] = hull[hull.size() - 2];
      auto [x2, y2] = hull.back();
      // drop the middle point if it lies on or above the chord
      if ((y2 - y1) * (p.first - x1) >= (p.second - y1) * (x2 - x1)) hull.pop_back();
      else break;
    }
    hull.push_back(p);
  }
  auto hull_at = [&](int64_t x) {
    for (size_t k = 0; k + 1 < hull.size(); ++k)
      if (hull[k].first <= x && x <= hull[k + 1].first)
        return Rational(hull[k].second) + Rational(hull[k + 1].second - hull[k].second, hull[k + 1].first - hull[k].first) *
                                              Rational(x - hull[k].first);
    return Rational(hull.back().second);
  };
  for (auto [i, bound] : unknown)
    if (Rational(bound) < hull_at(i)) fail(ErrorKind::PrecisionLoss, "Newton polygon vertex not settled in the window");
  std::vector<Rational> out;
  for (size_t k = 0; k + 1 < hull.size(); ++k) {
    int64_t len = hull[k + 1].first - hull[k].first;
    Rational root_val(hull[k].second - hull[k + 1].second, len);
    for (int64_t j = 0; j < len; ++j) out.push_back(root_val / Rational(deg));
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <class K>
LatticeChain<K> lattice_chain(const Isocrystal<K>& m, const Lattice<K>& t, int64_t r, int64_t rel) {
  LatticeChain<K> out;
  Lattice<K> bar = t;
  for (int64_t i = 1; i < r; ++i) bar = lattice_sum<K>(bar, tau_image<K>(m.tau, t, i, rel), rel);
  out.lattices.push_back(bar);
  for (int64_t i = 0; i < r; ++i) out.lattices.push_back(tau_image<K>(m.tau, out.lattices.back(), 1, rel));
  bool ok = out.lattices.back() == lattice_shift<K>(bar, 1);
  for (int64_t i = 0; i < r; ++i) {
    const auto& a = out.lattices[(size_t)i];
    const auto& b = out.lattices[(size_t)i + 1];
    out.steps.push_back(b.index() - a.index());
    ok = ok && out.steps.back() == 1 && lattice_contains<K>(a, b, rel);
  }
  out.verified = ok;
  return out;
}

template <class K>
Pure0Lattice<K> pure0_lattice(const Isocrystal<K>& m, const Lattice<K>& t, int64_t r, int64_t rel) {
  SMat<K> gens = t.basis;
  for (int64_t i = 1; i < r; ++i) gens = hcat<K>(gens, mat_mul(tau_power_matrix<K>(m.tau, i), sigma_mat<K>(t.basis, i)));
  Lattice<K> tp = hermite<K>(gens, rel);
  Pure0Lattice<K> out{tp, SMat<K>(), false};
  SMat<K> binv = triangular_inverse<K>(tp);
  out.tau_matrix = mat_mul(mat_mul(binv, m.tau), sigma_mat<K>(tp.basis, 1));
  bool ok = tau_image<K>(m.tau, tp, 1, rel) == tp;
  for (size_t i = 0; i < m.rank() && ok; ++i)
    for (size_t j = 0; j < m.rank() && ok; ++j) {
      const auto& e = out.tau_matrix(i, j);
      if (!e.is_zero() && e.order() < 0) ok = false;
    }
  if (ok) {
    auto d = det(out.tau_matrix).order_opt();
    ok = d && *d == 0;
  }
  out.verified = ok;
  return out;
}

SMat<Fq> reduce_mod_zeta(const SMat<Laurent>& a) {
  const FiniteField& k = a(0, 0).ctx()->residue_field();
  SMat<Fq> out(a.rows(), a.cols(), ZFq::zero(&k));
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) {
      const ZLoc& x = a(i, j);
      std::vector<Fq> c;
      for (const auto& e : x.coeffs()) c.push_back(e.residue());
      out(i, j) = ZFq(&k, x.lo(), c, x.prec());
    }
  return out;
}

ModelCheck model_verify(const SMat<Laurent>& a) {
  ModelCheck out;
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) {
      auto mb = membership(a(i, j), RingTag::BOK);
      if (mb.decision != Decision::Yes) {
        out.decision = mb.decision;
        out.failed = "entry not in R((z))";
        out.entry = {i, j};
        return out;
      }
    }
  try {
    ZLoc d = det(a);
    if (d.is_zero()) {
      out.failed = "determinant vanishes to precision";
      return out;
    }
    auto lv = d.leading().valuation_opt();
    if (!lv) {
      out.failed = "leading coefficient of the determinant vanishes to zeta-precision";
      return out;
    }
    if (*lv != 0) {
      out.decision = Decision::No;
      out.failed = "determinant is not a unit of R((z)): leading coefficient has valuation " + std::to_string(*lv);
      return out;
    }
    SMat<Fq> red = reduce_mod_zeta(a);
    if (!det(red).order_opt()) {
      out.decision = red(0, 0).prec() >= kExact ? Decision::No : Decision::Inconclusive;
      out.failed = "reduction mod zeta is singular";
      return out;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::PrecisionLoss && e.kind() != ErrorKind::ZeroToPrecision) throw;
    out.failed = std::string("precision exhausted: ") + e.what();
    return out;
  }
  out.decision = Decision::Yes;
  return out;
}

#define DMISO_ISO_INST(K)                                                                            \
  template Isocrystal<K> make_isocrystal<K>(const SMat<K>&);                                         \
  template Isocrystal<K> simple_pure<K>(typename K::Ctx, int64_t, int64_t);                          \
  template Isocrystal<K> tensor<K>(const Isocrystal<K>&, const Isocrystal<K>&);                      \
  template Isocrystal<K> dual<K>(const Isocrystal<K>&, int64_t);                                     \
  template Isocrystal<K> ihom<K>(const Isocrystal<K>&, const Isocrystal<K>&, int64_t);               \
  template Isocrystal<K> direct_sum<K>(const Isocrystal<K>&, const Isocrystal<K>&);                  \
  template PurityResult<K> purity_check<K>(const Isocrystal<K>&, int64_t, int64_t, int64_t, int64_t); \
  template bool verify_purity<K>(const Isocrystal<K>&, int64_t, int64_t, const Lattice<K>&, int64_t); \
  template LatticeChain<K> lattice_chain<K>(const Isocrystal<K>&, const Lattice<K>&, int64_t, int64_t); \
  template Pure0Lattice<K> pure0_lattice<K>(const Isocrystal<K>&, const Lattice<K>&, int64_t, int64_t);

DMISO_ISO_INST(Fq)
DMISO_ISO_INST(Laurent)

}  // namespace dmiso
