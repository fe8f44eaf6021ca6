#include "dmiso/tate_weil.hpp"

#include "dmiso/fp_linalg.hpp"

namespace dmiso {

namespace {

const FiniteField& matrix_field(const SMat<Fq>& a) {
  const FiniteField* f = a(0, 0).ctx();
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) {
      f = &join_fields(*f, *a(i, j).ctx());
      for (const auto& c : a(i, j).coeffs()) f = &join_fields(*f, c.field());
    }
  return *f;
}

// tau-stable lattice and the integral matrix of tau on it
Pure0Lattice<Fq> slope0_model(const Isocrystal<Fq>& m, int64_t max_iters, int64_t rel) {
  auto p = purity_check(m, 0, 1, max_iters, rel);
  if (p.verdict == PurityVerdict::NotPureAt) fail(ErrorKind::Input, "isocrystal is not pure of slope 0: " + p.reason);
  if (p.verdict != PurityVerdict::Certified) fail(ErrorKind::Inconclusive, "slope 0 not certified: " + p.reason);
  auto q = pure0_lattice(m, *p.lattice, 1, rel);
  invariant(q.verified, "slope-0 lattice failed verification");
  return q;
}

// y -> sigma^{-r}(y) - beta y on F as an F_p-matrix
FpMatrix twisted_map(const FiniteField& F, int64_t r, const Fq& beta) {
  FpMatrix M(F.p(), F.n(), F.n());
  Fq b = beta.embed(F);
  for (uint32_t j = 0; j < F.n(); ++j) {
    std::vector<uint32_t> d(F.n(), 0);
    d[j] = 1;
    Fq y(F, F.pack(d));
    M.set_col(j, F.digits((y.frob(-r) - b * y).raw()));
  }
  return M;
}

std::optional<Fq> least_kernel_element(const FiniteField& F, const FpMatrix& M) {
  auto ker = M.kernel();
  if (ker.empty()) return std::nullopt;
  // enumerate the F_p-span; kernels here have dimension a r at most
  const uint32_t p = F.p();
  uint64_t best = 0;
  std::vector<uint32_t> coef(ker.size(), 0);
  while (true) {
    size_t i = 0;
    while (i < coef.size() && ++coef[i] == p) coef[i++] = 0;
    if (i == coef.size()) break;
    std::vector<uint32_t> v(F.n(), 0);
    for (size_t k = 0; k < ker.size(); ++k)
      for (size_t d = 0; d < F.n(); ++d) v[d] = (v[d] + coef[k] * ker[k][d]) % p;
    uint64_t raw = F.pack(v);
    if (raw != 0 && (best == 0 || raw < best)) best = raw;
  }
  return Fq(F, best);
}

// largest e with F_{q^{deg e}} inside the packed representation
uint32_t packable(const FiniteField& f, uint32_t deg, uint32_t e_max) {
  uint32_t e = 1;
  while (e < e_max && FiniteField::fits(f.p(), (uint64_t)f.a() * deg * (e + 1))) ++e;
  return e;
}

}  // namespace

TateSlope0 tate_slope0(const Isocrystal<Fq>& m, int64_t N, uint32_t e_max, int64_t max_iters, int64_t rel) {
  auto q = slope0_model(m, max_iters, rel);
  const FiniteField& K = matrix_field(m.tau);
  const uint32_t deg = K.m();
  e_max = packable(K, deg, e_max);
  for (uint32_t e = 1; e <= e_max; ++e) {
    auto V = tau_fixed_space(q.tau_matrix, N, e);
    if (!V.free || V.module_rank != m.rank()) continue;
    TateSlope0 out{q.lattice, q.tau_matrix, e, V, frobenius_action(V, deg), m.rank()};
    return out;
  }
  fail(ErrorKind::ExtensionExhausted, "no free fixed space of full rank up to extension degree " + std::to_string(e_max));
}

FormalMotive formal_motive(const DrinfeldModule<Fq>& e, int64_t tau_prec) {
  FormalMotive out;
  out.rank = e.rank();
  out.phi_t = SkewLaurent::from_poly(e.phi);
  out.phi_z = out.phi_t.inverse(tau_prec);
  out.valuation = out.phi_z.v_tau_inv();
  const FiniteField* base = e.ctx();
  SkewLaurent up = SkewLaurent::one(base), down = up;
  out.table.push_back({0, up});
  for (int64_t k = 1; k <= 2; ++k) {
    up = up * out.phi_t;
    down = down * out.phi_z;
    out.table.push_back({k, up});
    out.table.insert(out.table.begin(), {-k, down});
  }
  return out;
}

Isocrystal<Fq> formal_readback(const DrinfeldModule<Fq>& e, int64_t z_prec) {
  const int64_t r = e.rank();
  const FiniteField* base = e.ctx();
  const int64_t limit = r * z_prec;
  SkewLaurent phi_t = SkewLaurent::from_poly(e.phi);
  SkewLaurent phi_z = phi_t.inverse(limit + 2 * r);
  // powers phi(z)^k for k = -1 .. z_prec
  std::vector<SkewLaurent> pw{phi_t, SkewLaurent::one(base)};
  for (int64_t k = 1; k <= z_prec + 1; ++k) pw.push_back(pw.back() * phi_z);
  auto power = [&](int64_t k) { return pw[(size_t)(k + 1)]; };

  // tau = sum_j a_j(z) tau^{-j}: peel off leading terms
  std::vector<std::vector<Fq>> a((size_t)r, std::vector<Fq>((size_t)z_prec + 1, Fq::zero(base)));
  SkewLaurent x = SkewLaurent::tau_inv_power(base, -1);
  while (!x.is_zero()) {
    int64_t n = x.v_tau_inv();
    if (n >= limit) break;
    int64_t j = ((n % r) + r) % r, k = (n - j) / r;
    invariant(k >= -1 && k <= z_prec, "readback exponent out of range");
    SkewLaurent basis = SkewLaurent::tau_inv_power(base, j) * power(k);
    Fq c = x.coeff(n) * basis.coeff(n).inv();
    a[(size_t)j][(size_t)(k + 1)] += c;
    x = x - SkewLaurent::constant(c) * basis;
  }
  const FiniteField& F = [&]() -> const FiniteField& {
    const FiniteField* f = base;
    for (const auto& col : a)
      for (const auto& c : col) f = &join_fields(*f, c.field());
    return *f;
  }();
  SMat<Fq> t((size_t)r, (size_t)r, ZFq::zero(&F));
  for (int64_t j = 0; j < r; ++j) t((size_t)j, 0) = ZFq(&F, -1, a[(size_t)j], z_prec);
  for (int64_t i = 1; i < r; ++i) t((size_t)i - 1, (size_t)i) = ZFq::one(&F);
  return Isocrystal<Fq>{t};
}

HomWitness hom_witness(const Isocrystal<Fq>& m, const Isocrystal<Fq>& n, int64_t N, uint32_t e_max, int64_t max_iters,
                       int64_t rel) {
  auto q = slope0_model(ihom(m, n, rel), max_iters, rel);
  const FiniteField& K = matrix_field(q.tau_matrix);
  e_max = packable(K, K.m(), e_max);
  for (uint32_t e = 1; e <= e_max; ++e) {
    auto V = tau_fixed_space(q.tau_matrix, N, e);
    if (V.dim_fq > 0) return HomWitness{e, V.dim_fq};
  }
  return HomWitness{};
}

Conjugator yu_conjugator(const DrinfeldModule<Fq>& e, int64_t tau_prec, uint32_t e_max) {
  require_input(tau_prec > 0, "tau^{-1}-precision must be positive");
  const int64_t r = e.rank();
  const FiniteField* base = e.ctx();
  SkewLaurent phi_z = SkewLaurent::from_poly(e.phi).inverse(tau_prec);
  auto f = [&](int64_t k) { return phi_z.coeff(k); };
  auto field = [&](uint32_t ext) -> const FiniteField& { return FiniteField::get(base->p(), base->a(), base->m() * ext); };
  e_max = packable(*base, base->m(), e_max);

  // sigma^{-r}(u_0) = f_r u_0
  uint32_t ext = 1;
  std::optional<Fq> u0;
  for (; ext <= e_max && !u0; ++ext) u0 = least_kernel_element(field(ext), twisted_map(field(ext), r, f(r)));
  if (!u0) fail(ErrorKind::ExtensionExhausted, "leading coefficient needs an extension beyond degree " + std::to_string(e_max));
  ext = (uint32_t)(u0->field().m() / base->m());
  std::vector<Fq> u{*u0};
  // sigma^{-r}(u_n) - sigma^{-n}(f_r) u_n = sum_{a<n} u_a sigma^{-a}(f_{n+r-a}),
  // moving to multiples of the current degree when the equation has no root
  for (int64_t n = 1; n < tau_prec; ++n) {
    Fq rhs = Fq::zero(base);
    for (int64_t a = 0; a < n; ++a) rhs += u[(size_t)a] * f(n + r - a).frob(-a);
    std::optional<Fq> un;
    for (uint32_t k = ext; k <= e_max && !un; k += ext) {
      const FiniteField& F = field(k);
      if (auto s = twisted_map(F, r, f(r).frob(-n)).solve(F.digits(rhs.embed(F).raw()))) {
        un = Fq(F, F.pack(*s));
        ext = k;
      }
    }
    if (!un) break;
    u.push_back(*un);
  }
  Conjugator c{SkewLaurent(base, 0, u, (int64_t)u.size()), ext, &field(ext), (int64_t)u.size(), false};
  c.verified = check_conjugator(e, c);
  invariant(c.verified, "conjugator failed re-substitution");
  return c;
}

bool check_conjugator(const DrinfeldModule<Fq>& e, const Conjugator& c) {
  SkewLaurent phi_z = SkewLaurent::from_poly(e.phi).inverse(c.precision);
  SkewLaurent lhs = conjugate(c.u, phi_z, c.precision);
  return lhs == SkewLaurent::tau_inv_power(e.ctx(), e.rank());
}

WeilData weil_from_conjugator(const DrinfeldModule<Fq>& e, const Conjugator& c) {
  WeilData w;
  const int64_t r = e.rank();
  const int64_t m = e.ctx()->m();
  w.lambda = Rational(-1, r);
  w.frobenius_ord = m;
  w.conjugator = c;
  const SkewLaurent& u = c.u;
  SkewLaurent ui = u.inverse(c.precision);
  SkewLaurent ti = SkewLaurent::tau_inv_power(e.ctx(), r);
  w.admissible = true;
  for (int64_t k = 1; k <= 4; ++k) {
    // geometric Frobenius acts on coefficients by x -> x^{q^{-m k}}
    SkewLaurent rho = SkewLaurent::tau_inv_power(e.ctx(), -m * k) * u.coeff_frob(-m * k) * ui;
    Rational v(rho.v_tau_inv(), r);
    w.powers.push_back(v);
    if (k == 1) {
      w.rho_valuation = v;
      w.in_centraliser = rho * ti == ti * rho;
    }
    if (v != w.lambda * Rational(m * k)) w.admissible = false;
  }
  w.admissible = w.admissible && w.in_centraliser;
  return w;
}

WeilData weil_valuation(const DrinfeldModule<Fq>& e, int64_t tau_prec, uint32_t e_max) {
  return weil_from_conjugator(e, yu_conjugator(e, tau_prec, e_max));
}

}  // namespace dmiso
