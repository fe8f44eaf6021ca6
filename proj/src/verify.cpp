#include "dmiso/commands.hpp"
#include "dmiso/fp_linalg.hpp"

namespace dmiso::cmd {

using namespace io;

namespace {

struct Check {
  bool ok = true;
  bool skipped = false;
  std::string detail;
};

Check bad(const std::string& why) { return Check{false, false, why}; }
Check skip(const std::string& why) { return Check{true, true, why}; }

template <class E, class Name>
E parse_enum(const json& j, std::initializer_list<E> values, Name name, const char* what) {
  require_input(j.is_string(), std::string(what) + " must be a string");
  for (E v : values)
    if (j.get<std::string>() == name(v)) return v;
  fail(ErrorKind::Input, std::string("unknown ") + what + " \"" + j.get<std::string>() + "\"");
}

PurityVerdict purity_verdict(const json& j) {
  return parse_enum(j, {PurityVerdict::Certified, PurityVerdict::NotPureAt, PurityVerdict::Inconclusive}, purity_verdict_name,
                    "purity verdict");
}

std::optional<int64_t> opt_int(const json& j) {
  if (j.is_null()) return std::nullopt;
  require_input(j.is_number_integer(), "expected an integer or null");
  return j.get<int64_t>();
}

const FiniteField& parse_field(const json& j, const PrecisionPolicy& pol) {
  Base b = parse_base(j, pol);
  require_input(!b.local(), "expected a finite field descriptor");
  return *b.F;
}

ZFq lift(const ZFq& x, const FiniteField& F) {
  std::vector<Fq> c;
  for (const auto& v : x.coeffs()) c.push_back(v.embed(F));
  return ZFq(&F, x.lo(), c, x.prec());
}

SMat<Fq> lift(const SMat<Fq>& a, const FiniteField& F) {
  SMat<Fq> b(a.rows(), a.cols(), ZFq::zero(&F));
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) b(i, j) = lift(a(i, j), F);
  return b;
}

std::vector<std::vector<ZFq>> parse_vectors(const json& j, const FiniteField& F) {
  require_input(j.is_array(), "vectors must be an array");
  std::vector<std::vector<ZFq>> out;
  for (const auto& v : j) {
    require_input(v.is_array(), "vector must be an array of series");
    std::vector<ZFq> x;
    for (const auto& s : v) x.push_back(parse_zfq(s, F));
    out.push_back(x);
  }
  return out;
}

bool zero_mod(const ZFq& x, int64_t N) {
  auto t = x.truncate(N);
  return t.is_zero() && t.prec() >= N;
}

// F_p-rank of the F_q-multiples of the given vectors, truncated mod z^N.
size_t fq_span_rank(const std::vector<std::vector<ZFq>>& vs, const FiniteField& Fq_, const FiniteField& V, int64_t N) {
  size_t n = vs.empty() ? 0 : vs[0].size();
  FpSpan span(V.p(), n * (size_t)N * V.n());
  for (uint32_t k = 0; k < Fq_.n(); ++k) {
    std::vector<uint32_t> e(Fq_.n(), 0);
    e[k] = 1;
    ZFq c(&V, 0, {Fq(Fq_, Fq_.pack(e)).embed(V)}, kExact);
    for (const auto& v : vs) {
      FpVec flat(span.dim(), 0);
      for (size_t i = 0; i < n; ++i) {
        ZFq w = c * v[i];
        for (int64_t t = 0; t < N; ++t) {
          auto d = V.digits(w.coeff(t).embed(V).raw());
          for (size_t b = 0; b < d.size(); ++b) flat[(i * N + t) * V.n() + b] = d[b];
        }
      }
      span.add(flat);
    }
  }
  return span.size();
}

template <class K>
Check purity_common(const Isocrystal<K>& m, const json& c, const std::optional<Lattice<K>>& t, const PrecisionPolicy& pol) {
  int64_t s = c.at("s").get<int64_t>(), r = c.at("r").get<int64_t>();
  PurityVerdict v = purity_verdict(c.at("verdict"));
  if (v == PurityVerdict::Certified) {
    if (!t) return bad("certified without a lattice");
    if (!verify_purity(m, s, r, *t, pol.rel())) return bad("lattice does not replay <tau^r T> = z^s T");
    return {};
  }
  if (v == PurityVerdict::NotPureAt && !c.at("heuristic").get<bool>()) {
    auto o = det(m.tau).order_opt();
    if (!o) return bad("determinant vanishes to precision");
    if (*o * r == s * (int64_t)m.rank()) return bad("determinant order is compatible with the slope");
    return {};
  }
  return skip(v == PurityVerdict::NotPureAt ? "heuristic refutation" : "inconclusive verdict");
}

Check check_purity(const json& c, const PrecisionPolicy& pol) {
  auto d = parse_isocrystal(c.at("isocrystal"), pol);
  if (d.fin) {
    std::optional<Lattice<Fq>> t;
    Isocrystal<Fq> m = *d.fin;
    if (c.contains("lattice")) {
      const FiniteField& F = parse_field(c.at("field"), pol);
      t = parse_lattice_fq(c.at("lattice"), F);
      m = Isocrystal<Fq>{lift(m.tau, F)};
    }
    return purity_common(m, c, t, pol);
  }
  std::optional<Lattice<Laurent>> t;
  if (c.contains("lattice")) t = parse_lattice_loc(c.at("lattice"), *d.base.L);
  return purity_common(*d.loc, c, t, pol);
}

Check check_reduction_cert(const json& c, const PrecisionPolicy& pol) {
  auto d = parse_drinfeld(c.at("module"), pol);
  require_input(d.loc.has_value(), "reduction needs a local base");
  ReductionReport rep;
  rep.verdict = parse_enum(c.at("verdict"),
                           {ReductionVerdict::Good, ReductionVerdict::Stable, ReductionVerdict::PotentiallyGood,
                            ReductionVerdict::BadNotPotentiallyGood},
                           reduction_verdict_name, "reduction verdict");
  rep.m = parse_rational(c.at("m"));
  rep.e = c.at("e").get<int64_t>();
  rep.stable_rank = c.at("stable_rank").get<int64_t>();
  for (const auto& s : c.at("scaled")) rep.scaled.push_back(s.is_null() ? std::nullopt : std::optional(parse_rational(s)));
  for (const auto& v : c.at("valuations")) rep.valuations.push_back(opt_int(v));
  if (!check_reduction(*d.loc, rep)) return bad("scaled valuations do not replay from m");
  return {};
}

Check check_good_model(const json& c, const PrecisionPolicy& pol) {
  auto d = parse_drinfeld(c.at("module"), pol);
  require_input(d.loc.has_value(), "good model needs a local base");
  const auto& e = *d.loc;
  const LocalField& L = *e.ctx();
  Laurent u = parse_laurent(c.at("u"), L);
  SMat<Laurent> model = parse_mat_loc(c.at("model"), L);
  auto mc = model_verify(model);
  if (mc.decision != Decision::Yes) return bad("model fails: " + mc.failed);
  const size_t r = (size_t)e.rank();
  if (model.rows() != r || model.cols() != r) return bad("model has the wrong size");
  SMat<Laurent> b(r, r, ZLoc::zero(&L)), bi = b;
  Laurent ui = u.inv();
  for (size_t i = 0; i < r; ++i) {
    b(i, i) = ZLoc::constant(u.sigma_pow((int64_t)i));
    bi(i, i) = ZLoc::constant(ui.sigma_pow((int64_t)i));
  }
  if (!mat_equal(model, mat_mul(mat_mul(bi, m_infinity(e).tau), sigma_mat<Laurent>(b, 1))))
    return bad("model is not B^{-1} A sigma(B) for the stated u");
  return {};
}

Check check_obstruction(const json& c, const PrecisionPolicy& pol) {
  auto d = parse_drinfeld(c.at("module"), pol);
  require_input(d.loc.has_value(), "obstruction needs a local base");
  auto red = parse_drinfeld(c.at("reduction"), pol);
  require_input(red.fin.has_value(), "reduction must be over the residue field");
  const int64_t r = d.loc->rank(), s = red.fin->rank();
  const json& g = c.at("generic");
  const json& sp = c.at("special");
  if (purity_verdict(g.at("verdict")) != PurityVerdict::Certified || g.at("s") != -1 || g.at("r") != r)
    return bad("generic fibre is not certified at slope -1/r");
  if (purity_verdict(sp.at("verdict")) != PurityVerdict::Certified || sp.at("s") != -1 || sp.at("r") != s)
    return bad("special fibre is not certified at slope -1/s");
  auto gi = parse_isocrystal(g.at("isocrystal"), pol);
  if (!gi.loc || !mat_equal(gi.loc->tau, m_infinity(widen_for_sigma(*d.loc)).tau))
    return bad("generic isocrystal is not M_inf of the module");
  auto special = m_infinity(*red.fin);
  auto si = parse_isocrystal(sp.at("isocrystal"), pol);
  if (!si.fin || !mat_equal(lift(si.fin->tau, coefficient_field(special.tau)), special.tau))
    return bad("special isocrystal is not M_inf of the reduction");
  std::vector<Rational> sl;
  for (const auto& x : c.at("special_slopes")) sl.push_back(parse_rational(x));
  if (sl != slopes_finiteK(special)) return bad("special slopes do not replay");
  if (c.at("slope0_rank") != r - s || r == s) return bad("no slope-0 part");
  if (!c.at("incompatible").get<bool>()) return bad("obstruction not claimed");
  return {};
}

template <class K>
SolveOutcome<K> parse_outcome(const json& c, const std::function<ZSeries<K>(const json&)>& ser,
                              const std::function<K(const json&)>& elem) {
  SolveOutcome<K> o;
  o.verdict = parse_enum(c.at("verdict"), {SolveVerdict::Solution, SolveVerdict::NoSolution, SolveVerdict::Inconclusive},
                         solve_verdict_name, "solve verdict");
  if (!c.at("reason").is_null())
    o.reason = parse_enum(c.at("reason"),
                          {NoSolutionReason::QthRootMissing, NoSolutionReason::UnboundedCoefficientValuations,
                           NoSolutionReason::PrincipalPartViolation, NoSolutionReason::IntegralityViolation,
                           NoSolutionReason::LinearObstruction},
                          no_solution_reason_name, "no-solution reason");
  auto tag = parse_ring_tag(c.at("ring").get<std::string>());
  require_input(tag.has_value(), "unknown ring");
  o.tag = *tag;
  o.x = ser(c.at("x"));
  o.order_a = c.at("order_a").get<int64_t>();
  o.precision = c.at("precision").get<int64_t>();
  o.unique = c.at("unique").get<bool>();
  o.kernel_dim = c.at("kernel_dim").get<int>();
  o.witness_exponent = opt_int(c.at("witness_exponent"));
  if (!c.at("witness_value").is_null()) o.witness_value = elem(c.at("witness_value"));
  o.witness_zeta = opt_int(c.at("witness_zeta"));
  if (!c.at("growth").is_null()) {
    const json& g = c.at("growth");
    o.growth = GrowthCertificate{g.at("start").get<int64_t>(), g.at("period").get<int64_t>(), g.at("ratio").get<int64_t>(),
                                 g.at("offset").get<int64_t>(), g.at("start_valuation").get<int64_t>()};
  }
  return o;
}

Check check_solve(const json& c, const PrecisionPolicy& pol) {
  Base base = parse_base(c.at("base"), pol);
  std::string why;
  bool ok;
  if (base.local()) {
    const LocalField& L = *base.L;
    std::function<ZLoc(const json&)> ser = [&](const json& j) { return parse_zloc(j, L); };
    std::function<Laurent(const json&)> el = [&](const json& j) { return parse_laurent(j, L); };
    auto o = parse_outcome<Laurent>(c, ser, el);
    if (o.verdict == SolveVerdict::Inconclusive) return skip("inconclusive outcome");
    ok = check_outcome(ser(c.at("a")), ser(c.at("b")), o, &why);
  } else {
    const FiniteField& F = *base.F;
    std::function<ZFq(const json&)> ser = [&](const json& j) { return parse_zfq(j, F); };
    std::function<Fq(const json&)> el = [&](const json& j) { return parse_fq(j, F); };
    auto o = parse_outcome<Fq>(c, ser, el);
    if (o.verdict == SolveVerdict::Inconclusive) return skip("inconclusive outcome");
    ok = check_outcome(ser(c.at("a")), ser(c.at("b")), o, &why);
  }
  return ok ? Check{} : bad(why);
}

Check check_tate(const json& c, const PrecisionPolicy& pol) {
  auto d = parse_isocrystal(c.at("isocrystal"), pol);
  require_input(d.fin.has_value(), "Tate certificate needs a finite base");
  const int64_t N = c.at("N").get<int64_t>();
  const size_t n = d.fin->rank();
  const FiniteField& F0 = parse_field(c.at("lattice_field"), pol);
  auto T = parse_lattice_fq(c.at("lattice"), F0);
  auto A = lift(d.fin->tau, F0);
  auto Ti = parse_mat_fq(c.at("tau_integral"), F0);
  if (!verify_purity(Isocrystal<Fq>{A}, 0, 1, T, pol.rel())) return bad("lattice is not tau-stable");
  if (!mat_equal(mat_mul(T.basis, Ti), mat_mul(A, sigma_mat<Fq>(T.basis, 1))))
    return bad("integral tau matrix is not B^{-1} A sigma(B)");
  const FiniteField& V = parse_field(c.at("space_field"), pol);
  auto Tv = lift(Ti, V);
  auto basis = parse_vectors(c.at("basis"), V);
  if (basis.size() != c.at("dim_fq").get<size_t>()) return bad("basis size differs from dim_fq");
  for (const auto& v : basis) {
    if (v.size() != n) return bad("basis vector has the wrong length");
    for (size_t i = 0; i < n; ++i) {
      ZFq w = ZFq::zero(&V);
      for (size_t j = 0; j < n; ++j) w += Tv(i, j) * v[j].sigma();
      if (!zero_mod(w - v[i], N)) return bad("basis vector is not tau-fixed mod z^N");
    }
  }
  const FiniteField& Fq_ = FiniteField::get(F0.p(), F0.a(), 1);
  if (basis.size() != n * (size_t)N) return bad("fixed space does not have F_q-dimension rank * N");
  if (fq_span_rank(basis, Fq_, V, N) != basis.size() * Fq_.n()) return bad("basis is not F_q-independent mod z^N");
  if (!c.at("free").get<bool>() || c.at("module_rank") != n || c.at("rank") != n) return bad("rank is not full");
  const json& fr = c.at("frobenius");
  const FiniteField& Fr = parse_field(fr.at("field"), pol);
  auto M = lift(parse_mat_fq(fr.at("matrix"), Fr), V);
  auto mb = parse_vectors(fr.at("module_basis"), V);
  const int64_t deg = fr.at("degree").get<int64_t>();
  if (mb.size() != n || M.rows() != n || M.cols() != n) return bad("Frobenius data has the wrong size");
  SMat<Fq> B(n, n, ZFq::zero(&V));
  for (size_t j = 0; j < n; ++j) {
    if (mb[j].size() != n) return bad("module basis vector has the wrong length");
    for (size_t i = 0; i < n; ++i) {
      ZFq w = ZFq::zero(&V);
      for (size_t k = 0; k < n; ++k) w += Tv(i, k) * mb[j][k].sigma();
      if (!zero_mod(w - mb[j][i], N)) return bad("module basis vector is not tau-fixed mod z^N");
      B(i, j) = mb[j][i];
    }
  }
  if (det(B).below(1).is_zero()) return bad("module basis is not a basis mod z");
  for (size_t j = 0; j < n; ++j)
    for (size_t k = 0; k < n; ++k) {
      ZFq w = mb[j][k].sigma_pow(deg);
      for (size_t i = 0; i < n; ++i) w -= M(i, j) * mb[i][k];
      if (!zero_mod(w, N)) return bad("Frobenius matrix does not replay");
    }
  if (det(M).below(1).is_zero()) return bad("Frobenius matrix is not invertible mod z");
  if (!fr.at("invertible").get<bool>()) return bad("Frobenius marked non-invertible");
  return {};
}

Conjugator parse_conjugator(const json& c, const DrinfeldModule<Fq>& e, const PrecisionPolicy& pol) {
  const FiniteField& F = parse_field(c.at("field"), pol);
  return Conjugator{parse_skew_laurent(c.at("u"), e.ctx(), F), c.at("ext").get<uint32_t>(), &F,
                    c.at("precision").get<int64_t>(), c.at("verified").get<bool>()};
}

Check check_conjugator_cert(const json& c, const PrecisionPolicy& pol) {
  auto d = parse_drinfeld(c.at("module"), pol);
  require_input(d.fin.has_value(), "conjugator needs a finite base");
  if (!check_conjugator(*d.fin, parse_conjugator(c, *d.fin, pol))) return bad("u phi(z) u^{-1} != tau^{-r}");
  return {};
}

Check check_weil(const json& c, const PrecisionPolicy& pol) {
  const json& cj = c.at("conjugator");
  auto d = parse_drinfeld(cj.at("module"), pol);
  require_input(d.fin.has_value(), "Weil data needs a finite base");
  auto w = weil_from_conjugator(*d.fin, parse_conjugator(cj, *d.fin, pol));
  if (parse_rational(c.at("lambda")) != w.lambda) return bad("lambda differs");
  if (parse_rational(c.at("rho_valuation")) != w.rho_valuation) return bad("v_D(rho(Frob)) differs");
  std::vector<Rational> pw;
  for (const auto& x : c.at("powers")) pw.push_back(parse_rational(x));
  if (pw != w.powers) return bad("powers differ");
  if (c.at("in_centraliser").get<bool>() != w.in_centraliser || c.at("admissible").get<bool>() != w.admissible)
    return bad("flags differ");
  return {};
}

Check dispatch(const std::string& kind, const json& c, const PrecisionPolicy& pol) {
  if (kind == "purity") return check_purity(c, pol);
  if (kind == "reduction") return check_reduction_cert(c, pol);
  if (kind == "good_model") return check_good_model(c, pol);
  if (kind == "stable_obstruction") return check_obstruction(c, pol);
  if (kind == "solve") return check_solve(c, pol);
  if (kind == "tate_slope0") return check_tate(c, pol);
  if (kind == "conjugator") return check_conjugator_cert(c, pol);
  if (kind == "weil") return check_weil(c, pol);
  return bad("unknown certificate kind \"" + kind + "\"");
}

void walk(const json& v, const std::string& path, const PrecisionPolicy& pol, VerifyResult& out, json& rows) {
  if (v.is_object()) {
    if (v.contains("certificate") && v.at("certificate").is_string()) {
      std::string kind = v.at("certificate").get<std::string>();
      Check ch;
      try {
        ch = dispatch(kind, v, pol);
      } catch (const Error& e) {
        ch = bad(std::string(error_kind_name(e.kind())) + ": " + e.what());
      } catch (const std::exception& e) {
        ch = bad(std::string("malformed certificate: ") + e.what());
      }
      const char* res = ch.skipped ? "skipped" : ch.ok ? "ok" : "failed";
      if (ch.skipped)
        ++out.skipped;
      else if (ch.ok)
        ++out.checked;
      else
        ++out.failed;
      rows.push_back(json{{"path", path.empty() ? "/" : path}, {"certificate", kind}, {"result", res}, {"detail", ch.detail}});
    }
    for (const auto& [k, x] : v.items()) walk(x, path + "/" + k, pol, out, rows);
  } else if (v.is_array()) {
    for (size_t i = 0; i < v.size(); ++i) walk(v[i], path + "/" + std::to_string(i), pol, out, rows);
  }
}

}  // namespace

VerifyResult verify(const json& report) {
  VerifyResult out;
  require_input(report.is_object(), "report must be a JSON object");
  PrecisionPolicy pol = parse_policy(report.contains("policy") ? report.at("policy") : json());
  json rows = json::array();
  walk(report, "", pol, out, rows);
  out.status = out.failed ? kInternal : kOk;
  json entry{{"command", "verify"},
             {"status", out.failed ? "internal_error" : "ok"},
             {"checked", out.checked},
             {"failed", out.failed},
             {"skipped", out.skipped},
             {"results", rows}};
  out.report = make_report(pol, {entry});
  return out;
}

}  // namespace dmiso::cmd
