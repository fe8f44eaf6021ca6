#include "dmiso/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace dmiso::cmd {

using namespace io;

int worse(int a, int b) {
  auto rank = [](int s) {
    switch (s) {
      case kInternal: return 3;
      case kInput: return 2;
      case kInconclusive: return 1;
      default: return 0;
    }
  };
  return rank(a) >= rank(b) ? a : b;
}

int status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::Input:
    case ErrorKind::NotIntegral:
    case ErrorKind::NotAUnit:
      return kInput;
    case ErrorKind::Internal:
      return kInternal;
    default:
      return kInconclusive;
  }
}

namespace {

const char* status_name(int s) {
  switch (s) {
    case kOk: return "ok";
    case kInput: return "input_error";
    case kInconclusive: return "inconclusive";
    default: return "internal_error";
  }
}

json opt_json(const std::optional<int64_t>& v) { return v ? json(*v) : json(nullptr); }

json rationals_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rational_str(x));
  return a;
}

Outcome start(const char* command) {
  Outcome o;
  o.entry = json{{"command", command}, {"status", "ok"}};
  return o;
}

void note_error(Outcome& out, const std::string& section, int status, const char* kind, const std::string& msg) {
  if (!out.entry.contains("errors")) out.entry["errors"] = json::array();
  out.entry["errors"].push_back(json{{"section", section}, {"kind", kind}, {"message", msg}});
  out.status = worse(out.status, status);
}

// Runs one section of a command; failures are recorded on the entry.
template <class Body>
void guarded(Outcome& out, const std::string& section, Body body) {
  try {
    body();
  } catch (const Error& e) {
    note_error(out, section, status_of(e.kind()), error_kind_name(e.kind()), e.what());
  } catch (const json::exception& e) {
    note_error(out, section, kInput, "Input", e.what());
  } catch (const std::exception& e) {
    note_error(out, section, kInternal, "Internal", e.what());
  }
}

void finish(Outcome& out) { out.entry["status"] = status_name(out.status); }

// ---- certificates ----

json purity_cert(const Isocrystal<Fq>& m, const PurityResult<Fq>& p) {
  json c{{"certificate", "purity"}, {"s", p.s}, {"r", p.r}, {"verdict", purity_verdict_name(p.verdict)},
         {"iterations", p.iterations}, {"heuristic", p.heuristic}, {"reason", p.reason}, {"isocrystal", isocrystal_json(m)}};
  if (p.lattice) {
    const FiniteField& F = join_fields(coefficient_field(m.tau), coefficient_field(p.lattice->basis));
    c["field"] = field_json(F);
    c["lattice"] = lattice_json(*p.lattice, F);
  }
  return c;
}

json purity_cert(const Isocrystal<Laurent>& m, const PurityResult<Laurent>& p) {
  json c{{"certificate", "purity"}, {"s", p.s}, {"r", p.r}, {"verdict", purity_verdict_name(p.verdict)},
         {"iterations", p.iterations}, {"heuristic", p.heuristic}, {"reason", p.reason}, {"isocrystal", isocrystal_json(m)}};
  if (p.lattice) c["lattice"] = lattice_json(*p.lattice);
  return c;
}

int purity_status(PurityVerdict v) { return v == PurityVerdict::Inconclusive ? kInconclusive : kOk; }

json reduction_cert(const DrinfeldModule<Laurent>& e, const ReductionReport& rep) {
  json scaled = json::array(), vals = json::array();
  for (const auto& s : rep.scaled) scaled.push_back(s ? json(rational_str(*s)) : json(nullptr));
  for (const auto& v : rep.valuations) vals.push_back(opt_json(v));
  return json{{"certificate", "reduction"},
              {"module", drinfeld_json(e)},
              {"verdict", reduction_verdict_name(rep.verdict)},
              {"m", rational_str(rep.m)},
              {"e", rep.e},
              {"stable_rank", rep.stable_rank},
              {"scaled", scaled},
              {"valuations", vals}};
}

json good_model_cert(const DrinfeldModule<Laurent>& e, const GoodModel& g) {
  return json{{"certificate", "good_model"},
              {"module", drinfeld_json(e)},
              {"u", laurent_json(g.u)},
              {"model", mat_json(g.model)},
              {"decision", decision_name(g.check.decision)},
              {"base_change_ok", g.base_change_ok},
              {"scaled", drinfeld_json(g.scaled)},
              {"reduction", drinfeld_json(g.reduction)}};
}

json crit_json(const DrinfeldModule<Laurent>& e, const CritReport& c) {
  json j{{"verdict", reduction_verdict_name(c.reduction.verdict)},
         {"agree", c.agree},
         {"detail", c.detail},
         {"ramification", c.ramification}};
  if (c.model) j["model"] = good_model_cert(c.ramification > 1 ? ramify(e, c.ramification) : e, *c.model);
  if (c.obstruction) {
    const auto& ob = *c.obstruction;
    j["obstruction"] = json{{"certificate", "stable_obstruction"},
                            {"module", drinfeld_json(e)},
                            {"ramification", ob.ramification},
                            {"rank", e.rank()},
                            {"stable_rank", ob.reduction.rank()},
                            {"reduction", drinfeld_json(ob.reduction)},
                            {"generic", purity_cert(m_infinity(widen_for_sigma(e)), ob.generic)},
                            {"special", purity_cert(m_infinity(ob.reduction), ob.special)},
                            {"special_slopes", rationals_json(ob.special_slopes)},
                            {"slope0_rank", ob.slope0_rank},
                            {"incompatible", ob.incompatible}};
  }
  return j;
}

json motive_json(const Motive<Fq>& mo, const FiniteField& F) {
  return json{{"coker_dim", mo.coker_dim}, {"coker_t", mo.coker_t ? fq_json(*mo.coker_t, F) : json(nullptr)}, {"coker_ok", mo.coker_ok}};
}

json motive_json(const Motive<Laurent>& mo) {
  return json{{"coker_dim", mo.coker_dim}, {"coker_t", mo.coker_t ? laurent_json(*mo.coker_t) : json(nullptr)}, {"coker_ok", mo.coker_ok}};
}

json growth_json(const GrowthCertificate& g) {
  return json{{"start", g.start}, {"period", g.period}, {"ratio", g.ratio}, {"offset", g.offset}, {"start_valuation", g.start_valuation}};
}

json membership_json(const Membership& m) {
  return json{{"tag", ring_tag_name(m.tag)},
              {"decision", decision_name(m.decision)},
              {"witness_exponent", opt_json(m.witness_exponent)},
              {"witness_valuation", opt_json(m.witness_valuation)},
              {"lower_bound", opt_json(m.lower_bound)},
              {"decreasing_trend", m.decreasing_trend},
              {"reason", m.reason}};
}

template <class K, class Ser, class SerK>
json solve_cert(const json& base, const ZSeries<K>& a, const ZSeries<K>& b, const SolveOutcome<K>& o, int64_t N, Ser ser,
                SerK serk) {
  return json{{"certificate", "solve"},
              {"base", base},
              {"ring", ring_tag_name(o.tag)},
              {"N", N},
              {"a", ser(a)},
              {"b", ser(b)},
              {"verdict", solve_verdict_name(o.verdict)},
              {"reason", o.reason ? json(no_solution_reason_name(*o.reason)) : json(nullptr)},
              {"x", ser(o.x)},
              {"order_a", o.order_a},
              {"precision", o.precision},
              {"unique", o.unique},
              {"kernel_dim", o.kernel_dim},
              {"witness_exponent", opt_json(o.witness_exponent)},
              {"witness_value", o.witness_value ? serk(*o.witness_value) : json(nullptr)},
              {"witness_zeta", opt_json(o.witness_zeta)},
              {"growth", o.growth ? growth_json(*o.growth) : json(nullptr)},
              {"membership", o.membership ? membership_json(*o.membership) : json(nullptr)},
              {"note", o.note}};
}

json vectors_json(const std::vector<std::vector<ZFq>>& vs, const FiniteField& F) {
  json a = json::array();
  for (const auto& v : vs) {
    json col = json::array();
    for (const auto& x : v) col.push_back(zseries_json(x, F));
    a.push_back(col);
  }
  return a;
}

json tate_cert(const Isocrystal<Fq>& m, const TateSlope0& t, int64_t N) {
  const FiniteField& F0 = join_fields(coefficient_field(t.lattice.basis), coefficient_field(t.tau_integral));
  const FiniteField& V = *t.space.field;
  const FiniteField& Fr = coefficient_field(t.frobenius.matrix);
  return json{{"certificate", "tate_slope0"},
              {"isocrystal", isocrystal_json(m)},
              {"N", N},
              {"rank", t.rank},
              {"ext", t.ext},
              {"lattice_field", field_json(F0)},
              {"lattice", lattice_json(t.lattice, F0)},
              {"tau_integral", mat_json(t.tau_integral, F0)},
              {"space_field", field_json(V)},
              {"basis", vectors_json(t.space.basis, V)},
              {"dim_fq", t.space.dim_fq},
              {"module_rank", t.space.module_rank},
              {"free", t.space.free},
              {"frobenius",
               json{{"degree", coefficient_field(m.tau).m()},
                    {"field", field_json(Fr)},
                    {"matrix", mat_json(t.frobenius.matrix, Fr)},
                    {"module_basis", vectors_json(t.frobenius.module_basis, V)},
                    {"invertible", t.frobenius.invertible}}}};
}

json conjugator_json(const DrinfeldModule<Fq>& e, const Conjugator& c, int64_t requested) {
  return json{{"certificate", "conjugator"},
              {"module", drinfeld_json(e)},
              {"ext", c.ext},
              {"field", field_json(*c.field)},
              {"u", skew_laurent_json(c.u, *c.field)},
              {"precision", c.precision},
              {"requested_precision", requested},
              {"verified", c.verified}};
}

json weil_json(const DrinfeldModule<Fq>& e, const WeilData& w, int64_t requested) {
  return json{{"certificate", "weil"},
              {"lambda", rational_str(w.lambda)},
              {"frobenius_ord", w.frobenius_ord},
              {"rho_valuation", rational_str(w.rho_valuation)},
              {"powers", rationals_json(w.powers)},
              {"in_centraliser", w.in_centraliser},
              {"admissible", w.admissible},
              {"conjugator", conjugator_json(e, w.conjugator, requested)}};
}

// ---- command bodies ----

template <class K>
void analyze_body(Outcome& out, const DrinfeldModule<K>& e, const PrecisionPolicy& pol) {
  const int64_t r = e.rank();
  out.entry["input"] = drinfeld_json(e);
  out.entry["rank"] = r;
  guarded(out, "motive", [&] {
    auto mo = motive(e);
    if constexpr (std::is_same_v<K, Fq>) {
      out.entry["iota"] = fq_json(e.g(0), *e.ctx());
      out.entry["motive"] = motive_json(mo, *e.ctx());
    } else {
      out.entry["iota"] = laurent_json(e.g(0));
      out.entry["motive"] = motive_json(mo);
    }
    if (!mo.coker_ok) note_error(out, "motive", kInternal, "Internal", "cokernel of tau is not Lie(E)");
  });
  guarded(out, "m_infinity", [&] {
    json mi = json::object();
    if constexpr (std::is_same_v<K, Fq>) {
      auto m = m_infinity(e);
      auto p = purity_check(m, -1, r, pol.max_iters, pol.rel());
      mi["purity"] = purity_cert(m, p);
      out.entry["m_infinity"] = mi;
      if (p.verdict != PurityVerdict::Certified) out.status = worse(out.status, kInconclusive);
      auto sl = slopes_finiteK(m);
      out.entry["m_infinity"]["slopes"] = rationals_json(sl);
      out.entry["m_infinity"]["slopes_agree"] = sl == std::vector<Rational>((size_t)r, Rational(-1, r));
    } else {
      auto w = widen_for_sigma(e);
      auto m = m_infinity(w);
      auto p = purity_check(m, -1, r, pol.max_iters, pol.rel());
      mi["purity"] = purity_cert(m, p);
      out.entry["m_infinity"] = mi;
      if (p.verdict != PurityVerdict::Certified) out.status = worse(out.status, kInconclusive);
    }
  });
  if constexpr (std::is_same_v<K, Laurent>) {
    guarded(out, "reduction", [&] { out.entry["reduction"] = reduction_cert(e, reduction_type(e)); });
    guarded(out, "crit", [&] {
      auto c = crit_crosscheck(e, pol.max_iters, pol.rel());
      out.entry["crit"] = crit_json(e, c);
      if (!c.agree) out.status = worse(out.status, kInconclusive);
    });
  }
}

template <class K>
void slopes_section(Outcome& out, const Isocrystal<K>& m, const char* key) {
  if constexpr (std::is_same_v<K, Fq>) {
    guarded(out, key, [&] { out.entry[key] = rationals_json(slopes_finiteK(m)); });
  } else {
    (void)out, (void)m, (void)key;
  }
}

template <class K>
void isocrystal_body(Outcome& out, const std::string& sub, const std::vector<Isocrystal<K>>& ms, int64_t s, int64_t r,
                     const PrecisionPolicy& pol) {
  if (sub == "tensor" || sub == "dual") {
    auto res = sub == "tensor" ? tensor(ms[0], ms[1]) : dual(ms[0], pol.rel());
    out.entry["result"] = isocrystal_json(res);
    slopes_section(out, ms[0], "slopes_first");
    if (sub == "tensor") slopes_section(out, ms[1], "slopes_second");
    slopes_section(out, res, "slopes_result");
    if constexpr (std::is_same_v<K, Fq>) {
      if (out.entry.contains("slopes_result") && out.entry.contains("slopes_first")) {
        auto a = slopes_finiteK(ms[0]);
        std::vector<Rational> expect;
        if (sub == "tensor") {
          for (const auto& x : a)
            for (const auto& y : slopes_finiteK(ms[1])) expect.push_back(x + y);
        } else {
          for (const auto& x : a) expect.push_back(-x);
        }
        std::sort(expect.begin(), expect.end());
        out.entry["slope_identity"] = slopes_finiteK(res) == expect;
      }
    }
  } else if (sub == "purity") {
    require_input(r > 0, "purity needs r > 0");
    auto p = purity_check(ms[0], s, r, pol.max_iters, pol.rel());
    out.entry["purity"] = purity_cert(ms[0], p);
    out.status = worse(out.status, purity_status(p.verdict));
  } else if (sub == "slopes") {
    if constexpr (std::is_same_v<K, Fq>) {
      out.entry["slopes"] = rationals_json(slopes_finiteK(ms[0]));
    } else {
      fail(ErrorKind::Input, "slopes need a finite base field; use purity over a local base");
    }
  } else {
    fail(ErrorKind::Input, "unknown isocrystal subcommand \"" + sub + "\"");
  }
}

void tate_body(Outcome& out, const json& doc, int64_t N, const PrecisionPolicy& pol) {
  auto d = parse_isocrystal(doc, pol);
  require_input(d.fin.has_value(), "Tate modules need a finite base field");
  require_input(N > 0, "z-precision must be positive");
  auto t = tate_slope0(*d.fin, N, (uint32_t)pol.ext_max, pol.max_iters, pol.rel());
  out.entry["tate"] = tate_cert(*d.fin, t, N);
}

std::string kind_of(const json& doc) {
  if (doc.is_object() && doc.contains("kind") && doc.at("kind").is_string()) return doc.at("kind").get<std::string>();
  if (doc.is_object() && doc.contains("coeffs")) return "drinfeld";
  if (doc.is_object() && doc.contains("tau_matrix")) return "isocrystal";
  if (doc.is_object() && doc.contains("a")) return "solve";
  return "unknown";
}

}  // namespace

json make_report(const PrecisionPolicy& pol, const std::vector<json>& entries) {
  json e = json::array();
  for (const auto& x : entries) e.push_back(x);
  return json{{"tool", "dmiso"}, {"version", kVersion}, {"schema", kReportSchema}, {"policy", policy_json(pol)}, {"entries", e}};
}

Outcome analyze(const json& doc, const PrecisionPolicy& pol) {
  Outcome out = start("analyze");
  guarded(out, "input", [&] {
    auto d = parse_drinfeld(doc, pol);
    if (d.fin)
      analyze_body(out, *d.fin, pol);
    else
      analyze_body(out, *d.loc, pol);
  });
  finish(out);
  return out;
}

Outcome isocrystal(const std::string& sub, const std::vector<json>& docs, int64_t s, int64_t r, const PrecisionPolicy& pol) {
  Outcome out = start("isocrystal");
  out.entry["subcommand"] = sub;
  if (sub == "tate") {
    guarded(out, "tate", [&] {
      require_input(docs.size() == 1, "tate takes one isocrystal");
      tate_body(out, docs[0], pol.z_prec, pol);
    });
    finish(out);
    return out;
  }
  guarded(out, sub, [&] {
    size_t need = sub == "tensor" ? 2 : 1;
    require_input(docs.size() == need, sub + " takes " + std::to_string(need) + " isocrystal(s)");
    std::vector<IsoDoc> ds;
    for (const auto& j : docs) ds.push_back(parse_isocrystal(j, pol));
    bool local = ds[0].base.local();
    for (const auto& d : ds) require_input(d.base.local() == local, "isocrystals must share the base kind");
    if (local) {
      std::vector<Isocrystal<Laurent>> ms;
      for (const auto& d : ds) ms.push_back(*d.loc);
      isocrystal_body(out, sub, ms, s, r, pol);
    } else {
      std::vector<Isocrystal<Fq>> ms;
      for (const auto& d : ds) ms.push_back(*d.fin);
      isocrystal_body(out, sub, ms, s, r, pol);
    }
  });
  finish(out);
  return out;
}

Outcome solve(const json& a, const json& b, const std::string& ring, int64_t N, const PrecisionPolicy& pol) {
  Outcome out = start("solve");
  guarded(out, "solve", [&] {
    auto tag = parse_ring_tag(ring);
    require_input(tag.has_value(), "ring must be AK, BOK, Bbar or BK");
    require_input(N > 0, "precision must be positive");
    require_input(a.is_object(), "a must be a series object");
    const json& bj = a.contains("base") ? a.at("base") : (b.is_object() && b.contains("base") ? b.at("base") : json());
    require_input(!bj.is_null(), "a or b must carry a \"base\"");
    Base base = parse_base(bj, pol);
    if (base.local()) {
      const LocalField& L = *base.L;
      auto za = parse_zloc(a, L), zb = parse_zloc(b, L);
      auto o = solve_scalar(za, zb, *tag, N);
      out.entry["outcome"] = solve_cert(base_json(base), za, zb, o, N, [](const ZLoc& x) { return zseries_json(x); },
                                        [](const Laurent& x) { return laurent_json(x); });
      if (o.verdict == SolveVerdict::Inconclusive) out.status = worse(out.status, kInconclusive);
    } else {
      const FiniteField& F = *base.F;
      auto za = parse_zfq(a, F), zb = parse_zfq(b, F);
      auto o = solve_scalar(za, zb, *tag, N);
      out.entry["outcome"] = solve_cert(base_json(base), za, zb, o, N, [&](const ZFq& x) { return zseries_json(x, F); },
                                        [&](const Fq& x) { return fq_json(x, F); });
      if (o.verdict == SolveVerdict::Inconclusive) out.status = worse(out.status, kInconclusive);
    }
  });
  finish(out);
  return out;
}

Outcome tate(const json& doc, int64_t N, const PrecisionPolicy& pol) {
  Outcome out = start("tate");
  guarded(out, "tate", [&] { tate_body(out, doc, N, pol); });
  finish(out);
  return out;
}

Outcome weil(const json& doc, const PrecisionPolicy& pol) {
  Outcome out = start("weil");
  guarded(out, "weil", [&] {
    auto d = parse_drinfeld(doc, pol);
    require_input(d.fin.has_value(), "Weil valuations need a finite base field");
    out.entry["input"] = drinfeld_json(*d.fin);
    auto w = weil_valuation(*d.fin, pol.tauinv_prec, (uint32_t)pol.ext_max);
    out.entry["weil"] = weil_json(*d.fin, w, pol.tauinv_prec);
    if (!w.admissible) note_error(out, "weil", kInternal, "Internal", "valuation is not admissible");
  });
  finish(out);
  return out;
}

Outcome corpus_item(const json& doc, const PrecisionPolicy& pol) {
  std::string kind = kind_of(doc);
  if (kind == "drinfeld") return analyze(doc, pol);
  if (kind == "solve") {
    std::string ring = doc.contains("ring") && doc.at("ring").is_string() ? doc.at("ring").get<std::string>() : "BK";
    int64_t N = doc.contains("N") && doc.at("N").is_number_integer() ? doc.at("N").get<int64_t>() : pol.z_prec;
    json a = doc.contains("a") ? doc.at("a") : json();
    json b = doc.contains("b") ? doc.at("b") : json::object({{"z_coeffs", json::array()}});
    // a top-level base applies to both series
    if (doc.contains("base") && a.is_object() && !a.contains("base")) a["base"] = doc.at("base");
    return solve(a, b, ring, N, pol);
  }
  if (kind == "isocrystal") {
    Outcome out = start("isocrystal");
    guarded(out, "isocrystal", [&] {
      auto d = parse_isocrystal(doc, pol);
      if (doc.contains("slope")) {
        const json& sl = doc.at("slope");
        require_input(sl.is_array() && sl.size() == 2 && sl[0].is_number_integer() && sl[1].is_number_integer(),
                      "slope must be [s, r]");
        int64_t s = sl[0].get<int64_t>(), r = sl[1].get<int64_t>();
        require_input(r > 0, "slope denominator must be positive");
        if (d.fin) {
          auto p = purity_check(*d.fin, s, r, pol.max_iters, pol.rel());
          out.entry["purity"] = purity_cert(*d.fin, p);
          out.status = worse(out.status, purity_status(p.verdict));
        } else {
          auto p = purity_check(*d.loc, s, r, pol.max_iters, pol.rel());
          out.entry["purity"] = purity_cert(*d.loc, p);
          out.status = worse(out.status, purity_status(p.verdict));
        }
      }
      if (d.fin) out.entry["slopes"] = rationals_json(slopes_finiteK(*d.fin));
    });
    finish(out);
    return out;
  }
  Outcome out = start("unknown");
  note_error(out, "input", kInput, "Input", "cannot tell the item kind; set \"kind\"");
  finish(out);
  return out;
}

namespace {

std::string verdict_of(const json& e) {
  if (e.contains("crit")) return e["crit"].value("verdict", "");
  if (e.contains("reduction")) return e["reduction"].value("verdict", "");
  if (e.contains("outcome")) return e["outcome"].value("verdict", "");
  if (e.contains("purity")) return e["purity"].value("verdict", "");
  if (e.contains("m_infinity") && e["m_infinity"].contains("purity")) return e["m_infinity"]["purity"].value("verdict", "");
  if (e.contains("slopes")) return e["slopes"].dump();
  return "";
}

}  // namespace

CorpusResult corpus(const std::string& dir, const PrecisionPolicy& pol, unsigned jobs) {
  namespace fs = std::filesystem;
  require_input(fs::is_directory(dir), "corpus directory not found: " + dir);
  std::vector<std::string> names;
  for (const auto& de : fs::directory_iterator(dir))
    if (de.is_regular_file() && de.path().extension() == ".json") names.push_back(de.path().filename().string());
  std::sort(names.begin(), names.end());
  std::set<std::string> folded;
  for (const auto& n : names) {
    std::string f = n;
    std::transform(f.begin(), f.end(), f.begin(), [](unsigned char c) { return (char)std::tolower(c); });
    require_input(folded.insert(f).second, "duplicate item name: " + n);
  }

  std::vector<Outcome> res(names.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < names.size(); i = next++) {
      Outcome o;
      try {
        std::ifstream in(fs::path(dir) / names[i]);
        json doc = json::parse(in);
        o = corpus_item(doc, pol);
      } catch (const json::exception& e) {
        o = start("unknown");
        note_error(o, "input", kInput, "Input", e.what());
        finish(o);
      } catch (const Error& e) {
        o = start("unknown");
        note_error(o, "input", status_of(e.kind()), error_kind_name(e.kind()), e.what());
        finish(o);
      } catch (const std::exception& e) {
        o = start("unknown");
        note_error(o, "input", kInternal, "Internal", e.what());
        finish(o);
      }
      json entry{{"item", names[i]}};
      for (auto& [k, v] : o.entry.items()) entry[k] = v;
      o.entry = std::move(entry);
      res[i] = std::move(o);
    }
  };
  unsigned n = std::max(1u, std::min<unsigned>(jobs, (unsigned)std::max<size_t>(names.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  CorpusResult out;
  std::vector<json> entries;
  json summary = json::array();
  for (auto& o : res) {
    out.status = worse(out.status, o.status);
    summary.push_back(json{{"item", o.entry["item"]},
                           {"command", o.entry["command"]},
                           {"status", o.entry["status"]},
                           {"verdict", verdict_of(o.entry)}});
    entries.push_back(std::move(o.entry));
  }
  out.report = make_report(pol, entries);
  out.report["summary"] = summary;
  return out;
}

// ---- markdown ----

namespace {

std::string cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  std::string o;
  for (char c : s) {
    if (c == '|') o += "\\|";
    else if (c == '\n') o += ' ';
    else o += c;
  }
  return o;
}

bool scalar_array(const json& v) {
  if (!v.is_array()) return false;
  for (const auto& x : v)
    if (x.is_structured()) return false;
  return true;
}

void flatten(const json& v, const std::string& path, std::ostringstream& os) {
  if (v.is_object() && !v.empty()) {
    for (const auto& [k, x] : v.items()) flatten(x, path + "/" + k, os);
  } else if (v.is_array() && !v.empty() && !scalar_array(v)) {
    for (size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "/" + std::to_string(i), os);
  } else {
    os << "| " << cell(path) << " | " << cell(v) << " |\n";
  }
}

}  // namespace

std::string to_markdown(const json& report) {
  std::ostringstream os;
  os << "# dmiso report\n\n| key | value |\n|---|---|\n";
  for (const char* k : {"tool", "version", "schema"})
    if (report.contains(k)) os << "| " << k << " | " << cell(report[k]) << " |\n";
  if (report.contains("policy")) flatten(report["policy"], "policy", os);
  if (report.contains("summary")) {
    os << "\n## Summary\n\n| item | command | status | verdict |\n|---|---|---|---|\n";
    for (const auto& s : report["summary"])
      os << "| " << cell(s["item"]) << " | " << cell(s["command"]) << " | " << cell(s["status"]) << " | " << cell(s["verdict"])
         << " |\n";
  }
  if (report.contains("entries")) {
    size_t i = 0;
    for (const auto& e : report["entries"]) {
      ++i;
      os << "\n## Entry " << i;
      if (e.contains("item")) os << ": " << cell(e["item"]);
      os << "\n\n| path | value |\n|---|---|\n";
      flatten(e, "", os);
    }
  }
  return os.str();
}

}  // namespace dmiso::cmd
