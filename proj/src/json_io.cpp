#include "dmiso/json_io.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace dmiso::io {

namespace {

int64_t get_int(const json& j, const char* key) {
  require_input(j.is_object() && j.contains(key), std::string("missing key \"") + key + "\"");
  const json& v = j.at(key);
  require_input(v.is_number_integer(), std::string("key \"") + key + "\" must be an integer");
  return v.get<int64_t>();
}

int64_t as_int(const json& v, const char* what) {
  require_input(v.is_number_integer(), std::string(what) + " must be an integer");
  return v.get<int64_t>();
}

const json& get_array(const json& j, const char* key) {
  require_input(j.is_object() && j.contains(key) && j.at(key).is_array(),
                std::string("key \"") + key + "\" must be an array");
  return j.at(key);
}

uint32_t small_positive(int64_t v, const char* what) {
  require_input(v >= 1 && v <= std::numeric_limits<uint32_t>::max(), std::string(what) + " must be positive");
  return (uint32_t)v;
}

json prec_json(int64_t prec) { return prec >= kExact ? json(nullptr) : json(prec); }

// [[exp, elem], ...] -> dense vector from the least exponent
template <class K, class Parse>
std::pair<int64_t, std::vector<K>> sparse_terms(const json& arr, const K& zero, Parse parse) {
  require_input(arr.is_array(), "terms must be an array of [exponent, element] pairs");
  std::map<int64_t, K> terms;
  for (const auto& t : arr) {
    require_input(t.is_array() && t.size() == 2, "each term must be [exponent, element]");
    int64_t e = as_int(t[0], "exponent");
    require_input(!terms.count(e), "repeated exponent " + std::to_string(e));
    terms.emplace(e, parse(t[1]));
  }
  if (terms.empty()) return {0, {}};
  int64_t lo = terms.begin()->first, hi = terms.rbegin()->first;
  require_input(hi - lo < (int64_t)1 << 20, "exponent range too large");
  std::vector<K> c((size_t)(hi - lo + 1), zero);
  for (auto& [e, v] : terms) c[(size_t)(e - lo)] = v;
  return {lo, c};
}

// (lo, N) from an optional window; N null means exact
std::pair<std::optional<int64_t>, int64_t> parse_window(const json& j) {
  if (!j.contains("window")) return {std::nullopt, kExact};
  const json& w = j.at("window");
  require_input(w.is_array() && w.size() == 2, "window must be [n_min, N]");
  int64_t lo = as_int(w[0], "window start");
  int64_t prec = w[1].is_null() ? kExact : as_int(w[1], "window end");
  require_input(prec >= kExact || prec >= lo, "window end below its start");
  return {lo, prec};
}

template <class K, class Parse>
ZSeries<K> parse_zseries(const json& j, typename K::Ctx ctx, Parse parse) {
  require_input(j.is_object(), "series must be an object with \"z_coeffs\"");
  auto [lo, c] = sparse_terms<K>(get_array(j, "z_coeffs"), K::zero(ctx), parse);
  auto [wlo, prec] = parse_window(j);
  if (c.empty()) return ZSeries<K>(ctx, wlo.value_or(0), {}, prec);
  require_input(!wlo || *wlo <= lo, "coefficient below the window");
  require_input(prec >= kExact || lo + (int64_t)c.size() <= prec, "coefficient beyond the window");
  return ZSeries<K>(ctx, lo, c, prec);
}

template <class K, class Ser>
json zseries_terms(const ZSeries<K>& x, Ser ser) {
  json terms = json::array();
  for (size_t i = 0; i < x.coeffs().size(); ++i) {
    const K& c = x.coeffs()[i];
    if (c.is_exact_zero()) continue;
    terms.push_back(json::array({x.lo() + (int64_t)i, ser(c)}));
  }
  return json{{"z_coeffs", terms}, {"window", json::array({x.is_zero() ? std::min<int64_t>(x.prec(), 0) : x.lo(), prec_json(x.prec())})}};
}

template <class K, class Parse>
SMat<K> parse_mat(const json& j, typename K::Ctx ctx, Parse parse) {
  require_input(j.is_array() && !j.empty(), "matrix must be a nonempty array of rows");
  size_t r = j.size();
  size_t c = j[0].is_array() ? j[0].size() : 0;
  require_input(c > 0, "matrix rows must be nonempty arrays");
  SMat<K> a(r, c, ZSeries<K>::zero(ctx));
  for (size_t i = 0; i < r; ++i) {
    require_input(j[i].is_array() && j[i].size() == c, "matrix rows must have equal length");
    for (size_t k = 0; k < c; ++k) a(i, k) = parse_zseries<K>(j[i][k], ctx, parse);
  }
  return a;
}

template <class K, class Ser>
json mat_terms(const SMat<K>& a, Ser ser) {
  json rows = json::array();
  for (size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (size_t k = 0; k < a.cols(); ++k) row.push_back(ser(a(i, k)));
    rows.push_back(row);
  }
  return rows;
}

void check_kind(const json& j, const char* kind) {
  if (j.contains("kind"))
    require_input(j.at("kind").is_string() && j.at("kind").get<std::string>() == kind,
                  std::string("document kind must be \"") + kind + "\"");
}

}  // namespace

PrecisionPolicy parse_policy(const json& j) {
  PrecisionPolicy p;
  if (j.is_null()) return p;
  require_input(j.is_object(), "policy must be an object");
  auto pos = [&](const char* k, int64_t& dst) {
    if (!j.contains(k)) return;
    dst = as_int(j.at(k), k);
    require_input(dst > 0, std::string(k) + " must be positive");
  };
  pos("z_prec", p.z_prec);
  pos("tauinv_prec", p.tauinv_prec);
  pos("ext_max", p.ext_max);
  pos("purity_max_iters", p.max_iters);
  if (j.contains("zeta_window")) {
    const json& w = j.at("zeta_window");
    require_input(w.is_array() && w.size() == 2, "zeta_window must be [lo, hi)");
    p.zeta_lo = as_int(w[0], "zeta_window start");
    p.zeta_hi = as_int(w[1], "zeta_window end");
    require_input(p.zeta_lo < p.zeta_hi, "zeta_window must be nonempty");
  }
  if (j.contains("seed")) {
    require_input(j.at("seed").is_number_unsigned() || j.at("seed").is_number_integer(), "seed must be an integer");
    p.seed = j.at("seed").get<uint64_t>();
  }
  return p;
}

json policy_json(const PrecisionPolicy& p) {
  return json{{"z_prec", p.z_prec},
              {"zeta_window", json::array({p.zeta_lo, p.zeta_hi})},
              {"tauinv_prec", p.tauinv_prec},
              {"ext_max", p.ext_max},
              {"purity_max_iters", p.max_iters},
              {"seed", p.seed}};
}

Base parse_base(const json& j, const PrecisionPolicy& pol) {
  require_input(j.is_object(), "base must be an object");
  require_input(j.contains("kind") && j.at("kind").is_string(), "base needs a \"kind\"");
  std::string kind = j.at("kind").get<std::string>();
  uint32_t p = small_positive(get_int(j, "p"), "p");
  uint32_t a = j.contains("a") ? small_positive(get_int(j, "a"), "a") : 1;
  uint32_t m = j.contains("m") ? small_positive(get_int(j, "m"), "m") : 1;
  Base b;
  b.F = &FiniteField::get(p, a, m);
  if (kind == "finite") return b;
  require_input(kind == "local", "base kind must be \"finite\" or \"local\"");
  int64_t lo = pol.zeta_lo, hi = pol.zeta_hi;
  if (j.contains("window")) {
    const json& w = j.at("window");
    require_input(w.is_array() && w.size() == 2, "local window must be [n_min, n_max]");
    lo = as_int(w[0], "window start");
    hi = as_int(w[1], "window end");
  }
  require_input(lo < hi, "local window must be nonempty");
  b.L = &LocalField::get(*b.F, lo, hi);
  return b;
}

json field_json(const FiniteField& F) { return json{{"kind", "finite"}, {"p", F.p()}, {"a", F.a()}, {"m", F.m()}}; }

json local_json(const LocalField& L) {
  json j = field_json(L.residue_field());
  j["kind"] = "local";
  j["window"] = json::array({L.n_min(), L.n_max()});
  return j;
}

json base_json(const Base& b) { return b.L ? local_json(*b.L) : field_json(*b.F); }

Fq parse_fq(const json& j, const FiniteField& F) {
  if (j.is_number_integer()) return Fq::from_int(&F, j.get<int64_t>());
  require_input(j.is_array(), "finite-field element must be an array of F_p digits");
  require_input(j.size() <= F.n(), "too many digits for " + F.name());
  std::vector<uint32_t> d(F.n(), 0);
  for (size_t i = 0; i < j.size(); ++i) {
    int64_t v = as_int(j[i], "digit");
    require_input(v >= 0 && v < (int64_t)F.p(), "digit out of range for " + F.name());
    d[i] = (uint32_t)v;
  }
  return Fq(F, F.pack(d));
}

json fq_json(const Fq& x) {
  auto d = x.field().digits(x.raw());
  while (!d.empty() && d.back() == 0) d.pop_back();
  return json(d);
}

json fq_json(const Fq& x, const FiniteField& F) { return fq_json(x.embed(F)); }

Laurent parse_laurent(const json& j, const LocalField& L) {
  require_input(j.is_object(), "local element must be an object with \"coeffs\"");
  const FiniteField& F = L.residue_field();
  auto [lo, c] = sparse_terms<Fq>(get_array(j, "coeffs"), Fq::zero(&F), [&](const json& e) { return parse_fq(e, F); });
  if (j.contains("window")) {
    const json& w = j.at("window");
    require_input(w.is_array() && w.size() == 2 && w[0] == L.n_min() && w[1] == L.n_max(),
                  "element window differs from the base window");
  }
  int64_t prec = j.contains("prec") && !j.at("prec").is_null() ? as_int(j.at("prec"), "prec") : kExact;
  std::vector<uint64_t> raw;
  for (const auto& x : c) raw.push_back(x.raw());
  require_input(c.empty() || (lo >= L.n_min() && lo + (int64_t)c.size() <= L.n_max()), "zeta-exponent outside the window");
  require_input(prec >= kExact || c.empty() || lo + (int64_t)c.size() <= prec, "coefficient beyond the stated precision");
  return Laurent(&L, c.empty() ? 0 : lo, raw, prec);
}

json laurent_json(const Laurent& x) {
  json terms = json::array();
  const FiniteField& F = x.field();
  for (size_t i = 0; i < x.coeffs().size(); ++i)
    if (x.coeffs()[i]) terms.push_back(json::array({x.lo() + (int64_t)i, fq_json(Fq(F, x.coeffs()[i]))}));
  json j{{"coeffs", terms}, {"window", json::array({x.ctx()->n_min(), x.ctx()->n_max()})}};
  if (!x.is_exact()) j["prec"] = x.prec();
  return j;
}

ZFq parse_zfq(const json& j, const FiniteField& F) {
  return parse_zseries<Fq>(j, &F, [&](const json& e) { return parse_fq(e, F); });
}

ZLoc parse_zloc(const json& j, const LocalField& L) {
  return parse_zseries<Laurent>(j, &L, [&](const json& e) { return parse_laurent(e, L); });
}

json zseries_json(const ZFq& x, const FiniteField& F) {
  return zseries_terms(x, [&](const Fq& c) { return fq_json(c, F); });
}

json zseries_json(const ZLoc& x) { return zseries_terms(x, [](const Laurent& c) { return laurent_json(c); }); }

SMat<Fq> parse_mat_fq(const json& j, const FiniteField& F) {
  return parse_mat<Fq>(j, &F, [&](const json& e) { return parse_fq(e, F); });
}

SMat<Laurent> parse_mat_loc(const json& j, const LocalField& L) {
  return parse_mat<Laurent>(j, &L, [&](const json& e) { return parse_laurent(e, L); });
}

const FiniteField& coefficient_field(const SMat<Fq>& a) {
  const FiniteField* f = a(0, 0).ctx();
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) {
      f = &join_fields(*f, *a(i, j).ctx());
      for (const auto& c : a(i, j).coeffs()) f = &join_fields(*f, c.field());
    }
  return *f;
}

json mat_json(const SMat<Fq>& a, const FiniteField& F) {
  return mat_terms(a, [&](const ZFq& x) { return zseries_json(x, F); });
}

json mat_json(const SMat<Laurent>& a) {
  return mat_terms(a, [](const ZLoc& x) { return zseries_json(x); });
}

json lattice_json(const Lattice<Fq>& t, const FiniteField& F) {
  return json{{"basis", mat_json(t.basis, F)}, {"diag", t.diag}};
}

json lattice_json(const Lattice<Laurent>& t) { return json{{"basis", mat_json(t.basis)}, {"diag", t.diag}}; }

namespace {
std::vector<int64_t> parse_diag(const json& j, size_t n) {
  const json& d = get_array(j, "diag");
  require_input(d.size() == n, "lattice diagonal has the wrong length");
  std::vector<int64_t> out;
  for (const auto& v : d) out.push_back(as_int(v, "diagonal entry"));
  return out;
}
}  // namespace

Lattice<Fq> parse_lattice_fq(const json& j, const FiniteField& F) {
  require_input(j.is_object() && j.contains("basis"), "lattice needs a basis");
  auto b = parse_mat_fq(j.at("basis"), F);
  require_input(b.rows() == b.cols(), "lattice basis must be square");
  return Lattice<Fq>{b, parse_diag(j, b.rows())};
}

Lattice<Laurent> parse_lattice_loc(const json& j, const LocalField& L) {
  require_input(j.is_object() && j.contains("basis"), "lattice needs a basis");
  auto b = parse_mat_loc(j.at("basis"), L);
  require_input(b.rows() == b.cols(), "lattice basis must be square");
  return Lattice<Laurent>{b, parse_diag(j, b.rows())};
}

std::string rational_str(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<int64_t>());
  require_input(j.is_string(), "rational must be an integer or \"a/b\"");
  std::string s = j.get<std::string>();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(s));
    int64_t den = std::stoll(s.substr(slash + 1));
    require_input(den != 0, "zero denominator");
    return Rational(std::stoll(s.substr(0, slash)), den);
  } catch (const std::logic_error&) {
    fail(ErrorKind::Input, "malformed rational \"" + s + "\"");
  }
}

json skew_laurent_json(const SkewLaurent& x, const FiniteField& F) {
  json terms = json::array();
  for (size_t i = 0; i < x.coeffs().size(); ++i) {
    const Fq& c = x.coeffs()[i];
    if (!c.is_zero()) terms.push_back(json::array({x.lo() + (int64_t)i, fq_json(c, F)}));
  }
  return json{{"field", field_json(F)},
              {"tau_inv_coeffs", terms},
              {"window", json::array({x.is_zero() ? std::min<int64_t>(x.prec(), 0) : x.lo(), prec_json(x.prec())})}};
}

SkewLaurent parse_skew_laurent(const json& j, const FiniteField* base, const FiniteField& F) {
  require_input(j.is_object(), "skew series must be an object");
  auto [lo, c] =
      sparse_terms<Fq>(get_array(j, "tau_inv_coeffs"), Fq::zero(&F), [&](const json& e) { return parse_fq(e, F); });
  auto [wlo, prec] = parse_window(j);
  require_input(prec >= kExact || c.empty() || lo + (int64_t)c.size() <= prec, "coefficient beyond the window");
  return SkewLaurent(base, c.empty() ? wlo.value_or(0) : lo, c, prec);
}

IsoDoc parse_isocrystal(const json& j, const PrecisionPolicy& pol) {
  require_input(j.is_object(), "isocrystal document must be an object");
  check_kind(j, "isocrystal");
  IsoDoc d;
  require_input(j.contains("base"), "isocrystal needs a base");
  d.base = parse_base(j.at("base"), pol);
  require_input(j.contains("tau_matrix"), "isocrystal needs a tau_matrix");
  if (d.base.local())
    d.loc = make_isocrystal(parse_mat_loc(j.at("tau_matrix"), *d.base.L));
  else
    d.fin = make_isocrystal(parse_mat_fq(j.at("tau_matrix"), *d.base.F));
  size_t r = d.fin ? d.fin->rank() : d.loc->rank();
  if (j.contains("rank")) require_input(get_int(j, "rank") == (int64_t)r, "stated rank differs from the matrix size");
  return d;
}

json isocrystal_json(const Isocrystal<Fq>& m) {
  const FiniteField& f = coefficient_field(m.tau);
  return json{{"kind", "isocrystal"}, {"rank", m.rank()}, {"base", field_json(f)}, {"tau_matrix", mat_json(m.tau, f)}};
}

json isocrystal_json(const Isocrystal<Laurent>& m) {
  return json{{"kind", "isocrystal"}, {"rank", m.rank()}, {"base", local_json(*m.ctx())}, {"tau_matrix", mat_json(m.tau)}};
}

DrinfeldDoc parse_drinfeld(const json& j, const PrecisionPolicy& pol) {
  require_input(j.is_object(), "Drinfeld document must be an object");
  check_kind(j, "drinfeld");
  DrinfeldDoc d;
  require_input(j.contains("base"), "Drinfeld module needs a base");
  d.base = parse_base(j.at("base"), pol);
  if (j.contains("q")) require_input(get_int(j, "q") == (int64_t)d.base.F->q(), "q differs from p^a of the base");
  const json& c = get_array(j, "coeffs");
  require_input(c.size() >= 2, "phi_t needs coefficients g_0, ..., g_r with r >= 1");
  if (d.base.local()) {
    std::vector<Laurent> g;
    for (const auto& x : c) g.push_back(parse_laurent(x, *d.base.L));
    d.loc = make_drinfeld<Laurent>(d.base.L, g);
  } else {
    std::vector<Fq> g;
    for (const auto& x : c) g.push_back(parse_fq(x, *d.base.F));
    d.fin = make_drinfeld<Fq>(d.base.F, g);
  }
  return d;
}

json drinfeld_json(const DrinfeldModule<Fq>& e) {
  json c = json::array();
  for (int64_t i = 0; i <= e.rank(); ++i) c.push_back(fq_json(e.g(i), *e.ctx()));
  return json{{"kind", "drinfeld"}, {"q", e.ctx()->q()}, {"base", field_json(*e.ctx())}, {"coeffs", c}};
}

json drinfeld_json(const DrinfeldModule<Laurent>& e) {
  json c = json::array();
  for (int64_t i = 0; i <= e.rank(); ++i) c.push_back(laurent_json(e.g(i)));
  return json{{"kind", "drinfeld"}, {"q", e.ctx()->q()}, {"base", local_json(*e.ctx())}, {"coeffs", c}};
}

}  // namespace dmiso::io
