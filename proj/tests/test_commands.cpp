#include <atomic>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "dmiso/commands.hpp"

using namespace dmiso;
using namespace dmiso::cmd;
namespace fs = std::filesystem;

namespace {

const PrecisionPolicy kPol{};

json local_module(int64_t v1, int64_t v2) {
  auto mono = [](int64_t e) { return json{{"coeffs", json::array({json::array({e, json::array({1})})})}}; };
  return json{{"kind", "drinfeld"}, {"base", {{"kind", "local"}, {"p", 3}}}, {"coeffs", json::array({mono(1), mono(v1), mono(v2)})}};
}

json carlitz_f4() {
  return json::parse(R"({"kind":"drinfeld","q":2,"base":{"kind":"finite","p":2,"m":2},"coeffs":[[0,1],[1]]})");
}

json slope0_f3() {
  return json::parse(
      R"({"base":{"kind":"finite","p":3},"tau_matrix":[[{"z_coeffs":[[0,1]]},{"z_coeffs":[[1,1]]}],[{"z_coeffs":[[0,2]]},{"z_coeffs":[[0,1]]}]]})");
}

json simple_f2(int s, int r) {
  // companion matrix of z^s: ones below the diagonal, z^s in the corner
  json rows = json::array();
  for (int i = 0; i < r; ++i) {
    json row = json::array();
    for (int j = 0; j < r; ++j) {
      json terms = json::array();
      if (r == 1) terms.push_back(json::array({s, 1}));
      else if (i == 0 && j == r - 1) terms.push_back(json::array({s, 1}));
      else if (i == j + 1) terms.push_back(json::array({0, 1}));
      row.push_back(json{{"z_coeffs", terms}});
    }
    rows.push_back(row);
  }
  return json{{"base", {{"kind", "finite"}, {"p", 2}}}, {"tau_matrix", rows}};
}

json report_of(const std::vector<Outcome>& outs) {
  std::vector<json> e;
  for (const auto& o : outs) e.push_back(o.entry);
  return make_report(kPol, e);
}

struct TempDir {
  fs::path path;
  TempDir() {
    static std::atomic<int> n{0};
    path = fs::temp_directory_path() / ("dmiso_test_" + std::to_string(::getpid()) + "_" + std::to_string(n++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  void put(const std::string& name, const std::string& text) const { std::ofstream(path / name) << text; }
};

void flip_first_digit(json& j, uint32_t p) {
  if (j.is_object()) {
    for (auto& [k, v] : j.items())
      if (k == "z_coeffs" || k == "coeffs" || k == "tau_inv_coeffs") {
        for (auto& t : v)
          if (t.size() == 2 && t[1].is_array() && !t[1].empty() && t[1][0].is_number_integer()) {
            t[1][0] = (t[1][0].get<int>() + 1) % p;
            return;
          }
      }
    for (auto& [k, v] : j.items()) {
      std::string before = v.dump();
      flip_first_digit(v, p);
      if (v.dump() != before) return;
    }
  } else if (j.is_array()) {
    for (auto& v : j) {
      std::string before = v.dump();
      flip_first_digit(v, p);
      if (v.dump() != before) return;
    }
  }
}

}  // namespace

TEST_CASE("status ordering") {
  CHECK(worse(kOk, kInconclusive) == kInconclusive);
  CHECK(worse(kInconclusive, kInput) == kInput);
  CHECK(worse(kInput, kInternal) == kInternal);
  CHECK(status_of(ErrorKind::Input) == kInput);
  CHECK(status_of(ErrorKind::NotAUnit) == kInput);
  CHECK(status_of(ErrorKind::Internal) == kInternal);
  CHECK(status_of(ErrorKind::PrecisionLoss) == kInconclusive);
}

TEST_CASE("analyze reports the three reduction types and every certificate replays") {
  auto good = analyze(local_module(0, 0), kPol);
  auto pg = analyze(local_module(0, -1), kPol);
  auto st = analyze(local_module(-1, 0), kPol);
  CHECK(good.status == kOk);
  CHECK(good.entry["crit"]["verdict"] == "Good");
  CHECK(pg.entry["crit"]["verdict"] == "PotentiallyGood");
  CHECK(pg.entry["crit"]["ramification"] == 8);
  CHECK(st.entry["crit"]["verdict"] == "Stable");
  CHECK(st.entry["crit"]["obstruction"]["slope0_rank"] == 1);
  for (const auto* o : {&good, &pg, &st}) CHECK(o->entry["crit"]["agree"] == true);

  auto fin = analyze(carlitz_f4(), kPol);
  CHECK(fin.status == kOk);
  CHECK(fin.entry["m_infinity"]["slopes"] == json::array({"-1"}));
  CHECK(fin.entry["m_infinity"]["slopes_agree"] == true);

  auto v = verify(report_of({good, pg, st, fin}));
  CHECK(v.status == kOk);
  CHECK(v.failed == 0);
  CHECK(v.checked >= 10);
}

TEST_CASE("forged certificates are rejected") {
  auto good = analyze(local_module(0, 0), kPol);
  auto st = analyze(local_module(-1, 0), kPol);
  auto tate_o = tate(slope0_f3(), 4, PrecisionPolicy{8, -8, 8, 16, 32, 32, 0});
  REQUIRE(tate_o.status == kOk);
  auto weil_o = weil(carlitz_f4(), kPol);
  REQUIRE(weil_o.status == kOk);
  auto rep = report_of({good, st, tate_o, weil_o});
  REQUIRE(verify(rep).failed == 0);

  auto expect_reject = [&](const char* what, auto mutate) {
    json r = rep;
    mutate(r["entries"]);
    auto v = verify(r);
    CHECK_MESSAGE(v.failed > 0, what);
    CHECK_MESSAGE(v.status == kInternal, what);
  };
  expect_reject("reduction scaling", [](json& e) { e[0]["reduction"]["m"] = "1/2"; });
  expect_reject("good model", [](json& e) { flip_first_digit(e[0]["crit"]["model"]["model"], 3); });
  expect_reject("purity slope", [](json& e) { e[0]["m_infinity"]["purity"]["s"] = -2; });
  expect_reject("obstruction rank", [](json& e) { e[1]["crit"]["obstruction"]["slope0_rank"] = 0; });
  expect_reject("Tate lattice", [](json& e) { flip_first_digit(e[2]["tate"]["lattice"], 3); });
  expect_reject("Tate Frobenius", [](json& e) { flip_first_digit(e[2]["tate"]["frobenius"]["matrix"], 3); });
  expect_reject("Tate duplicate basis", [](json& e) { e[2]["tate"]["basis"][1] = e[2]["tate"]["basis"][0]; });
  expect_reject("Tate zero module basis", [](json& e) {
    for (auto& v : e[2]["tate"]["frobenius"]["module_basis"])
      for (auto& x : v) x = json{{"z_coeffs", json::array()}, {"window", json::array({0, 4})}};
  });
  expect_reject("Weil valuation", [](json& e) { e[3]["weil"]["rho_valuation"] = "-1/2"; });
  expect_reject("conjugator", [](json& e) { flip_first_digit(e[3]["weil"]["conjugator"]["u"], 2); });
}

TEST_CASE("solve outcomes and their certificates") {
  json base = {{"kind", "local"}, {"p", 3}, {"window", json::array({-100, 8})}};
  json a = {{"base", base}, {"z_coeffs", json::array({json::array({-1, json{{"coeffs", json::array({json::array({0, json::array({1})})})}}})})}};
  json b = {{"z_coeffs", json::array({json::array({-1, json{{"coeffs", json::array({json::array({-1, json::array({2})})})}}})})}};
  auto bk = solve(a, b, "BK", 4, kPol);
  CHECK(bk.status == kOk);
  CHECK(bk.entry["outcome"]["verdict"] == "Solution");
  auto bar = solve(a, b, "Bbar", 4, kPol);
  CHECK(bar.entry["outcome"]["verdict"] == "NoSolution");
  CHECK(bar.entry["outcome"]["reason"] == "UnboundedCoefficientValuations");
  CHECK(verify(report_of({bk, bar})).failed == 0);
  CHECK(solve(a, b, "ZZ", 4, kPol).status == kInput);
}

TEST_CASE("isocrystal subcommands") {
  auto t = isocrystal("tensor", {simple_f2(1, 2), simple_f2(1, 3)}, 0, 1, kPol);
  CHECK(t.status == kOk);
  CHECK(t.entry["slope_identity"] == true);
  auto d = isocrystal("dual", {simple_f2(1, 2)}, 0, 1, kPol);
  CHECK(d.entry["slopes_result"] == json::array({"-1/2", "-1/2"}));
  auto p = isocrystal("purity", {simple_f2(1, 2)}, 1, 2, kPol);
  CHECK(p.entry["purity"]["verdict"] == "Certified");
  auto np = isocrystal("purity", {simple_f2(1, 2)}, 1, 3, kPol);
  CHECK(np.entry["purity"]["verdict"] == "NotPureAt");
  CHECK(verify(report_of({p, np})).failed == 0);
  CHECK(isocrystal("tensor", {simple_f2(1, 2)}, 0, 1, kPol).status == kInput);
  CHECK(isocrystal("rotate", {simple_f2(1, 2)}, 0, 1, kPol).status == kInput);
}

TEST_CASE("corpus runs are deterministic and isolate failures") {
  TempDir dir;
  dir.put("b_good.json", local_module(0, 0).dump());
  dir.put("a_carlitz.json", carlitz_f4().dump());
  dir.put("c_iso.json", slope0_f3().dump());
  dir.put("d_broken.json", "{ not json");
  dir.put("e_bad_field.json", R"({"base":{"kind":"finite","p":6},"coeffs":[[1],[1]]})");
  dir.put("notes.txt", "ignored");
  auto r1 = corpus(dir.path.string(), kPol, 1);
  auto r8 = corpus(dir.path.string(), kPol, 8);
  CHECK(r1.report.dump(2) == r8.report.dump(2));
  CHECK(r1.status == kInput);
  const auto& s = r1.report["summary"];
  REQUIRE(s.size() == 5);
  CHECK(s[0]["item"] == "a_carlitz.json");
  CHECK(s[0]["status"] == "ok");
  CHECK(s[1]["verdict"] == "Good");
  CHECK(s[3]["status"] == "input_error");
  CHECK(s[4]["status"] == "input_error");
  CHECK(verify(r1.report).failed == 0);

  TempDir empty;
  auto re = corpus(empty.path.string(), kPol, 4);
  CHECK(re.status == kOk);
  CHECK(re.report["entries"].empty());

  TempDir dup;
  dup.put("Item.json", carlitz_f4().dump());
  dup.put("item.json", carlitz_f4().dump());
  auto input_error = [](const std::string& d) {
    try {
      corpus(d, kPol, 1);
    } catch (const Error& e) {
      return e.kind() == ErrorKind::Input;
    }
    return false;
  };
  CHECK(input_error(dup.path.string()));
  CHECK(input_error((dir.path / "missing").string()));
}

TEST_CASE("markdown is generated from the report") {
  auto o = analyze(carlitz_f4(), kPol);
  auto md = to_markdown(report_of({o}));
  CHECK(md.rfind("# dmiso report", 0) == 0);
  CHECK(md.find("| policy/z_prec | 8 |") != std::string::npos);
  CHECK(md.find("| /m_infinity/purity/verdict | Certified |") != std::string::npos);
  CHECK(md == to_markdown(report_of({o})));
}
