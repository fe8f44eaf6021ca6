#include <random>

#include "doctest.h"
#include "dmiso/json_io.hpp"
#include "dmiso/tate_weil.hpp"
#include "rational_fmt.hpp"

using namespace dmiso;
using namespace dmiso::io;

namespace {

Fq rnd(const FiniteField& F, std::mt19937_64& g) { return Fq(F, g() % F.order()); }

Laurent rnd_laurent(const LocalField& L, std::mt19937_64& g) {
  std::vector<uint64_t> c;
  for (int i = 0; i < 4; ++i) c.push_back(g() % L.residue_field().order());
  return Laurent(&L, (int64_t)(g() % 5) - 2, c, kExact);
}

bool input_error(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == ErrorKind::Input;
  }
  return false;
}

}  // namespace

TEST_CASE("policy defaults and overrides") {
  auto d = parse_policy(json());
  CHECK(d.z_prec == 8);
  CHECK(d.tauinv_prec == 16);
  auto p = parse_policy(json::parse(R"({"z_prec":5,"zeta_window":[-20,4],"seed":7})"));
  CHECK(p.z_prec == 5);
  CHECK(p.zeta_lo == -20);
  CHECK(p.zeta_hi == 4);
  CHECK(p.seed == 7);
  CHECK(parse_policy(policy_json(p)).zeta_lo == -20);
  CHECK(input_error([] { parse_policy(json::parse(R"({"z_prec":0})")); }));
  CHECK(input_error([] { parse_policy(json::parse(R"({"zeta_window":[3,3]})")); }));
}

TEST_CASE("finite field elements round-trip") {
  std::mt19937_64 g(1);
  for (auto [p, a, m] : {std::tuple{2u, 1u, 1u}, std::tuple{3u, 1u, 2u}, std::tuple{2u, 2u, 3u}}) {
    const auto& F = FiniteField::get(p, a, m);
    for (int t = 0; t < 20; ++t) {
      Fq x = rnd(F, g);
      CHECK(parse_fq(fq_json(x), F) == x);
    }
  }
  const auto& F9 = FiniteField::get(3, 1, 2);
  CHECK(parse_fq(json(2), F9) == Fq::from_int(&F9, 2));
  CHECK(parse_fq(json::array(), F9).is_zero());
  // subfield elements written in the larger field read back after embedding
  const auto& F3 = FiniteField::get(3, 1, 1);
  Fq two(F3, 2);
  CHECK(parse_fq(fq_json(two, F9), F9) == two.embed(F9));
  CHECK(input_error([&] { parse_fq(json::parse("[3]"), F9); }));
  CHECK(input_error([&] { parse_fq(json::parse("[0,0,1]"), F9); }));
  CHECK(input_error([&] { parse_fq(json("x"), F9); }));
}

TEST_CASE("local elements and series round-trip") {
  std::mt19937_64 g(2);
  const auto& L = LocalField::get(FiniteField::get(3, 1, 1), -8, 8);
  for (int t = 0; t < 20; ++t) {
    Laurent x = rnd_laurent(L, g);
    CHECK(parse_laurent(laurent_json(x), L) == x);
    ZLoc s(&L, (int64_t)(g() % 3) - 1, {x, rnd_laurent(L, g)}, 6);
    auto back = parse_zloc(zseries_json(s), L);
    CHECK(back.prec() == 6);
    CHECK((back - s).truncate(6).is_zero());
  }
  // precision-limited Laurent elements keep their precision
  Laurent lim(&L, 0, {1, 2}, 3);
  auto lj = laurent_json(lim);
  CHECK(lj.at("prec") == 3);
  CHECK(parse_laurent(lj, L).prec() == 3);
  CHECK(input_error([&] { parse_laurent(json::parse(R"({"coeffs":[[9,[1]]]})"), L); }));
  CHECK(input_error([&] { parse_laurent(json::parse(R"({"coeffs":[[0,[1]]],"window":[-4,4]})"), L); }));

  const auto& F4 = FiniteField::get(2, 2, 1);
  ZFq z(&F4, -2, {rnd(F4, g), Fq::one(&F4), rnd(F4, g)}, kExact);
  CHECK(parse_zfq(zseries_json(z, F4), F4) == z);
  CHECK(parse_zfq(json::parse(R"({"z_coeffs":[[0,[1]]],"window":[0,4]})"), F4).prec() == 4);
  CHECK(input_error([&] { parse_zfq(json::parse(R"({"z_coeffs":[[5,[1]]],"window":[0,4]})"), F4); }));
  CHECK(input_error([&] { parse_zfq(json::parse(R"({"z_coeffs":[[0,[1]],[0,[1]]]})"), F4); }));
}

TEST_CASE("isocrystal and Drinfeld documents round-trip") {
  const auto& F2 = FiniteField::get(2, 1, 1);
  auto m = simple_pure<Fq>(&F2, 1, 3);
  auto pol = parse_policy(json());
  auto d = parse_isocrystal(isocrystal_json(m), pol);
  REQUIRE(d.fin);
  CHECK(mat_equal(d.fin->tau, m.tau));

  const auto& L = LocalField::get(FiniteField::get(3, 1, 1), -8, 8);
  auto ml = simple_pure<Laurent>(&L, -1, 2);
  auto dl = parse_isocrystal(isocrystal_json(ml), pol);
  REQUIRE(dl.loc);
  CHECK(mat_equal(dl.loc->tau, ml.tau));

  const auto& F4 = FiniteField::get(2, 1, 2);
  auto e = make_drinfeld<Fq>(&F4, {Fq(F4, F4.generator()), Fq::one(&F4), Fq(F4, 3)});
  auto de = parse_drinfeld(drinfeld_json(e), pol);
  REQUIRE(de.fin);
  CHECK(de.fin->phi == e.phi);

  auto el = make_drinfeld<Laurent>(&L, {Laurent::monomial(&L, 1, 1), Laurent::monomial(&L, 2, -1), Laurent::one(&L)});
  auto dle = parse_drinfeld(drinfeld_json(el), pol);
  REQUIRE(dle.loc);
  CHECK(dle.loc->phi == el.phi);

  CHECK(input_error([&] { parse_drinfeld(json::parse(R"({"base":{"kind":"finite","p":2},"coeffs":[[1]]})"), pol); }));
  CHECK(input_error([&] { parse_drinfeld(json::parse(R"({"q":3,"base":{"kind":"finite","p":2},"coeffs":[[1],[1]]})"), pol); }));
  CHECK(input_error([&] { parse_drinfeld(json::parse(R"({"base":{"kind":"finite","p":4},"coeffs":[[1],[1]]})"), pol); }));
  CHECK(input_error([&] { parse_isocrystal(json::parse(R"({"base":{"kind":"finite","p":2},"tau_matrix":[[{"z_coeffs":[]}]]})"), pol); }));
  CHECK(input_error([&] {
    parse_isocrystal(json::parse(R"({"kind":"drinfeld","base":{"kind":"finite","p":2},"tau_matrix":[[{"z_coeffs":[[0,1]]}]]})"), pol);
  }));
}

TEST_CASE("lattices, rationals and skew series round-trip") {
  const auto& F2 = FiniteField::get(2, 1, 1);
  auto m = simple_pure<Fq>(&F2, 1, 2);
  auto p = purity_check(m, 1, 2, 32, 8);
  REQUIRE(p.lattice);
  auto t = parse_lattice_fq(lattice_json(*p.lattice, F2), F2);
  CHECK(verify_purity(m, 1, 2, t, 16));

  for (auto r : {Rational(0), Rational(-3, 4), Rational(5), Rational(7, 2)}) CHECK(parse_rational(json(rational_str(r))) == r);
  CHECK(parse_rational(json(3)) == Rational(3));
  CHECK(input_error([] { parse_rational(json("1/0")); }));

  const auto& F4 = FiniteField::get(2, 1, 2);
  auto c = yu_conjugator(make_drinfeld<Fq>(&F4, {Fq(F4, F4.generator()), Fq::one(&F4)}), 10, 8);
  auto u = parse_skew_laurent(skew_laurent_json(c.u, *c.field), &F4, *c.field);
  CHECK(u == c.u);
}
