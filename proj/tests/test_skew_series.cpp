#include <random>

#include "doctest.h"
#include "dmiso/skew.hpp"

using namespace dmiso;

namespace {

SkewLaurent random_unit(const FiniteField& F, std::mt19937_64& g, int64_t v, size_t len) {
  std::vector<Fq> c(len, Fq::zero(&F));
  for (auto& x : c) x = Fq(F, g() % F.order());
  if (c[0].is_zero()) c[0] = Fq::one(&F);
  return SkewLaurent(&F, v, c, kExact);
}

}  // namespace

TEST_CASE("tau times zeta over F_3((zeta))") {
  const auto& L = LocalField::get(FiniteField::get(3, 1, 1), -8, 8);
  auto tau = SkewPoly<Laurent>::tau(&L);
  auto zeta = SkewPoly<Laurent>::constant(Laurent::monomial(&L, 1, 1));
  auto prod = tau * zeta;
  CHECK(prod.degree() == 1);
  CHECK(prod.coeff(1) == Laurent::monomial(&L, 1, 3));
  CHECK(prod.coeff(0).is_zero());
  CHECK(tau * tau == SkewPoly<Laurent>::tau(&L, 2));
}

TEST_CASE("(alpha + tau)(beta + tau) over F_4 against composition on F_16") {
  const auto& F4 = FiniteField::get(2, 1, 2);
  const auto& F16 = FiniteField::get(2, 1, 4);
  for (uint64_t a = 0; a < 4; ++a)
    for (uint64_t b = 0; b < 4; ++b) {
      Fq al(F4, a), be(F4, b);
      SkewPoly<Fq> f(&F4, {al, Fq::one(&F4)}), g(&F4, {be, Fq::one(&F4)});
      auto fg = f * g;
      // closed form
      CHECK(fg.coeff(0) == al * be);
      CHECK(fg.coeff(1) == al + be * be);
      CHECK(fg.coeff(2) == Fq::one(&F4));
      // oracle: additive polynomials compose
      for (uint64_t x = 0; x < 16; ++x) {
        Fq X(F16, x);
        CHECK(evaluate_additive(fg, X) == evaluate_additive(f, evaluate_additive(g, X)));
      }
    }
}

TEST_CASE("skew inverses") {
  const auto& F = FiniteField::get(2, 1, 3);
  auto tau = SkewLaurent::from_poly(SkewPoly<Fq>::tau(&F));
  auto ti = tau.inverse(10);
  CHECK(ti.v_tau_inv() == 1);
  CHECK(ti.is_exact());
  CHECK(ti == SkewLaurent::tau_inv_power(&F, 1));
  Fq theta(F, F.generator());
  auto phi = SkewLaurent::from_poly(SkewPoly<Fq>(&F, {theta, Fq::one(&F)}));
  auto inv = phi.inverse(12);
  auto one = phi * inv;
  CHECK(one.prec() == 12);
  CHECK(one == SkewLaurent::one(&F));
  CHECK((inv * phi) == SkewLaurent::one(&F));
  try {
    (void)SkewLaurent::zero(&F).inverse(4);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAUnit);
  }
}

TEST_CASE("tau^-1 valuations") {
  const auto& F = FiniteField::get(3, 1, 2);
  CHECK(SkewLaurent::tau_inv_power(&F, 1).v_tau_inv() == 1);
  CHECK(SkewLaurent::constant(Fq(F, 5)).v_tau_inv() == 0);
  std::mt19937_64 g(3);
  for (int r = 1; r <= 4; ++r) {
    std::vector<Fq> c;
    for (int i = 0; i <= r; ++i) c.push_back(Fq(F, g() % 9));
    c[(size_t)r] = Fq(F, 1 + g() % 8);
    SkewPoly<Fq> phi(&F, c);
    auto inv = SkewLaurent::from_poly(phi).inverse(8);
    CHECK(inv.v_tau_inv() == r);
  }
}

TEST_CASE("skew Laurent ring properties") {
  const auto& F = FiniteField::get(2, 1, 4);
  std::mt19937_64 g(17);
  for (int t = 0; t < 60; ++t) {
    auto a = random_unit(F, g, (int64_t)(g() % 5) - 2, 5);
    auto b = random_unit(F, g, (int64_t)(g() % 5) - 2, 4);
    auto c = random_unit(F, g, (int64_t)(g() % 5) - 2, 6);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * b).v_tau_inv() == a.v_tau_inv() + b.v_tau_inv());
    auto f = random_unit(F, g, -1, 4).truncate(10);
    auto back = conjugate(a, conjugate(a.inverse(20), f, 20), 20);
    CHECK(back == f);
  }
}

TEST_CASE("conjugation by tau applies Frobenius to constants") {
  const auto& F = FiniteField::get(2, 1, 4);
  auto tau = SkewLaurent::from_poly(SkewPoly<Fq>::tau(&F));
  Fq al(F, F.generator());
  auto r = conjugate(tau, SkewLaurent::constant(al), 8);
  CHECK(r == SkewLaurent::constant(al.frob()));
  CHECK(conjugate(SkewLaurent::one(&F), SkewLaurent::constant(al), 8) == SkewLaurent::constant(al));
}
