#include <random>

#include "doctest.h"
#include "dmiso/difference_rings.hpp"

using namespace dmiso;

namespace {

const LocalField& L3(int64_t lo = -40, int64_t hi = 16) { return LocalField::get(FiniteField::get(3, 1, 1), lo, hi); }

Laurent zeta(const LocalField& L, int64_t e, uint64_t c = 1) { return Laurent::monomial(&L, c, e); }

ZLoc random_series(const LocalField& L, std::mt19937_64& g, int64_t zlo, size_t len) {
  std::vector<Laurent> c;
  for (size_t i = 0; i < len; ++i) {
    std::vector<uint64_t> cc(3);
    for (auto& x : cc) x = g() % L.q();
    c.push_back(Laurent(&L, (int64_t)(g() % 5) - 2, cc, kExact));
  }
  return ZLoc(&L, zlo, c, kExact);
}

}  // namespace

TEST_CASE("sigma acts coefficientwise and fixes z") {
  const auto& F4 = FiniteField::get(2, 1, 2);
  std::vector<Fq> c;
  for (uint64_t i = 0; i < 4; ++i) c.push_back(Fq(F4, i));
  ZFq x(&F4, -1, c, 6);
  ZFq s = x.sigma();
  for (int64_t n = -1; n < 3; ++n) CHECK(s.coeff(n) == x.coeff(n) * x.coeff(n));
  CHECK(s.prec() == 6);
  // F_2 constants are fixed
  ZFq one = ZFq::constant(Fq::one(&F4));
  CHECK(one.sigma() == one);
  const auto& L = L3();
  ZLoc y = ZLoc::monomial(zeta(L, 1), -1);
  CHECK(y.sigma() == ZLoc::monomial(zeta(L, 3), -1));
}

TEST_CASE("sigma is an injective ring endomorphism, not surjective") {
  const auto& L = L3(-60, 60);
  std::mt19937_64 g(2);
  for (int t = 0; t < 50; ++t) {
    ZLoc x = random_series(L, g, -1, 3), y = random_series(L, g, 0, 3);
    CHECK((x * y).sigma() == x.sigma() * y.sigma());
    CHECK((x + y).sigma() == x.sigma() + y.sigma());
    if (x != y) CHECK(x.sigma() != y.sigma());
    auto pre = sigma_preimage(x.sigma());
    REQUIRE(pre.has_value());
    CHECK(*pre == x);
  }
  int64_t wz = 0, wzeta = 0;
  ZLoc miss = ZLoc::constant(zeta(L, 1)) + ZLoc::z_power(&L, 2);
  CHECK_FALSE(sigma_preimage(miss, &wz, &wzeta).has_value());
  CHECK(wz == 0);
  CHECK(wzeta == 1);
}

TEST_CASE("membership examples") {
  const auto& L = L3();
  auto m1 = membership(ZLoc::z_power(&L, -3), RingTag::AK);
  CHECK(m1.decision == Decision::No);
  CHECK(*m1.witness_exponent == -3);
  ZLoc x = ZLoc::one(&L) + ZLoc::monomial(zeta(L, 1), 1);
  CHECK(membership(x, RingTag::BOK).decision == Decision::Yes);
  CHECK(membership(x, RingTag::AK).decision == Decision::Yes);
  auto m2 = membership(ZLoc::monomial(zeta(L, -2), 4), RingTag::BOK);
  CHECK(m2.decision == Decision::No);
  CHECK(*m2.witness_exponent == 4);
  CHECK(*m2.witness_valuation == -2);
  CHECK_THROWS_AS(membership(ZFq::one(&FiniteField::get(2, 1, 1)), RingTag::BOK), Error);
}

TEST_CASE("geometric valuation decrease: profile and Bbar verdicts") {
  const auto& L = LocalField::get(FiniteField::get(3, 1, 1), -100, 8);
  Laurent alpha = zeta(L, -1);
  std::vector<Laurent> c;
  Laurent pw = alpha;
  for (int n = 0; n < 4; ++n) {
    c.push_back(pw);
    pw = pw.frob();
  }
  ZLoc x(&L, 0, c, 4);
  auto prof = content_profile(x);
  CHECK(prof == std::map<int64_t, int64_t>{{0, -1}, {1, -3}, {2, -9}, {3, -27}});
  auto open = membership(x, RingTag::Bbar);
  CHECK(open.decision == Decision::Inconclusive);
  CHECK(open.decreasing_trend);
  CHECK(*open.lower_bound == -27);
  GrowthCertificate gc{0, 1, 3, 0, -1};
  CHECK(gc.diverges());
  auto closed = membership(x, RingTag::Bbar, &gc);
  CHECK(closed.decision == Decision::No);
  GrowthCertificate wrong{0, 1, 2, 0, -1};
  CHECK_THROWS_AS(membership(x, RingTag::Bbar, &wrong), Error);
  CHECK(membership(x, RingTag::BK).decision == Decision::Yes);
}

TEST_CASE("content profile examples") {
  const auto& L = L3();
  ZLoc x = ZLoc::monomial(zeta(L, -1), 1) + ZLoc::z_power(&L, 2);
  CHECK(content_profile(x) == std::map<int64_t, int64_t>{{1, -1}, {2, 0}});
  CHECK(content_profile(ZLoc::zero(&L)).empty());
}

TEST_CASE("membership is monotone along the ring tower") {
  const auto& L = L3(-60, 60);
  std::mt19937_64 g(9);
  std::vector<RingTag> tags{RingTag::AK, RingTag::BOK, RingTag::Bbar, RingTag::BK};
  for (int t = 0; t < 100; ++t) {
    ZLoc x = random_series(L, g, (int64_t)(g() % 3) - 1, 4);
    for (RingTag a : tags)
      for (RingTag b : tags)
        if (ring_included(a, b) && membership(x, a).decision == Decision::Yes)
          CHECK(membership(x, b).decision == Decision::Yes);
  }
}

TEST_CASE("content profile of a product is bounded by the min-plus convolution") {
  const auto& L = L3(-60, 60);
  std::mt19937_64 g(4);
  for (int t = 0; t < 60; ++t) {
    ZLoc x = random_series(L, g, 0, 4), y = random_series(L, g, -1, 3);
    auto px = content_profile(x), py = content_profile(y), pxy = content_profile(x * y);
    std::map<int64_t, int64_t> conv;
    for (auto [i, vi] : px)
      for (auto [j, vj] : py) {
        auto it = conv.find(i + j);
        if (it == conv.end() || vi + vj < it->second) conv[i + j] = vi + vj;
      }
    for (auto [n, v] : pxy) {
      REQUIRE(conv.count(n));
      CHECK(v >= conv[n]);
    }
    // equality at the lowest Newton point: the lowest z-exponent term
    int64_t n0 = px.begin()->first + py.begin()->first;
    CHECK(pxy.at(n0) == px.begin()->second + py.begin()->second);
  }
}
