#include <random>

#include "doctest.h"
#include "dmiso/local_field.hpp"

using namespace dmiso;

namespace {

Fq rnd(const FiniteField& F, std::mt19937_64& g) { return Fq(F, g() % F.order()); }

void field_axioms(const FiniteField& F, int trials) {
  std::mt19937_64 g(F.order() * 31 + 7);
  for (int t = 0; t < trials; ++t) {
    Fq a = rnd(F, g), b = rnd(F, g), c = rnd(F, g);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a - a == Fq::zero(&F));
    if (!a.is_zero()) CHECK(a * a.inv() == Fq::one(&F));
    CHECK((a * b).frob() == a.frob() * b.frob());
    CHECK(a.frob().qth_root() == a);
    CHECK(a.frob((int64_t)F.m()) == a);
  }
}

const LocalField& F3z(int64_t lo = -8, int64_t hi = 8) { return LocalField::get(FiniteField::get(3, 1, 1), lo, hi); }

Laurent z3(int64_t e, int64_t c = 1) { return Laurent::monomial(&F3z(), (uint64_t)((c % 3 + 3) % 3), e); }

}  // namespace

TEST_CASE("finite field axioms over table and polynomial representations") {
  field_axioms(FiniteField::get(2, 1, 1), 50);
  field_axioms(FiniteField::get(2, 2, 1), 200);
  field_axioms(FiniteField::get(3, 2, 1), 200);
  field_axioms(FiniteField::get(2, 1, 8), 200);
  field_axioms(FiniteField::get(3, 1, 5), 200);
  field_axioms(FiniteField::get(2, 2, 10), 200);   // 2^20, no tables
  field_axioms(FiniteField::get(3, 1, 14), 100);   // 3^14, no tables
  field_axioms(FiniteField::get(2, 1, 40), 50);
}

TEST_CASE("F_16 has no zero divisors (exhaustive)") {
  const auto& F = FiniteField::get(2, 1, 4);
  for (uint64_t x = 1; x < 16; ++x)
    for (uint64_t y = 1; y < 16; ++y) CHECK(F.mul(x, y) != 0);
}

TEST_CASE("Frobenius on F_4 squares a generator") {
  const auto& F4 = FiniteField::get(2, 1, 2);
  Fq al(F4, F4.generator());
  CHECK(al.frob() == al * al);
  CHECK(al != Fq::one(&F4));
  CHECK(al.pow(3) == Fq::one(&F4));
  const auto& F9 = FiniteField::get(3, 1, 2);
  for (int i = 0; i < 9; ++i) {
    Fq x(F9, (uint64_t)i);
    CHECK(x.qth_root() == x.pow(3));  // x^9 = x
  }
}

TEST_CASE("subfield embeddings are ring maps and compose along towers") {
  std::mt19937_64 g(5);
  struct Tower { uint32_t p, a, b, c; };
  for (Tower t : {Tower{2, 2, 4, 8}, Tower{2, 2, 6, 12}, Tower{2, 3, 6, 12}, Tower{3, 2, 4, 8}, Tower{2, 1, 3, 24}, Tower{2, 4, 8, 24}}) {
    const auto& A = FiniteField::get(t.p, 1, t.a);
    const auto& B = FiniteField::get(t.p, 1, t.b);
    const auto& C = FiniteField::get(t.p, 1, t.c);
    for (int i = 0; i < 40; ++i) {
      Fq x = rnd(A, g), y = rnd(A, g);
      CHECK((x * y).embed(B) == x.embed(B) * y.embed(B));
      CHECK((x + y).embed(C) == x.embed(C) + y.embed(C));
      CHECK(x.embed(B).embed(C) == x.embed(C));
      CHECK(C.restrict_to(A, x.embed(C).raw()) == x.raw());
    }
  }
}

TEST_CASE("local field Frobenius examples") {
  CHECK(z3(1).frob() == z3(3));
  Laurent one_plus = Laurent::one(&F3z()) + z3(1);
  Laurent cube = one_plus * one_plus * one_plus;
  CHECK(one_plus.frob() == cube);
  CHECK(cube == Laurent::one(&F3z()) + z3(3));
  CHECK_THROWS_AS(z3(-3).frob(), Error);  // -9 leaves the window
}

TEST_CASE("q-th roots in F_3((zeta))") {
  int64_t w = 0;
  auto r = (-z3(1)).qth_root(&w);
  CHECK_FALSE(r.has_value());
  CHECK(w == 1);
  auto s = z3(3).qth_root();
  REQUIRE(s.has_value());
  CHECK(*s == z3(1));
  // approximate elements: precision shrinks to ceil(prec/q)
  Laurent a(&F3z(), 0, {1, 0, 0, 2}, 7);
  auto ra = a.qth_root();
  REQUIRE(ra.has_value());
  CHECK(ra->prec() == 3);
  CHECK(ra->frob() == a);
}

TEST_CASE("valuation and residue") {
  CHECK((z3(-2) + Laurent::one(&F3z())).valuation() == -2);
  Laurent zt = Laurent::zero_to(&F3z(-5, 5), 5);
  CHECK_THROWS_AS(zt.valuation(), Error);
  try {
    (void)zt.valuation();
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroToPrecision);
  }
  CHECK(!zt.is_exact_zero());
  CHECK(Laurent::zero(&F3z()).is_exact_zero());
  CHECK((z3(1) * (Laurent::one(&F3z()) + z3(1))).valuation() == 1);
  CHECK((Laurent::one(&F3z()) + z3(1)).residue() == Fq::one(&FiniteField::get(3, 1, 1)));
  CHECK(z3(1).residue().is_zero());
  try {
    (void)z3(-1).residue();
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotIntegral);
  }
}

TEST_CASE("local field ring properties under random testing") {
  const auto& F9 = FiniteField::get(3, 1, 2);
  const auto& L = LocalField::get(F9, -16, 16);
  std::mt19937_64 g(11);
  auto rnd_loc = [&](int64_t lo, size_t len, int64_t prec) {
    std::vector<uint64_t> c(len);
    for (auto& x : c) x = g() % 9;
    c[0] = 1 + g() % 8;
    return Laurent(&L, lo, c, prec);
  };
  for (int t = 0; t < 200; ++t) {
    Laurent x = rnd_loc((int64_t)(g() % 5) - 2, 4, 6), y = rnd_loc((int64_t)(g() % 5) - 2, 3, kExact),
            z = rnd_loc(0, 3, 5);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK((x * y).valuation() == x.valuation() + y.valuation());
    CHECK((x * y).frob() == x.frob() * y.frob());
    auto r = x.frob().qth_root();
    REQUIRE(r.has_value());
    CHECK(*r == x);
    Laurent xi = x.inv();
    CHECK((x * xi) == Laurent::one(&L));
    CHECK((x * xi).prec() >= x.prec() - x.valuation() - 0);
  }
}

TEST_CASE("invalid descriptors are rejected") {
  CHECK_THROWS_AS(FiniteField::get(4, 1, 1), Error);
  CHECK_THROWS_AS(FiniteField::get(2, 1, 70), Error);
  CHECK_THROWS_AS(LocalField::get(FiniteField::get(2, 1, 1), 3, 3), Error);
}
