#include <catch2/catch_amalgamated.hpp>

#include "ostw/esdlift.hpp"
#include "ostw/stpres.hpp"

using namespace ostw;

namespace {
QuadSpace f2_h3() { return QuadSpace(RingSpec::modular(2), 3, 0); }
}  // namespace

TEST_CASE("x_esd_basis on simple arguments") {
  QuadSpace s(RingSpec::modular(5), 3, 1, {1});
  REQUIRE(x_esd_basis(s, 1, Vector(s)).empty());

  // v = e_j a (j != +-i): single generator x_{i,-j}(a)
  for (std::uint64_t a = 1; a < 5; ++a) {
    Word w = x_esd_basis(s, 1, basis_e(s, 2).scaled(a));
    REQUIRE(w.size() == 1);
    REQUIRE(w.g[0].lab == GenLabel::make_long(1, -2, a));
    REQUIRE(phi(w) == t_long(s, 1, -2, a).m);
  }

  // v in M0: x_{-i}(-v)
  Word wm = x_esd_basis(s, 2, basis_f(s, 1).scaled(3));
  REQUIRE(wm.size() == 1);
  REQUIRE(wm.g[0].lab == GenLabel::make_short(-2, {2}));  // -3 = 2 mod 5

  // phi(x_esd_basis(i, v)) = esd(e_i, v), all valid (i, v) over F_2
  QuadSpace f2 = f2_h3();
  TransvectionCache cache(f2);
  for (int i = -3; i <= 3; ++i) {
    if (i == 0) continue;
    for (const Vector& v : VectorRange(f2)) {
      if (v[f2.pos(-i)] != 0) continue;
      REQUIRE(phi(x_esd_basis(f2, i, v), cache) == esd(basis_e(f2, i), v).m);
    }
  }

  REQUIRE_THROWS_AS(x_esd_basis(s, 1, basis_e(s, -1)), std::invalid_argument);
}

TEST_CASE("x_lift reduces to the basis case for u = e_i") {
  QuadSpace s = f2_h3();
  OrbitTable table(s, basis_e(s, 1), standard_generators(s));
  for (int i : {1, -2, 3}) {
    Vector v = basis_e(s, i == 1 ? 2 : 1);
    auto lift = x_lift(s, basis_e(s, i), v, table);
    REQUIRE(lift.witness.empty());
    REQUIRE(lift.word == x_esd_basis(s, i, v));
  }
}

TEST_CASE("x_lift hits its matrix image exhaustively over F_2 H^3") {
  QuadSpace s = f2_h3();
  OrbitTable table(s, basis_e(s, 1), standard_generators(s));
  TransvectionCache cache(s);
  std::uint64_t cases = 0;
  for (std::uint64_t uk : table.discovery_order()) {
    Vector u = Vector::from_key(s, uk);
    for (const Vector& v : VectorRange(s)) {
      if (bilinear(u, v) != 0) continue;
      auto lift = x_lift(s, u, v, table);
      REQUIRE(phi(lift.word, cache) == esd(u, v).m);
      ++cases;
    }
  }
  REQUIRE(cases == 35 * 32);
}

TEST_CASE("x_lift sampled over F_3 and Z/4") {
  for (auto s : {QuadSpace(RingSpec::modular(3), 3, 0), QuadSpace(RingSpec::modular(4), 3, 1, {1})}) {
    OrbitTable table(s, basis_e(s, 1), standard_generators(s));
    TransvectionCache cache(s);
    Rng rng(61);
    const auto& keys = table.discovery_order();
    for (int t = 0; t < 2'000; ++t) {
      Vector u = Vector::from_key(s, keys[rng.below(keys.size())]);
      Vector v(s);
      do {
        for (auto& x : v.c) x = rng.below(s.ring().size());
      } while (bilinear(u, v) != 0);
      auto lift = x_lift(s, u, v, table);
      REQUIRE(phi(lift.word, cache) == esd(u, v).m);
    }
  }
}

TEST_CASE("x_lift rejects bad arguments") {
  QuadSpace s = f2_h3();
  OrbitTable table(s, basis_e(s, 1), standard_generators(s));
  REQUIRE_THROWS_AS(x_lift(s, basis_e(s, 1), basis_e(s, -1), table), std::invalid_argument);
  REQUIRE_THROWS_AS(x_lift(s, basis_e(s, 1) + basis_e(s, -1), Vector(s), table),
                    std::invalid_argument);  // u isotropic fails orbit membership
}

TEST_CASE("witness independence at the phi level") {
  QuadSpace s = f2_h3();
  OrbitTable t1(s, basis_e(s, 1), standard_generators(s));
  TransvectionCache cache(s);
  Rng rng(67);
  for (int trial = 0; trial < 12; ++trial) {
    OrbitTable t2(s, basis_e(s, 1), standard_generators(s, 1000 + trial));
    const auto& keys = t1.discovery_order();
    for (int t = 0; t < 90; ++t) {
      Vector u = Vector::from_key(s, keys[rng.below(keys.size())]);
      Vector v(s);
      do {
        for (auto& x : v.c) x = rng.below(2);
      } while (bilinear(u, v) != 0);
      Mat a = phi(x_lift(s, u, v, t1).word, cache);
      Mat b = phi(x_lift(s, u, v, t2).word, cache);
      REQUIRE(a == b);
    }
  }
}

TEST_CASE("basis-case additivity under normalize for common support") {
  QuadSpace s(RingSpec::modular(9), 3, 1, {2});
  for (std::uint64_t a = 0; a < 9; ++a)
    for (std::uint64_t b = 0; b < 9; ++b) {
      Word lhs = mul(x_esd_basis(s, 1, basis_e(s, 2).scaled(a)),
                     x_esd_basis(s, 1, basis_e(s, 2).scaled(b)));
      Word rhs = x_esd_basis(s, 1, basis_e(s, 2).scaled((a + b) % 9));
      REQUIRE(normalize(lhs) == normalize(rhs));
      Word lm = mul(x_esd_basis(s, 1, basis_f(s, 1).scaled(a)),
                    x_esd_basis(s, 1, basis_f(s, 1).scaled(b)));
      Word rm = x_esd_basis(s, 1, basis_f(s, 1).scaled((a + b) % 9));
      REQUIRE(normalize(lm) == normalize(rm));
    }
}

TEST_CASE("word-level identities via the coset-table oracle") {
  QuadSpace s = f2_h3();
  OrbitTable table(s, basis_e(s, 1), standard_generators(s));
  SteinbergAlphabet alpha(s);
  Presentation p = steinberg_presentation(alpha);
  TcResult tc = todd_coxeter(p);
  REQUIRE(tc.completed);

  auto is_id = [&](const Word& w) { return word_is_identity(tc.table, alpha.encode(w)); };

  // (2): X(u, ua) is the identity of St(M, q), not merely of EO
  for (std::uint64_t uk : table.discovery_order()) {
    Vector u = Vector::from_key(s, uk);
    REQUIRE(is_id(x_lift(s, u, u, table).word));
  }
  // (5)/(6): the basis words equal the corresponding generators
  for (int i = -3; i <= 3; ++i) {
    if (i == 0) continue;
    for (int j = -3; j <= 3; ++j) {
      if (j == 0 || j == i || j == -i) continue;
      Word lhs = x_lift(s, basis_e(s, i), basis_e(s, j), table).word;
      Word gen(s);
      gen.x_long(i, -j, 1);
      REQUIRE(is_id(mul(lhs, inv(gen))));
    }
  }
  // (4): X(u, va) = X(v, -ua) for members of orthogonal hyperbolic pairs
  Word l = x_lift(s, basis_e(s, 1), basis_e(s, 2), table).word;
  Word r = x_lift(s, basis_e(s, 2), -basis_e(s, 1), table).word;
  REQUIRE(is_id(mul(l, inv(r))));
  // additivity in v decided at word level
  Vector v1 = basis_e(s, 2), v2 = basis_e(s, 3) + basis_e(s, -2);
  Word w1 = x_lift(s, basis_e(s, 1), v1, table).word;
  Word w2 = x_lift(s, basis_e(s, 1), v2, table).word;
  Word w12 = x_lift(s, basis_e(s, 1), v1 + v2, table).word;
  REQUIRE(is_id(mul(mul(w1, w2), inv(w12))));
}
