#include <catch2/catch_amalgamated.hpp>

#include "ostw/stpres.hpp"
#include "ostw/tc.hpp"

using namespace ostw;

TEST_CASE("cyclic group of order 3") {
  Presentation p;
  p.ngens = 1;
  p.add_relator({1, 1, 1});
  TcResult r = todd_coxeter(p);
  REQUIRE(r.completed);
  REQUIRE(group_order(r.table) == 3);
  REQUIRE(r.table.compatible(p));
  REQUIRE(word_is_identity(r.table, {}));
  REQUIRE(word_is_identity(r.table, {1, 1, 1}));
  REQUIRE_FALSE(word_is_identity(r.table, {1}));
  REQUIRE(word_is_identity(r.table, {-1, -1, -1}));
}

TEST_CASE("S3 from its Coxeter presentation") {
  // <x, y | x^2, y^2, (xy)^3> has order 6 (hand enumeration)
  Presentation p;
  p.ngens = 2;
  p.add_relator({1, 1});
  p.add_relator({2, 2});
  p.add_relator({1, 2, 1, 2, 1, 2});
  TcResult r = todd_coxeter(p);
  REQUIRE(r.completed);
  REQUIRE(group_order(r.table) == 6);
  REQUIRE(r.table.compatible(p));
  REQUIRE_FALSE(word_is_identity(r.table, {1, 2}));
  REQUIRE(word_is_identity(r.table, {1, 2, 1, -2, -1, 2}));  // xyx = yxy
}

TEST_CASE("quaternion group Q8") {
  // <x, y | x^4, x^2 y^-2, y^-1 x y x>
  Presentation p;
  p.ngens = 2;
  p.add_relator({1, 1, 1, 1});
  p.add_relator({1, 1, -2, -2});
  p.add_relator({-2, 1, 2, 1});
  TcResult r = todd_coxeter(p);
  REQUIRE(r.completed);
  REQUIRE(group_order(r.table) == 8);
  REQUIRE(r.table.compatible(p));
}

TEST_CASE("infinite-looking run overflows with a high-water report") {
  Presentation p;
  p.ngens = 2;  // free of rank 2
  p.add_relator({1, 2, -1, -2, 1});
  TcOptions opt;
  opt.max_cosets = 5000;
  TcResult r = todd_coxeter(p, opt);
  REQUIRE_FALSE(r.completed);
  REQUIRE(r.high_water > 0);
}

TEST_CASE("felsch strategy agrees") {
  Presentation p;
  p.ngens = 2;
  p.add_relator({1, 1});
  p.add_relator({2, 2, 2});
  p.add_relator({1, 2, 1, 2, 1, 2, 1, 2});  // (2,3,4) triangle group: S4, order 24
  TcOptions opt;
  opt.felsch = true;
  TcResult r = todd_coxeter(p, opt);
  REQUIRE(r.completed);
  REQUIRE(group_order(r.table) == 24);
  REQUIRE(r.table.compatible(p));
  TcResult r2 = todd_coxeter(p);
  REQUIRE(group_order(r2.table) == 24);
}

TEST_CASE("determinism: identical runs produce identical tables") {
  Presentation p;
  p.ngens = 2;
  p.add_relator({1, 1});
  p.add_relator({2, 2, 2});
  p.add_relator({1, 2, 1, 2, 1, 2, 1, 2, 1, 2});  // (2,3,5): A5, order 60
  TcResult a = todd_coxeter(p), b = todd_coxeter(p);
  REQUIRE(a.completed);
  REQUIRE(group_order(a.table) == 60);
  REQUIRE(a.table.to_bytes() == b.table.to_bytes());
}

TEST_CASE("presentation text round trip") {
  std::string text = "# cyclic of order 4\ngens 1\ng0 g0 g0 g0\n";
  Presentation p = parse_presentation(text);
  REQUIRE(p.ngens == 1);
  REQUIRE(p.relators.size() == 1);
  TcResult r = todd_coxeter(p);
  REQUIRE(group_order(r.table) == 4);

  Presentation q = parse_presentation("g0 g1 G0 G1\ng0 g0\ng1 g1 g1");
  REQUIRE(q.ngens == 2);
  REQUIRE(q.relators.size() == 3);
  TcResult rq = todd_coxeter(q);
  REQUIRE(group_order(rq.table) == 6);  // abelian: Z/2 x Z/3

  REQUIRE_THROWS_AS(parse_presentation("h0 h1"), std::invalid_argument);
}

TEST_CASE("binary dump layout") {
  Presentation p;
  p.ngens = 1;
  p.add_relator({1, 1, 1});
  TcResult r = todd_coxeter(p);
  auto bytes = r.table.to_bytes();
  REQUIRE(bytes.size() == 3 * 2 * 4);  // 3 rows, columns g0 G0, u32 LE
  auto at = [&](int row, int col) {
    std::size_t o = static_cast<std::size_t>(row * 2 + col) * 4;
    return static_cast<std::uint32_t>(bytes[o]) | (bytes[o + 1] << 8) | (bytes[o + 2] << 16) |
           (static_cast<std::uint32_t>(bytes[o + 3]) << 24);
  };
  // regular representation of Z/3: g0 cycles 0 -> 1 -> 2 -> 0
  REQUIRE(at(0, 0) == 1);
  REQUIRE(at(1, 0) == 2);
  REQUIRE(at(2, 0) == 0);
  REQUIRE(at(0, 1) == 2);  // inverse column
}

TEST_CASE("Steinberg alphabet over F_2 H^3") {
  QuadSpace s(RingSpec::modular(2), 3, 0);
  SteinbergAlphabet alpha(s);
  REQUIRE(alpha.size() == 12);  // 24 ordered pairs / 2 (R2), one unit
  // encode identifies the two R2 orientations
  Word w1(s), w2(s);
  w1.x_long(1, 2, 1);
  w2.x_long(-2, -1, 1);
  REQUIRE(alpha.encode(w1) == alpha.encode(w2));
  // inverses are formal
  Word w3(s);
  w3.x_long(1, 2, 1, -1);
  REQUIRE(alpha.encode(w3) == std::vector<int>{-alpha.encode(w1)[0]});
}

TEST_CASE("St(M, q) enumeration over F_2 H^3") {
  QuadSpace s(RingSpec::modular(2), 3, 0);
  SteinbergAlphabet alpha(s);
  Presentation p = steinberg_presentation(alpha);
  REQUIRE(p.ngens == 12);
  TcResult r = todd_coxeter(p);
  REQUIRE(r.completed);
  REQUIRE(r.table.compatible(p));
  // |EO| = 20160; the enumerated order is an exact positive multiple
  REQUIRE(group_order(r.table) % 20160 == 0);
  REQUIRE(group_order(r.table) > 0);
  // a single generator is never the identity (its phi-image is not 1)
  REQUIRE_FALSE(word_is_identity(r.table, {1}));
  // every relator closes at the base coset
  for (const auto& rel : p.relators) REQUIRE(word_is_identity(r.table, rel));
}
