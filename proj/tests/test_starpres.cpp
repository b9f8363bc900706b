#include <catch2/catch_amalgamated.hpp>

#include "ostw/starpres.hpp"
#include "ostw/stpres.hpp"

using namespace ostw;

namespace {
struct Fixture {
  QuadSpace s{RingSpec::modular(2), 3, 0};
  OrbitTable table{s, basis_e(s, 1), standard_generators(s)};
  StarGenSet stars{s, table};
};
}  // namespace

TEST_CASE("star generator enumeration") {
  Fixture f;
  REQUIRE(f.stars.size() == 1120);  // 35 orbit members x 32 perp vectors
  REQUIRE(f.stars.find(basis_e(f.s, 1), Vector(f.s)).has_value());
  REQUIRE_FALSE(f.stars.find(Vector(f.s), basis_e(f.s, 1)).has_value());  // 0 not in orbit
  REQUIRE_FALSE(f.stars.find(basis_e(f.s, 1), basis_e(f.s, -1)).has_value());  // not orthogonal
}

TEST_CASE("pair orbit contains the seed and respects the generators") {
  Fixture f;
  auto pairs = pair_orbit(f.s, f.table.gens());
  REQUIRE(pair_in_orbit(f.s, pairs, basis_e(f.s, 1), basis_e(f.s, 2)));
  REQUIRE_FALSE(pair_in_orbit(f.s, pairs, basis_e(f.s, 1), basis_e(f.s, 1)));
  // closure: applying any generator to a member stays inside
  GenSet gens = standard_generators(f.s);
  int checked = 0;
  for (std::uint64_t key : pairs) {
    Vector u = Vector::from_key(f.s, key / f.s.vector_count());
    Vector v = Vector::from_key(f.s, key % f.s.vector_count());
    for (const Mat& m : gens.mats)
      REQUIRE(pair_in_orbit(f.s, pairs, m.apply(u), m.apply(v)));
    if (++checked > 40) break;
  }
}

TEST_CASE("map_F on generators") {
  Fixture f;
  SGen g{GenLabel::make_long(1, 2, 1), 1};
  auto [id, e] = map_F(f.stars, g);
  REQUIRE(e == 1);
  REQUIRE(f.stars.gen(id).u == basis_e(f.s, 1));
  REQUIRE(f.stars.gen(id).v == basis_e(f.s, -2));
  // exponents pass through: F(g^{-1}) = F(g)^{-1}
  SGen ginv{GenLabel::make_long(1, 2, 1), -1};
  auto [id2, e2] = map_F(f.stars, ginv);
  REQUIRE(id2 == id);
  REQUIRE(e2 == -1);
}

TEST_CASE("map_F on short generators lands on X*(e_{-j}, -m)") {
  QuadSpace s(RingSpec::modular(3), 3, 1, {1});
  OrbitTable table(s, basis_e(s, 1), standard_generators(s));
  StarGenSet stars(s, table);
  SGen g{GenLabel::make_short(2, {2}), 1};
  auto [id, e] = map_F(stars, g);
  REQUIRE(stars.gen(id).u == basis_e(s, -2));
  REQUIRE(stars.gen(id).v == -embed_m0(s, {2}));
  (void)e;
}

TEST_CASE("map_G evaluates to the ESD matrix") {
  Fixture f;
  TransvectionCache cache(f.s);
  std::uint32_t id = f.stars.id_of(basis_e(f.s, 1), basis_e(f.s, -2));
  Word w = map_G(f.stars, StarWord{{id, 1}});
  REQUIRE(phi(w, cache) == t_long(f.s, 1, 2, 1).m);
  REQUIRE(map_G(f.stars, StarWord{}).empty());
}

TEST_CASE("G o F fixes every Steinberg generator after normalize") {
  for (auto s : {QuadSpace(RingSpec::modular(2), 3, 0), QuadSpace(RingSpec::modular(3), 3, 0)}) {
    OrbitTable table(s, basis_e(s, 1), standard_generators(s));
    StarGenSet stars(s, table);
    for (auto [i, j] : detail::long_pairs(s)) {
      for (std::uint64_t a = 0; a < s.ring().size(); ++a) {
        Word g(s);
        g.x_long(i, j, a);
        Word back = map_G(stars, map_F_word(stars, g));
        REQUIRE(normalize(back) == normalize(g));
      }
    }
  }
  // short generators too
  QuadSpace s(RingSpec::modular(3), 3, 1, {1});
  OrbitTable table(s, basis_e(s, 1), standard_generators(s));
  StarGenSet stars(s, table);
  for (int j : detail::short_indices(s)) {
    for (std::uint64_t m = 0; m < 3; ++m) {
      Word g(s);
      g.x_short(j, {m});
      REQUIRE(normalize(map_G(stars, map_F_word(stars, g))) == normalize(g));
    }
  }
}

TEST_CASE("star relators: schema shapes and phi images") {
  Fixture f;
  auto pairs = pair_orbit(f.s, f.table.gens());
  TransvectionCache cache(f.s);

  auto phi_of = [&](const StarWord& w) {
    Mat acc = Mat::identity(f.s.ring(), f.s.dim());
    for (const auto& [id, e] : w) {
      Mat m = f.stars.esd_mat(id);
      if (e < 0) {
        const StarGen& g = f.stars.gen(id);
        m = esd(g.u, -g.v).m;  // T(u,v)^{-1} = T(u,-v)
      }
      acc = acc * m;
    }
    return acc;
  };

  SamplePolicy pol;
  pol.exhaustive_cap = 50'000;
  pol.sample = 20'000;
  pol.seed = 3;
  for (auto sch : {StarSchema::S1, StarSchema::S2, StarSchema::S3, StarSchema::S4}) {
    std::uint64_t bad = 0;
    for_each_star_relator(f.stars, pairs, sch, pol, [&](const StarWord& w) {
      if (!phi_of(w).is_identity()) ++bad;
    });
    INFO(star_schema_name(sch));
    REQUIRE(bad == 0);
  }

  // schema 2 with (u,v) = (e_1, e_2), (u',v') = (e_2, e_3): the RHS symbol
  // carries T(e_1,e_2)-transformed arguments
  std::uint32_t a = f.stars.id_of(basis_e(f.s, 1), basis_e(f.s, 2));
  std::uint32_t b = f.stars.id_of(basis_e(f.s, 2), basis_e(f.s, 3));
  Mat T = f.stars.esd_mat(a);
  std::uint32_t c = f.stars.id_of(T.apply(basis_e(f.s, 2)), T.apply(basis_e(f.s, 3)));
  bool seen = false;
  SamplePolicy all;
  all.exhaustive_cap = UINT64_MAX;
  for_each_star_relator(f.stars, pairs, StarSchema::S2, all, [&](const StarWord& w) {
    if (w[0].first == a && w[1].first == b) {
      REQUIRE(w[3].first == c);
      seen = true;
    }
  });
  REQUIRE(seen);
}

TEST_CASE("every star relator maps under G to the identity of St (full sweep)") {
  Fixture f;
  auto pairs = pair_orbit(f.s, f.table.gens());
  SteinbergAlphabet alpha(f.s);
  Presentation p = steinberg_presentation(alpha);
  TcResult tc = todd_coxeter(p);
  REQUIRE(tc.completed);

  // cache encoded G-images per star generator
  std::vector<std::vector<int>> enc(f.stars.size());
  for (std::uint32_t id = 0; id < f.stars.size(); ++id) enc[id] = alpha.encode(f.stars.g_word(id));

  auto trace_ok = [&](const StarWord& w) {
    std::uint32_t c = 0;
    for (const auto& [id, e] : w) {
      if (e > 0) {
        for (int letter : enc[id]) c = tc.table.get(c, letter);
      } else {
        for (std::size_t t = enc[id].size(); t-- > 0;) c = tc.table.get(c, -enc[id][t]);
      }
    }
    return c == 0;
  };

  SamplePolicy all;
  all.exhaustive_cap = UINT64_MAX;
  std::uint64_t total = 0, bad = 0;
  for (auto sch : {StarSchema::S1, StarSchema::S2, StarSchema::S3, StarSchema::S4}) {
    total += for_each_star_relator(f.stars, pairs, sch, all, [&](const StarWord& w) {
      if (!trace_ok(w)) ++bad;
    });
  }
  REQUIRE(bad == 0);
  REQUIRE(total > 1'290'000);  // S2 alone is 1120^2
}

TEST_CASE("image of F and its conjugates generate: witness-conjugated form") {
  Fixture f;
  SteinbergAlphabet alpha(f.s);
  Presentation p = steinberg_presentation(alpha);
  TcResult tc = todd_coxeter(p);
  REQUIRE(tc.completed);
  auto is_id = [&](const Word& w) { return word_is_identity(tc.table, alpha.encode(w)); };

  for (std::uint32_t id = 0; id < f.stars.size(); ++id) {
    const StarGen& g = f.stars.gen(id);
    // the table witness (non-empty for every u except e_1) conjugates a
    // basis-case generator into X*(u, v)
    auto wit = f.table.witness(g.u);
    Vector v0 = f.table.apply_witness_inverse(wit, g.v);
    Word conj = mul(mul(lift_witness(f.s, wit), x_esd_basis(f.s, 1, v0)), inv(lift_witness(f.s, wit)));
    REQUIRE(is_id(mul(f.stars.g_word(id), inv(conj))));
  }
}

TEST_CASE("crossed module checks at matrix level") {
  Fixture f;
  TransvectionCache cache(f.s);
  GenSet gens = standard_generators(f.s);
  Rng rng(71);
  for (int trial = 0; trial < 400; ++trial) {
    // g = product of <= 3 elementary transvections, with its word
    Word gw(f.s);
    int len = 1 + static_cast<int>(rng.below(3));
    for (int t = 0; t < len; ++t) gw.append(gens.labels[rng.below(gens.labels.size())]);
    Mat g = phi(gw, cache);
    std::uint32_t id = static_cast<std::uint32_t>(rng.below(f.stars.size()));
    const StarGen& sg = f.stars.gen(id);
    // CM1: phi(g X(u,v) g^{-1}) = T(gu, gv)
    Word conj = mul(mul(gw, f.stars.g_word(id)), inv(gw));
    REQUIRE(phi(conj, cache) == esd(g.apply(sg.u), g.apply(sg.v)).m);
  }
}
