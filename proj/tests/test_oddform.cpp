#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "ostw/oddform.hpp"

using namespace ostw;

namespace {
std::uint64_t pack_pair(const Mat& x, const Mat& y, std::uint64_t n) {
  std::uint64_t k = 0;
  for (std::size_t t = y.a.size(); t-- > 0;) k = k * n + y.a[t];
  for (std::size_t t = x.a.size(); t-- > 0;) k = k * n + x.a[t];
  return k;
}
}  // namespace

TEST_CASE("R always contains the identity and scalar pairs") {
  QuadSpace s(RingSpec::modular(4), 1, 0);
  OddForm of(s);
  Mat id = Mat::identity(s.ring(), s.dim());
  REQUIRE(of.in_R(id, id));
  for (std::uint64_t a = 0; a < 4; ++a) {
    Mat sc(s.ring(), s.dim());
    for (int t = 0; t < s.dim(); ++t) sc(t, t) = a;
    REQUIRE(of.in_R(sc, sc));
  }
}

TEST_CASE("compute_R matches brute force on H^1 over Z/2") {
  QuadSpace s(RingSpec::modular(2), 1, 0);
  OddForm of(s);
  auto R = of.compute_R();
  std::set<std::uint64_t> got;
  for (const auto& [x, y] : R) got.insert(pack_pair(x, y, 2));
  std::set<std::uint64_t> brute;
  for (std::uint64_t xk = 0; xk < 16; ++xk)
    for (std::uint64_t yk = 0; yk < 16; ++yk) {
      Mat x(s.ring(), 2), y(s.ring(), 2);
      std::uint64_t k = xk;
      for (auto& e : x.a) {
        e = k & 1;
        k >>= 1;
      }
      k = yk;
      for (auto& e : y.a) {
        e = k & 1;
        k >>= 1;
      }
      bool adj = true;
      for (const Vector& m : VectorRange(s))
        for (const Vector& mp : VectorRange(s))
          adj &= bilinear(x.apply(m), mp) == bilinear(m, y.apply(mp));
      if (adj) brute.insert(pack_pair(x, y, 2));
    }
  REQUIRE(got == brute);
  // every orthogonal g appears as (adjoint, g)
  for (std::uint64_t gk = 0; gk < 16; ++gk) {
    Mat g(s.ring(), 2);
    std::uint64_t k = gk;
    for (auto& e : g.a) {
      e = k & 1;
      k >>= 1;
    }
    if (!is_orthogonal(s, g)) continue;
    bool found = false;
    for (const auto& [x, y] : R) found |= y == g && of.in_R(x, g);
    REQUIRE(found);
  }
}

TEST_CASE("R is closed under the product and embeds EO") {
  QuadSpace s(RingSpec::modular(4), 1, 0);
  OddForm of(s);
  auto R = of.compute_R();
  // (x^op, y) (x'^op, y') = ((x' x)^op, y y')
  Rng rng(113);
  for (int t = 0; t < 400; ++t) {
    const auto& [x, y] = R[rng.below(R.size())];
    const auto& [xp, yp] = R[rng.below(R.size())];
    REQUIRE(of.in_R(xp * x, y * yp));
  }
  for (const Mat& g : enumerate_group(s)) {
    // solve for the adjoint partner of g and check membership
    bool found = false;
    for (const auto& [x, y] : R)
      if (y == g) {
        found = true;
        break;
      }
    REQUIRE(found);
  }
}

TEST_CASE("Delta basics over H^1 / Z/4") {
  QuadSpace s(RingSpec::modular(4), 1, 0);
  OddForm of(s);
  auto full = of.compute_Delta(false);
  auto gen = of.compute_Delta(true);
  const RingSpec& R = s.ring();

  // (0,0;0,0) is present
  bool zero_found = false;
  for (const auto& d : full)
    zero_found |= d.x == Mat(R, 2) && d.y == Mat(R, 2) && d.z == Mat(R, 2) && d.w == Mat(R, 2);
  REQUIRE(zero_found);

  // defining conditions hold
  for (const auto& d : full) {
    Mat sum = d.x * d.y;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        REQUIRE(R.add(sum(i, j), R.add(d.z(i, j), d.w(i, j))) == 0);
    REQUIRE(of.in_R(d.x, d.y));
    REQUIRE(of.in_R(d.z, d.w));
    for (const Vector& m : VectorRange(s))
      REQUIRE(R.add(q_form(d.y.apply(m)), bilinear(m, d.w.apply(m))) == 0);
  }

  // full mode is contained in generators-only mode
  auto key = [&](const DeltaElem& d) {
    std::vector<std::uint64_t> k;
    for (const Mat* m : {&d.x, &d.y, &d.z, &d.w})
      for (auto e : m->a) k.push_back(e);
    return k;
  };
  std::set<std::vector<std::uint64_t>> fullset, genset;
  for (const auto& d : full) fullset.insert(key(d));
  for (const auto& d : gen) genset.insert(key(d));
  REQUIRE(std::includes(genset.begin(), genset.end(), fullset.begin(), fullset.end()));

  // counting path agrees with materialization
  auto counts = of.delta_counts();
  REQUIRE(static_cast<std::uint64_t>(counts.full) == full.size());
  REQUIRE(static_cast<std::uint64_t>(counts.generators_only) == gen.size());
  REQUIRE(counts.equal == (full.size() == gen.size()));
}

TEST_CASE("generators-only experiment runs on Z/4 with a short part") {
  QuadSpace s(RingSpec::modular(4), 1, 1, {1});
  OddForm of(s);
  auto counts = of.delta_counts();
  REQUIRE(counts.full > 0);
  REQUIRE(counts.generators_only >= counts.full);
}

TEST_CASE("localization of (R, Delta) on the trivial case") {
  // n = p^v: both comparisons are identity maps
  QuadSpace s(RingSpec::modular(4), 1, 0);
  OddForm of(s);
  auto R = of.compute_R();
  auto loc = localize_at_prime(4, 2);
  std::set<std::uint64_t> image, direct;
  for (const auto& [x, y] : R) image.insert(pack_pair(x, y, 4));
  for (const auto& [x, y] : R) direct.insert(pack_pair(x, y, 4));
  REQUIRE(image == direct);
  REQUIRE(loc.local.modulus() == 4);
}
