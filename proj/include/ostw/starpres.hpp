#pragma once

// The "another presentation" group St*(M, q): generators X*(u, v) for u
// in the EO-orbit of e_1 and v _|_ u, with four relation schemas:
//
//   S1  X*(u, v + v') = X*(u, v) X*(u, v')
//   S2  X*(u, v) X*(u', v') X*(u, v)^{-1} = X*(T(u,v) u', T(u,v) v')
//   S3  X*(u, va) = X*(v, -ua)        for (u, v) in the orbit of (e_1, e_2)
//   S4  X*(u, ua) = 1
//
// plus the translation maps F: x_ij(a) -> X*(e_i, e_{-j} a),
// x_j(m) -> X*(e_{-j}, -m) and G: X*(u, v) -> X(u, v) (the lifted
// transvection word).  Orbits are taken under the elementary group EO,
// which is constructively enumerable; schema 3's side condition is
// decided by BFS on vector pairs.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ostw/esdlift.hpp"

namespace ostw {

struct StarGen {
  Vector u, v;
};

using StarSym = std::pair<std::uint32_t, int>;  // (generator id, +-1)
using StarWord = std::vector<StarSym>;

inline StarWord star_inv(const StarWord& w) {
  StarWord out;
  for (std::size_t t = w.size(); t-- > 0;) out.emplace_back(w[t].first, -w[t].second);
  return out;
}

class StarGenSet {
public:
  StarGenSet(const QuadSpace& s, const OrbitTable& table) : sp_(&s), table_(&table) {
    const std::uint64_t vcount = s.vector_count();
    for (std::uint64_t uk : table.discovery_order()) {
      Vector u = Vector::from_key(s, uk);
      for (const Vector& v : VectorRange(s)) {
        if (bilinear(u, v) != 0) continue;
        index_.emplace(uk * vcount + v.key(), static_cast<std::uint32_t>(gens_.size()));
        gens_.push_back(StarGen{u, v});
      }
    }
  }

  const QuadSpace& space() const { return *sp_; }
  const OrbitTable& orbit() const { return *table_; }
  std::size_t size() const { return gens_.size(); }
  const StarGen& gen(std::uint32_t id) const { return gens_[id]; }

  std::optional<std::uint32_t> find(const Vector& u, const Vector& v) const {
    auto it = index_.find(u.key() * sp_->vector_count() + v.key());
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::uint32_t id_of(const Vector& u, const Vector& v) const {
    auto id = find(u, v);
    if (!id) throw std::out_of_range("star generator not found (u outside orbit or <u,v> != 0)");
    return *id;
  }

  // phi(G(X*(u, v))) = T(u, v); cached.
  const Mat& esd_mat(std::uint32_t id) {
    if (mats_.size() < gens_.size()) mats_.resize(gens_.size());
    if (!mats_[id]) mats_[id] = esd(gens_[id].u, gens_[id].v).m;
    return *mats_[id];
  }

  // G(X*(u, v)) as a Steinberg word; cached.
  const Word& g_word(std::uint32_t id) {
    if (words_.size() < gens_.size()) words_.resize(gens_.size());
    if (!words_[id]) words_[id] = x_lift(*sp_, gens_[id].u, gens_[id].v, *table_).word;
    return *words_[id];
  }

private:
  const QuadSpace* sp_;
  const OrbitTable* table_;
  std::vector<StarGen> gens_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::vector<std::optional<Mat>> mats_;
  std::vector<std::optional<Word>> words_;
};

// BFS closure of the pair (e_1, e_2) under the elementary generators.
inline std::unordered_set<std::uint64_t> pair_orbit(const QuadSpace& s, const GenSet& gens,
                                                    std::uint64_t bound = 1u << 22) {
  const std::uint64_t vcount = s.vector_count();
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> queue;
  auto push = [&](std::uint64_t a, std::uint64_t b) {
    if (seen.insert(a * vcount + b).second) {
      if (seen.size() > bound) throw std::length_error("pair orbit bound exceeded");
      queue.emplace_back(a, b);
    }
  };
  push(basis_e(s, 1).key(), basis_e(s, 2).key());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto [ak, bk] = queue[head];
    Vector a = Vector::from_key(s, ak), b = Vector::from_key(s, bk);
    for (std::size_t gi = 0; gi < gens.mats.size(); ++gi) {
      for (int e : {+1, -1}) {
        const Mat& m = e > 0 ? gens.mats[gi] : gens.inv_mats[gi];
        push(m.apply(a).key(), m.apply(b).key());
      }
    }
  }
  return seen;
}

inline bool pair_in_orbit(const QuadSpace& s, const std::unordered_set<std::uint64_t>& orbit,
                          const Vector& u, const Vector& v) {
  return orbit.count(u.key() * s.vector_count() + v.key()) != 0;
}

// F: single Steinberg generator to a single star symbol.
inline StarSym map_F(StarGenSet& stars, const SGen& g) {
  const QuadSpace& s = stars.space();
  if (g.lab.kind == GenLabel::Long) {
    Vector v = basis_e(s, -g.lab.j).scaled(g.lab.a);
    return {stars.id_of(basis_e(s, g.lab.i), v), g.e};
  }
  return {stars.id_of(basis_e(s, -g.lab.j), -embed_m0(s, g.lab.m0)), g.e};
}

inline StarWord map_F_word(StarGenSet& stars, const Word& w) {
  StarWord out;
  for (const SGen& g : w.g) out.push_back(map_F(stars, g));
  return out;
}

// G: symbol-wise replacement X*(u, v) -> X(u, v).
inline Word map_G(StarGenSet& stars, const StarWord& w) {
  Word out(stars.space());
  for (const auto& [id, e] : w) {
    const Word& piece = stars.g_word(id);
    Word use = e > 0 ? piece : inv(piece);
    out.g.insert(out.g.end(), use.g.begin(), use.g.end());
  }
  return out;
}

enum class StarSchema { S1, S2, S3, S4 };

inline const char* star_schema_name(StarSchema s) {
  static const char* names[] = {"S1", "S2", "S3", "S4"};
  return names[static_cast<int>(s)];
}

// Emits each relator (LHS * RHS^{-1}) of the schema; returns the count.
// The `sample` policy draws seeded random instances when the exhaustive
// count exceeds the cap.
inline std::uint64_t for_each_star_relator(StarGenSet& stars,
                                           const std::unordered_set<std::uint64_t>& pairs,
                                           StarSchema sch, const SamplePolicy& pol,
                                           const std::function<void(const StarWord&)>& fn) {
  const QuadSpace& s = stars.space();
  const std::uint64_t N = stars.size();
  const std::uint64_t K = s.ring().size();
  const auto& orbit_keys = stars.orbit().discovery_order();

  switch (sch) {
    case StarSchema::S1: {
      // tuples (u, v, v'): for each u the perp is enumerated through the
      // generator list itself (ids with first component u are contiguous)
      std::vector<std::vector<std::uint32_t>> by_u;
      {
        std::uint64_t prev = UINT64_MAX;
        for (std::uint32_t id = 0; id < N; ++id) {
          std::uint64_t uk = stars.gen(id).u.key();
          if (uk != prev) {
            by_u.emplace_back();
            prev = uk;
          }
          by_u.back().push_back(id);
        }
      }
      std::uint64_t total = 0;
      for (const auto& ids : by_u) total += static_cast<std::uint64_t>(ids.size()) * ids.size();
      auto emit = [&](std::uint32_t a, std::uint32_t b) {
        const StarGen &ga = stars.gen(a), &gb = stars.gen(b);
        std::uint32_t c = stars.id_of(ga.u, ga.v + gb.v);
        fn(StarWord{{a, 1}, {b, 1}, {c, -1}});
      };
      if (total <= pol.exhaustive_cap) {
        for (const auto& ids : by_u)
          for (std::uint32_t a : ids)
            for (std::uint32_t b : ids) emit(a, b);
        return total;
      }
      Rng rng(pol.seed ^ 0x51);
      for (std::uint64_t t = 0; t < pol.sample; ++t) {
        const auto& ids = by_u[rng.below(by_u.size())];
        emit(ids[rng.below(ids.size())], ids[rng.below(ids.size())]);
      }
      return pol.sample;
    }
    case StarSchema::S2: {
      auto emit = [&](std::uint32_t a, std::uint32_t b) {
        const Mat& T = stars.esd_mat(a);
        const StarGen& gb = stars.gen(b);
        std::uint32_t c = stars.id_of(T.apply(gb.u), T.apply(gb.v));
        fn(StarWord{{a, 1}, {b, 1}, {a, -1}, {c, -1}});
      };
      std::uint64_t total = N * N;
      if (total <= pol.exhaustive_cap) {
        for (std::uint32_t a = 0; a < N; ++a)
          for (std::uint32_t b = 0; b < N; ++b) emit(a, b);
        return total;
      }
      Rng rng(pol.seed ^ 0x52);
      for (std::uint64_t t = 0; t < pol.sample; ++t) emit(rng.below(N), rng.below(N));
      return pol.sample;
    }
    case StarSchema::S3: {
      std::vector<std::pair<std::uint64_t, std::uint64_t>> plist(
          [&] {
            std::vector<std::pair<std::uint64_t, std::uint64_t>> v;
            const std::uint64_t vc = s.vector_count();
            for (std::uint64_t key : pairs) v.emplace_back(key / vc, key % vc);
            std::sort(v.begin(), v.end());
            return v;
          }());
      auto emit = [&](std::size_t pi, std::uint64_t a) {
        Vector u = Vector::from_key(s, plist[pi].first), v = Vector::from_key(s, plist[pi].second);
        std::uint32_t x = stars.id_of(u, v.scaled(a));
        std::uint32_t y = stars.id_of(v, (-u).scaled(a));
        fn(StarWord{{x, 1}, {y, -1}});
      };
      std::uint64_t total = plist.size() * K;
      if (total <= pol.exhaustive_cap) {
        for (std::size_t pi = 0; pi < plist.size(); ++pi)
          for (std::uint64_t a = 0; a < K; ++a) emit(pi, a);
        return total;
      }
      Rng rng(pol.seed ^ 0x53);
      for (std::uint64_t t = 0; t < pol.sample; ++t) emit(rng.below(plist.size()), rng.below(K));
      return pol.sample;
    }
    case StarSchema::S4: {
      std::uint64_t total = orbit_keys.size() * K;
      auto emit = [&](std::uint64_t uk, std::uint64_t a) {
        Vector u = Vector::from_key(s, uk);
        fn(StarWord{{stars.id_of(u, u.scaled(a)), 1}});
      };
      if (total <= pol.exhaustive_cap) {
        for (std::uint64_t uk : orbit_keys)
          for (std::uint64_t a = 0; a < K; ++a) emit(uk, a);
        return total;
      }
      Rng rng(pol.seed ^ 0x54);
      for (std::uint64_t t = 0; t < pol.sample; ++t)
        emit(orbit_keys[rng.below(orbit_keys.size())], rng.below(K));
      return pol.sample;
    }
  }
  return 0;
}

}  // namespace ostw
