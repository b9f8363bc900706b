#pragma once

// Sampled check that the Steinberg relators hold in St*(M, q).
//
// Deciding identities in St* needs a word-problem oracle for St* itself.
// Full Todd-Coxeter over all star generators is out of budget, so the
// presentation is first reduced by Tietze elimination to the sub-alphabet
// B of basis-shaped generators X*(e_i, v) with v supported on a single
// basis line (exactly the image of F): every X*(u, v) rewrites into a
// B-word via its orbit witness (schema 2) and the additive decomposition
// of v (schemas 1 and 4).  A selection of star relators is rewritten into
// B and enumerated; since every relator of the reduced presentation is a
// consequence of the St* relations, the enumerated group surjects onto
// St*, so a word tracing to the base coset is certified to be the
// identity of St*.  An enumeration overflow downgrades the check and is
// reported as such.

#include <cstdint>
#include <set>
#include <vector>

#include "ostw/report.hpp"
#include "ostw/starpres.hpp"
#include "ostw/stpres.hpp"
#include "ostw/suites.hpp"
#include "ostw/tc.hpp"

namespace ostw {

class StarRewriter {
public:
  StarRewriter(StarGenSet& stars) : stars_(&stars) {
    const QuadSpace& s = stars.space();
    for (int i = -s.ell(); i <= s.ell(); ++i) {
      if (i == 0) continue;
      for (int k = -s.ell(); k <= s.ell(); ++k) {
        if (k == 0 || k == i || k == -i) continue;
        for (std::uint64_t a = 1; a < s.ring().size(); ++a) {
          std::uint32_t id = stars.id_of(basis_e(s, i), basis_e(s, k).scaled(a));
          letter_of_[id] = static_cast<int>(alphabet_.size());
          alphabet_.push_back(id);
        }
      }
      for (std::uint64_t mk = 1; mk < detail::m0_count(s); ++mk) {
        std::uint32_t id = stars.id_of(basis_e(s, i), embed_m0(s, detail::m0_from_key(s, mk)));
        letter_of_[id] = static_cast<int>(alphabet_.size());
        alphabet_.push_back(id);
      }
    }
  }

  int alphabet_size() const { return static_cast<int>(alphabet_.size()); }

  // B-word (letters +-(k+1)) equal to X*(u, v) in St*.
  std::vector<int> rewrite_gen(std::uint32_t id) const {
    const QuadSpace& s = stars_->space();
    auto it = letter_of_.find(id);
    const StarGen& g = stars_->gen(id);
    for (int i = -s.ell(); i <= s.ell(); ++i) {
      if (i == 0) continue;
      if (g.u == basis_e(s, i)) return decompose_basis(i, g.v);
    }
    (void)it;
    // general u: conjugate the basis case by the lifted witness
    auto wit = stars_->orbit().witness(g.u);
    Vector v0 = stars_->orbit().apply_witness_inverse(wit, g.v);
    std::vector<int> pre;
    for (const auto& [lab, e] : wit) {
      StarSym sym = map_F(*stars_, SGen{lab, e});
      pre.push_back(letter(sym.first) * sym.second);
    }
    std::vector<int> out = pre;
    for (int letter : decompose_basis(1, v0)) out.push_back(letter);
    for (std::size_t t = pre.size(); t-- > 0;) out.push_back(-pre[t]);
    return out;
  }

  std::vector<int> rewrite(const StarWord& w) const {
    std::vector<int> out;
    for (const auto& [id, e] : w) {
      std::vector<int> piece = rewrite_gen(id);
      if (e > 0) {
        for (int letter : piece) push_reduced(out, letter);
      } else {
        for (std::size_t t = piece.size(); t-- > 0;) push_reduced(out, -piece[t]);
      }
    }
    return out;
  }

private:
  static void push_reduced(std::vector<int>& w, int letter) {
    if (!w.empty() && w.back() == -letter)
      w.pop_back();
    else
      w.push_back(letter);
  }

  int letter(std::uint32_t id) const { return letter_of_.at(id) + 1; }

  // X*(e_i, v) as a product of single-line symbols (schemas 1 and 4).
  std::vector<int> decompose_basis(int i, const Vector& v) const {
    const QuadSpace& s = stars_->space();
    std::vector<int> out;
    for (int k = -s.ell(); k <= s.ell(); ++k) {
      if (k == 0 || k == i || k == -i) continue;
      std::uint64_t c = v[s.pos(k)];
      if (c == 0) continue;
      out.push_back(letter(stars_->id_of(basis_e(s, i), basis_e(s, k).scaled(c))));
    }
    if (s.r() > 0) {
      std::vector<std::uint64_t> m0(s.r());
      bool nz = false;
      for (int k = 0; k < s.r(); ++k) {
        m0[k] = v[s.fpos(k + 1)];
        nz |= m0[k] != 0;
      }
      if (nz) out.push_back(letter(stars_->id_of(basis_e(s, i), embed_m0(s, m0))));
    }
    return out;
  }

  StarGenSet* stars_;
  std::vector<std::uint32_t> alphabet_;
  std::unordered_map<std::uint32_t, int> letter_of_;
};

inline Report f_direction_suite(const QuadSpace& s, const OrbitTable& table, StarGenSet& stars,
                                std::uint64_t sample, std::uint64_t seed,
                                std::uint64_t max_cosets = 400'000) {
  suites_detail::Timer timer;
  Report rep("f-direction");
  rep.data["seed"] = seed;
  StarRewriter rw(stars);
  auto pairs = pair_orbit(s, table.gens());

  Presentation p;
  p.ngens = rw.alphabet_size();
  std::set<std::vector<int>> seen;
  auto add = [&](const StarWord& w) {
    std::vector<int> rel = rw.rewrite(w);
    if (!rel.empty() && seen.insert(rel).second) p.add_relator(std::move(rel));
  };

  // structured families: schemas 1 and 4 over basis u, schema 3 on basis
  // pairs, schema 2 with both pairs basis-shaped
  const std::uint64_t K = s.ring().size();
  for (int i = -s.ell(); i <= s.ell(); ++i) {
    if (i == 0) continue;
    Vector ei = basis_e(s, i);
    for (const Vector& v : VectorRange(s)) {
      if (bilinear(ei, v) != 0) continue;
      for (std::uint64_t a = 0; a < K; ++a)
        add(StarWord{{stars.id_of(ei, ei.scaled(a)), 1}});  // schema 4
      for (const Vector& vp : VectorRange(s)) {
        if (bilinear(ei, vp) != 0) continue;
        add(StarWord{{stars.id_of(ei, v), 1}, {stars.id_of(ei, vp), 1}, {stars.id_of(ei, v + vp), -1}});
      }
    }
  }
  {
    std::vector<std::uint32_t> basis_ids;
    for (int i = -s.ell(); i <= s.ell(); ++i) {
      if (i == 0) continue;
      for (int k = -s.ell(); k <= s.ell(); ++k) {
        if (k == 0 || k == i || k == -i) continue;
        for (std::uint64_t a = 1; a < K; ++a)
          basis_ids.push_back(stars.id_of(basis_e(s, i), basis_e(s, k).scaled(a)));
      }
      for (std::uint64_t mk = 1; mk < detail::m0_count(s); ++mk)
        basis_ids.push_back(stars.id_of(basis_e(s, i), embed_m0(s, detail::m0_from_key(s, mk))));
    }
    for (std::uint32_t a : basis_ids)
      for (std::uint32_t b : basis_ids) {
        const Mat& T = stars.esd_mat(a);
        const StarGen& gb = stars.gen(b);
        std::uint32_t c = stars.id_of(T.apply(gb.u), T.apply(gb.v));
        add(StarWord{{a, 1}, {b, 1}, {a, -1}, {c, -1}});
      }
    // schema 3 instances on basis pairs
    for (int i = -s.ell(); i <= s.ell(); ++i) {
      if (i == 0) continue;
      for (int j = -s.ell(); j <= s.ell(); ++j) {
        if (j == 0 || j == i || j == -i) continue;
        if (!pair_in_orbit(s, pairs, basis_e(s, i), basis_e(s, j))) continue;
        for (std::uint64_t a = 0; a < K; ++a) {
          std::uint32_t x = stars.id_of(basis_e(s, i), basis_e(s, j).scaled(a));
          std::uint32_t y = stars.id_of(basis_e(s, j), (-basis_e(s, i)).scaled(a));
          add(StarWord{{x, 1}, {y, -1}});
        }
      }
    }
  }
  rep.count("alphabet", p.ngens);
  rep.count("relators", p.relators.size());

  TcOptions opt;
  opt.max_cosets = max_cosets;
  opt.felsch = true;  // near-zero overshoot on this presentation
  TcResult tc = todd_coxeter(p, opt);
  rep.count("high_water", tc.high_water);
  if (!tc.completed) {
    rep.data["enumeration_completed"] = false;
    rep.note("reduced St* enumeration overflowed; F-direction check is inconclusive");
    rep.timings["seconds"] = timer.seconds();
    return rep;
  }
  rep.data["enumeration_completed"] = true;
  rep.count("reduced_group_order", group_order(tc.table));

  // sampled Steinberg relators r: F(r) must trace to the identity
  std::uint64_t checked = 0, bad = 0;
  SamplePolicy rel_pol;
  rel_pol.exhaustive_cap = 0;
  rel_pol.sample = sample / 9 + 1;
  rel_pol.seed = seed ^ 0xfd;
  ParamCtx ctx(s);
  for (int t = 0; t < 9; ++t) {
    for_each_relation_instance(s, static_cast<Schema>(t), ctx, rel_pol, [&](const Word& w) {
      StarWord fw = map_F_word(stars, w);
      if (!word_is_identity(tc.table, rw.rewrite(fw))) ++bad;
      ++checked;
    });
  }
  rep.count("st_relators_checked", checked);
  if (bad) rep.fail("a Steinberg relator fails in the reduced St* enumeration");
  rep.timings["seconds"] = timer.seconds();
  return rep;
}

}  // namespace ostw
