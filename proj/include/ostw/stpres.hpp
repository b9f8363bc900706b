#pragma once

// Bridge from Steinberg words to Todd-Coxeter presentations.  The TC
// alphabet is the normalized generator set: R2-canonical long labels and
// short labels, nonzero parameters only.  R2 disappears into the
// encoding; R1/R3 relators carry the parameter group structure.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "ostw/steinberg.hpp"
#include "ostw/tc.hpp"

namespace ostw {

class SteinbergAlphabet {
public:
  explicit SteinbergAlphabet(const QuadSpace& s) : sp_(&s) {
    const std::uint64_t K = s.ring().size();
    for (int i = -s.ell(); i <= s.ell(); ++i) {
      if (i == 0) continue;
      for (int j = -s.ell(); j <= s.ell(); ++j) {
        if (j == 0 || j == i || j == -i) continue;
        if (!long_label_is_canonical(s, i, j)) continue;
        for (std::uint64_t a = 1; a < K; ++a) add(GenLabel::make_long(i, j, a));
      }
    }
    const std::uint64_t M = detail::m0_count(s);
    for (int j = -s.ell(); j <= s.ell(); ++j) {
      if (j == 0) continue;
      for (std::uint64_t mk = 1; mk < M; ++mk) add(GenLabel::make_short(j, detail::m0_from_key(s, mk)));
    }
  }

  const QuadSpace& space() const { return *sp_; }
  int size() const { return static_cast<int>(symbols_.size()); }
  const GenLabel& label(int id) const { return symbols_[id]; }

  int id(const GenLabel& canonical) const {
    auto it = index_.find(canonical.to_string());
    if (it == index_.end()) throw std::out_of_range("alphabet: unknown label " + canonical.to_string());
    return it->second;
  }

  // Letters +-(id+1), R2-canonicalized, zero parameters dropped, freely
  // reduced.  Inverse exponents stay formal inverse letters.
  std::vector<int> encode(const Word& w) const {
    std::vector<int> out;
    for (const SGen& t : w.g) {
      GenLabel lab = r2_canonical(*sp_, t.lab);
      if (lab.is_zero()) continue;
      int letter = (id(lab) + 1) * t.e;
      if (!out.empty() && out.back() == -letter)
        out.pop_back();
      else
        out.push_back(letter);
    }
    return out;
  }

private:
  void add(GenLabel lab) {
    index_.emplace(lab.to_string(), static_cast<int>(symbols_.size()));
    symbols_.push_back(std::move(lab));
  }

  const QuadSpace* sp_;
  std::vector<GenLabel> symbols_;
  std::unordered_map<std::string, int> index_;
};

// Finite presentation of St(M, q): the full relation-instance set over
// the finite ring, encoded on the canonical alphabet and deduplicated.
inline Presentation steinberg_presentation(const SteinbergAlphabet& alpha) {
  const QuadSpace& s = alpha.space();
  Presentation p;
  p.ngens = alpha.size();
  for (int t = 0; t < alpha.size(); ++t) p.names.push_back(alpha.label(t).to_string());
  std::set<std::vector<int>> seen;
  ParamCtx ctx(s);
  SamplePolicy pol;
  pol.exhaustive_cap = UINT64_MAX;  // the relation set must be complete
  for (int t = 0; t < 9; ++t) {
    for_each_relation_instance(s, static_cast<Schema>(t), ctx, pol, [&](const Word& w) {
      std::vector<int> rel = alpha.encode(w);
      if (rel.empty()) return;
      if (seen.insert(rel).second) p.add_relator(std::move(rel));
    });
  }
  return p;
}

}  // namespace ostw
