#pragma once

// Steinberg words over the generators x_ij(a) (long, i != +-j) and x_j(m)
// (short, m in M0), the nine relation schemas R1..R9, the evaluation
// homomorphism phi: x_ij(a) -> t_ij(a), x_j(m) -> t_j(m), and conjugation
// by single generators.
//
// Words are free-group words; no confluent rewriting modulo all nine
// relations is attempted (word identities are decided by the coset-table
// oracle in tc.hpp).  normalize() applies only R1/R2/R3 consequences:
// R2-canonical orientation of long labels, folding of inverse exponents
// into negated parameters, merging of adjacent same-label generators, and
// deletion of zero-parameter generators.  phi is preserved by all steps.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ostw/orthogroup.hpp"
#include "ostw/rng.hpp"

namespace ostw {

struct SGen {
  GenLabel lab;
  int e = 1;  // +-1

  SGen inverse() const { return SGen{lab, -e}; }
};

struct Word {
  const QuadSpace* sp = nullptr;
  std::vector<SGen> g;

  Word() = default;
  explicit Word(const QuadSpace& s) : sp(&s) {}

  Word& x_long(int i, int j, std::uint64_t a, int e = 1) {
    g.push_back(SGen{GenLabel::make_long(i, j, a), e});
    return *this;
  }
  Word& x_short(int j, std::vector<std::uint64_t> m0, int e = 1) {
    g.push_back(SGen{GenLabel::make_short(j, std::move(m0)), e});
    return *this;
  }
  Word& append(const GenLabel& lab, int e = 1) {
    g.push_back(SGen{lab, e});
    return *this;
  }

  std::size_t size() const { return g.size(); }
  bool empty() const { return g.empty(); }

  friend bool operator==(const Word& a, const Word& b) {
    if (a.g.size() != b.g.size()) return false;
    for (std::size_t t = 0; t < a.g.size(); ++t)
      if (!(a.g[t].lab == b.g[t].lab) || a.g[t].e != b.g[t].e) return false;
    return true;
  }
};

inline void require_same_space(const Word& a, const Word& b) {
  if (a.sp != b.sp && !(a.sp && b.sp && *a.sp == *b.sp))
    throw std::invalid_argument("Word: space mismatch");
}

inline Word mul(const Word& a, const Word& b) {
  require_same_space(a, b);
  Word out = a;
  out.g.insert(out.g.end(), b.g.begin(), b.g.end());
  return out;
}

inline Word inv(const Word& w) {
  Word out(*w.sp);
  out.g.reserve(w.g.size());
  for (std::size_t t = w.g.size(); t-- > 0;) out.g.push_back(w.g[t].inverse());
  return out;
}

inline Word conj(const Word& g, const Word& w) { return mul(mul(g, w), inv(g)); }
inline Word commutator(const Word& a, const Word& b) { return mul(mul(a, b), mul(inv(a), inv(b))); }

inline GenLabel r2_canonical(const QuadSpace& s, const GenLabel& g) {
  if (g.kind != GenLabel::Long || long_label_is_canonical(s, g.i, g.j)) return g;
  return GenLabel::make_long(-g.j, -g.i, s.ring().neg(g.a));
}

// R1/R2/R3 normal form: canonical long orientation, exponents folded into
// parameter negation, adjacent same-label merge, zero-parameter deletion.
inline Word normalize(const Word& w) {
  const QuadSpace& s = *w.sp;
  const RingSpec& R = s.ring();
  Word out(s);
  for (const SGen& t : w.g) {
    GenLabel lab = t.e < 0 ? t.lab.negated(R) : t.lab;
    lab = r2_canonical(s, lab);
    if (lab.is_zero()) continue;
    if (!out.g.empty()) {
      GenLabel& top = out.g.back().lab;
      bool same = top.kind == lab.kind &&
                  (lab.kind == GenLabel::Long ? (top.i == lab.i && top.j == lab.j) : top.j == lab.j);
      if (same) {
        if (lab.kind == GenLabel::Long) {
          top.a = R.add(top.a, lab.a);
        } else {
          for (std::size_t k = 0; k < top.m0.size(); ++k) top.m0[k] = R.add(top.m0[k], lab.m0[k]);
        }
        if (top.is_zero()) out.g.pop_back();
        continue;
      }
    }
    out.g.push_back(SGen{std::move(lab), 1});
  }
  return out;
}

inline Mat phi(const Word& w, TransvectionCache& cache) {
  const QuadSpace& s = cache.space();
  Mat acc = Mat::identity(s.ring(), s.dim());
  for (const SGen& t : w.g) {
    const GenLabel lab = t.e < 0 ? t.lab.negated(s.ring()) : t.lab;
    acc = acc * cache.get(lab);
  }
  return acc;
}

inline Mat phi(const Word& w) {
  TransvectionCache cache(*w.sp);
  return phi(w, cache);
}

// ---------------------------------------------------------------------------
// Relation schemas.
//
// Parameter arithmetic is routed through a context so the same instance
// enumeration serves both the plain group (level = 1) and the homotope
// groups K^(s), where products acquire an extra factor s:
//   a^(s) b^(s) = (abs)^(s),  q(m^(s)) = (q(m) s)^(s),
//   <m^(s), m'^(s)> = (<m,m'> s)^(s),  m^(s) a^(s) = (mas)^(s).

enum class Schema { R1, R2, R3, R4, R5, R6, R7, R8, R9 };

inline const char* schema_name(Schema s) {
  static const char* names[] = {"R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9"};
  return names[static_cast<int>(s)];
}

inline Schema schema_from_name(const std::string& name) {
  for (int t = 0; t < 9; ++t)
    if (name == schema_name(static_cast<Schema>(t))) return static_cast<Schema>(t);
  throw std::invalid_argument("unknown schema: " + name);
}

struct ParamCtx {
  const QuadSpace* sp;
  std::uint64_t level;  // s; 1 for the plain group

  explicit ParamCtx(const QuadSpace& s, std::uint64_t lvl = 1) : sp(&s), level(lvl % s.ring().size()) {}

  const RingSpec& R() const { return sp->ring(); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return R().mul(R().mul(a, b), level); }
  std::uint64_t qval(const std::vector<std::uint64_t>& m0) const {
    return R().mul(q_form(embed_m0(*sp, m0)), level);
  }
  std::uint64_t pairval(const std::vector<std::uint64_t>& m0, const std::vector<std::uint64_t>& n0) const {
    return R().mul(bilinear(embed_m0(*sp, m0), embed_m0(*sp, n0)), level);
  }
  std::vector<std::uint64_t> vecscale(std::vector<std::uint64_t> m0, std::uint64_t a) const {
    std::uint64_t c = R().mul(a, level);
    for (auto& x : m0) x = R().mul(x, c);
    return m0;
  }
};

namespace detail {

// Valid ordered long index pairs (i, j), i != +-j, in signed order.
inline std::vector<std::pair<int, int>> long_pairs(const QuadSpace& s) {
  std::vector<std::pair<int, int>> out;
  for (int i = -s.ell(); i <= s.ell(); ++i) {
    if (i == 0) continue;
    for (int j = -s.ell(); j <= s.ell(); ++j) {
      if (j == 0 || j == i || j == -i) continue;
      out.emplace_back(i, j);
    }
  }
  return out;
}

inline std::vector<int> short_indices(const QuadSpace& s) {
  std::vector<int> out;
  for (int i = -s.ell(); i <= s.ell(); ++i)
    if (i != 0) out.push_back(i);
  return out;
}

inline std::vector<std::uint64_t> m0_from_key(const QuadSpace& s, std::uint64_t k) {
  std::vector<std::uint64_t> m0(s.r());
  for (int t = 0; t < s.r(); ++t) {
    m0[t] = k % s.ring().size();
    k /= s.ring().size();
  }
  return m0;
}

inline std::uint64_t m0_count(const QuadSpace& s) {
  std::uint64_t c = 1;
  for (int t = 0; t < s.r(); ++t) c *= s.ring().size();
  return c;
}

}  // namespace detail

// One relator (LHS * RHS^{-1}) per instance of the given schema.  The
// index tuple ranges respect the side conditions exactly; parameters run
// over the whole ring / module.  When the instance count exceeds
// `exhaustive_cap`, a seeded sample of size `sample` is drawn instead.
struct SamplePolicy {
  std::uint64_t exhaustive_cap = 1'000'000;
  std::uint64_t sample = 100'000;
  std::uint64_t seed = 1;
};

// Returns the number of instances visited; `fn` receives each relator.
inline std::uint64_t for_each_relation_instance(const QuadSpace& sp, Schema sch, const ParamCtx& ctx,
                                                const SamplePolicy& pol,
                                                const std::function<void(const Word&)>& fn) {
  const RingSpec& R = sp.ring();
  const std::uint64_t K = R.size();
  const std::uint64_t M = detail::m0_count(sp);
  auto pairs = detail::long_pairs(sp);
  auto shorts = detail::short_indices(sp);

  std::uint64_t params = 1;
  std::vector<std::array<int, 4>> tuples;  // up to 4 indices per instance
  switch (sch) {
    case Schema::R1:  // x_ij(a+b) = x_ij(a) x_ij(b)
      for (auto [i, j] : pairs) tuples.push_back({i, j, 0, 0});
      params = K * K;
      break;
    case Schema::R2:  // x_ij(a) = x_{-j,-i}(-a)
      for (auto [i, j] : pairs) tuples.push_back({i, j, 0, 0});
      params = K;
      break;
    case Schema::R3:  // x_i(m+m') = x_i(m) x_i(m')
      for (int i : shorts) tuples.push_back({i, 0, 0, 0});
      params = M * M;
      break;
    case Schema::R4:  // [x_ij(a), x_kl(b)] = 1 for j != k != -i != -l != j
      for (auto [i, j] : pairs)
        for (auto [k, l] : pairs)
          if (j != k && k != -i && i != l && j != -l) tuples.push_back({i, j, k, l});
      params = K * K;
      break;
    case Schema::R5:  // [x_ij(a), x_{j,-i}(b)] = 1
      for (auto [i, j] : pairs) tuples.push_back({i, j, 0, 0});
      params = K * K;
      break;
    case Schema::R6:  // [x_ij(a), x_jk(b)] = x_ik(ab) for i != +-k
      for (auto [i, j] : pairs)
        for (int k = -sp.ell(); k <= sp.ell(); ++k) {
          if (k == 0 || k == j || k == -j || k == i || k == -i) continue;
          tuples.push_back({i, j, k, 0});
        }
      params = K * K;
      break;
    case Schema::R7:  // [x_i(m), x_j(m')] = x_{-i,j}(-<m,m'>) for i != +-j
      for (int i : shorts)
        for (int j : shorts) {
          if (j == i || j == -i) continue;
          tuples.push_back({i, j, 0, 0});
        }
      params = M * M;
      break;
    case Schema::R8:  // [x_i(m), x_jk(a)] = 1 for j != i != -k
      for (int i : shorts)
        for (auto [j, k] : pairs)
          if (j != i && i != -k) tuples.push_back({i, j, k, 0});
      params = M * K;
      break;
    case Schema::R9:  // [x_i(m), x_ij(a)] = x_{-i,j}(-q(m) a) x_j(ma)
      for (auto [i, j] : pairs) tuples.push_back({i, j, 0, 0});
      params = M * K;
      break;
  }

  auto build = [&](const std::array<int, 4>& t, std::uint64_t p) -> Word {
    Word lhs(sp), rhs(sp);
    switch (sch) {
      case Schema::R1: {
        std::uint64_t a = p % K, b = p / K;
        lhs.x_long(t[0], t[1], R.add(a, b));
        rhs.x_long(t[0], t[1], a).x_long(t[0], t[1], b);
        break;
      }
      case Schema::R2: {
        std::uint64_t a = p;
        lhs.x_long(t[0], t[1], a);
        rhs.x_long(-t[1], -t[0], R.neg(a));
        break;
      }
      case Schema::R3: {
        auto m = detail::m0_from_key(sp, p % M), m2 = detail::m0_from_key(sp, p / M);
        std::vector<std::uint64_t> sum(m.size());
        for (std::size_t k = 0; k < m.size(); ++k) sum[k] = R.add(m[k], m2[k]);
        lhs.x_short(t[0], sum);
        rhs.x_short(t[0], m).x_short(t[0], m2);
        break;
      }
      case Schema::R4: {
        std::uint64_t a = p % K, b = p / K;
        Word x(sp), y(sp);
        x.x_long(t[0], t[1], a);
        y.x_long(t[2], t[3], b);
        lhs = commutator(x, y);
        break;
      }
      case Schema::R5: {
        std::uint64_t a = p % K, b = p / K;
        Word x(sp), y(sp);
        x.x_long(t[0], t[1], a);
        y.x_long(t[1], -t[0], b);
        lhs = commutator(x, y);
        break;
      }
      case Schema::R6: {
        std::uint64_t a = p % K, b = p / K;
        Word x(sp), y(sp);
        x.x_long(t[0], t[1], a);
        y.x_long(t[1], t[2], b);
        lhs = commutator(x, y);
        rhs.x_long(t[0], t[2], ctx.mul(a, b));
        break;
      }
      case Schema::R7: {
        auto m = detail::m0_from_key(sp, p % M), m2 = detail::m0_from_key(sp, p / M);
        Word x(sp), y(sp);
        x.x_short(t[0], m);
        y.x_short(t[1], m2);
        lhs = commutator(x, y);
        rhs.x_long(-t[0], t[1], R.neg(ctx.pairval(m, m2)));
        break;
      }
      case Schema::R8: {
        auto m = detail::m0_from_key(sp, p % M);
        std::uint64_t a = p / M;
        Word x(sp), y(sp);
        x.x_short(t[0], m);
        y.x_long(t[1], t[2], a);
        lhs = commutator(x, y);
        break;
      }
      case Schema::R9: {
        auto m = detail::m0_from_key(sp, p % M);
        std::uint64_t a = p / M;
        Word x(sp), y(sp);
        x.x_short(t[0], m);
        y.x_long(t[0], t[1], a);
        lhs = commutator(x, y);
        rhs.x_long(-t[0], t[1], R.neg(ctx.mul(ctx.qval(m), a)));
        rhs.x_short(t[1], ctx.vecscale(m, a));
        break;
      }
    }
    return mul(lhs, inv(rhs));
  };

  const std::uint64_t total = tuples.size() * params;
  if (tuples.empty()) return 0;
  if (total <= pol.exhaustive_cap) {
    for (const auto& t : tuples)
      for (std::uint64_t p = 0; p < params; ++p) fn(build(t, p));
    return total;
  }
  Rng rng(pol.seed ^ (static_cast<std::uint64_t>(sch) << 32));
  for (std::uint64_t n = 0; n < pol.sample; ++n)
    fn(build(tuples[rng.below(tuples.size())], rng.below(params)));
  return pol.sample;
}

inline std::vector<Word> relation_instances(const QuadSpace& sp, Schema sch, const ParamCtx& ctx,
                                            const SamplePolicy& pol = {}) {
  std::vector<Word> out;
  for_each_relation_instance(sp, sch, ctx, pol, [&](const Word& w) { out.push_back(w); });
  return out;
}

// ---------------------------------------------------------------------------
// Conjugation of a word by a single generator, rewritten generator by
// generator via the action formulas (the specialization of the localized
// formula list to denominator 1).  Pairs the formulas do not cover --
// opposite long roots x_ij vs x_ji and opposite short roots x_i vs x_{-i}
// -- fall back to formal conjugation g t g^{-1}; same-root pairs commute.
// phi(act_elementary(g, w)) = t(g) phi(w) t(g)^{-1} always.

namespace detail {

inline void conj_gen(const QuadSpace& sp, const ParamCtx& ctx, const GenLabel& g, const GenLabel& t,
                     std::vector<SGen>& out) {
  const RingSpec& R = sp.ring();
  auto emit = [&](GenLabel lab) {
    if (!lab.is_zero()) out.push_back(SGen{std::move(lab), 1});
  };
  auto fallback = [&] {
    out.push_back(SGen{g, 1});
    out.push_back(SGen{t, 1});
    out.push_back(SGen{g.negated(R), 1});
  };

  if (g.kind == GenLabel::Long && t.kind == GenLabel::Long) {
    const int i = g.i, j = g.j, k = t.i, l = t.j;
    auto is = [&](int a, int b) { return k == a && l == b; };
    if (is(i, j) || is(-j, -i)) {  // same root: additive family commutes
      emit(t);
    } else if (is(j, i) || is(-i, -j)) {  // opposite root
      fallback();
    } else if (is(j, -i) || is(i, -j) || is(-i, j) || is(-j, i)) {  // R5 patterns
      emit(t);
    } else if (k == j) {
      emit(GenLabel::make_long(i, l, ctx.mul(g.a, t.a)));
      emit(t);
    } else if (l == i) {
      emit(GenLabel::make_long(-j, -k, ctx.mul(g.a, t.a)));
      emit(t);
    } else if (k == -i) {
      emit(GenLabel::make_long(-j, l, R.neg(ctx.mul(g.a, t.a))));
      emit(t);
    } else if (l == -j) {
      emit(GenLabel::make_long(i, -k, R.neg(ctx.mul(g.a, t.a))));
      emit(t);
    } else {
      emit(t);
    }
    return;
  }

  if (g.kind == GenLabel::Long && t.kind == GenLabel::Short) {
    const int i = g.i, j = g.j, k = t.j;
    if (k == i) {
      emit(GenLabel::make_long(-i, j, ctx.mul(ctx.qval(t.m0), g.a)));
      emit(GenLabel::make_short(j, ctx.vecscale(t.m0, R.neg(g.a))));
      emit(t);
    } else if (k == -j) {
      emit(GenLabel::make_long(j, -i, R.neg(ctx.mul(ctx.qval(t.m0), g.a))));
      emit(GenLabel::make_short(-i, ctx.vecscale(t.m0, g.a)));
      emit(t);
    } else {
      emit(t);
    }
    return;
  }

  if (g.kind == GenLabel::Short && t.kind == GenLabel::Long) {
    const int i = g.j, k = t.i, l = t.j;
    if (k == i) {
      emit(GenLabel::make_long(-i, l, R.neg(ctx.mul(ctx.qval(g.m0), t.a))));
      emit(GenLabel::make_short(l, ctx.vecscale(g.m0, t.a)));
      emit(t);
    } else if (l == -i) {
      emit(GenLabel::make_long(-i, -k, ctx.mul(ctx.qval(g.m0), t.a)));
      emit(GenLabel::make_short(-k, ctx.vecscale(g.m0, R.neg(t.a))));
      emit(t);
    } else {
      emit(t);
    }
    return;
  }

  // short by short
  const int i = g.j, k = t.j;
  if (k == i) {
    emit(t);
  } else if (k == -i) {
    fallback();
  } else {
    emit(GenLabel::make_long(-i, k, R.neg(ctx.pairval(g.m0, t.m0))));
    emit(t);
  }
}

}  // namespace detail

inline Word act_elementary(const GenLabel& g, const Word& w) {
  const QuadSpace& sp = *w.sp;
  ParamCtx ctx(sp, 1);
  Word out(sp);
  for (const SGen& t : w.g) {
    std::vector<SGen> piece;
    detail::conj_gen(sp, ctx, g, t.e < 0 ? t.lab.negated(sp.ring()) : t.lab, piece);
    out.g.insert(out.g.end(), piece.begin(), piece.end());
  }
  return out;
}

}  // namespace ostw
