#pragma once

// Homotope algebras K^(s), modules M^(s), staged Steinberg words, the
// transition maps a^(ss') -> (as')^(s), finite-stage evaluation
// x_ij(a^(s)) -> t_ij(as), and the localized conjugation action.
//
// Stages are indexed by explicit factor lists (formal monoid words in the
// chosen s's), never by products alone: factorizations are input data.
//
// The localized action of x_ij(a/f^n) maps stage f^(2n) s' to stage s'.
// Short-root formulas consume both f^n powers through q(m/f^n); long-root
// formulas consume at most one and are padded by a transition.  Scalar
// helpers, element-level, with L = value of the input stage:
//
//   b^(L) . (a/f^n)      -> (ba)^(f^n s'), pad -> (b a f^n)^(s')
//   q(m^(L)) . (a/f^n)   -> (q(m) L a)^(f^n s'), pad -> (q(m) L a f^n)^(s')
//   q(m/f^n) . b^(L)     -> (q(m) b)^(s')
//   m^(L) . (a/f^n)      -> (m a)^(f^n s'), pad -> (m a f^n)^(s')
//   (m/f^n) . b^(L)      -> (m b f^n)^(s')           (module-valued)
//   <m'^(L), m/f^n>      -> (<m',m> f^n)^(s')
//
// Correctness is arbitrated by the matrix oracle: evaluating the result
// at stage s' must equal conjugating the evaluated input by the localized
// transvection.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ostw/steinberg.hpp"

namespace ostw {

struct HomotopeScalar {
  const RingSpec* R = nullptr;
  std::uint64_t base = 0;
  std::uint64_t level = 0;  // s, fixed per algebra

  HomotopeScalar(const RingSpec& ring, std::uint64_t b, std::uint64_t s)
      : R(&ring), base(b % ring.size()), level(s % ring.size()) {}

  friend void require_level(const HomotopeScalar& a, const HomotopeScalar& b) {
    if (a.level != b.level) throw std::invalid_argument("homotope: level mismatch");
  }
  friend HomotopeScalar operator+(const HomotopeScalar& a, const HomotopeScalar& b) {
    require_level(a, b);
    return {*a.R, a.R->add(a.base, b.base), a.level};
  }
  HomotopeScalar operator-() const { return {*R, R->neg(base), level}; }
  // a^(s) b = (ab)^(s): K-module action
  HomotopeScalar times_plain(std::uint64_t b) const { return {*R, R->mul(base, b), level}; }
  // a^(s) b^(s) = (abs)^(s)
  friend HomotopeScalar operator*(const HomotopeScalar& a, const HomotopeScalar& b) {
    require_level(a, b);
    return {*a.R, a.R->mul(a.R->mul(a.base, b.base), a.level), a.level};
  }
  friend bool operator==(const HomotopeScalar& a, const HomotopeScalar& b) {
    require_level(a, b);
    return a.base == b.base;
  }
};

struct HomotopeVector {
  Vector base;
  std::uint64_t level = 0;

  HomotopeVector(Vector b, std::uint64_t s) : base(std::move(b)), level(s % base.sp->ring().size()) {}

  friend HomotopeVector operator+(const HomotopeVector& a, const HomotopeVector& b) {
    if (a.level != b.level) throw std::invalid_argument("homotope: level mismatch");
    return {a.base + b.base, a.level};
  }
  // m^(s) a = (ma)^(s)
  HomotopeVector times_plain(std::uint64_t a) const { return {base.scaled(a), level}; }
  // m^(s) a^(s) = (mas)^(s)
  HomotopeVector times(const HomotopeScalar& a) const {
    if (level != a.level) throw std::invalid_argument("homotope: level mismatch");
    return {base.scaled(a.R->mul(a.base, level)), level};
  }
  friend bool operator==(const HomotopeVector& a, const HomotopeVector& b) {
    if (a.level != b.level) throw std::invalid_argument("homotope: level mismatch");
    return a.base == b.base;
  }
};

// q(m^(s)) = (q(m) s)^(s), <m^(s), m'^(s)> = (<m,m'> s)^(s)
inline HomotopeScalar q_form(const HomotopeVector& m) {
  const RingSpec& R = m.base.sp->ring();
  return {R, R.mul(q_form(m.base), m.level), m.level};
}
inline HomotopeScalar bilinear(const HomotopeVector& a, const HomotopeVector& b) {
  if (a.level != b.level) throw std::invalid_argument("homotope: level mismatch");
  const RingSpec& R = a.base.sp->ring();
  return {R, R.mul(bilinear(a.base, b.base), a.level), a.level};
}

// Stage index as an explicit factor list.
struct Stage {
  std::vector<std::uint64_t> factors;

  std::uint64_t value(const RingSpec& R) const {
    std::uint64_t v = R.one();
    for (auto f : factors) v = R.mul(v, f % R.size());
    return v;
  }
  bool remove_factor(std::uint64_t f) {
    auto it = std::find(factors.begin(), factors.end(), f);
    if (it == factors.end()) return false;
    factors.erase(it);
    return true;
  }
};

// A Steinberg word whose parameters are read at the given stage: the
// stored parameters are base values of K^(s) / M0^(s) elements.
struct StagedWord {
  Word word;
  Stage stage;
};

inline Word scale_word(const Word& w, std::uint64_t c) {
  const RingSpec& R = w.sp->ring();
  Word out(*w.sp);
  for (const SGen& t : w.g) {
    GenLabel lab = t.lab;
    if (lab.kind == GenLabel::Long) {
      lab.a = R.mul(lab.a, c);
    } else {
      for (auto& x : lab.m0) x = R.mul(x, c);
    }
    out.g.push_back(SGen{std::move(lab), t.e});
  }
  return out;
}

// a^(ss') -> (as')^(s), generator-wise; the factorization is explicit.
inline StagedWord transition(const StagedWord& w, std::uint64_t s_prime) {
  StagedWord out{scale_word(w.word, s_prime), w.stage};
  if (!out.stage.remove_factor(s_prime % w.word.sp->ring().size()))
    throw std::invalid_argument("transition: stage has no such factor");
  return out;
}

// x_ij(a^(s)) -> t_ij(a s), x_j(m^(s)) -> t_j(m s).
inline Mat ev_stage(const StagedWord& w, TransvectionCache& cache) {
  return phi(scale_word(w.word, w.stage.value(w.word.sp->ring())), cache);
}

// x_ij(a / f^n) or x_i(m / f^n): numerator in the label, denominator
// exponent alongside; f is fixed per tower.
struct LocalizedGen {
  GenLabel label;
  unsigned denom_exp = 0;
};

namespace homotope_detail {

inline std::uint64_t fpow(const RingSpec& R, std::uint64_t f, unsigned k) {
  std::uint64_t v = R.one();
  for (unsigned t = 0; t < k; ++t) v = R.mul(v, f);
  return v;
}

}  // namespace homotope_detail

// Conjugation of a staged word by a localized generator; input stage must
// contain f^(2n) as explicit factors, output drops them.  Index patterns
// outside the action formulas (opposite roots) are only expressible as
// formal conjugation, which needs n = 0 and residual stage value 1.
inline StagedWord act_localized(const QuadSpace& sp, std::uint64_t f, const LocalizedGen& g,
                                const StagedWord& w) {
  const RingSpec& R = sp.ring();
  const unsigned n = g.denom_exp;
  Stage rest = w.stage;
  for (unsigned t = 0; t < 2 * n; ++t)
    if (!rest.remove_factor(f % R.size()))
      throw std::invalid_argument("act_localized: stage is not of the form f^(2n) s'");
  const std::uint64_t Lval = w.stage.value(R);
  const std::uint64_t rest_val = rest.value(R);
  const std::uint64_t F1 = homotope_detail::fpow(R, f, n);
  const std::uint64_t F2 = homotope_detail::fpow(R, f, 2 * n);

  const GenLabel& ga = g.label;
  auto q_plain = [&](const std::vector<std::uint64_t>& m0) { return q_form(embed_m0(sp, m0)); };
  auto pair_plain = [&](const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    return bilinear(embed_m0(sp, a), embed_m0(sp, b));
  };
  auto scaled_m0 = [&](const std::vector<std::uint64_t>& m0, std::uint64_t c) {
    std::vector<std::uint64_t> out = m0;
    for (auto& x : out) x = R.mul(x, c);
    return out;
  };

  Word out(sp);
  auto emit = [&](GenLabel lab) {
    if (!lab.is_zero()) out.g.push_back(SGen{std::move(lab), 1});
  };

  // Conjugate one exponent-folded target generator.
  auto conj_one = [&](const GenLabel& t) {
    std::vector<SGen> piece;
    auto transitioned = [&](const GenLabel& lab) {
      GenLabel x = lab;
      if (x.kind == GenLabel::Long)
        x.a = R.mul(x.a, F2);
      else
        x.m0 = scaled_m0(x.m0, F2);
      return x;
    };
    auto fallback = [&] {
      if (n != 0 || rest_val != R.one())
        throw std::domain_error("act_localized: pattern not covered by the action formulas (" +
                                ga.to_string() + " acting on " + t.to_string() + ")");
      emit(ga);
      emit(t);
      emit(ga.negated(R));
    };

    if (ga.kind == GenLabel::Long && t.kind == GenLabel::Long) {
      const int i = ga.i, j = ga.j, k = t.i, l = t.j;
      auto is = [&](int a, int b) { return k == a && l == b; };
      std::uint64_t ab = R.mul(R.mul(ga.a, t.a), F1);  // a b f^n at stage s'
      if (is(i, j) || is(-j, -i) || is(j, -i) || is(i, -j) || is(-i, j) || is(-j, i)) {
        emit(transitioned(t));
      } else if (is(j, i) || is(-i, -j)) {
        fallback();
        return;
      } else if (k == j) {
        emit(GenLabel::make_long(i, l, ab));
        emit(transitioned(t));
      } else if (l == i) {
        emit(GenLabel::make_long(-j, -k, ab));
        emit(transitioned(t));
      } else if (k == -i) {
        emit(GenLabel::make_long(-j, l, R.neg(ab)));
        emit(transitioned(t));
      } else if (l == -j) {
        emit(GenLabel::make_long(i, -k, R.neg(ab)));
        emit(transitioned(t));
      } else {
        emit(transitioned(t));
      }
      return;
    }

    if (ga.kind == GenLabel::Long && t.kind == GenLabel::Short) {
      const int i = ga.i, j = ga.j, k = t.j;
      // q(m^(L)) a / f^n, padded: q(m) L a f^n at stage s'
      std::uint64_t qm = R.mul(R.mul(R.mul(q_plain(t.m0), Lval), ga.a), F1);
      // m^(L) a / f^n, padded: m a f^n at stage s'
      std::uint64_t ma = R.mul(ga.a, F1);
      if (k == i) {
        emit(GenLabel::make_long(-i, j, qm));
        emit(GenLabel::make_short(j, scaled_m0(t.m0, R.neg(ma))));
        emit(transitioned(t));
      } else if (k == -j) {
        emit(GenLabel::make_long(j, -i, R.neg(qm)));
        emit(GenLabel::make_short(-i, scaled_m0(t.m0, ma)));
        emit(transitioned(t));
      } else {
        emit(transitioned(t));
      }
      return;
    }

    if (ga.kind == GenLabel::Short && t.kind == GenLabel::Long) {
      const int i = ga.j, k = t.i, l = t.j;
      // q(m/f^n) b^(L): q(m) b at stage s' (both f^n consumed)
      std::uint64_t qm = R.mul(q_plain(ga.m0), t.a);
      // (m/f^n) b^(L), padded: m b f^n at stage s'
      std::uint64_t mb = R.mul(t.a, F1);
      if (k == i) {
        emit(GenLabel::make_long(-i, l, R.neg(qm)));
        emit(GenLabel::make_short(l, scaled_m0(ga.m0, mb)));
        emit(transitioned(t));
      } else if (l == -i) {
        emit(GenLabel::make_long(-i, -k, qm));
        emit(GenLabel::make_short(-k, scaled_m0(ga.m0, R.neg(mb))));
        emit(transitioned(t));
      } else {
        emit(transitioned(t));
      }
      return;
    }

    // short acting on short
    const int i = ga.j, k = t.j;
    if (k == i) {
      emit(transitioned(t));
    } else if (k == -i) {
      fallback();
    } else {
      // <m'^(L), m/f^n>, padded: <m',m> f^n at stage s'
      emit(GenLabel::make_long(-i, k, R.neg(R.mul(pair_plain(ga.m0, t.m0), F1))));
      emit(transitioned(t));
    }
  };

  for (const SGen& t : w.word.g) {
    std::size_t before = out.g.size();
    conj_one(t.e < 0 ? t.lab.negated(R) : t.lab);
    (void)before;
  }
  return StagedWord{std::move(out), std::move(rest)};
}

// The localized transvection of g = x(c / f^n) over the p-localization,
// realized from a numerator divisible by f^n: c = f^n c0 gives t(c0).
// The annihilator ambiguity of c0 is killed by the f^(2n) stage factors.
inline Mat localized_transvection(const QuadSpace& sp, std::uint64_t f, const LocalizedGen& g,
                                  std::uint64_t c0_hint_long,
                                  const std::vector<std::uint64_t>& c0_hint_m0) {
  (void)f;
  GenLabel lab = g.label;
  if (lab.kind == GenLabel::Long)
    lab.a = c0_hint_long;
  else
    lab.m0 = c0_hint_m0;
  return to_matrix(sp, lab).m;
}

}  // namespace ostw
