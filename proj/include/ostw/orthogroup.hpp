#pragma once

// Orthogonal matrices over (M, q), ESD-transvections
//
//   T(u, v): m -> m + u<v,m> - v<u,m> - u q(v) <u,m>,   q(u) = <u,v> = 0,
//
// the elementary transvections t_ij(a) = T(e_i, e_{-j} a) and
// t_j(m) = T(e_{-j}, -m), orbit enumeration with generator witnesses, and
// closure enumeration of the elementary orthogonal group EO(M, q).
//
// Orthogonality is checked on basis vectors and basis pairs only; this is
// equivalent to the all-vectors condition because q expands over linear
// combinations through q(b_i) and <b_i, b_j>.  Invertibility comes from a
// determinant-unit test.

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ostw/matrix.hpp"
#include "ostw/quadspace.hpp"
#include "ostw/rng.hpp"

namespace ostw {

inline bool is_orthogonal(const QuadSpace& s, const Mat& g) {
  if (g.n != s.dim()) return false;
  const int d = s.dim();
  std::vector<Vector> cols(d, Vector(s));
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) cols[j].c[i] = g(i, j);
  std::vector<Vector> bas(d, Vector(s));
  for (int j = 0; j < d; ++j) bas[j].c[j] = s.ring().one();
  for (int j = 0; j < d; ++j)
    if (q_form(cols[j]) != q_form(bas[j])) return false;
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k)
      if (bilinear(cols[j], cols[k]) != bilinear(bas[j], bas[k])) return false;
  return is_invertible(g);
}

struct OrthoMap {
  const QuadSpace* sp = nullptr;
  Mat m;

  OrthoMap() = default;
  // Certifies preservation of q at construction.
  OrthoMap(const QuadSpace& s, Mat mat, bool trusted = false) : sp(&s), m(std::move(mat)) {
    if (!trusted && !is_orthogonal(s, m))
      throw std::invalid_argument("OrthoMap: matrix does not preserve the form");
  }

  Vector apply(const Vector& v) const { return m.apply(v); }
  friend OrthoMap operator*(const OrthoMap& a, const OrthoMap& b) {
    return OrthoMap(*a.sp, a.m * b.m, true);
  }
  bool operator==(const OrthoMap& o) const { return m == o.m; }
};

inline OrthoMap esd(const Vector& u, const Vector& v) {
  require_same(u, v);
  const QuadSpace& s = *u.sp;
  const RingSpec& R = s.ring();
  if (q_form(u) != 0) throw std::invalid_argument("esd: q(u) != 0");
  if (bilinear(u, v) != 0) throw std::invalid_argument("esd: <u,v> != 0");
  const int d = s.dim();
  const std::uint64_t qv = q_form(v);
  Mat g(R, d);
  for (int j = 0; j < d; ++j) {
    Vector b(s);
    b.c[j] = R.one();
    std::uint64_t vb = bilinear(v, b);
    std::uint64_t ub = bilinear(u, b);
    // column j = b + u <v,b> - v <u,b> - u q(v) <u,b>
    for (int i = 0; i < d; ++i) {
      std::uint64_t x = b.c[i];
      x = R.add(x, R.mul(u.c[i], vb));
      x = R.sub(x, R.mul(v.c[i], ub));
      x = R.sub(x, R.mul(u.c[i], R.mul(qv, ub)));
      g(i, j) = x;
    }
  }
  return OrthoMap(s, std::move(g));
}

// Generator label: Long(i, j, a) with i != +-j, or Short(j, m0) with m0 a
// length-r coordinate list.
struct GenLabel {
  enum Kind { Long, Short } kind;
  int i = 0;  // unused for Short
  int j = 0;
  std::uint64_t a = 0;             // Long parameter
  std::vector<std::uint64_t> m0;   // Short parameter

  static GenLabel make_long(int i, int j, std::uint64_t a) {
    if (i == 0 || j == 0 || i == j || i == -j)
      throw std::invalid_argument("GenLabel: long label needs i != +-j");
    GenLabel g;
    g.kind = Long;
    g.i = i;
    g.j = j;
    g.a = a;
    return g;
  }
  static GenLabel make_short(int j, std::vector<std::uint64_t> m0) {
    if (j == 0) throw std::invalid_argument("GenLabel: short label needs j != 0");
    GenLabel g;
    g.kind = Short;
    g.j = j;
    g.m0 = std::move(m0);
    return g;
  }

  bool operator==(const GenLabel& o) const {
    return kind == o.kind && i == o.i && j == o.j && a == o.a && m0 == o.m0;
  }

  GenLabel negated(const RingSpec& R) const {
    GenLabel g = *this;
    if (kind == Long) {
      g.a = R.neg(a);
    } else {
      for (auto& x : g.m0) x = R.neg(x);
    }
    return g;
  }

  bool is_zero() const {
    if (kind == Long) return a == 0;
    for (auto x : m0)
      if (x) return false;
    return true;
  }

  std::string to_string() const {
    if (kind == Long)
      return "long(" + std::to_string(i) + "," + std::to_string(j) + ";" + std::to_string(a) + ")";
    std::string s = "short(" + std::to_string(j) + ";[";
    for (std::size_t t = 0; t < m0.size(); ++t) s += (t ? "," : "") + std::to_string(m0[t]);
    return s + "])";
  }
};

// t_ij(a) = T(e_i, e_{-j} a); requires i != +-j.
inline OrthoMap t_long(const QuadSpace& s, int i, int j, std::uint64_t a) {
  if (i == j || i == -j) throw std::invalid_argument("t_long: i == +-j");
  return esd(basis_e(s, i), basis_e(s, -j).scaled(a));
}

// t_j(m) = T(e_{-j}, -m); m in M0 given by coordinates.
inline OrthoMap t_short(const QuadSpace& s, int j, const std::vector<std::uint64_t>& m0) {
  return esd(basis_e(s, -j), -embed_m0(s, m0));
}

inline OrthoMap to_matrix(const QuadSpace& s, const GenLabel& g) {
  return g.kind == GenLabel::Long ? t_long(s, g.i, g.j, g.a) : t_short(s, g.j, g.m0);
}

// T(e_i, m) = t_{-i}(-m0) prod_{j != +-i} t_{i,-j}(m_j), for <e_i, m> = 0.
// The e_i-coordinate of m is dropped (T(u, ua) = 1).  Zero factors are
// omitted; the order is j ascending in -ell < ... < -1 < 1 < ... < ell.
inline std::vector<GenLabel> decompose_esd(const QuadSpace& s, int i, const Vector& m) {
  require_same(m, basis_e(s, i));
  const RingSpec& R = s.ring();
  if (m[s.pos(-i)] != 0)
    throw std::invalid_argument("decompose_esd: <e_i, m> != 0 (e_{-i}-coordinate must vanish)");
  std::vector<GenLabel> out;
  if (s.r() > 0) {
    std::vector<std::uint64_t> m0(s.r());
    bool nz = false;
    for (int k = 0; k < s.r(); ++k) {
      m0[k] = R.neg(m[s.fpos(k + 1)]);
      nz |= m0[k] != 0;
    }
    if (nz) out.push_back(GenLabel::make_short(-i, std::move(m0)));
  }
  for (int j = -s.ell(); j <= s.ell(); ++j) {
    if (j == 0 || j == i || j == -i) continue;
    std::uint64_t mj = m[s.pos(j)];
    if (mj != 0) out.push_back(GenLabel::make_long(i, -j, mj));
  }
  return out;
}

// Label -> matrix cache; avoids re-certifying transvections in hot loops.
class TransvectionCache {
public:
  explicit TransvectionCache(const QuadSpace& s) : sp_(&s) {}

  const Mat& get(const GenLabel& g) {
    std::string k = g.to_string();
    auto it = map_.find(k);
    if (it != map_.end()) return it->second;
    Mat m = to_matrix(*sp_, g).m;
    return map_.emplace(std::move(k), std::move(m)).first->second;
  }
  const QuadSpace& space() const { return *sp_; }

private:
  const QuadSpace* sp_;
  std::unordered_map<std::string, Mat> map_;
};

// Standard BFS generator pool: R2-canonical long labels over the additive
// generators of the ring, plus short labels along the f-basis; each with
// both exponents (the inverse of a transvection negates the parameter).
struct GenSet {
  std::vector<GenLabel> labels;  // exponent +1 labels
  std::vector<Mat> mats;         // matching matrices
  std::vector<Mat> inv_mats;     // matrices of the negated labels
};

inline bool long_label_is_canonical(const QuadSpace& s, int i, int j) {
  // (i, j) vs the R2 twin (-j, -i): keep the lexicographically smaller
  // under -ell < ... < -1 < 1 < ... < ell.
  auto o = [&](int x) { return s.pos(x); };
  return o(i) < o(-j) || (o(i) == o(-j) && o(j) <= o(-i));
}

inline GenSet standard_generators(const QuadSpace& s, std::uint64_t perm_seed = 0) {
  GenSet g;
  for (int i = -s.ell(); i <= s.ell(); ++i) {
    if (i == 0) continue;
    for (int j = -s.ell(); j <= s.ell(); ++j) {
      if (j == 0 || j == i || j == -i) continue;
      if (!long_label_is_canonical(s, i, j)) continue;
      for (std::uint64_t a : s.ring().additive_generators())
        g.labels.push_back(GenLabel::make_long(i, j, a));
    }
  }
  for (int j = -s.ell(); j <= s.ell(); ++j) {
    if (j == 0) continue;
    for (int k = 1; k <= s.r(); ++k) {
      std::vector<std::uint64_t> m0(s.r(), 0);
      m0[k - 1] = s.ring().one();
      g.labels.push_back(GenLabel::make_short(j, std::move(m0)));
    }
  }
  if (perm_seed != 0) {  // alternative BFS orders for witness-independence checks
    Rng rng(perm_seed);
    for (std::size_t t = g.labels.size(); t > 1; --t)
      std::swap(g.labels[t - 1], g.labels[rng.below(t)]);
  }
  for (const auto& lab : g.labels) {
    g.mats.push_back(to_matrix(s, lab).m);
    g.inv_mats.push_back(to_matrix(s, lab.negated(s.ring())).m);
  }
  return g;
}

// Breadth-first orbit closure with witness links.  A witness for v is a
// list of (label, exponent) whose transvection product, applied left to
// right as matrices, sends the start vector to v.
class OrbitTable {
public:
  struct Link {
    std::uint32_t parent;
    std::uint32_t gen;
    std::int8_t exp;
  };

  OrbitTable(const QuadSpace& s, const Vector& start, GenSet gens,
             std::uint64_t bound = 1u << 22)
      : sp_(&s), gens_(std::move(gens)) {
    std::deque<std::uint32_t> queue;
    push(start.key(), 0, 0, 0, true);
    queue.push_back(0);
    while (!queue.empty()) {
      std::uint32_t idx = queue.front();
      queue.pop_front();
      Vector v = Vector::from_key(s, order_[idx]);
      for (std::size_t gi = 0; gi < gens_.labels.size(); ++gi) {
        for (int e : {+1, -1}) {
          const Mat& m = e > 0 ? gens_.mats[gi] : gens_.inv_mats[gi];
          std::uint64_t k = m.apply(v).key();
          if (index_.count(k)) continue;
          if (order_.size() >= bound) throw std::length_error("orbit bound exceeded");
          push(k, idx, static_cast<std::uint32_t>(gi), static_cast<std::int8_t>(e), false);
          queue.push_back(static_cast<std::uint32_t>(order_.size()) - 1);
        }
      }
    }
  }

  const QuadSpace& space() const { return *sp_; }
  const GenSet& gens() const { return gens_; }
  std::size_t size() const { return order_.size(); }
  const std::vector<std::uint64_t>& discovery_order() const { return order_; }
  bool contains(const Vector& v) const { return index_.count(v.key()) != 0; }

  // Shortest-found witness; product of labels maps start to v.
  std::vector<std::pair<GenLabel, int>> witness(const Vector& v) const {
    auto it = index_.find(v.key());
    if (it == index_.end()) throw std::out_of_range("witness: vector not in orbit");
    std::vector<std::pair<GenLabel, int>> w;
    std::uint32_t idx = it->second;
    while (links_[idx].exp != 0) {
      const Link& ln = links_[idx];
      w.emplace_back(gens_.labels[ln.gen], ln.exp);
      idx = ln.parent;
    }
    return w;
  }

  // g^{-1} v for the witness product g, without matrix inversion: apply
  // per-generator inverses in word order (the word reversed twice).
  Vector apply_witness_inverse(const std::vector<std::pair<GenLabel, int>>& w, Vector v) const {
    for (const auto& [lab, e] : w) {
      const GenLabel use = e > 0 ? lab.negated(sp_->ring()) : lab;
      v = to_matrix(*sp_, use).apply(v);
    }
    return v;
  }
  Vector apply_witness(const std::vector<std::pair<GenLabel, int>>& w, Vector v) const {
    for (std::size_t t = w.size(); t-- > 0;) {
      const GenLabel use = w[t].second > 0 ? w[t].first : w[t].first.negated(sp_->ring());
      v = to_matrix(*sp_, use).apply(v);
    }
    return v;
  }

private:
  void push(std::uint64_t key, std::uint32_t parent, std::uint32_t gen, std::int8_t exp, bool root) {
    index_.emplace(key, static_cast<std::uint32_t>(order_.size()));
    order_.push_back(key);
    links_.push_back(Link{parent, gen, root ? std::int8_t{0} : exp});
  }

  const QuadSpace* sp_;
  GenSet gens_;
  std::vector<std::uint64_t> order_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::vector<Link> links_;
};

// Closure of the elementary transvections under multiplication; intended
// for tiny instances (F_2/F_3, ell = 3, r = 0).
inline std::vector<Mat> enumerate_group(const QuadSpace& s, std::uint64_t bound = 1u << 22) {
  GenSet gens = standard_generators(s);
  struct KeyHash {
    std::size_t operator()(const std::array<std::uint64_t, 2>& k) const {
      return std::hash<std::uint64_t>()(k[0] * 0x9e3779b97f4a7c15ULL ^ k[1]);
    }
  };
  std::unordered_map<std::array<std::uint64_t, 2>, std::uint32_t, KeyHash> seen;
  std::vector<Mat> out;
  Mat id = Mat::identity(s.ring(), s.dim());
  seen.emplace(id.key(), 0);
  out.push_back(std::move(id));
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (std::size_t gi = 0; gi < gens.mats.size(); ++gi) {
      Mat next = out[head] * gens.mats[gi];
      auto k = next.key();
      if (seen.count(k)) continue;
      if (out.size() >= bound) throw std::length_error("group closure bound exceeded");
      seen.emplace(k, static_cast<std::uint32_t>(out.size()));
      out.push_back(std::move(next));
    }
  }
  return out;
}

}  // namespace ostw
