#pragma once

// The quadratic module M = H^ell  _|_  M0, where H^ell is a sum of ell
// hyperbolic planes and M0 is free of rank r.  Fixed basis order
//
//   e_{-ell}, ..., e_{-1}, e_1, ..., e_ell, f_1, ..., f_r
//
// used by every coordinate vector and matrix in this project.  The form q
// is stored as an upper-triangular coefficient matrix q0 on the f-part
// (strictly more data than the Gram matrix when 2 is not invertible):
//
//   q(v) = sum_i v_{-i} v_i + sum_k q0[k][k] v_fk^2 + sum_{k<l} q0[k][l] v_fk v_fl.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ostw/ring.hpp"

namespace ostw {

class QuadSpace {
public:
  QuadSpace(RingSpec ring, int ell, int r, std::vector<std::int64_t> q0_upper = {})
      : ring_(std::move(ring)), ell_(ell), r_(r) {
    if (ell < 1) throw std::invalid_argument("QuadSpace: ell must be >= 1");
    if (r < 0) throw std::invalid_argument("QuadSpace: r must be >= 0");
    std::size_t want = static_cast<std::size_t>(r) * (r + 1) / 2;
    if (q0_upper.size() != want)
      throw std::invalid_argument("QuadSpace: q0 needs r(r+1)/2 upper-triangular entries");
    q0_.assign(static_cast<std::size_t>(r) * r, 0);
    std::size_t t = 0;
    for (int k = 0; k < r; ++k)
      for (int l = k; l < r; ++l) q0_[k * r + l] = ring_.from_int(q0_upper[t++]);
  }

  const RingSpec& ring() const { return ring_; }
  int ell() const { return ell_; }
  int r() const { return r_; }
  int dim() const { return 2 * ell_ + r_; }
  std::uint64_t q0(int k, int l) const { return q0_[k * r_ + l]; }

  bool operator==(const QuadSpace& o) const {
    return ring_ == o.ring_ && ell_ == o.ell_ && r_ == o.r_ && q0_ == o.q0_;
  }

  // Position of e_i (i in {-ell..-1, 1..ell}) in the fixed basis order.
  int pos(int i) const {
    if (i == 0 || i < -ell_ || i > ell_) throw std::out_of_range("basis index out of range");
    return i < 0 ? ell_ + i : ell_ + i - 1;
  }
  // Position of f_k, k in 1..r.
  int fpos(int k) const {
    if (k < 1 || k > r_) throw std::out_of_range("f index out of range");
    return 2 * ell_ + k - 1;
  }

  // Total number of coordinate vectors; saturates at 2^63.
  std::uint64_t vector_count() const {
    unsigned __int128 c = 1;
    for (int t = 0; t < dim(); ++t) {
      c *= ring_.size();
      if (c > (static_cast<unsigned __int128>(1) << 63)) return 1ULL << 63;
    }
    return static_cast<std::uint64_t>(c);
  }

private:
  RingSpec ring_;
  int ell_;
  int r_;
  std::vector<std::uint64_t> q0_;  // r x r row-major, zero below the diagonal
};

struct Vector {
  const QuadSpace* sp = nullptr;
  std::vector<std::uint64_t> c;

  Vector() = default;
  explicit Vector(const QuadSpace& s) : sp(&s), c(s.dim(), 0) {}

  std::uint64_t& operator[](int t) { return c[t]; }
  std::uint64_t operator[](int t) const { return c[t]; }

  friend void require_same(const Vector& a, const Vector& b) {
    if (a.sp != b.sp && !(a.sp && b.sp && *a.sp == *b.sp))
      throw std::invalid_argument("Vector: space mismatch");
  }
  friend bool operator==(const Vector& a, const Vector& b) {
    require_same(a, b);
    return a.c == b.c;
  }
  friend Vector operator+(const Vector& a, const Vector& b) {
    require_same(a, b);
    Vector out(*a.sp);
    const RingSpec& R = a.sp->ring();
    for (std::size_t t = 0; t < a.c.size(); ++t) out.c[t] = R.add(a.c[t], b.c[t]);
    return out;
  }
  friend Vector operator-(const Vector& a, const Vector& b) {
    require_same(a, b);
    Vector out(*a.sp);
    const RingSpec& R = a.sp->ring();
    for (std::size_t t = 0; t < a.c.size(); ++t) out.c[t] = R.sub(a.c[t], b.c[t]);
    return out;
  }
  Vector operator-() const {
    Vector out(*sp);
    const RingSpec& R = sp->ring();
    for (std::size_t t = 0; t < c.size(); ++t) out.c[t] = R.neg(c[t]);
    return out;
  }
  Vector scaled(std::uint64_t a) const {
    Vector out(*sp);
    const RingSpec& R = sp->ring();
    for (std::size_t t = 0; t < c.size(); ++t) out.c[t] = R.mul(c[t], a);
    return out;
  }
  bool is_zero() const {
    for (auto x : c)
      if (x) return false;
    return true;
  }

  // Mixed-radix key; doubles as the deterministic enumeration index.
  std::uint64_t key() const {
    std::uint64_t k = 0;
    for (std::size_t t = c.size(); t-- > 0;) k = k * sp->ring().size() + c[t];
    return k;
  }
  static Vector from_key(const QuadSpace& s, std::uint64_t k) {
    Vector v(s);
    for (int t = 0; t < s.dim(); ++t) {
      v.c[t] = k % s.ring().size();
      k /= s.ring().size();
    }
    return v;
  }
};

inline Vector basis_e(const QuadSpace& s, int i) {
  Vector v(s);
  v.c[s.pos(i)] = s.ring().one();
  return v;
}
inline Vector basis_f(const QuadSpace& s, int k) {
  Vector v(s);
  v.c[s.fpos(k)] = s.ring().one();
  return v;
}

// Embeds a length-r coordinate list into M along the f-basis.
inline Vector embed_m0(const QuadSpace& s, const std::vector<std::uint64_t>& m0) {
  if (static_cast<int>(m0.size()) != s.r()) throw std::invalid_argument("embed_m0: length != r");
  Vector v(s);
  for (int k = 0; k < s.r(); ++k) v.c[s.fpos(k + 1)] = m0[k] % s.ring().size();
  return v;
}

inline std::uint64_t q_form(const Vector& v) {
  const QuadSpace& s = *v.sp;
  const RingSpec& R = s.ring();
  std::uint64_t acc = 0;
  for (int i = 1; i <= s.ell(); ++i) acc = R.add(acc, R.mul(v[s.pos(-i)], v[s.pos(i)]));
  for (int k = 0; k < s.r(); ++k)
    for (int l = k; l < s.r(); ++l)
      acc = R.add(acc, R.mul(s.q0(k, l), R.mul(v[2 * s.ell() + k], v[2 * s.ell() + l])));
  return acc;
}

// <v,w> = q(v+w) - q(v) - q(w), computed directly: the hyperbolic part
// pairs e_{-i} with e_i and the f-part has Gram matrix q0 + q0^T.
inline std::uint64_t bilinear(const Vector& v, const Vector& w) {
  require_same(v, w);
  const QuadSpace& s = *v.sp;
  const RingSpec& R = s.ring();
  std::uint64_t acc = 0;
  for (int i = 1; i <= s.ell(); ++i) {
    acc = R.add(acc, R.mul(v[s.pos(-i)], w[s.pos(i)]));
    acc = R.add(acc, R.mul(v[s.pos(i)], w[s.pos(-i)]));
  }
  // f-part: sum over k,l of (q0+q0^T)[k][l] v_k w_l
  for (int k = 0; k < s.r(); ++k)
    for (int l = 0; l < s.r(); ++l) {
      std::uint64_t g;
      if (k == l)
        g = R.add(s.q0(k, k), s.q0(k, k));
      else
        g = s.q0(std::min(k, l), std::max(k, l));
      acc = R.add(acc, R.mul(g, R.mul(v[2 * s.ell() + k], w[2 * s.ell() + l])));
    }
  return acc;
}

// Deterministic vector enumeration, key order.  `bound` guards memory.
struct VectorRange {
  const QuadSpace* sp;
  std::uint64_t count;

  explicit VectorRange(const QuadSpace& s, std::uint64_t bound = 10'000'000) : sp(&s) {
    count = s.vector_count();
    if (count > bound)
      throw std::length_error("vector enumeration bound exceeded: " + std::to_string(count));
  }

  struct iterator {
    const QuadSpace* sp;
    std::uint64_t k;
    Vector operator*() const { return Vector::from_key(*sp, k); }
    iterator& operator++() {
      ++k;
      return *this;
    }
    bool operator!=(const iterator& o) const { return k != o.k; }
  };
  iterator begin() const { return {sp, 0}; }
  iterator end() const { return {sp, count}; }
};

// true iff q(v) = 0 and some w has q(w) = 0, <v,w> = 1 (exhaustive search).
inline bool is_hyperbolic_member(const Vector& v, std::uint64_t bound = 10'000'000) {
  if (q_form(v) != 0) return false;
  const QuadSpace& s = *v.sp;
  for (const Vector& w : VectorRange(s, bound))
    if (q_form(w) == 0 && bilinear(v, w) == s.ring().one()) return true;
  return false;
}

}  // namespace ostw
