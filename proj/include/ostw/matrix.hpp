#pragma once

// Dense square matrices over a RingSpec, acting on coordinate columns.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ostw/quadspace.hpp"
#include "ostw/ring.hpp"

namespace ostw {

struct Mat {
  const RingSpec* R = nullptr;
  int n = 0;
  std::vector<std::uint64_t> a;  // row-major

  Mat() = default;
  Mat(const RingSpec& ring, int size) : R(&ring), n(size), a(static_cast<std::size_t>(size) * size, 0) {}

  static Mat identity(const RingSpec& ring, int size) {
    Mat m(ring, size);
    for (int i = 0; i < size; ++i) m(i, i) = ring.one();
    return m;
  }

  std::uint64_t& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  std::uint64_t operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  bool operator==(const Mat& o) const { return n == o.n && a == o.a; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  bool is_identity() const {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if ((*this)(i, j) != (i == j ? R->one() : 0)) return false;
    return true;
  }

  friend Mat operator*(const Mat& x, const Mat& y) {
    if (x.n != y.n) throw std::invalid_argument("Mat: size mismatch");
    Mat out(*x.R, x.n);
    if (x.R->is_modular()) {
      const std::uint64_t mod = x.R->modulus();
      for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) {
          std::uint64_t acc = 0;
          for (int k = 0; k < x.n; ++k) acc += x(i, k) * y(k, j);
          out(i, j) = acc % mod;
        }
    } else {
      for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) {
          std::uint64_t acc = 0;
          for (int k = 0; k < x.n; ++k) acc = x.R->add(acc, x.R->mul(x(i, k), y(k, j)));
          out(i, j) = acc;
        }
    }
    return out;
  }

  std::vector<std::uint64_t> apply(const std::vector<std::uint64_t>& v) const {
    std::vector<std::uint64_t> out(n, 0);
    for (int i = 0; i < n; ++i) {
      std::uint64_t acc = 0;
      for (int k = 0; k < n; ++k) acc = R->add(acc, R->mul((*this)(i, k), v[k]));
      out[i] = acc;
    }
    return out;
  }

  Vector apply(const Vector& v) const {
    Vector out(*v.sp);
    out.c = apply(v.c);
    return out;
  }

  Mat transpose() const {
    Mat out(*R, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  // Two-u64 key for hashing; throws when entries do not fit.
  std::array<std::uint64_t, 2> key() const {
    std::array<std::uint64_t, 2> k{0, 0};
    const std::uint64_t base = R->size();
    const std::size_t half = a.size() / 2 + (a.size() & 1);
    unsigned __int128 lo = 0, hi = 0;
    for (std::size_t t = half; t-- > 0;) {
      lo = lo * base + a[t];
      if (lo >> 64) throw std::overflow_error("Mat::key: matrix too large to pack");
    }
    for (std::size_t t = a.size(); t-- > half;) {
      hi = hi * base + a[t];
      if (hi >> 64) throw std::overflow_error("Mat::key: matrix too large to pack");
    }
    k[0] = static_cast<std::uint64_t>(lo);
    k[1] = static_cast<std::uint64_t>(hi);
    return k;
  }
};

// Exact integer determinant (Bareiss), then reduced mod n.  Components are
// handled recursively for product rings.
inline std::uint64_t det(const Mat& m) {
  const RingSpec& R = *m.R;
  if (R.is_product()) {
    const auto& comps = R.components();
    std::vector<std::uint64_t> dets;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      Mat mc(comps[c], m.n);
      for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) mc(i, j) = R.unpack(m(i, j))[c];
      dets.push_back(det(mc));
    }
    return R.pack(dets);
  }
  const std::int64_t mod = static_cast<std::int64_t>(R.modulus());
  std::vector<__int128> w(m.a.size());
  for (std::size_t t = 0; t < m.a.size(); ++t) w[t] = static_cast<__int128>(m.a[t]);
  auto at = [&](int i, int j) -> __int128& { return w[static_cast<std::size_t>(i) * m.n + j]; };
  __int128 sign = 1, prev = 1;
  for (int k = 0; k < m.n - 1; ++k) {
    if (at(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < m.n; ++i)
        if (at(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      for (int j = 0; j < m.n; ++j) std::swap(at(k, j), at(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < m.n; ++i)
      for (int j = k + 1; j < m.n; ++j) at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
    prev = at(k, k);
  }
  __int128 d = sign * at(m.n - 1, m.n - 1);
  __int128 r = d % mod;
  if (r < 0) r += mod;
  return static_cast<std::uint64_t>(r);
}

inline bool is_invertible(const Mat& m) { return m.R->is_unit(det(m)); }

}  // namespace ostw
