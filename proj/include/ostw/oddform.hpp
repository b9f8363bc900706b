#pragma once

// The odd form algebra (R, Delta) of a quadratic module over Z/n, and
// the comparison of its construction with localization.
//
//   R     = {(x^op, y) : <x m, m'> = <m, y m'> for all m, m'}
//         = {(x, y) : x^T B = B y},  B the Gram matrix of <,>
//   Delta = {(x^op, y; z^op, w) in R x R : xy + z + w = 0,
//            q(y m) + <m, w m> = 0 for all m}.
//
// Given (x, y) in R and w with  w^T B + B w = -y^T B y,  the third
// component z = -xy - w automatically satisfies z^T B = B w, so Delta
// splits as a union over (x, y) of affine solution sets in w.  The
// coefficient matrices of the w-systems do not depend on (x, y) (only
// right-hand sides do), which keeps the sweep one Howell reduction per
// candidate.  The quadratic condition is imposed for every enumerated
// module vector in full mode and only for basis vectors in
// generators-only mode; whether the two agree is an experiment, not an
// assumption.

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "ostw/matrix.hpp"
#include "ostw/modsolve.hpp"
#include "ostw/orthogroup.hpp"
#include "ostw/quadspace.hpp"

namespace ostw {

inline Mat gram_matrix(const QuadSpace& s) {
  const int d = s.dim();
  Mat B(s.ring(), d);
  std::vector<Vector> bas;
  for (int t = 0; t < d; ++t) {
    Vector v(s);
    v.c[t] = s.ring().one();
    bas.push_back(std::move(v));
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) B(i, j) = bilinear(bas[i], bas[j]);
  return B;
}

inline bool is_adjoint_pair(const QuadSpace& s, const Mat& x, const Mat& y) {
  const Mat B = gram_matrix(s);
  return x.transpose() * B == B * y;
}

struct DeltaElem {
  Mat x, y, z, w;
};

class OddForm {
public:
  explicit OddForm(const QuadSpace& s) : sp_(&s), B_(gram_matrix(s)), d_(s.dim()) {
    if (!s.ring().is_modular())
      throw std::invalid_argument("OddForm: modular rings only");
    n_ = s.ring().modulus();
  }

  const QuadSpace& space() const { return *sp_; }
  const Mat& gram() const { return B_; }

  // R as an explicit element set; rejects when it would not fit.
  std::vector<std::pair<Mat, Mat>> compute_R(std::uint64_t bound = 4'000'000) const {
    LinearSolver solver(n_, r_system());
    SolutionSet sol = solver.solve(std::vector<std::uint64_t>(d_ * d_, 0));
    if (sol.count() > bound) throw std::length_error("compute_R: element bound exceeded");
    std::vector<std::pair<Mat, Mat>> out;
    sol.enumerate([&](const std::vector<std::uint64_t>& v) {
      out.emplace_back(unpack_mat(v, 0), unpack_mat(v, d_ * d_));
    });
    return out;
  }

  bool in_R(const Mat& x, const Mat& y) const {
    return x.transpose() * B_ == B_ * y;
  }

  // Full Delta as explicit quadruples; rejects when it would not fit.
  std::vector<DeltaElem> compute_Delta(bool generators_only,
                                       std::uint64_t bound = 4'000'000) const {
    std::vector<DeltaElem> out;
    sweep(generators_only, [&](const Mat& x, const Mat& y, const Mat& w) {
      if (out.size() >= bound) throw std::length_error("compute_Delta: element bound exceeded");
      Mat z(sp_->ring(), d_);
      const RingSpec& R = sp_->ring();
      Mat xy = x * y;
      for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) z(i, j) = R.neg(R.add(xy(i, j), w(i, j)));
      out.push_back(DeltaElem{x, y, z, w});
    });
    return out;
  }

  // Exact sizes of Delta in both modes without materializing; also
  // reports whether the generators-only relaxation is strict.
  struct DeltaCounts {
    unsigned __int128 full = 0;
    unsigned __int128 generators_only = 0;
    bool equal = true;
  };

  DeltaCounts delta_counts() const {
    DeltaCounts out;
    auto wsys_full = w_system(false), wsys_gen = w_system(true);
    LinearSolver solver_full(n_, wsys_full.first), solver_gen(n_, wsys_gen.first);
    LinearSolver xsolver(n_, r_system_x_given_y());
    unsigned __int128 x_count = xsolver.kernel_size();  // |X_y| is constant when nonempty
    unsigned __int128 wk_full = solver_full.kernel_size(), wk_gen = solver_gen.kernel_size();

    const std::uint64_t total = pow_u64(n_, d_ * d_);
    for (std::uint64_t yk = 0; yk < total; ++yk) {
      Mat y = mat_from_key(yk);
      if (!xsolver.consistent(flatten(B_ * y))) continue;
      bool full_ok = solver_full.consistent(w_rhs(y, false));
      bool gen_ok = solver_gen.consistent(w_rhs(y, true));
      if (full_ok) out.full += x_count * wk_full;
      if (gen_ok) out.generators_only += x_count * wk_gen;
      if (full_ok != gen_ok || (full_ok && wk_full != wk_gen)) out.equal = false;
    }
    return out;
  }

  // Enumerates (x, y, w) triples satisfying the chosen mode's conditions.
  void sweep(bool generators_only,
             const std::function<void(const Mat&, const Mat&, const Mat&)>& fn) const {
    auto wsys = w_system(generators_only);
    LinearSolver wsolver(n_, wsys.first);
    LinearSolver solver(n_, r_system());
    SolutionSet rset = solver.solve(std::vector<std::uint64_t>(d_ * d_, 0));
    rset.enumerate([&](const std::vector<std::uint64_t>& v) {
      Mat x = unpack_mat(v, 0), y = unpack_mat(v, d_ * d_);
      SolutionSet ws = wsolver.solve(w_rhs(y, generators_only));
      if (!ws.consistent) return;
      ws.enumerate([&](const std::vector<std::uint64_t>& wv) { fn(x, y, unpack_mat(wv, 0)); });
    });
  }

private:
  static std::uint64_t pow_u64(std::uint64_t b, int e) {
    std::uint64_t v = 1;
    for (int t = 0; t < e; ++t) v *= b;
    return v;
  }

  std::vector<std::uint64_t> flatten(const Mat& m) const { return m.a; }

  Mat mat_from_key(std::uint64_t k) const {
    Mat m(sp_->ring(), d_);
    for (auto& x : m.a) {
      x = k % n_;
      k /= n_;
    }
    return m;
  }

  Mat unpack_mat(const std::vector<std::uint64_t>& v, std::size_t off) const {
    Mat m(sp_->ring(), d_);
    for (int t = 0; t < d_ * d_; ++t) m.a[t] = v[off + t];
    return m;
  }

  // x^T B - B y = 0 as a linear system in (x, y): d^2 equations over
  // 2 d^2 unknowns (x entries first, row-major).
  std::vector<std::vector<std::uint64_t>> r_system() const {
    const RingSpec& R = sp_->ring();
    std::vector<std::vector<std::uint64_t>> A(d_ * d_, std::vector<std::uint64_t>(2 * d_ * d_, 0));
    for (int j = 0; j < d_; ++j)
      for (int k = 0; k < d_; ++k) {
        auto& row = A[j * d_ + k];
        for (int t = 0; t < d_; ++t) {
          row[t * d_ + j] = R.add(row[t * d_ + j], B_(t, k));             // (x^T B)_{jk}
          row[d_ * d_ + t * d_ + k] = R.neg(B_(j, t));                    // -(B y)_{jk}
        }
      }
    return A;
  }

  // x^T B = c as a system in x alone (for per-y solvability).
  std::vector<std::vector<std::uint64_t>> r_system_x_given_y() const {
    const RingSpec& R = sp_->ring();
    (void)R;
    std::vector<std::vector<std::uint64_t>> A(d_ * d_, std::vector<std::uint64_t>(d_ * d_, 0));
    for (int j = 0; j < d_; ++j)
      for (int k = 0; k < d_; ++k)
        for (int t = 0; t < d_; ++t) A[j * d_ + k][t * d_ + j] = B_(t, k);
    return A;
  }

  // Coefficients of the w-system: w^T B + B w rows, then quadratic rows
  // <m, w m> for the chosen m-set; right-hand sides depend on y only.
  std::pair<std::vector<std::vector<std::uint64_t>>, std::vector<Vector>> w_system(
      bool generators_only) const {
    const RingSpec& R = sp_->ring();
    std::vector<std::vector<std::uint64_t>> A;
    for (int j = 0; j < d_; ++j)
      for (int k = 0; k < d_; ++k) {
        std::vector<std::uint64_t> row(d_ * d_, 0);
        for (int t = 0; t < d_; ++t) row[t * d_ + j] = R.add(row[t * d_ + j], B_(t, k));  // (w^T B)_{jk}
        for (int t = 0; t < d_; ++t) row[t * d_ + k] = R.add(row[t * d_ + k], B_(j, t));  // (B w)_{jk}
        A.push_back(std::move(row));
      }
    std::vector<Vector> ms = m_set(generators_only);
    for (const Vector& m : ms) {
      std::vector<std::uint64_t> row(d_ * d_, 0);
      // <m, w m> = sum_{t,u} (m^T B)_t w_{tu} m_u
      std::vector<std::uint64_t> mtb(d_, 0);
      for (int t = 0; t < d_; ++t) {
        std::uint64_t acc = 0;
        for (int i = 0; i < d_; ++i) acc = R.add(acc, R.mul(m.c[i], B_(i, t)));
        mtb[t] = acc;
      }
      for (int t = 0; t < d_; ++t)
        for (int u = 0; u < d_; ++u) row[t * d_ + u] = R.mul(mtb[t], m.c[u]);
      A.push_back(std::move(row));
    }
    return {std::move(A), std::move(ms)};
  }

  std::vector<Vector> m_set(bool generators_only) const {
    std::vector<Vector> ms;
    if (generators_only) {
      for (int t = 0; t < d_; ++t) {
        Vector v(*sp_);
        v.c[t] = sp_->ring().one();
        ms.push_back(std::move(v));
      }
    } else {
      for (const Vector& v : VectorRange(*sp_)) ms.push_back(v);
    }
    return ms;
  }

  std::vector<std::uint64_t> w_rhs(const Mat& y, bool generators_only) const {
    const RingSpec& R = sp_->ring();
    std::vector<std::uint64_t> rhs;
    Mat yb = y.transpose() * B_ * y;
    for (int j = 0; j < d_; ++j)
      for (int k = 0; k < d_; ++k) rhs.push_back(R.neg(yb(j, k)));  // -(y^T B y)_{jk}
    for (const Vector& m : m_set(generators_only)) rhs.push_back(R.neg(q_form(y.apply(m))));
    return rhs;
  }

  const QuadSpace* sp_;
  Mat B_;
  int d_;
  std::uint64_t n_ = 0;
};

}  // namespace ostw
