#pragma once

// Linear systems A x = b over Z/n (n small, zero divisors allowed).
//
// Everything rides on one Howell normal form of the augmented matrix
// [A^T | I]: gcd-combination echelon over all columns, pivots normalized
// to divisors of n, entries above pivots reduced, and annihilator rows
// (n/d times a pivot row) appended until canonical reduction is closed.
// Each augmented row keeps the invariant  tail . A^T = head,  so rows
// whose head vanishes carry kernel elements of x -> A x in their tails,
// and reducing (b | 0) yields a particular solution.  The Howell property
// makes span membership canonical, which gives exact solution counting
// and duplicate-free enumeration.

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ostw {

namespace modsolve_detail {

struct Xgcd {
  std::int64_t g, s, t;  // g = s*a + t*b
};

inline Xgcd xgcd(std::int64_t a, std::int64_t b) {
  if (b == 0) return {a, 1, 0};
  Xgcd r = xgcd(b, a % b);
  return {r.g, r.t, r.s - (a / b) * r.t};
}

}  // namespace modsolve_detail

// Howell normal form of a matrix over Z/n (all columns pivot-eligible).
class HowellForm {
public:
  HowellForm(std::uint64_t n, std::vector<std::vector<std::uint64_t>> m)
      : n_(n), cols_(m.empty() ? 0 : m[0].size()), rows_(std::move(m)) {
    if (n < 2) throw std::invalid_argument("HowellForm: modulus must be >= 2");
    for (auto& r : rows_)
      for (auto& x : r) x %= n_;
    for (std::uint64_t u = 1; u < n_; ++u)
      if (std::gcd(u, n_) == 1) units_.push_back(u);
    echelon();
    complete();
  }

  std::uint64_t modulus() const { return n_; }
  std::size_t cols() const { return cols_; }
  const std::vector<std::vector<std::uint64_t>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivot_cols() const { return pivot_cols_; }

  // Canonical left-to-right reduction; v is in the row span iff the
  // residual is zero.
  std::vector<std::uint64_t> reduce_vector(std::vector<std::uint64_t> v) const {
    for (std::size_t r = 0; r < pivot_cols_.size(); ++r) {
      std::size_t c = pivot_cols_[r];
      std::uint64_t q = (v[c] % n_) / rows_[r][c];
      if (q == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j) v[j] = sub(v[j] % n_, mul(q, rows_[r][j]));
    }
    for (auto& x : v) x %= n_;
    return v;
  }

private:
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % n_; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + n_ - b) % n_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % n_; }

  void echelon() {
    pivot_cols_.clear();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows_.size(); ++c) {
      std::size_t first = rows_.size();
      for (std::size_t r = rank; r < rows_.size(); ++r)
        if (rows_[r][c] != 0) {
          first = r;
          break;
        }
      if (first == rows_.size()) continue;
      std::swap(rows_[rank], rows_[first]);
      for (std::size_t r = rank + 1; r < rows_.size(); ++r)
        if (rows_[r][c] != 0) gcd_rows(rank, r, c);
      std::uint64_t a = rows_[rank][c];
      std::uint64_t d = std::gcd(a, n_);
      if (a != d) {
        for (std::uint64_t u : units_)
          if (mul(a, u) == d) {
            for (auto& x : rows_[rank]) x = mul(x, u);
            break;
          }
      }
      for (std::size_t r = 0; r < rank; ++r) {
        std::uint64_t q = rows_[r][c] / rows_[rank][c];
        if (q)
          for (std::size_t j = 0; j < cols_; ++j)
            rows_[r][j] = sub(rows_[r][j], mul(q, rows_[rank][j]));
      }
      pivot_cols_.push_back(c);
      ++rank;
    }
    rows_.resize(rank);
  }

  // Realize gcd of column-c entries on r1; zero the entry on r2.
  void gcd_rows(std::size_t r1, std::size_t r2, std::size_t c) {
    std::int64_t a = static_cast<std::int64_t>(rows_[r1][c]);
    std::int64_t b = static_cast<std::int64_t>(rows_[r2][c]);
    auto [g, s, t] = modsolve_detail::xgcd(a, b);
    auto nrm = [&](std::int64_t x) {
      std::int64_t m = x % static_cast<std::int64_t>(n_);
      return static_cast<std::uint64_t>(m < 0 ? m + static_cast<std::int64_t>(n_) : m);
    };
    std::uint64_t us = nrm(s), ut = nrm(t), ua = nrm(a / g), ub = nrm(b / g);
    std::vector<std::uint64_t> new1(cols_), new2(cols_);
    for (std::size_t j = 0; j < cols_; ++j) {
      new1[j] = add(mul(us, rows_[r1][j]), mul(ut, rows_[r2][j]));
      new2[j] = sub(mul(ua, rows_[r2][j]), mul(ub, rows_[r1][j]));
    }
    rows_[r1] = std::move(new1);
    rows_[r2] = std::move(new2);
  }

  void complete() {
    for (int pass = 0; pass < 256; ++pass) {
      bool appended = false;
      const std::size_t nr = rows_.size();  // appended rows are not yet echelonized
      for (std::size_t r = 0; r < nr; ++r) {
        std::uint64_t d = rows_[r][pivot_cols_[r]];
        if (d == 1) continue;
        std::vector<std::uint64_t> cand(cols_);
        for (std::size_t j = 0; j < cols_; ++j) cand[j] = mul(n_ / d, rows_[r][j]);
        cand = reduce_vector(std::move(cand));
        bool zero = true;
        for (auto x : cand)
          if (x) zero = false;
        if (!zero) {
          rows_.push_back(std::move(cand));
          appended = true;
        }
      }
      if (!appended) return;
      echelon();
    }
    throw std::logic_error("HowellForm: completion did not converge");
  }

  std::uint64_t n_;
  std::size_t cols_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> pivot_cols_;
  std::vector<std::uint64_t> units_;
};

// Solution set of A x = b over Z/n: particular + Howell kernel basis.
// Coefficient c_i for kernel row i ranges over [0, multiplicity[i]);
// distinct coefficient tuples give distinct solutions.
struct SolutionSet {
  bool consistent = false;
  std::uint64_t n = 0;
  std::vector<std::uint64_t> particular;
  std::vector<std::vector<std::uint64_t>> kernel;
  std::vector<std::uint64_t> multiplicity;

  unsigned __int128 count() const {
    if (!consistent) return 0;
    unsigned __int128 c = 1;
    for (auto m : multiplicity) c *= m;
    return c;
  }

  void enumerate(const std::function<void(const std::vector<std::uint64_t>&)>& fn) const {
    if (!consistent) return;
    std::vector<std::uint64_t> x = particular;
    std::function<void(std::size_t)> go = [&](std::size_t t) {
      if (t == kernel.size()) {
        fn(x);
        return;
      }
      std::vector<std::uint64_t> saved = x;
      for (std::uint64_t c = 0; c < multiplicity[t]; ++c) {
        go(t + 1);
        for (std::size_t j = 0; j < x.size(); ++j) x[j] = (x[j] + kernel[t][j]) % n;
      }
      x = std::move(saved);
    };
    go(0);
  }
};

// Fixed coefficient matrix, many right-hand sides: the Howell form of
// [A^T | I] is built once and each solve is a single canonical reduction.
class LinearSolver {
public:
  LinearSolver(std::uint64_t n, const std::vector<std::vector<std::uint64_t>>& A)
      : n_(n), rows_(A.size()), cols_(rows_ ? A[0].size() : 0), H_(n, augment(n, A)) {
    for (std::size_t r = 0; r < H_.rows().size(); ++r) {
      if (H_.pivot_cols()[r] < rows_) continue;
      std::vector<std::uint64_t> tail(H_.rows()[r].begin() + rows_, H_.rows()[r].end());
      multiplicity_.push_back(n / H_.rows()[r][H_.pivot_cols()[r]]);
      kernel_.push_back(std::move(tail));
    }
  }

  unsigned __int128 kernel_size() const {
    unsigned __int128 c = 1;
    for (auto m : multiplicity_) c *= m;
    return c;
  }

  SolutionSet solve(const std::vector<std::uint64_t>& b) const {
    if (b.size() != rows_) throw std::invalid_argument("LinearSolver: rhs size mismatch");
    SolutionSet out;
    out.n = n_;
    std::vector<std::uint64_t> v(rows_ + cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = b[i] % n_;
    v = H_.reduce_vector(std::move(v));
    for (std::size_t i = 0; i < rows_; ++i)
      if (v[i]) return out;  // b outside the column span: inconsistent
    out.consistent = true;
    out.particular.assign(cols_, 0);
    for (std::size_t j = 0; j < cols_; ++j) out.particular[j] = (n_ - v[rows_ + j]) % n_;
    out.kernel = kernel_;
    out.multiplicity = multiplicity_;
    return out;
  }

  bool consistent(const std::vector<std::uint64_t>& b) const {
    std::vector<std::uint64_t> v(rows_ + cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = b[i] % n_;
    v = H_.reduce_vector(std::move(v));
    for (std::size_t i = 0; i < rows_; ++i)
      if (v[i]) return false;
    return true;
  }

private:
  static std::vector<std::vector<std::uint64_t>> augment(
      std::uint64_t n, const std::vector<std::vector<std::uint64_t>>& A) {
    const std::size_t rows = A.size();
    const std::size_t cols = rows ? A[0].size() : 0;
    // aug row j = (column j of A | e_j); invariant: tail . A^T = head.
    std::vector<std::vector<std::uint64_t>> aug(cols, std::vector<std::uint64_t>(rows + cols, 0));
    for (std::size_t j = 0; j < cols; ++j) {
      for (std::size_t i = 0; i < rows; ++i) aug[j][i] = A[i][j] % n;
      aug[j][rows + j] = 1;
    }
    return aug;
  }

  std::uint64_t n_;
  std::size_t rows_, cols_;
  HowellForm H_;
  std::vector<std::vector<std::uint64_t>> kernel_;
  std::vector<std::uint64_t> multiplicity_;
};

inline SolutionSet solve_modular(std::uint64_t n, const std::vector<std::vector<std::uint64_t>>& A,
                                 const std::vector<std::uint64_t>& b) {
  return LinearSolver(n, A).solve(b);
}

}  // namespace ostw
