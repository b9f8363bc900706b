#pragma once

// Integer Smith normal form for abelianization of finite presentations.
//
// The exponent-sum matrix (relators x generators) is reduced in two
// phases: a sparse phase peels off +-1 pivots (row then column clears are
// unimodular, so the cokernel is preserved), and the small residue goes
// through a textbook dense SNF with gcd pivoting.  Entries are kept in
// int64 with overflow-checked products.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <vector>

#include "ostw/tc.hpp"

namespace ostw {

namespace snf_detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  __int128 p = static_cast<__int128>(a) * b;
  if (p > INT64_MAX || p < INT64_MIN) throw std::overflow_error("snf: entry overflow");
  return static_cast<std::int64_t>(p);
}

// Dense SNF; returns the diagonal (nonzero entries, divisibility chain).
inline std::vector<std::int64_t> dense_smith(std::vector<std::vector<std::int64_t>> m) {
  std::vector<std::int64_t> divisors;
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // find a minimal nonzero entry in the remaining block
    std::size_t pi = t, pj = t;
    std::int64_t best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (best == 0 || std::abs(m[i][j]) < std::abs(best))) {
          best = m[i][j];
          pi = i;
          pj = j;
        }
    if (best == 0) break;
    std::swap(m[t], m[pi]);
    for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pj]);

    // one round of quotient reduction of column t (row ops) and row t
    // (column ops); remainders shrink the minimal entry, so this loops
    // back to a smaller pivot until both are clean
    for (std::size_t i = t + 1; i < rows; ++i) {
      std::int64_t q = m[i][t] / m[t][t];
      if (q != 0)
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= checked_mul(q, m[t][j]);
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      std::int64_t q = m[t][j] / m[t][t];
      if (q != 0)
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= checked_mul(q, m[i][t]);
    }
    bool off_zero = true;
    for (std::size_t i = t + 1; i < rows; ++i) off_zero &= m[i][t] == 0;
    for (std::size_t j = t + 1; j < cols; ++j) off_zero &= m[t][j] == 0;
    if (!off_zero) continue;

    // enforce divisibility of the remaining block by the pivot
    bool found = false;
    for (std::size_t i = t + 1; i < rows && !found; ++i)
      for (std::size_t j = t + 1; j < cols && !found; ++j)
        if (m[i][j] % m[t][t] != 0) {
          for (std::size_t jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
          found = true;
        }
    if (found) continue;
    divisors.push_back(std::abs(m[t][t]));
    ++t;
  }
  return divisors;
}

}  // namespace snf_detail

// Elementary divisors of the exponent-sum matrix of the presentation,
// restricted to `relator_subset` when non-null.  The abelianization is
// trivial iff the divisor count equals ngens and every divisor is 1; a
// relator subset presents a quotient of the true abelianization, so a
// trivial result certifies triviality.
inline std::vector<std::int64_t> abelianization_invariants(
    const Presentation& p, const std::vector<std::size_t>* relator_subset = nullptr) {
  std::vector<std::map<int, std::int64_t>> rows;
  auto add_row = [&](const std::vector<int>& rel) {
    std::map<int, std::int64_t> r;
    for (int letter : rel) r[std::abs(letter) - 1] += letter > 0 ? 1 : -1;
    std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
    if (!r.empty()) rows.push_back(std::move(r));
  };
  if (relator_subset) {
    for (std::size_t t : *relator_subset) add_row(p.relators.at(t));
  } else {
    for (const auto& rel : p.relators) add_row(rel);
  }

  std::vector<bool> col_done(p.ngens, false);
  std::size_t unit_pivots = 0;

  // Sparse phase: repeatedly eliminate +-1 pivots.
  for (;;) {
    std::size_t pivot_row = rows.size();
    int pivot_col = -1;
    for (std::size_t i = 0; i < rows.size() && pivot_row == rows.size(); ++i)
      for (const auto& [c, v] : rows[i])
        if (v == 1 || v == -1) {
          pivot_row = i;
          pivot_col = c;
          break;
        }
    if (pivot_row == rows.size()) break;
    std::map<int, std::int64_t> piv = rows[pivot_row];
    std::int64_t s = piv[pivot_col];  // +-1
    rows[pivot_row] = rows.back();
    rows.pop_back();
    for (auto& r : rows) {
      auto it = r.find(pivot_col);
      if (it == r.end()) continue;
      std::int64_t q = it->second * s;  // coefficient over the +-1 pivot
      for (const auto& [c, v] : piv) {
        r[c] -= snf_detail::checked_mul(q, v);
        if (r[c] == 0) r.erase(c);
      }
    }
    col_done[pivot_col] = true;
    ++unit_pivots;
    std::erase_if(rows, [](const auto& r) { return r.empty(); });
  }

  // Dense residue on the remaining columns.
  std::vector<int> live_cols;
  for (int c = 0; c < p.ngens; ++c)
    if (!col_done[c]) live_cols.push_back(c);
  std::vector<std::int64_t> divisors(unit_pivots, 1);
  if (!live_cols.empty() && !rows.empty()) {
    std::vector<std::vector<std::int64_t>> dense(rows.size(),
                                                 std::vector<std::int64_t>(live_cols.size(), 0));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < live_cols.size(); ++j) {
        auto it = rows[i].find(live_cols[j]);
        if (it != rows[i].end()) dense[i][j] = it->second;
      }
    for (std::int64_t d : snf_detail::dense_smith(std::move(dense))) divisors.push_back(d);
  }
  std::sort(divisors.begin(), divisors.end());
  return divisors;
}

inline bool abelianization_trivial(const std::vector<std::int64_t>& divisors, int ngens) {
  if (static_cast<int>(divisors.size()) != ngens) return false;
  for (std::int64_t d : divisors)
    if (d != 1) return false;
  return true;
}

}  // namespace ostw
