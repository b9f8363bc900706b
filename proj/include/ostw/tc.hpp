#pragma once

// Todd-Coxeter coset enumeration over the trivial subgroup.
//
// Strategy: HLT relator scanning with periodic lookahead.  Each live coset
// is processed in index order; every relator is scanned from it and gaps
// are filled by defining fresh cosets.  Coincidences are processed with a
// union-find queue (Holt's COINCIDENCE routine).  When the allocation
// grows past an adaptive threshold, a lookahead pass scans all relators
// at all live cosets without defining and the table is compressed.  A
// Felsch-style deduction strategy is available behind an option.
//
// On success the table is complete and compressed: row count = group
// order, row 0 is the coset of the trivial subgroup, and the regular
// action on rows decides word identities: a word is the identity iff it
// traces row 0 back to row 0.
//
// Columns are interleaved: column 2k is generator k, column 2k+1 its
// inverse.  Relator letters are +-(k+1).

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ostw {

struct Presentation {
  int ngens = 0;
  std::vector<std::string> names;             // optional, size ngens when set
  std::vector<std::vector<int>> relators;     // letters +-(k+1), freely reduced

  void add_relator(std::vector<int> word) {
    std::vector<int> red;
    for (int letter : word) {
      if (letter == 0 || letter > ngens || letter < -ngens)
        throw std::invalid_argument("relator letter out of range");
      if (!red.empty() && red.back() == -letter)
        red.pop_back();
      else
        red.push_back(letter);
    }
    if (!red.empty()) relators.push_back(std::move(red));
  }
};

// Plain-text format: one relator per line, generator k written g<k>, its
// inverse G<k>; blank lines and lines starting with '#' are skipped.  An
// optional line `gens <n>` pins the alphabet size (otherwise inferred).
inline Presentation parse_presentation(const std::string& text) {
  Presentation p;
  std::vector<std::vector<int>> raw;
  int maxgen = -1;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t t = line.find_first_not_of(" \t\r");
    if (t == std::string::npos || line[t] == '#') continue;
    if (line.compare(t, 5, "gens ") == 0) {
      p.ngens = std::stoi(line.substr(t + 5));
      continue;
    }
    std::vector<int> w;
    while (t < line.size()) {
      char c = line[t];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++t;
        continue;
      }
      if (c != 'g' && c != 'G') throw std::invalid_argument("presentation: bad token in '" + line + "'");
      std::size_t s = ++t;
      while (t < line.size() && std::isdigit(static_cast<unsigned char>(line[t]))) ++t;
      if (t == s) throw std::invalid_argument("presentation: missing generator index in '" + line + "'");
      int k = std::stoi(line.substr(s, t - s));
      maxgen = std::max(maxgen, k);
      w.push_back(c == 'g' ? k + 1 : -(k + 1));
    }
    raw.push_back(std::move(w));
  }
  if (p.ngens == 0) p.ngens = maxgen + 1;
  for (auto& w : raw) p.add_relator(std::move(w));
  return p;
}

class CosetTable {
public:
  static constexpr std::uint32_t UNDEF = 0xFFFFFFFFu;

  CosetTable() = default;
  CosetTable(int ngens, std::size_t rows) : ngens_(ngens), tab_(rows * 2 * ngens, UNDEF) {}

  int ngens() const { return ngens_; }
  std::size_t rows() const { return ngens_ ? tab_.size() / (2 * ngens_) : 0; }

  std::uint32_t get(std::uint32_t coset, int letter) const { return tab_[idx(coset, letter)]; }
  void set(std::uint32_t coset, int letter, std::uint32_t to) { tab_[idx(coset, letter)] = to; }

  // Trace a word from a coset; the table must be complete.
  std::uint32_t trace(std::uint32_t coset, const std::vector<int>& word) const {
    for (int letter : word) coset = tab_[idx(coset, letter)];
    return coset;
  }

  bool complete() const {
    for (auto e : tab_)
      if (e == UNDEF) return false;
    return true;
  }

  // Every relator closes at every coset and entries pair with inverses.
  bool compatible(const Presentation& p) const {
    if (!complete()) return false;
    for (std::uint32_t c = 0; c < rows(); ++c)
      for (int g = 0; g < ngens_; ++g) {
        if (get(get(c, g + 1), -(g + 1)) != c) return false;
        if (get(get(c, -(g + 1)), g + 1) != c) return false;
      }
    for (const auto& w : p.relators)
      for (std::uint32_t c = 0; c < rows(); ++c)
        if (trace(c, w) != c) return false;
    return true;
  }

  // Row-major 32-bit little-endian dump; columns g0, G0, g1, G1, ...
  std::vector<unsigned char> to_bytes() const {
    std::vector<unsigned char> out;
    out.reserve(tab_.size() * 4);
    for (std::uint32_t e : tab_)
      for (int b = 0; b < 4; ++b) out.push_back(static_cast<unsigned char>((e >> (8 * b)) & 0xFF));
    return out;
  }

  std::vector<std::uint32_t>& raw() { return tab_; }
  const std::vector<std::uint32_t>& raw() const { return tab_; }

private:
  std::size_t idx(std::uint32_t coset, int letter) const {
    int col = letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1;
    return static_cast<std::size_t>(coset) * 2 * ngens_ + col;
  }

  int ngens_ = 0;
  std::vector<std::uint32_t> tab_;
};

struct TcOptions {
  std::uint64_t max_cosets = 2'000'000;
  bool felsch = false;
};

struct TcResult {
  bool completed = false;
  CosetTable table;               // valid when completed
  std::uint64_t high_water = 0;   // live-coset high-water mark
  std::uint64_t defined = 0;      // total definitions made
};

namespace tc_detail {

class Enumerator {
public:
  Enumerator(const Presentation& p, const TcOptions& opt) : p_(p), opt_(opt), ncols_(2 * p.ngens) {
    for (const auto& w : p_.relators)
      if (w.empty()) throw std::invalid_argument("todd_coxeter: empty relator");
    grow(1024);
    alive_ = 1;
    next_ = 1;
  }

  TcResult run() {
    if (opt_.felsch)
      felsch_main();
    else
      hlt_main();
    TcResult res;
    res.high_water = high_water_;
    res.defined = defined_;
    if (overflow_) {
      res.completed = false;
      return res;
    }
    // Coincidences can retarget entries of rows scanned earlier; rescan
    // until no further collapse so the final table is fully compatible.
    for (;;) {
      std::uint64_t before = merges_;
      lookahead();
      if (merges_ == before) break;
      compress(0);
    }
    compress(0);
    res.completed = true;
    res.table = CosetTable(p_.ngens, alive_);
    res.table.raw().assign(tab_.begin(), tab_.begin() + static_cast<std::size_t>(alive_) * ncols_);
    return res;
  }

private:
  void hlt_main() {
    std::uint64_t threshold = 32'768;
    for (std::uint32_t a = 0; a < next_; ++a) {
      if (rep(a) != a) continue;
      for (const auto& w : p_.relators) {
        scan_and_fill(a, w);
        if (rep(a) != a) break;
        if (overflow_) break;
      }
      if (overflow_) break;
      if (rep(a) != a) continue;
      for (int col = 0; col < ncols_; ++col)
        if (at(a, col) == CosetTable::UNDEF) {
          if (!define(a, col)) break;
        }
      if (overflow_) break;
      bool near_limit = next_ + ncols_ + 2 >= opt_.max_cosets;
      if ((next_ >= threshold && alive_ * 3 < next_) || (near_limit && alive_ < next_)) {
        lookahead();
        a = compress(a);
        threshold = std::max<std::uint64_t>(2 * next_, 32'768);
      }
    }
  }

  // Classical Felsch: define the first gap, then propagate deductions by
  // scanning only the relators through the deduced letter.
  void felsch_main() {
    build_edp();
    std::uint32_t cursor = 0;
    bool confirming = false;
    while (!overflow_) {
      std::uint32_t a = cursor;
      int col = -1;
      for (; a < next_; ++a) {
        if (rep(a) != a) continue;
        for (int c = 0; c < ncols_; ++c)
          if (at(a, c) == CosetTable::UNDEF) {
            col = c;
            break;
          }
        if (col >= 0) break;
      }
      if (col < 0) {
        if (confirming) break;  // a clean full pass: table complete
        confirming = true;
        cursor = 0;
        continue;
      }
      confirming = false;
      cursor = a;
      if (!define(a, col)) break;
      drain_deductions();
    }
  }

  void build_edp() {
    edp_.assign(ncols_, {});
    for (std::size_t r = 0; r < p_.relators.size(); ++r) {
      const auto& w = p_.relators[r];
      for (std::size_t t = 0; t < w.size(); ++t)
        edp_[col_of(w[t])].emplace_back(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(t));
    }
  }

  // Scan relator r so that its letter at position t crosses the edge
  // leaving `a`: trace backward to the cycle start, then scan forward.
  void scan_from_position(std::uint32_t a, std::uint32_t r, std::uint32_t t) {
    const auto& w = p_.relators[r];
    std::uint32_t f = a;
    for (std::uint32_t k = t; k-- > 0;) {
      f = at(f, inv_col(col_of(w[k])));
      if (f == CosetTable::UNDEF) return;
    }
    scan(rep(f), w);
  }

private:
  std::uint32_t& at(std::uint32_t c, int col) { return tab_[static_cast<std::size_t>(c) * ncols_ + col]; }
  static int col_of(int letter) { return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1; }
  static int inv_col(int col) { return col ^ 1; }

  void grow(std::size_t rows) {
    tab_.resize(rows * ncols_, CosetTable::UNDEF);
    parent_.resize(rows);
    for (std::size_t t = cap_; t < rows; ++t) parent_[t] = static_cast<std::uint32_t>(t);
    cap_ = rows;
  }

  std::uint32_t rep(std::uint32_t c) {
    std::uint32_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      std::uint32_t up = parent_[c];
      parent_[c] = r;
      c = up;
    }
    return r;
  }

  bool define(std::uint32_t a, int col) {
    if (next_ >= opt_.max_cosets) {
      overflow_ = true;
      return false;
    }
    if (next_ >= cap_) grow(cap_ * 2);
    std::uint32_t f = next_++;
    ++alive_;
    ++defined_;
    high_water_ = std::max(high_water_, alive_);
    at(a, col) = f;
    at(f, inv_col(col)) = a;
    if (opt_.felsch) deductions_.emplace_back(a, col);
    return true;
  }

  void merge(std::uint32_t a, std::uint32_t b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    --alive_;
    ++merges_;
    queue_.push_back(b);
  }

  // Redistributes the rows of dying cosets onto their representatives.
  // Invariant restored on exit: an entry of a live row is either UNDEF or
  // points to a live coset, and forward/backward entries pair up.
  void coincidence(std::uint32_t a, std::uint32_t b) {
    queue_.clear();
    merge(a, b);
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      std::uint32_t dead = queue_[head];
      for (int col = 0; col < ncols_; ++col) {
        std::uint32_t d = at(dead, col);
        if (d == CosetTable::UNDEF) continue;
        if (at(d, inv_col(col)) == dead) at(d, inv_col(col)) = CosetTable::UNDEF;
        std::uint32_t mu = rep(dead), nu = rep(d);
        std::uint32_t fwd = at(mu, col), bwd = at(nu, inv_col(col));
        if (fwd != CosetTable::UNDEF) merge(nu, fwd);
        if (bwd != CosetTable::UNDEF) merge(mu, bwd);
        mu = rep(mu);
        nu = rep(nu);
        if (at(mu, col) == CosetTable::UNDEF) {
          at(mu, col) = nu;
          if (opt_.felsch) deductions_.emplace_back(mu, col);
        }
        if (at(nu, inv_col(col)) == CosetTable::UNDEF) at(nu, inv_col(col)) = mu;
      }
    }
  }

  void scan_and_fill(std::uint32_t a, const std::vector<int>& w) {
    std::uint32_t f = a, b = a;
    std::size_t i = 0, j = w.size();  // scan range [i, j)
    for (;;) {
      while (i < j && at(f, col_of(w[i])) != CosetTable::UNDEF) f = at(f, col_of(w[i])), ++i;
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && at(b, inv_col(col_of(w[j - 1]))) != CosetTable::UNDEF)
        b = at(b, inv_col(col_of(w[j - 1]))), --j;
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        at(f, col_of(w[i])) = b;
        at(b, inv_col(col_of(w[i]))) = f;
        if (opt_.felsch) deductions_.emplace_back(f, col_of(w[i]));
        return;
      }
      if (!define(f, col_of(w[i]))) return;
    }
  }

  // Scan without defining; deductions and coincidences only.
  void scan(std::uint32_t a, const std::vector<int>& w) {
    std::uint32_t f = a, b = a;
    std::size_t i = 0, j = w.size();
    while (i < j && at(f, col_of(w[i])) != CosetTable::UNDEF) f = at(f, col_of(w[i])), ++i;
    if (i == j) {
      if (f != b) coincidence(f, b);
      return;
    }
    while (j > i && at(b, inv_col(col_of(w[j - 1]))) != CosetTable::UNDEF)
      b = at(b, inv_col(col_of(w[j - 1]))), --j;
    if (j == i) {
      coincidence(f, b);
    } else if (j == i + 1) {
      at(f, col_of(w[i])) = b;
      at(b, inv_col(col_of(w[i]))) = f;
      if (opt_.felsch) deductions_.emplace_back(f, col_of(w[i]));
    }
  }

  void drain_deductions() {
    while (!deductions_.empty()) {
      auto [c, col] = deductions_.back();
      deductions_.pop_back();
      std::uint32_t a = rep(c);
      std::uint32_t d = at(a, col);
      if (d == CosetTable::UNDEF) continue;
      for (const auto& [r, t] : edp_[col]) scan_from_position(a, r, t);
      std::uint32_t dr = rep(d);
      for (const auto& [r, t] : edp_[inv_col(col)]) scan_from_position(dr, r, t);
    }
  }

  void lookahead() {
    for (std::uint32_t c = 0; c < next_; ++c) {
      if (rep(c) != c) continue;
      for (const auto& w : p_.relators) {
        scan(c, w);
        if (rep(c) != c) break;
      }
    }
  }

  // Renumber live cosets densely, preserving order.  Returns the new
  // index of the last already-processed row (every live coset <= follow
  // has been fully scanned); the caller's ++ resumes after it.
  std::uint32_t compress(std::uint32_t follow) {
    std::vector<std::uint32_t> newid(next_, CosetTable::UNDEF);
    std::uint32_t n = 0, processed = 0;
    for (std::uint32_t c = 0; c < next_; ++c) {
      if (rep(c) == c) newid[c] = n++;
      if (c == follow) processed = n;
    }
    for (std::uint32_t c = 0; c < next_; ++c) {
      if (newid[c] == CosetTable::UNDEF) continue;
      for (int col = 0; col < ncols_; ++col) {
        std::uint32_t d = at(c, col);
        at(newid[c], col) = d == CosetTable::UNDEF ? CosetTable::UNDEF : newid[rep(d)];
      }
    }
    for (std::size_t t = static_cast<std::size_t>(n) * ncols_; t < static_cast<std::size_t>(next_) * ncols_; ++t)
      tab_[t] = CosetTable::UNDEF;
    for (std::uint32_t c = 0; c < next_; ++c) parent_[c] = c;
    next_ = n;
    deductions_.clear();
    return processed == 0 ? 0 : processed - 1;
  }

  const Presentation& p_;
  TcOptions opt_;
  int ncols_;
  std::vector<std::uint32_t> tab_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> queue_;
  std::vector<std::pair<std::uint32_t, int>> deductions_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> edp_;
  std::size_t cap_ = 0;
  std::uint32_t next_ = 0;
  std::uint64_t alive_ = 0;
  std::uint64_t defined_ = 0;
  std::uint64_t high_water_ = 0;
  std::uint64_t merges_ = 0;
  bool overflow_ = false;
};

}  // namespace tc_detail

inline TcResult todd_coxeter(const Presentation& p, const TcOptions& opt = {}) {
  return tc_detail::Enumerator(p, opt).run();
}

inline std::uint64_t group_order(const CosetTable& t) {
  if (!t.complete()) throw std::invalid_argument("group_order: incomplete table");
  return t.rows();
}

// Regular representation: a word fixes the base coset iff it is the
// identity of the presented group.
inline bool word_is_identity(const CosetTable& t, const std::vector<int>& word) {
  if (!t.complete()) throw std::invalid_argument("word_is_identity: incomplete table");
  return t.trace(0, word) == 0;
}

}  // namespace ostw
