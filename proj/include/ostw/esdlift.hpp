#pragma once

// Lifted ESD-transvections X(u, v) as Steinberg words.
//
// Basis case: X(e_i, v) = x_{-i}(-v_0) prod_{j != +-i} x_{i,-j}(v_j),
// defined for <e_i, v> = 0; the e_i-coordinate of v is dropped (licensed
// by X(u, ua) = 1).  General case: for u in the EO-orbit of e_1 with
// witness word g (a product of elementary transvections sending e_1 to
// u), X(u, v) = g X(e_1, g^{-1} v) g^{-1}, the witness lifted generator
// by generator.  Always phi(X(u, v)) = T(u, v); word-level identities
// are decided by the coset-table oracle.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ostw/steinberg.hpp"

namespace ostw {

inline Word x_esd_basis(const QuadSpace& s, int i, const Vector& v) {
  require_same(v, basis_e(s, i));
  if (v[s.pos(-i)] != 0)
    throw std::invalid_argument("x_esd_basis: <e_i, v> != 0 (e_{-i}-coordinate must vanish)");
  Word w(s);
  for (const GenLabel& lab : decompose_esd(s, i, v)) w.append(lab);
  return w;
}

struct LiftedTransvection {
  Vector u, v;
  Word word;
  std::vector<std::pair<GenLabel, int>> witness;  // empty when u = e_i
};

inline Word lift_witness(const QuadSpace& s, const std::vector<std::pair<GenLabel, int>>& w) {
  Word out(s);
  for (const auto& [lab, e] : w) out.append(lab, e);
  return out;
}

inline LiftedTransvection x_lift(const QuadSpace& s, const Vector& u, const Vector& v,
                                 const OrbitTable& table) {
  require_same(u, v);
  if (bilinear(u, v) != 0) throw std::invalid_argument("x_lift: <u,v> != 0");
  // literal basis case (keeps G o F the identity on generators)
  for (int i = -s.ell(); i <= s.ell(); ++i) {
    if (i == 0) continue;
    if (u == basis_e(s, i)) return LiftedTransvection{u, v, x_esd_basis(s, i, v), {}};
  }
  if (!table.contains(u)) throw std::invalid_argument("x_lift: u not in the orbit of e_1");
  auto wit = table.witness(u);
  Vector v0 = table.apply_witness_inverse(wit, v);
  Word g = lift_witness(s, wit);
  Word word = mul(mul(g, x_esd_basis(s, 1, v0)), inv(g));
  return LiftedTransvection{u, v, std::move(word), std::move(wit)};
}

}  // namespace ostw
