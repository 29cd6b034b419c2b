/*
   Copyright 2026 The fqbrandt Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef FQBRANDT_REDUCE_HPP
#define FQBRANDT_REDUCE_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lattice.hpp"

namespace fqbrandt {

/// Basis of a lattice in a definite algebra on which deg Nr is diagonal:
/// deg Nr(sum c_k v_k / den) = max_k (2 deg c_k + deg Nr(v_k / den)).
struct ReducedBasis {
  AlgebraPtr D;
  Poly den;
  std::array<QVec, 4> v;        // numerators, sorted by norm degree
  std::array<Poly, 4> norm;     // Nr(v_k), numerator only
  std::array<int, 4> norm_deg;  // deg Nr(v_k)

  /// deg Nr of v_k / den.
  int degree(int k) const { return norm_deg[k] - 2 * den.deg(); }
  std::array<int, 4> profile() const { return {degree(0), degree(1), degree(2), degree(3)}; }
};

namespace detail {

// Nonzero zero of the residue form sum c_k g_k^2 + sum_{k<l} e_kl g_k g_l over F_q.
inline std::optional<std::vector<Elem>> isotropic_vector(const Field& F, const std::vector<Elem>& c,
                                                         const std::vector<std::vector<Elem>>& e) {
  const std::size_t s = c.size();
  if (s == 0) return std::nullopt;
  const Elem two = F.from_int(2), four = F.from_int(4);
  std::vector<Elem> g(s, 0);
  std::uint64_t total = 1;
  for (std::size_t k = 1; k < s; ++k) total *= F.q();
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t k = 1; k < s; ++k) {
      g[k] = Elem(rest % F.q());
      rest /= F.q();
    }
    // c0 g0^2 + B g0 + C = 0
    Elem B = 0, C = 0;
    for (std::size_t l = 1; l < s; ++l) B = F.add(B, F.mul(e[0][l], g[l]));
    for (std::size_t k = 1; k < s; ++k) {
      C = F.add(C, F.mul(c[k], F.mul(g[k], g[k])));
      for (std::size_t l = k + 1; l < s; ++l) C = F.add(C, F.mul(e[k][l], F.mul(g[k], g[l])));
    }
    const Elem disc = F.sub(F.mul(B, B), F.mul(four, F.mul(c[0], C)));
    if (!F.is_square(disc)) continue;
    g[0] = F.div(F.sub(F.sqrt(disc), B), F.mul(two, c[0]));
    return g;
  }
  return std::nullopt;
}

}  // namespace detail

/// Greedy reduction: while the leading-coefficient form of some parity class
/// of norm degrees is isotropic, replace its top vector by a combination of
/// strictly smaller norm degree.
inline ReducedBasis reduce_basis(const Lattice& L) {
  const QuatAlgebra& D = L.algebra();
  const Field& F = D.field();
  if (!is_definite(D)) throw std::domain_error("reduce_basis: algebra is not definite");
  ReducedBasis R{L.algebra_ptr(), L.den(), L.basis(), {}, {}};
  auto refresh = [&](int k) {
    R.norm[k] = D.norm(R.v[k]);
    R.norm_deg[k] = R.norm[k].deg();
  };
  for (int k = 0; k < 4; ++k) refresh(k);

  bool changed = true;
  while (changed) {
    changed = false;
    for (int parity = 0; parity < 2 && !changed; ++parity) {
      std::vector<int> S;
      for (int k = 0; k < 4; ++k)
        if (R.norm_deg[k] % 2 == parity) S.push_back(k);
      std::vector<Elem> c;
      std::vector<std::vector<Elem>> e(S.size(), std::vector<Elem>(S.size(), 0));
      for (std::size_t x = 0; x < S.size(); ++x) {
        c.push_back(R.norm[S[x]].leading());
        for (std::size_t y = x + 1; y < S.size(); ++y) {
          const Poly tr = D.trace_conj(R.v[S[x]], R.v[S[y]]);
          e[x][y] = tr[std::size_t((R.norm_deg[S[x]] + R.norm_deg[S[y]]) / 2)];
        }
      }
      auto g = detail::isotropic_vector(F, c, e);
      if (!g) continue;
      int top = -1;
      for (std::size_t x = 0; x < S.size(); ++x)
        if ((*g)[x] != 0 && (top < 0 || R.norm_deg[S[x]] > R.norm_deg[top])) top = S[x];
      const int M = R.norm_deg[top];
      QVec w = D.zero();
      for (std::size_t x = 0; x < S.size(); ++x) {
        if ((*g)[x] == 0) continue;
        const Poly coef = Poly::monomial(F, (*g)[x], (M - R.norm_deg[S[x]]) / 2);
        w = qadd(w, qscale(R.v[S[x]], coef));
      }
      R.v[top] = std::move(w);
      refresh(top);
      if (R.norm_deg[top] >= M) throw std::logic_error("reduce_basis: norm degree did not drop");
      changed = true;
    }
  }
  std::array<int, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return R.norm_deg[x] < R.norm_deg[y]; });
  ReducedBasis out = R;
  for (int k = 0; k < 4; ++k) {
    out.v[k] = R.v[order[k]];
    out.norm[k] = R.norm[order[k]];
    out.norm_deg[k] = R.norm_deg[order[k]];
  }
  return out;
}

/// All polynomials of degree <= d (zero first), d < 0 giving {0}.
inline std::vector<Poly> polys_up_to(const Field& F, int d) {
  std::vector<Poly> out{Poly(F)};
  for (int k = 0; k <= d; ++k)
    for (Elem lc = 1; lc < F.q(); ++lc)
      for (const Poly& m : enumerate_monic(F, k)) out.push_back(m.scaled(lc));
  return out;
}

/// Calls f(numerator, Nr(numerator)) for every nonzero element of the lattice
/// with deg Nr <= bound (the element is numerator / R.den).
inline void for_each_short_vector(const ReducedBasis& R, int bound,
                                  const std::function<void(const QVec&, const Poly&)>& f) {
  const QuatAlgebra& D = *R.D;
  const Field& F = D.field();
  std::array<std::vector<QVec>, 4> mult;
  for (int k = 0; k < 4; ++k) {
    const int room = bound - R.degree(k);
    const int e = room < 0 ? -1 : room / 2;
    for (const Poly& c : polys_up_to(F, e)) mult[k].push_back(qscale(R.v[k], c));
  }
  for (const auto& x0 : mult[0])
    for (const auto& x1 : mult[1]) {
      const QVec s1 = qadd(x0, x1);
      for (const auto& x2 : mult[2]) {
        const QVec s2 = qadd(s1, x2);
        for (const auto& x3 : mult[3]) {
          const QVec s3 = qadd(s2, x3);
          if (qzero(s3)) continue;
          f(s3, D.norm(s3));
        }
      }
    }
}

/// Nonzero elements of L with deg Nr <= bound, or with monic(Nr) equal to
/// target when given (target's degree then sets the bound).
inline std::vector<QuatElem> enumerate_by_norm(const Lattice& L, int bound, const std::optional<RatFunc>& target = {},
                                               bool include_zero = false) {
  const ReducedBasis R = reduce_basis(L);
  std::vector<QuatElem> out;
  if (include_zero) out.emplace_back(L.algebra(), L.algebra().zero());
  const Poly dd = R.den * R.den;
  std::optional<Poly> want;
  if (target) {
    bound = target->deg();
    // Nr(x) = N / den^2 must equal target up to a constant
    const RatFunc scaled = *target * RatFunc(dd);
    if (!scaled.is_polynomial()) return out;
    want = scaled.num.monic();
  }
  for_each_short_vector(R, bound, [&](const QVec& v, const Poly& n) {
    if (want && !(n.monic() == *want)) return;
    out.emplace_back(L.algebra(), v, R.den);
  });
  return out;
}

struct UnitCount {
  std::uint64_t units;  // #O^x
  std::uint64_t w;      // #O^x / (q - 1)
};

inline UnitCount count_units(const Lattice& O) {
  const ReducedBasis R = reduce_basis(O);
  std::uint64_t n = 0;
  for_each_short_vector(R, 0, [&](const QVec&, const Poly&) { ++n; });
  const std::uint64_t qm1 = O.field().q() - 1;
  if (n == 0 || n % qm1 != 0) throw std::logic_error("count_units: unit count not divisible by q - 1");
  return {n, n / qm1};
}

}  // namespace fqbrandt

#endif  // FQBRANDT_REDUCE_HPP
