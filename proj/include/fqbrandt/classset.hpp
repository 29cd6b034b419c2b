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

#ifndef FQBRANDT_CLASSSET_HPP
#define FQBRANDT_CLASSSET_HPP

#include <gmpxx.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "reduce.hpp"

namespace fqbrandt {

namespace detail {

using Residues = std::array<Poly, 4>;

// Row echelon form over the field A/P, rows normalized and reduced.
inline std::vector<Residues> rref(std::vector<Residues> rows, const Poly& P) {
  std::vector<Residues> out;
  for (int col = 0; col < 4; ++col) {
    int piv = -1;
    for (int r = 0; r < int(rows.size()); ++r)
      if (!rows[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    Residues pr = rows[piv];
    rows.erase(rows.begin() + piv);
    const Poly inv = invmod(pr[col], P);
    for (auto& x : pr) x = (x * inv) % P;
    for (auto& row : rows) {
      if (row[col].is_zero()) continue;
      const Poly f = row[col];
      for (int k = 0; k < 4; ++k) row[k] = (row[k] - f * pr[k]) % P;
    }
    for (auto& row : out) {
      if (row[col].is_zero()) continue;
      const Poly f = row[col];
      for (int k = 0; k < 4; ++k) row[k] = (row[k] - f * pr[k]) % P;
    }
    out.push_back(std::move(pr));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Left O-ideals J inside I with Nr(J) = Nr(I) * P, found as the
/// two-dimensional O-stable subspaces of I / P I.
inline std::vector<Lattice> norm_q_ideals(const Lattice& I, const Lattice& O, const Poly& P) {
  if (!P.is_monic() || !is_irreducible(P)) throw std::invalid_argument("norm_q_ideals: P must be a monic prime");
  const QuatAlgebra& D = I.algebra();
  const Field& F = D.field();
  // M[k] maps I-coordinates of x to I-coordinates of o_k x, reduced mod P
  std::array<std::array<detail::Residues, 4>, 4> M;
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      const QuatElem prod = O.element(k) * I.element(l);
      auto c = I.coordinates(prod);
      if (!c) throw std::domain_error("norm_q_ideals: I is not a left ideal of O");
      for (int r = 0; r < 4; ++r) M[k][l][r] = (*c)[r] % P;
    }
  const RatFunc target = ideal_norm(I, O) * RatFunc(P);
  const auto res = detail::residues(P);
  const std::size_t Rn = res.size();
  std::set<std::vector<detail::Residues>> seen;
  std::vector<Lattice> out;
  for (int lead = 0; lead < 4; ++lead) {
    std::size_t total = 1;
    for (int k = lead + 1; k < 4; ++k) total *= Rn;
    for (std::size_t idx = 0; idx < total; ++idx) {
      detail::Residues x{Poly(F), Poly(F), Poly(F), Poly(F)};
      x[lead] = Poly::one(F);
      std::size_t rest = idx;
      for (int k = lead + 1; k < 4; ++k) {
        x[k] = res[rest % Rn];
        rest /= Rn;
      }
      std::vector<detail::Residues> span;
      for (int k = 0; k < 4; ++k) {
        detail::Residues y{Poly(F), Poly(F), Poly(F), Poly(F)};
        for (int l = 0; l < 4; ++l) {
          if (x[l].is_zero()) continue;
          for (int r = 0; r < 4; ++r) y[r] += M[k][l][r] * x[l];
        }
        for (auto& v : y) v = v % P;
        span.push_back(std::move(y));
      }
      auto basis = detail::rref(std::move(span), P);
      if (basis.size() != 2 || !seen.insert(basis).second) continue;
      std::vector<QVec> gens;
      for (const auto& v : I.basis()) gens.push_back(qscale(v, P));
      for (const auto& row : basis) {
        QVec g = D.zero();
        for (int l = 0; l < 4; ++l)
          if (!row[l].is_zero()) g = qadd(g, qscale(I.basis()[l], row[l]));
        gens.push_back(std::move(g));
      }
      Lattice J = Lattice::from_generators(I.algebra_ptr(), std::move(gens), I.den());
      if (ideal_norm(J, O) == target) out.push_back(std::move(J));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// I ~ J (J = I x for some x): conj(I) J holds an element of norm Nr(I) Nr(J).
inline bool are_equivalent(const Lattice& I, const Lattice& J, const Lattice& O) {
  const Lattice L = lattice_product(conjugate(I), J);
  const RatFunc target = (ideal_norm(I, O) * ideal_norm(J, O)).monic();
  return !enumerate_by_norm(L, target.deg(), target).empty();
}

/// Left ideal classes of a maximal order O.
struct ClassSet {
  AlgebraPtr D;
  Poly n0;
  Lattice R;
  std::vector<Lattice> ideals;
  std::vector<Lattice> right_orders;
  std::vector<Poly> norms;
  std::vector<std::uint64_t> units;
  std::vector<std::uint64_t> weights;
  mpq_class mass;
  bool certified = false;

  std::size_t size() const { return ideals.size(); }
  const Field& field() const { return D->field(); }
};

/// (q^deg P - 1) / (q^2 - 1)
inline mpq_class mass_target(std::uint32_t q, int deg_p) {
  mpz_class num, den;
  mpz_ui_pow_ui(num.get_mpz_t(), q, unsigned(deg_p));
  num -= 1;
  den = mpz_class(q) * q - 1;
  mpq_class m(num, den);
  m.canonicalize();
  return m;
}

/// Class set by neighbour search from O over primes not dividing n0 of
/// increasing degree (or over `neighbour_primes` in the given order). For
/// prime n0 the search stops, certified, once the accumulated mass sum 1/w_i
/// reaches the mass formula value.
inline ClassSet enumerate_classes(const Lattice& O, const Poly& n0, int degree_budget = 4,
                                  const std::vector<Poly>& neighbour_primes = {}) {
  ClassSet C;
  C.D = O.algebra_ptr();
  C.n0 = n0;
  C.R = O;
  const Field& F = O.field();
  const auto primes_n0 = prime_factors(n0);
  const bool prime_level = primes_n0.size() == 1 && primes_n0[0] == n0;
  const mpq_class target = prime_level ? mass_target(F.q(), n0.deg()) : mpq_class(0);

  auto add_class = [&](const Lattice& I) {
    const Lattice Rr = right_order(I);
    const UnitCount u = count_units(Rr);
    C.ideals.push_back(I);
    C.right_orders.push_back(Rr);
    C.norms.push_back(ideal_norm(I, O).num);
    C.units.push_back(u.units);
    C.weights.push_back(u.w);
    C.mass += mpq_class(1, u.w);
  };
  auto done = [&] { return prime_level && C.mass == target; };

  std::vector<Poly> primes = neighbour_primes;
  if (primes.empty())
    for (int d = 1; d <= degree_budget; ++d)
      for (const Poly& P : monic_irreducibles(F, d))
        if (!P.divides(n0)) primes.push_back(P);

  add_class(O);
  for (const Poly& P : primes) {
    if (done()) break;
    if (P.divides(n0)) throw std::invalid_argument("enumerate_classes: neighbour prime divides n0");
    // breadth-first closure under P-neighbours
    for (std::size_t head = 0; head < C.ideals.size() && !done(); ++head) {
      const Lattice I = C.ideals[head];
      for (const Lattice& J : norm_q_ideals(I, O, P)) {
        const UnitCount u = count_units(right_order(J));
        bool known = false;
        for (std::size_t k = 0; k < C.ideals.size() && !known; ++k)
          known = C.units[k] == u.units && are_equivalent(C.ideals[k], J, O);
        if (!known) add_class(J);
        if (done()) break;
      }
    }
  }
  if (prime_level && C.mass != target)
    throw std::runtime_error("enumerate_classes: mass " + C.mass.get_str() + " short of " + target.get_str() +
                             " after " + std::to_string(primes.size()) + " neighbour primes");
  if (prime_level && C.mass > target) throw std::logic_error("enumerate_classes: mass overshoot");
  C.certified = prime_level;

  // I_1 = O, then by (deg Nr, canonical basis)
  std::vector<std::size_t> order(C.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin() + 1, order.end(), [&](std::size_t x, std::size_t y) {
    if (C.norms[x].deg() != C.norms[y].deg()) return C.norms[x].deg() < C.norms[y].deg();
    return C.ideals[x] < C.ideals[y];
  });
  ClassSet S = C;
  for (std::size_t k = 0; k < order.size(); ++k) {
    S.ideals[k] = C.ideals[order[k]];
    S.right_orders[k] = C.right_orders[order[k]];
    S.norms[k] = C.norms[order[k]];
    S.units[k] = C.units[order[k]];
    S.weights[k] = C.weights[order[k]];
  }
  return S;
}

/// Algebra, maximal order and class set for level n0.
inline ClassSet build_class_set(const FieldPtr& F, const Poly& n0, int degree_budget = 4,
                                std::vector<MaximalizeStep>* log = nullptr) {
  AlgebraPtr D = build_definite_algebra(F, n0);
  const Lattice R = maximalize(Lattice::standard(D), n0, log);
  return enumerate_classes(R, n0, degree_budget);
}

}  // namespace fqbrandt

#endif  // FQBRANDT_CLASSSET_HPP
