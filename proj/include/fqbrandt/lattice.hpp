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

#ifndef FQBRANDT_LATTICE_HPP
#define FQBRANDT_LATTICE_HPP

#include <array>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "quat.hpp"

namespace fqbrandt {

/// Four basis vectors (columns) given by their integral coordinates.
using Basis = std::array<QVec, 4>;
using PolyMatrix = std::array<std::array<Poly, 4>, 4>;

namespace detail {

// Column Hermite form of the A-span of gens: H[c][r] == 0 for r < c, monic
// pivots H[r][r], and H[c][r] reduced modulo H[r][r] for c < r.
inline std::optional<Basis> hermite(std::vector<QVec> gens) {
  Basis H;
  for (int r = 0; r < 4; ++r) {
    std::erase_if(gens, [](const QVec& v) { return qzero(v); });
    while (true) {
      int best = -1;
      for (int i = 0; i < int(gens.size()); ++i)
        if (!gens[i][r].is_zero() && (best < 0 || gens[i][r].deg() < gens[best][r].deg())) best = i;
      if (best < 0) return std::nullopt;
      bool done = true;
      for (int i = 0; i < int(gens.size()); ++i) {
        if (i == best || gens[i][r].is_zero()) continue;
        const Poly quo = gens[i][r] / gens[best][r];
        gens[i] = qsub(gens[i], qscale(gens[best], quo));
        if (!gens[i][r].is_zero()) done = false;
      }
      if (done) {
        H[r] = std::move(gens[best]);
        gens.erase(gens.begin() + best);
        break;
      }
    }
  }
  const Field& F = H[0][0].field();
  for (int r = 0; r < 4; ++r) {
    const Elem s = F.inv(H[r][r].leading());
    for (auto& x : H[r]) x = x.scaled(s);
  }
  for (int r = 1; r < 4; ++r)
    for (int c = 0; c < r; ++c) {
      const Poly quo = H[c][r] / H[r][r];
      if (!quo.is_zero()) H[c] = qsub(H[c], qscale(H[r], quo));
    }
  return H;
}

inline Poly det3(const PolyMatrix& m, int skip_r, int skip_c) {
  int rows[3], cols[3];
  for (int k = 0, i = 0; k < 4; ++k)
    if (k != skip_r) rows[i++] = k;
  for (int k = 0, i = 0; k < 4; ++k)
    if (k != skip_c) cols[i++] = k;
  auto e = [&](int i, int j) -> const Poly& { return m[rows[i]][cols[j]]; };
  return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
         e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

}  // namespace detail

inline Poly det4(const PolyMatrix& m) {
  Poly s(m[0][0].field());
  for (int c = 0; c < 4; ++c) {
    const Poly term = m[0][c] * detail::det3(m, 0, c);
    s = (c % 2 == 0) ? s + term : s - term;
  }
  return s;
}

/// Full-rank A-lattice in the algebra: the span of basis()[k] / den().
class Lattice {
 public:
  Lattice() = default;

  static Lattice from_generators(AlgebraPtr D, std::vector<QVec> gens, Poly den) {
    if (den.is_zero()) throw std::domain_error("lattice: zero denominator");
    const Field& F = D->field();
    if (!den.is_monic()) {
      const Elem s = F.inv(den.leading());
      for (auto& v : gens)
        for (auto& x : v) x = x.scaled(s);
      den = den.monic();
    }
    auto H = detail::hermite(std::move(gens));
    if (!H) throw std::domain_error("lattice: generators do not span a rank 4 lattice");
    Poly g = den;
    for (const auto& v : *H)
      for (const auto& x : v) g = gcd(g, x);
    if (!g.is_one()) {
      for (auto& v : *H)
        for (auto& x : v) x = x / g;
      den = den / g;
    }
    Lattice L;
    L.D_ = std::move(D);
    L.den_ = std::move(den);
    L.basis_ = std::move(*H);
    return L;
  }

  static Lattice from_generators(AlgebraPtr D, std::vector<QVec> gens) {
    const Poly one = Poly::one(D->field());
    return from_generators(std::move(D), std::move(gens), one);
  }

  /// A<1, i, j, ij>.
  static Lattice standard(AlgebraPtr D) {
    std::vector<QVec> gens;
    for (int k = 0; k < 4; ++k) gens.push_back(D->basis(k));
    return from_generators(std::move(D), std::move(gens));
  }

  const QuatAlgebra& algebra() const { return *D_; }
  const AlgebraPtr& algebra_ptr() const { return D_; }
  const Field& field() const { return D_->field(); }
  const Poly& den() const { return den_; }
  const Basis& basis() const { return basis_; }
  QuatElem element(int k) const { return QuatElem(*D_, basis_[k], den_); }
  std::vector<QuatElem> elements() const { return {element(0), element(1), element(2), element(3)}; }

  /// Coefficients of x on the basis, or nullopt when x is not in the lattice.
  std::optional<std::array<Poly, 4>> coordinates(const QuatElem& x) const {
    const Poly& dx = x.den();
    std::array<Poly, 4> c{Poly(field()), Poly(field()), Poly(field()), Poly(field())};
    for (int r = 0; r < 4; ++r) {
      Poly s = den_ * x.num()[r];
      for (int k = 0; k < r; ++k) s -= dx * basis_[k][r] * c[k];
      auto [quo, rem] = divmod(s, dx * basis_[r][r]);
      if (!rem.is_zero()) return std::nullopt;
      c[r] = std::move(quo);
    }
    return c;
  }
  bool contains(const QuatElem& x) const { return coordinates(x).has_value(); }
  bool contains(const Lattice& M) const {
    for (int k = 0; k < 4; ++k)
      if (!contains(M.element(k))) return false;
    return true;
  }

  /// Monic covolume relative to A^4: det(basis) / den^4.
  RatFunc det() const {
    Poly d = Poly::one(field());
    for (int k = 0; k < 4; ++k) d *= basis_[k][k];
    return RatFunc(d, pow(den_, 4));
  }

  friend bool operator==(const Lattice& x, const Lattice& y) { return x.den_ == y.den_ && x.basis_ == y.basis_; }
  /// Canonical order: denominator, then basis entries column by column.
  friend std::strong_ordering operator<=>(const Lattice& x, const Lattice& y) {
    if (auto c = x.den_ <=> y.den_; c != 0) return c;
    for (int k = 0; k < 4; ++k)
      for (int r = 0; r < 4; ++r)
        if (auto c = x.basis_[k][r] <=> y.basis_[k][r]; c != 0) return c;
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    std::string s = "(1/" + den_.to_string() + ")[";
    for (int k = 0; k < 4; ++k) {
      s += k ? "; " : "";
      for (int r = 0; r < 4; ++r) s += (r ? ", " : "") + basis_[k][r].to_string();
    }
    return s + "]";
  }

 private:
  AlgebraPtr D_;
  Poly den_;
  Basis basis_;
};

// ---------------------------------------------------------------------------
// Lattice arithmetic

inline Lattice lattice_sum(const Lattice& L, const Lattice& M) {
  const Poly l = lcm(L.den(), M.den());
  const Poly sL = l / L.den(), sM = l / M.den();
  std::vector<QVec> gens;
  for (const auto& v : L.basis()) gens.push_back(qscale(v, sL));
  for (const auto& v : M.basis()) gens.push_back(qscale(v, sM));
  return Lattice::from_generators(L.algebra_ptr(), std::move(gens), l);
}

/// A-span of all products x * y with x in L, y in M.
inline Lattice lattice_product(const Lattice& L, const Lattice& M) {
  const QuatAlgebra& D = L.algebra();
  std::vector<QVec> gens;
  for (const auto& x : L.basis())
    for (const auto& y : M.basis()) gens.push_back(D.mul(x, y));
  return Lattice::from_generators(L.algebra_ptr(), std::move(gens), L.den() * M.den());
}

/// x * L
inline Lattice left_mul(const QuatElem& x, const Lattice& L) {
  std::vector<QVec> gens;
  for (const auto& v : L.basis()) gens.push_back(L.algebra().mul(x.num(), v));
  return Lattice::from_generators(L.algebra_ptr(), std::move(gens), x.den() * L.den());
}

/// L * x
inline Lattice right_mul(const Lattice& L, const QuatElem& x) {
  std::vector<QVec> gens;
  for (const auto& v : L.basis()) gens.push_back(L.algebra().mul(v, x.num()));
  return Lattice::from_generators(L.algebra_ptr(), std::move(gens), x.den() * L.den());
}

inline Lattice scale(const Lattice& L, const RatFunc& s) {
  if (s.is_zero()) throw std::domain_error("lattice: scale by zero");
  std::vector<QVec> gens;
  for (const auto& v : L.basis()) gens.push_back(qscale(v, s.num));
  return Lattice::from_generators(L.algebra_ptr(), std::move(gens), L.den() * s.den);
}

inline Lattice conjugate(const Lattice& L) {
  std::vector<QVec> gens;
  for (const auto& v : L.basis()) gens.push_back(L.algebra().conj(v));
  return Lattice::from_generators(L.algebra_ptr(), std::move(gens), L.den());
}

/// Dual under the coordinate pairing sum_k x_k y_k.
inline Lattice coordinate_dual(const Lattice& L) {
  PolyMatrix m;  // m[r][c] = basis[c][r]
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m[r][c] = L.basis()[c][r];
  const Poly det = det4(m);
  // columns of den * H^{-T} are den * (rows of adj H) / det H
  std::vector<QVec> gens;
  for (int k = 0; k < 4; ++k) {
    QVec v;
    for (int l = 0; l < 4; ++l) {
      // adj(H)[k][l] = (-1)^{k+l} minor(l, k)
      Poly cof = detail::det3(m, l, k);
      if ((k + l) % 2) cof = -cof;
      v[l] = L.den() * cof;
    }
    gens.push_back(std::move(v));
  }
  return Lattice::from_generators(L.algebra_ptr(), std::move(gens), det);
}

inline Lattice intersection(const Lattice& L, const Lattice& M) {
  return coordinate_dual(lattice_sum(coordinate_dual(L), coordinate_dual(M)));
}

/// Dual under the trace form (x, y) -> Tr(x y).
inline Lattice trace_dual(const Lattice& L) {
  const QuatAlgebra& D = L.algebra();
  const Field& F = D.field();
  const Elem two = F.from_int(2);
  // Tr(x y) = x^T diag(2, 2a, 2b, -2ab) y on standard coordinates
  const std::array<Poly, 4> T{Poly::constant(F, two), D.a().scaled(two), D.b().scaled(two),
                              -(D.a() * D.b()).scaled(two)};
  const Lattice C = coordinate_dual(L);
  const Poly total = T[0] * T[1] * T[2] * T[3];
  std::vector<QVec> gens;
  for (const auto& v : C.basis()) {
    QVec w;
    for (int k = 0; k < 4; ++k) w[k] = v[k] * (total / T[k]);
    gens.push_back(std::move(w));
  }
  return Lattice::from_generators(L.algebra_ptr(), std::move(gens), C.den() * total);
}

/// {x : I x in I}
inline Lattice right_order(const Lattice& I) {
  std::optional<Lattice> acc;
  for (const QuatElem& b : I.elements()) {
    Lattice s = left_mul(b.inverse(), I);
    acc = acc ? intersection(*acc, s) : s;
  }
  return *acc;
}

/// {x : x I in I}
inline Lattice left_order(const Lattice& I) {
  std::optional<Lattice> acc;
  for (const QuatElem& b : I.elements()) {
    Lattice s = right_mul(I, b.inverse());
    acc = acc ? intersection(*acc, s) : s;
  }
  return *acc;
}

inline bool is_order(const Lattice& O) {
  return O.contains(QuatElem(O.algebra(), O.algebra().one())) && lattice_product(O, O) == O;
}

/// Gram matrix of the trace form Tr(b_k b_l) on the basis, over the common
/// denominator den^2.
inline std::pair<PolyMatrix, Poly> trace_gram(const Lattice& L) {
  PolyMatrix G;
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) G[k][l] = L.algebra().trace_mul(L.basis()[k], L.basis()[l]);
  return {G, L.den() * L.den()};
}

/// Monic square root of the trace-form discriminant; throws if the lattice
/// does not carry an integral trace form with square discriminant.
inline Poly reduced_discriminant(const Lattice& O) {
  auto [G, dd] = trace_gram(O);
  const RatFunc d = RatFunc(det4(G), pow(dd, 4)).monic();
  if (!d.is_polynomial()) throw std::domain_error("reduced_discriminant: trace form is not integral");
  auto r = sqrt_exact(d.num);
  if (!r) throw std::domain_error("reduced_discriminant: discriminant is not a square");
  return *r;
}

/// Reduced norm of a locally principal ideal I of the order O, from the index
/// formula Nr(I)^2 = [O : I].
inline RatFunc ideal_norm(const Lattice& I, const Lattice& O) {
  const RatFunc idx = (I.det() / O.det()).monic();
  auto n = sqrt_exact(idx.num);
  auto d = sqrt_exact(idx.den);
  if (!n || !d) throw std::domain_error("ideal_norm: index is not a square");
  return RatFunc(*n, *d);
}

/// conj(I) / Nr(I)
inline Lattice ideal_inverse(const Lattice& I, const Lattice& O) { return scale(conjugate(I), ideal_norm(I, O).inverse()); }

// ---------------------------------------------------------------------------
// Maximal orders

namespace detail {

inline bool trace_form_integral(const Lattice& L) {
  auto [G, dd] = trace_gram(L);
  for (const auto& row : G)
    for (const auto& x : row)
      if (!dd.divides(x)) return false;
  for (const auto& v : L.basis())
    if (!dd.divides(L.algebra().norm(v))) return false;
  return true;
}

// Smallest ring containing O and x, or nullopt once a non-integral element
// shows up.
inline std::optional<Lattice> ring_closure(const Lattice& O, const QuatElem& x) {
  Lattice L = lattice_sum(O, left_mul(x, O));
  L = lattice_sum(L, right_mul(O, x));
  while (true) {
    if (!trace_form_integral(L)) return std::nullopt;
    Lattice next = lattice_product(L, L);
    if (next == L) return L;
    L = std::move(next);
  }
}

// Residues of A/P: all polynomials of degree < deg P.
inline std::vector<Poly> residues(const Poly& P) {
  std::vector<Poly> out{Poly(P.field())};
  for (int d = 0; d < P.deg(); ++d)
    for (Elem lc = 1; lc < P.field().q(); ++lc)
      for (const Poly& m : enumerate_monic(P.field(), d)) out.push_back(m.scaled(lc));
  return out;
}

// Exhaustive search of P^{-1} O / O for an integral element generating a
// strictly larger order.
inline std::optional<Lattice> enlarge_at(const Lattice& O, const Poly& P) {
  const QuatAlgebra& D = O.algebra();
  const auto res = residues(P);
  const std::size_t R = res.size();
  for (int lead = 0; lead < 4; ++lead) {
    const std::size_t free = std::size_t(3 - lead);
    std::size_t total = 1;
    for (std::size_t k = 0; k < free; ++k) total *= R;
    for (std::size_t idx = 0; idx < total; ++idx) {
      QVec v = D.zero();
      v = qadd(v, O.basis()[lead]);
      std::size_t rest = idx;
      for (int k = lead + 1; k < 4; ++k) {
        const Poly& c = res[rest % R];
        rest /= R;
        if (!c.is_zero()) v = qadd(v, qscale(O.basis()[k], c));
      }
      const Poly dd = O.den() * P;
      if (!dd.divides(D.trace(v)) || !(dd * dd).divides(D.norm(v))) continue;
      auto L = ring_closure(O, QuatElem(D, v, dd));
      if (L && !(*L == O)) return L;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Per-prime record of how an order was enlarged.
struct MaximalizeStep {
  Poly prime;
  bool radical_idealizer;
};

/// Maximal order containing O whose reduced discriminant equals target.
inline Lattice maximalize(Lattice O, const Poly& target, std::vector<MaximalizeStep>* log = nullptr) {
  Poly disc = reduced_discriminant(O);
  while (!(disc == target)) {
    auto [excess, rem] = divmod(disc, target);
    if (!rem.is_zero()) throw std::domain_error("maximalize: target does not divide the discriminant");
    const Poly P = prime_factors(excess).front();
    // radical idealizer
    const Lattice K = intersection(O, scale(trace_dual(O), RatFunc(P)));
    Lattice next = left_order(K);
    bool radical = true;
    if (next == O) {
      auto L = detail::enlarge_at(O, P);
      if (!L) throw std::runtime_error("maximalize: order is maximal at " + P.to_string() + " but discriminant is not");
      next = std::move(*L);
      radical = false;
    }
    const Poly nd = reduced_discriminant(next);
    if (nd.deg() >= disc.deg()) throw std::logic_error("maximalize: discriminant did not decrease");
    if (log) log->push_back({P, radical});
    O = std::move(next);
    disc = nd;
  }
  return O;
}

}  // namespace fqbrandt

#endif  // FQBRANDT_LATTICE_HPP
