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

// Independent brute-force oracles shared by the unit and acceptance suites.
// They deliberately avoid the library's reduction and enumeration code.
#ifndef FQBRANDT_TEST_ORACLES_HPP
#define FQBRANDT_TEST_ORACLES_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <map>
#include <set>
#include <vector>

#include "fqbrandt/lattice.hpp"
#include "fqbrandt/quat.hpp"

namespace fqbrandt::testing {

// Dense polynomial over a prime field: fixed-capacity coefficients and a
// degree (-1 for zero).
struct Dense {
  static constexpr int kCap = 24;
  std::int32_t c[kCap] = {};
  int deg = -1;
};

inline Dense to_dense(const Poly& f) {
  Dense d;
  if (!f.is_zero() && f.deg() >= Dense::kCap) throw std::length_error("oracle: polynomial too long");
  for (std::size_t k = 0; k < f.coeffs().size(); ++k) d.c[k] = std::int32_t(f.coeffs()[k]);
  d.deg = f.is_zero() ? -1 : f.deg();
  return d;
}

inline Poly from_dense(const Field& F, const Dense& d) {
  return Poly(F, std::vector<Elem>(std::begin(d.c), std::end(d.c)));
}

inline void dense_trim(Dense& x) {
  while (x.deg >= 0 && x.c[x.deg] == 0) --x.deg;
}

inline Dense dense_mul(const Dense& x, const Dense& y, std::int32_t p) {
  Dense z;
  if (x.deg < 0 || y.deg < 0) return z;
  if (x.deg + y.deg >= Dense::kCap) throw std::length_error("oracle: product too long");
  for (int i = 0; i <= x.deg; ++i) {
    if (!x.c[i]) continue;
    for (int j = 0; j <= y.deg; ++j) z.c[i + j] = (z.c[i + j] + x.c[i] * y.c[j]) % p;
  }
  z.deg = x.deg + y.deg;
  dense_trim(z);
  return z;
}

inline Dense dense_add(const Dense& x, const Dense& y, std::int32_t p) {
  Dense z;
  const int n = std::max(x.deg, y.deg);
  for (int e = 0; e <= n; ++e) z.c[e] = (x.c[e] + y.c[e]) % p;
  z.deg = n;
  dense_trim(z);
  return z;
}

// Every element sum c_k b_k / den with deg c_k <= box for all k and
// deg Nr <= bound, found by scanning the whole coefficient box on the given
// basis. Prime fields only. Elements are returned as numerator vectors.
inline std::set<QVec> naive_short_vectors(const Lattice& L, int box, int bound) {
  const Field& F = L.field();
  if (!F.is_prime_field()) throw std::invalid_argument("oracle: prime fields only");
  const std::int32_t p = std::int32_t(F.p());
  const QuatAlgebra& D = L.algebra();
  const std::array<Dense, 3> coef_form{to_dense(-D.a()), to_dense(-D.b()), to_dense(D.a() * D.b())};
  const int bound_num = bound + 2 * L.den().deg();

  std::size_t per = 1;
  for (int k = 0; k <= box; ++k) per *= std::size_t(p);
  // contrib[k][idx][r] = (coefficient polynomial idx) * (basis vector k)[r]
  std::array<std::vector<std::array<Dense, 4>>, 4> contrib;
  for (int k = 0; k < 4; ++k) {
    contrib[k].resize(per);
    for (std::size_t idx = 0; idx < per; ++idx) {
      Dense c;
      std::size_t rest = idx;
      for (int e = 0; e <= box; ++e) {
        c.c[e] = std::int32_t(rest % std::size_t(p));
        rest /= std::size_t(p);
      }
      c.deg = box;
      dense_trim(c);
      for (int r = 0; r < 4; ++r) contrib[k][idx][r] = dense_mul(c, to_dense(L.basis()[k][r]), p);
    }
  }

  std::set<QVec> out;
  std::array<std::array<Dense, 4>, 4> partial;
  for (std::size_t i0 = 0; i0 < per; ++i0) {
    partial[0] = contrib[0][i0];
    for (std::size_t i1 = 0; i1 < per; ++i1) {
      for (int r = 0; r < 4; ++r) partial[1][r] = dense_add(partial[0][r], contrib[1][i1][r], p);
      for (std::size_t i2 = 0; i2 < per; ++i2) {
        for (int r = 0; r < 4; ++r) partial[2][r] = dense_add(partial[1][r], contrib[2][i2][r], p);
        for (std::size_t i3 = 0; i3 < per; ++i3) {
          if ((i0 | i1 | i2 | i3) == 0) continue;
          auto& x = partial[3];
          for (int r = 0; r < 4; ++r) x[r] = dense_add(partial[2][r], contrib[3][i3][r], p);
          // Nr = x0^2 - a x1^2 - b x2^2 + ab x3^2
          Dense n = dense_mul(x[0], x[0], p);
          for (int r = 1; r < 4; ++r) n = dense_add(n, dense_mul(coef_form[r - 1], dense_mul(x[r], x[r], p), p), p);
          if (n.deg < 0 || n.deg > bound_num) continue;
          QVec v;
          for (int r = 0; r < 4; ++r) v[r] = from_dense(F, x[r]);
          out.insert(v);
        }
      }
    }
  }
  return out;
}

// Reverse a polynomial in t into the s = 1/t chart: s^deg(f) * f(1/s).
inline Poly reversed(const Poly& f) {
  std::vector<Elem> c;
  for (int k = f.deg(); k >= 0; --k) c.push_back(f[k]);
  return Poly(f.field(), c);
}

// Remove P^2 factors so the valuation is 0 or 1; the symbol is unchanged.
inline Poly strip_squares(Poly f, const Poly& Pp) {
  const Poly P2 = Pp * Pp;
  while (P2.divides(f)) f = f / P2;
  return f;
}

// Brute force: does a x^2 + b y^2 - z^2 = 0 have a primitive solution mod P^3?
// P must have degree one so the residue ring stays tiny.
inline bool has_primitive_zero_mod_cube(const Poly& a, const Poly& b, const Poly& Pp) {
  const Field& F = a.field();
  const Poly mod = pow(Pp, 3);
  std::vector<Poly> residues;
  for (int d = 0; d < 3; ++d)
    for (Elem lc = 1; lc < F.q(); ++lc)
      for (const Poly& m : enumerate_monic(F, d)) residues.push_back(m.scaled(lc));
  residues.push_back(Poly(F));
  std::map<Poly, std::vector<Poly>> roots;
  for (const Poly& z : residues) roots[(z * z) % mod].push_back(z);
  for (const Poly& x : residues)
    for (const Poly& y : residues) {
      const Poly v = (a * x * x + b * y * y) % mod;
      auto it = roots.find(v);
      if (it == roots.end()) continue;
      const bool xy_primitive = !Pp.divides(x) || !Pp.divides(y);
      for (const Poly& z : it->second)
        if (xy_primitive || !Pp.divides(z)) return true;
    }
  return false;
}

inline int oracle_symbol(const Poly& a, const Poly& b, const Place& v) {
  if (v.is_infinite()) {
    const Poly s = Poly::t(a.field());
    auto chart = [&](const Poly& f) { return f.deg() % 2 ? reversed(f) * s : reversed(f); };
    return has_primitive_zero_mod_cube(chart(a), chart(b), s) ? 1 : -1;
  }
  return has_primitive_zero_mod_cube(strip_squares(a, *v.prime), strip_squares(b, *v.prime), *v.prime) ? 1 : -1;
}

}  // namespace fqbrandt::testing

#endif
