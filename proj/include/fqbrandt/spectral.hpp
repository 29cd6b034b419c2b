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

#ifndef FQBRANDT_SPECTRAL_HPP
#define FQBRANDT_SPECTRAL_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "picard.hpp"

namespace fqbrandt {

/// Polynomial over Q, little-endian, no trailing zeros.
struct QPoly {
  std::vector<mpq_class> c;

  QPoly() = default;
  explicit QPoly(std::vector<mpq_class> coeffs) : c(std::move(coeffs)) { trim(); }
  static QPoly monomial(const mpq_class& a, std::size_t k) {
    std::vector<mpq_class> v(k + 1, 0);
    v[k] = a;
    return QPoly(std::move(v));
  }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int deg() const { return int(c.size()) - 1; }
  const mpq_class& lead() const { return c.back(); }
  int sign_at(const mpq_class& x) const {
    mpq_class v = 0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
    return sgn(v);
  }
  /// Sign at +infinity or -infinity.
  int sign_at_infinity(bool positive) const {
    if (is_zero()) return 0;
    const int s = sgn(lead());
    return (positive || deg() % 2 == 0) ? s : -s;
  }

  QPoly derivative() const {
    std::vector<mpq_class> v;
    for (std::size_t k = 1; k < c.size(); ++k) v.push_back(c[k] * int(k));
    return QPoly(std::move(v));
  }
  friend QPoly operator-(const QPoly& x) {
    QPoly r = x;
    for (auto& a : r.c) a = -a;
    return r;
  }
  friend QPoly operator*(const QPoly& x, const QPoly& y) {
    if (x.is_zero() || y.is_zero()) return {};
    std::vector<mpq_class> v(x.c.size() + y.c.size() - 1, 0);
    for (std::size_t i = 0; i < x.c.size(); ++i)
      for (std::size_t j = 0; j < y.c.size(); ++j) v[i + j] += x.c[i] * y.c[j];
    return QPoly(std::move(v));
  }
  friend bool operator==(const QPoly& x, const QPoly& y) { return x.c == y.c; }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t k = 0; k < c.size(); ++k) s += (k ? ", " : "") + c[k].get_str();
    return s + "]";
  }
};

/// Quotient and remainder of x by a nonzero y.
inline std::pair<QPoly, QPoly> divmod(const QPoly& x, const QPoly& y) {
  if (y.is_zero()) throw std::domain_error("qpoly: division by zero");
  std::vector<mpq_class> r = x.c;
  std::vector<mpq_class> quo(x.c.size() >= y.c.size() ? x.c.size() - y.c.size() + 1 : 0, 0);
  for (std::size_t k = quo.size(); k-- > 0;) {
    const mpq_class f = r[k + y.c.size() - 1] / y.lead();
    quo[k] = f;
    if (f == 0) continue;
    for (std::size_t l = 0; l < y.c.size(); ++l) r[k + l] -= f * y.c[l];
  }
  return {QPoly(std::move(quo)), QPoly(std::move(r))};
}

inline QPoly gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  const mpq_class l = a.lead();
  for (auto& x : a.c) x /= l;
  return a;
}

/// f / gcd(f, f'): same roots, each simple.
inline QPoly squarefree_part(const QPoly& f) {
  if (f.deg() <= 0) return f;
  return divmod(f, gcd(f, f.derivative())).first;
}

/// Characteristic polynomial det(X - B) by Faddeev-LeVerrier, exact.
inline QPoly characteristic_polynomial(const IntMatrix& B) {
  const std::size_t n = B.n;
  std::vector<mpz_class> coef(n + 1);  // coef[k] multiplies X^k
  coef[n] = 1;
  std::vector<mpz_class> A(n * n), M(n * n, 0), AM(n * n);
  for (std::size_t k = 0; k < n * n; ++k) A[k] = detail::to_mpz(B.a[k]);
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
    for (std::size_t i = 0; i < n; ++i) M[i * n + i] += coef[n - k + 1];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        mpz_class s = 0;
        for (std::size_t l = 0; l < n; ++l) s += A[i * n + l] * M[l * n + j];
        AM[i * n + j] = s;
      }
    mpz_class tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += AM[i * n + i];
    if (tr % mpz_class(static_cast<unsigned long>(k)) != 0) throw std::logic_error("charpoly: inexact division");
    coef[n - k] = -tr / mpz_class(static_cast<unsigned long>(k));
    M = AM;
  }
  std::vector<mpq_class> v;
  for (auto& x : coef) v.emplace_back(x);
  return QPoly(std::move(v));
}

/// Standard Sturm sequence of f.
inline std::vector<QPoly> sturm_sequence(const QPoly& f) {
  std::vector<QPoly> s{f, f.derivative()};
  while (!s.back().is_zero()) {
    QPoly r = -divmod(s[s.size() - 2], s.back()).second;
    if (r.is_zero()) break;
    s.push_back(std::move(r));
  }
  if (s.back().is_zero()) s.pop_back();
  return s;
}

namespace detail {
inline int sign_changes(const std::vector<int>& signs) {
  int prev = 0, changes = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}
inline int variations_at(const std::vector<QPoly>& seq, const std::optional<mpq_class>& x, bool plus_infinity) {
  std::vector<int> s;
  for (const auto& p : seq) s.push_back(x ? p.sign_at(*x) : p.sign_at_infinity(plus_infinity));
  return sign_changes(s);
}
}  // namespace detail

/// Number of distinct real roots in (a, b]; nullopt endpoints mean -inf / +inf.
inline int count_real_roots(const QPoly& f, const std::optional<mpq_class>& a, const std::optional<mpq_class>& b) {
  if (f.deg() <= 0) return 0;
  const QPoly g = squarefree_part(f);
  const auto seq = sturm_sequence(g);
  return detail::variations_at(seq, a, false) - detail::variations_at(seq, b, true);
}

/// h(X) h(-X) = (-1)^deg h H(X^2): the roots of H are the squares of those of h.
inline QPoly squared_root_polynomial(const QPoly& h) {
  QPoly hm = h;
  for (std::size_t k = 1; k < hm.c.size(); k += 2) hm.c[k] = -hm.c[k];
  const QPoly prod = h * hm;
  std::vector<mpq_class> v;
  for (std::size_t k = 0; k < prod.c.size(); k += 2) v.push_back(h.deg() % 2 ? -prod.c[k] : prod.c[k]);
  for (std::size_t k = 1; k < prod.c.size(); k += 2)
    if (prod.c[k] != 0) throw std::logic_error("squared_root_polynomial: odd coefficient survived");
  return QPoly(std::move(v));
}

struct SpectralReport {
  Poly prime;
  std::uint64_t sigma = 0;
  QPoly charpoly;
  /// charpoly / (X - sigma)
  QPoly h;
  bool divisible = false;
  bool real_rooted = false;
  /// 4 q^deg; every root of h must satisfy lambda^2 <= this.
  mpq_class bound_sq;
  bool within_bound = false;
  /// Multiplicity of sigma as a root of the characteristic polynomial.
  int sigma_multiplicity = 0;
  std::string error;

  bool ok() const { return divisible && real_rooted && within_bound; }
};

/// Exact Ramanujan check for B(P): the characteristic polynomial splits off
/// X - sigma(P), is real-rooted, and every other root lies in
/// [-2 q^(deg P / 2), 2 q^(deg P / 2)], all decided by Sturm counts.
inline SpectralReport spectral_check(const ClassSet& C, const BrandtTable& T, const Poly& P) {
  if (!P.is_monic() || !is_irreducible(P)) throw std::invalid_argument("spectral_check: not a monic prime");
  if (P.divides(C.n0)) throw std::invalid_argument("spectral_check: prime divides the level");
  SpectralReport rep;
  rep.prime = P;
  rep.sigma = sigma_n0(P, C.n0);
  rep.charpoly = characteristic_polynomial(T.at(P));
  const QPoly lin(std::vector<mpq_class>{-mpq_class(detail::to_mpz(rep.sigma)), 1});
  auto [h, r] = divmod(rep.charpoly, lin);
  rep.divisible = r.is_zero();
  if (!rep.divisible) {
    rep.error = "characteristic polynomial not divisible by X - " + std::to_string(rep.sigma);
    return rep;
  }
  rep.h = h;
  QPoly f = rep.charpoly;
  while (f.deg() > 0 && divmod(f, lin).second.is_zero()) {
    f = divmod(f, lin).first;
    ++rep.sigma_multiplicity;
  }
  rep.real_rooted = count_real_roots(rep.charpoly, std::nullopt, std::nullopt) == squarefree_part(rep.charpoly).deg();
  rep.bound_sq = 4 * detail::q_power(C.field().q(), P.deg());
  if (h.deg() <= 0) {
    rep.within_bound = true;
    return rep;
  }
  // real roots of h have lambda^2 >= 0; none may exceed the bound
  const QPoly H = squared_root_polynomial(h);
  rep.within_bound = rep.real_rooted && count_real_roots(H, rep.bound_sq, std::nullopt) == 0;
  return rep;
}

}  // namespace fqbrandt

#endif  // FQBRANDT_SPECTRAL_HPP
