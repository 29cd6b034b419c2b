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

#ifndef FQBRANDT_POLY_HPP
#define FQBRANDT_POLY_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "field.hpp"

namespace fqbrandt {

/// Degree of a polynomial; std::nullopt stands for deg(0).
using Degree = std::optional<int>;

/// Element of A = F_q[t]. Coefficients are little-endian with no trailing
/// zeros. A Poly keeps a non-owning pointer to its field, which must outlive it.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Field& F) : F_(&F) {}
  Poly(const Field& F, std::vector<Elem> coeffs) : F_(&F), c_(std::move(coeffs)) { trim(); }

  static Poly constant(const Field& F, Elem c) { return c == 0 ? Poly(F) : Poly(F, {c}); }
  static Poly one(const Field& F) { return Poly(F, {1}); }
  static Poly monomial(const Field& F, Elem c, int k) {
    if (c == 0) return Poly(F);
    std::vector<Elem> v(std::size_t(k) + 1, 0);
    v.back() = c;
    return Poly(F, std::move(v));
  }
  static Poly t(const Field& F) { return monomial(F, 1, 1); }

  const Field& field() const {
    if (!F_) throw std::logic_error("poly: no field attached");
    return *F_;
  }
  const Field* field_ptr() const { return F_; }
  bool has_field() const { return F_ != nullptr; }

  bool is_zero() const { return c_.empty(); }
  Degree degree() const { return c_.empty() ? Degree{} : Degree{int(c_.size()) - 1}; }
  /// Degree of a nonzero polynomial; the zero polynomial is rejected.
  int deg() const {
    if (c_.empty()) throw std::domain_error("poly: degree of the zero polynomial");
    return int(c_.size()) - 1;
  }
  Elem operator[](std::size_t k) const { return k < c_.size() ? c_[k] : 0; }
  Elem leading() const { return c_.empty() ? 0 : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Elem>& coeffs() const { return c_; }

  Poly monic() const {
    if (is_zero()) throw std::domain_error("poly: monicize zero");
    return scaled(field().inv(leading()));
  }
  Poly scaled(Elem s) const {
    if (s == 0 || is_zero()) return Poly(field());
    std::vector<Elem> r(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) r[k] = F_->mul(c_[k], s);
    return Poly(*F_, std::move(r));
  }
  Poly shifted(int k) const {
    if (is_zero()) return *this;
    std::vector<Elem> r(std::size_t(k), 0);
    r.insert(r.end(), c_.begin(), c_.end());
    return Poly(*F_, std::move(r));
  }

  Elem eval(Elem x) const {
    Elem acc = 0;
    for (std::size_t k = c_.size(); k-- > 0;) acc = F_->add(F_->mul(acc, x), c_[k]);
    return acc;
  }
  Poly derivative() const {
    if (c_.size() <= 1) return Poly(field());
    std::vector<Elem> r(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) r[k - 1] = F_->mul(c_[k], F_->from_int(std::int64_t(k)));
    return Poly(*F_, std::move(r));
  }

  Poly operator-() const {
    if (is_zero()) return *this;
    std::vector<Elem> r(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) r[k] = F_->neg(c_[k]);
    return Poly(*F_, std::move(r));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    const Field& F = pick(a, b);
    const std::size_t n = std::max(a.c_.size(), b.c_.size());
    std::vector<Elem> r(n);
    for (std::size_t k = 0; k < n; ++k) r[k] = F.add(a[k], b[k]);
    return Poly(F, std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    const Field& F = pick(a, b);
    const std::size_t n = std::max(a.c_.size(), b.c_.size());
    std::vector<Elem> r(n);
    for (std::size_t k = 0; k < n; ++k) r[k] = F.sub(a[k], b[k]);
    return Poly(F, std::move(r));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    const Field& F = pick(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(F);
    const std::size_t n = a.c_.size() + b.c_.size() - 1;
    if (F.is_prime_field()) {
      const std::uint64_t p = F.p();
      std::vector<std::uint64_t> acc(n, 0);
      // keep partial sums below 2^63: (p-1)^2 * count stays small for p < 2^16
      for (std::size_t i = 0; i < a.c_.size(); ++i) {
        const std::uint64_t ai = a.c_[i];
        if (ai == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) acc[i + j] += ai * b.c_[j];
        if ((i & 0xff) == 0xff)
          for (auto& v : acc) v %= p;
      }
      std::vector<Elem> r(n);
      for (std::size_t k = 0; k < n; ++k) r[k] = Elem(acc[k] % p);
      return Poly(F, std::move(r));
    }
    std::vector<Elem> r(n, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a.c_[i], b.c_[j]));
    }
    return Poly(F, std::move(r));
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  /// Euclidean division; throws on a zero divisor.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    const Field& F = pick(a, b);
    if (b.is_zero()) throw std::domain_error("poly: division by zero polynomial");
    if (a.c_.size() < b.c_.size()) return {Poly(F), a.with_field(F)};
    std::vector<Elem> r = a.c_;
    const std::size_t db = b.c_.size() - 1;
    std::vector<Elem> quo(r.size() - db, 0);
    const Elem inv_lead = F.inv(b.leading());
    for (std::size_t k = r.size(); k-- > db;) {
      const Elem c = r[k];
      if (c == 0) continue;
      const Elem f = F.mul(c, inv_lead);
      quo[k - db] = f;
      const Elem nf = F.neg(f);
      for (std::size_t l = 0; l <= db; ++l) r[k - db + l] = F.add(r[k - db + l], F.mul(nf, b.c_[l]));
    }
    r.resize(db);
    return {Poly(F, std::move(quo)), Poly(F, std::move(r))};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

  bool divides(const Poly& a) const { return (a % *this).is_zero(); }

  /// Exact quotient; throws if b does not divide a.
  friend Poly exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::domain_error("poly: inexact division");
    return q;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  /// Canonical order: by degree (zero first), then lexicographic on the
  /// little-endian coefficient list.
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() <=> b.c_.size();
    for (std::size_t k = 0; k < a.c_.size(); ++k)
      if (a.c_[k] != b.c_[k]) return a.c_[k] <=> b.c_[k];
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t k = c_.size(); k-- > 0;) {
      if (c_[k] == 0) continue;
      if (!s.empty()) s += " + ";
      const bool show_coeff = c_[k] != 1 || k == 0;
      if (show_coeff) s += std::to_string(c_[k]);
      if (k >= 1) s += (show_coeff ? "*t" : "t");
      if (k >= 2) s += "^" + std::to_string(k);
    }
    return s;
  }
  friend std::ostream& operator<<(std::ostream& os, const Poly& f) { return os << f.to_string(); }

 private:
  static const Field& pick(const Poly& a, const Poly& b) {
    if (a.F_) return *a.F_;
    if (b.F_) return *b.F_;
    throw std::logic_error("poly: no field attached");
  }
  Poly with_field(const Field& F) const {
    Poly r = *this;
    r.F_ = &F;
    return r;
  }
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  const Field* F_ = nullptr;
  std::vector<Elem> c_;
};

inline Poly pow(Poly base, std::uint64_t n) {
  Poly r = Poly::one(base.field());
  while (n) {
    if (n & 1) r *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return r;
}

inline Poly powmod(Poly base, std::uint64_t n, const Poly& m) {
  Poly r = Poly::one(m.field()) % m;
  base = base % m;
  while (n) {
    if (n & 1) r = (r * base) % m;
    n >>= 1;
    if (n) base = (base * base) % m;
  }
  return r;
}

/// Monic gcd; gcd(0, 0) = 0.
inline Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

inline Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.has_field() ? a.field() : b.field());
  return (a / gcd(a, b) * b).monic();
}

/// Extended gcd: returns (g, s, u) with s*a + u*b = g, g monic.
inline std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b) {
  const Field& F = a.has_field() ? a.field() : b.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::one(F), s1(F);
  Poly u0(F), u1 = Poly::one(F);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly u2 = u0 - q * u1;
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (r0.is_zero()) return {r0, s0, u0};
  const Elem inv = F.inv(r0.leading());
  return {r0.scaled(inv), s0.scaled(inv), u0.scaled(inv)};
}

/// Inverse of a modulo m; throws when gcd(a, m) != 1.
inline Poly invmod(const Poly& a, const Poly& m) {
  auto [g, s, u] = xgcd(a % m, m);
  if (!g.is_one()) throw std::domain_error("poly: not invertible modulo m");
  return s % m;
}

/// Square root of a perfect square, normalized to a square-rooted leading
/// coefficient chosen by Field::sqrt; std::nullopt if f is not a square.
inline std::optional<Poly> sqrt_exact(const Poly& f) {
  const Field& F = f.field();
  if (f.is_zero()) return f;
  const int n = f.deg();
  if (n % 2 != 0 || !F.is_square(f.leading())) return std::nullopt;
  const int m = n / 2;
  std::vector<Elem> s(std::size_t(m) + 1, 0);
  s[m] = F.sqrt(f.leading());
  const Elem inv2s = F.inv(F.mul(F.from_int(2), s[m]));
  // coefficient of t^(m+k) in s^2 determines s[k], top down
  for (int k = m - 1; k >= 0; --k) {
    Elem acc = f[std::size_t(m + k)];
    for (int i = k + 1; i <= m; ++i) {
      const int j = m + k - i;
      if (j < k + 1 || j > m) continue;
      acc = F.sub(acc, F.mul(s[i], s[j]));
    }
    s[k] = F.mul(acc, inv2s);
  }
  Poly r(F, s);
  if (r * r != f) return std::nullopt;
  return r;
}

// ---------------------------------------------------------------------------
// Irreducibility and factorization

/// Rabin's test.
inline bool is_irreducible(const Poly& f) {
  if (f.is_zero()) throw std::domain_error("poly: irreducibility of zero");
  const int n = f.deg();
  if (n <= 0) return false;
  if (n == 1) return true;
  const Field& F = f.field();
  const Poly t = Poly::t(F);
  // frob[k] = t^(q^k) mod f
  std::vector<Poly> frob(std::size_t(n) + 1);
  frob[0] = t % f;
  for (int k = 1; k <= n; ++k) frob[k] = powmod(frob[k - 1], F.q(), f);
  if (frob[n] != frob[0]) return false;
  for (auto r : detail::prime_divisors(std::uint64_t(n))) {
    const Poly g = gcd(frob[n / r] - t, f);
    if (!g.is_one()) return false;
  }
  return true;
}

/// Number of monic polynomials of degree d, q^d; throws past 2^62.
inline std::uint64_t monic_count(const Field& F, int d) {
  std::uint64_t c = 1;
  for (int k = 0; k < d; ++k) {
    if (c > (std::uint64_t(1) << 62) / F.q()) throw std::overflow_error("poly: q^d overflows");
    c *= F.q();
  }
  return c;
}

/// idx-th monic polynomial of degree d in canonical order. The constant term
/// is the most significant base-q digit of idx and t^(d-1) the least.
inline Poly monic_from_index(const Field& F, int d, std::uint64_t idx) {
  std::vector<Elem> c(std::size_t(d) + 1, 0);
  for (int k = d - 1; k >= 0; --k) {
    c[k] = Elem(idx % F.q());
    idx /= F.q();
  }
  c[d] = 1;
  return Poly(F, std::move(c));
}

/// Position of a monic polynomial among enumerate_monic(F, deg m).
inline std::uint64_t monic_index(const Poly& m) {
  if (!m.is_monic()) throw std::domain_error("poly: monic_index of a non-monic polynomial");
  const std::uint64_t q = m.field().q();
  std::uint64_t idx = 0;
  for (int k = 0; k < m.deg(); ++k) idx = idx * q + m[std::size_t(k)];
  return idx;
}

/// All monic polynomials of degree exactly d, in canonical order.
inline std::vector<Poly> enumerate_monic(const Field& F, int d) {
  if (d < 0) throw std::invalid_argument("poly: negative degree");
  const std::uint64_t n = monic_count(F, d);
  std::vector<Poly> out;
  out.reserve(n);
  // Canonical order compares the little-endian list from index 0, so the
  // constant term is the most significant key.
  std::vector<Elem> digits(std::size_t(d), 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    std::vector<Elem> c(digits.begin(), digits.end());
    c.push_back(1);
    out.emplace_back(F, std::move(c));
    for (int k = d - 1; k >= 0; --k) {
      if (++digits[k] < F.q()) break;
      digits[k] = 0;
    }
  }
  return out;
}

/// Factorization into monic irreducibles with multiplicities, ordered
/// canonically. The leading coefficient of f is dropped.
inline std::vector<std::pair<Poly, int>> factor(const Poly& f) {
  if (f.is_zero()) throw std::domain_error("poly: factor of zero");
  const Field& F = f.field();
  std::vector<std::pair<Poly, int>> out;
  Poly rest = f.monic();
  for (int d = 1; 2 * d <= rest.deg(); ++d) {
    if (is_irreducible(rest)) break;
    for (const Poly& g : enumerate_monic(F, d)) {
      if (2 * d > rest.deg()) break;
      int mult = 0;
      while (true) {
        auto [q, r] = divmod(rest, g);
        if (!r.is_zero()) break;
        rest = std::move(q);
        ++mult;
      }
      if (mult) out.emplace_back(g, mult);
    }
  }
  if (rest.deg() > 0) out.emplace_back(rest, 1);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  // merge in case the cofactor repeats a found prime (cannot happen, kept exact)
  std::vector<std::pair<Poly, int>> merged;
  for (auto& pr : out) {
    if (!merged.empty() && merged.back().first == pr.first)
      merged.back().second += pr.second;
    else
      merged.push_back(std::move(pr));
  }
  return merged;
}

inline bool is_squarefree(const Poly& f) {
  for (const auto& [g, e] : factor(f))
    if (e > 1) return false;
  return true;
}

/// Monic irreducible factors (without multiplicity).
inline std::vector<Poly> prime_factors(const Poly& f) {
  std::vector<Poly> out;
  for (auto& [g, e] : factor(f)) out.push_back(g);
  return out;
}

/// All monic irreducibles of degree exactly d in canonical order.
inline std::vector<Poly> monic_irreducibles(const Field& F, int d) {
  std::vector<Poly> out;
  for (auto& g : enumerate_monic(F, d))
    if (is_irreducible(g)) out.push_back(std::move(g));
  return out;
}

/// Multiplicity of the prime P in f (f nonzero).
inline int valuation(Poly f, const Poly& P) {
  if (f.is_zero()) throw std::domain_error("poly: valuation of zero");
  int v = 0;
  while (true) {
    auto [q, r] = divmod(f, P);
    if (!r.is_zero()) return v;
    f = std::move(q);
    ++v;
  }
}

// ---------------------------------------------------------------------------
// Arithmetic functions on ideals of A

namespace detail {
inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
  return r;
}
inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
  return r;
}
inline std::uint64_t ipow(std::uint64_t b, int n) {
  std::uint64_t r = 1;
  for (int k = 0; k < n; ++k) r = checked_mul(r, b);
  return r;
}
}  // namespace detail

/// Sum of q^deg(d) over monic divisors d of m coprime to n0.
inline std::uint64_t sigma_n0(const Poly& m, const Poly& n0) {
  if (m.is_zero()) throw std::domain_error("sigma: zero ideal");
  const std::uint64_t q = m.field().q();
  std::uint64_t total = 1;
  for (const auto& [P, e] : factor(m)) {
    if (P.divides(n0)) continue;
    const std::uint64_t Q = detail::ipow(q, P.deg());
    std::uint64_t s = 1, pw = 1;
    for (int k = 1; k <= e; ++k) {
      pw = detail::checked_mul(pw, Q);
      s = detail::checked_add(s, pw);
    }
    total = detail::checked_mul(total, s);
  }
  return total;
}

/// Number of monic divisors.
inline std::uint64_t sigma0(const Poly& m) {
  if (m.is_zero()) throw std::domain_error("sigma0: zero ideal");
  std::uint64_t total = 1;
  for (const auto& [P, e] : factor(m)) total *= std::uint64_t(e + 1);
  return total;
}

/// The part of m coprime to n0: strip every prime of n0 from m.
inline Poly coprime_part(const Poly& m, const Poly& n0) {
  if (m.is_zero()) throw std::domain_error("coprime_part: zero ideal");
  Poly r = m.monic();
  while (true) {
    Poly g = gcd(r, n0);
    if (g.is_one()) return r;
    r = r / g;
  }
}

// ---------------------------------------------------------------------------
// Quadratic characters

/// Character of F_q^x of order two.
inline int quadratic_character(const Field& F, Elem u) { return F.chi(u); }

/// Character of (A/P)^x of order two for an irreducible P, evaluated through
/// u^((Q-1)/2) = N(u)^((q-1)/2), N(u) = prod_k u^(q^k) the norm to F_q.
inline int quadratic_character(const Poly& u, const Poly& P) {
  const Field& F = P.field();
  Poly r = u % P;
  if (r.is_zero()) return 0;
  Poly norm = Poly::one(F);
  Poly conj = r;
  for (int k = 0; k < P.deg(); ++k) {
    norm = (norm * conj) % P;
    conj = powmod(conj, F.q(), P);
  }
  if (norm.deg() != 0) throw std::logic_error("quadratic_character: norm did not land in F_q");
  const Elem v = F.pow(norm[0], (F.q() - 1) / 2);
  return v == 1 ? 1 : -1;
}

/// A place of k = F_q(t): a finite prime (monic irreducible) or infinity.
struct Place {
  std::optional<Poly> prime;

  static Place infinity() { return Place{}; }
  static Place finite(Poly P) {
    if (!P.is_monic() || !is_irreducible(P)) throw std::invalid_argument("place: not a monic irreducible");
    return Place{std::move(P)};
  }
  bool is_infinite() const { return !prime.has_value(); }

  friend bool operator==(const Place& a, const Place& b) { return a.prime == b.prime; }
  friend bool operator<(const Place& a, const Place& b) {
    // finite places in canonical order, infinity last
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return *a.prime < *b.prime;
  }
  std::string to_string() const { return is_infinite() ? "inf" : prime->to_string(); }
};

// ---------------------------------------------------------------------------
// Rational functions

/// Element of k = F_q(t) in lowest terms with monic denominator.
struct RatFunc {
  Poly num;
  Poly den;

  RatFunc() = default;
  explicit RatFunc(Poly n) : num(std::move(n)), den(Poly::one(num.field())) {}
  RatFunc(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) { normalize(); }

  bool is_zero() const { return num.is_zero(); }
  bool is_polynomial() const { return den.is_one(); }

  void normalize() {
    if (den.is_zero()) throw std::domain_error("ratfunc: zero denominator");
    if (num.is_zero()) {
      den = Poly::one(den.field());
      return;
    }
    const Poly g = gcd(num, den);
    const Elem lc = den.leading();
    num = (num / g).scaled(num.field().inv(lc));
    den = (den / g).monic();
  }
  RatFunc monic() const { return RatFunc(num.monic(), den); }
  RatFunc inverse() const { return RatFunc(den, num); }

  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num * b.num, a.den * b.den); }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num * b.den, a.den * b.num); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num == b.num && a.den == b.den; }
  /// deg num - deg den, i.e. -v_inf.
  int deg() const { return num.deg() - den.deg(); }
  std::string to_string() const {
    return den.is_one() ? num.to_string() : "(" + num.to_string() + ")/(" + den.to_string() + ")";
  }
};

}  // namespace fqbrandt

#endif  // FQBRANDT_POLY_HPP
