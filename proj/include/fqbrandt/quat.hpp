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

#ifndef FQBRANDT_QUAT_HPP
#define FQBRANDT_QUAT_HPP

#include <array>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace fqbrandt {

/// Integral coordinates on the standard basis 1, i, j, ij.
using QVec = std::array<Poly, 4>;

/// Quaternion algebra (a, b | F_q(t)): i^2 = a, j^2 = b, ij = -ji.
class QuatAlgebra {
 public:
  QuatAlgebra(FieldPtr F, Poly a, Poly b) : F_(std::move(F)), a_(std::move(a)), b_(std::move(b)) {
    if (a_.is_zero() || b_.is_zero()) throw std::invalid_argument("quat: a and b must be nonzero");
    ab_ = a_ * b_;
  }

  const Field& field() const { return *F_; }
  const FieldPtr& field_ptr() const { return F_; }
  const Poly& a() const { return a_; }
  const Poly& b() const { return b_; }

  QVec zero() const { return {Poly(*F_), Poly(*F_), Poly(*F_), Poly(*F_)}; }
  QVec one() const { return {Poly::one(*F_), Poly(*F_), Poly(*F_), Poly(*F_)}; }
  QVec basis(int k) const {
    QVec v = zero();
    v[k] = Poly::one(*F_);
    return v;
  }

  QVec mul(const QVec& x, const QVec& y) const {
    return {x[0] * y[0] + a_ * (x[1] * y[1]) + b_ * (x[2] * y[2]) - ab_ * (x[3] * y[3]),
            x[0] * y[1] + x[1] * y[0] + b_ * (x[3] * y[2] - x[2] * y[3]),
            x[0] * y[2] + x[2] * y[0] + a_ * (x[1] * y[3] - x[3] * y[1]),
            x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1]};
  }
  QVec conj(const QVec& x) const { return {x[0], -x[1], -x[2], -x[3]}; }
  Poly norm(const QVec& x) const {
    return x[0] * x[0] - a_ * (x[1] * x[1]) - b_ * (x[2] * x[2]) + ab_ * (x[3] * x[3]);
  }
  Poly trace(const QVec& x) const { return x[0].scaled(F_->from_int(2)); }
  /// Tr(x * conj(y)), the polar form of the norm.
  Poly trace_conj(const QVec& x, const QVec& y) const {
    return (x[0] * y[0] - a_ * (x[1] * y[1]) - b_ * (x[2] * y[2]) + ab_ * (x[3] * y[3])).scaled(F_->from_int(2));
  }
  /// Tr(x * y).
  Poly trace_mul(const QVec& x, const QVec& y) const {
    return (x[0] * y[0] + a_ * (x[1] * y[1]) + b_ * (x[2] * y[2]) - ab_ * (x[3] * y[3])).scaled(F_->from_int(2));
  }

  friend bool operator==(const QuatAlgebra& x, const QuatAlgebra& y) {
    return x.F_ == y.F_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  FieldPtr F_;
  Poly a_, b_, ab_;
};

using AlgebraPtr = std::shared_ptr<const QuatAlgebra>;

inline QVec qscale(const QVec& x, const Poly& s) { return {x[0] * s, x[1] * s, x[2] * s, x[3] * s}; }
inline QVec qadd(const QVec& x, const QVec& y) { return {x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]}; }
inline QVec qsub(const QVec& x, const QVec& y) { return {x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3]}; }
inline bool qzero(const QVec& x) { return x[0].is_zero() && x[1].is_zero() && x[2].is_zero() && x[3].is_zero(); }

/// Element of the algebra: numerator coordinates over a common monic
/// denominator, kept in lowest terms.
class QuatElem {
 public:
  QuatElem(const QuatAlgebra& D, QVec num) : D_(&D), num_(std::move(num)), den_(Poly::one(D.field())) {}
  QuatElem(const QuatAlgebra& D, QVec num, Poly den) : D_(&D), num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }

  const QuatAlgebra& algebra() const { return *D_; }
  const QVec& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return qzero(num_); }

  QuatElem conj() const { return QuatElem(*D_, D_->conj(num_), den_); }
  RatFunc trace() const { return RatFunc(D_->trace(num_), den_); }
  RatFunc reduced_norm() const { return RatFunc(D_->norm(num_), den_ * den_); }
  QuatElem inverse() const {
    if (is_zero()) throw std::domain_error("quat: inverse of zero");
    // x^-1 = conj(x) / Nr(x)
    const Poly nrm = D_->norm(num_);
    return QuatElem(*D_, qscale(D_->conj(num_), den_), nrm);
  }

  friend QuatElem operator+(const QuatElem& x, const QuatElem& y) {
    return QuatElem(*x.D_, qadd(qscale(x.num_, y.den_), qscale(y.num_, x.den_)), x.den_ * y.den_);
  }
  friend QuatElem operator-(const QuatElem& x, const QuatElem& y) {
    return QuatElem(*x.D_, qsub(qscale(x.num_, y.den_), qscale(y.num_, x.den_)), x.den_ * y.den_);
  }
  friend QuatElem operator*(const QuatElem& x, const QuatElem& y) {
    return QuatElem(*x.D_, x.D_->mul(x.num_, y.num_), x.den_ * y.den_);
  }
  friend bool operator==(const QuatElem& x, const QuatElem& y) { return x.num_ == y.num_ && x.den_ == y.den_; }

  std::string to_string() const {
    static const char* names[] = {"", "i", "j", "ij"};
    std::string s;
    for (int k = 0; k < 4; ++k) {
      if (num_[k].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + num_[k].to_string() + ")" + names[k];
    }
    if (s.empty()) s = "0";
    if (!den_.is_one()) s = "[" + s + "]/(" + den_.to_string() + ")";
    return s;
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw std::domain_error("quat: zero denominator");
    Poly g = den_;
    for (const auto& c : num_) g = gcd(g, c);
    const Elem lc_inv = D_->field().inv(den_.leading());
    for (auto& c : num_) c = (c / g).scaled(lc_inv);
    den_ = (den_ / g).monic();
  }

  const QuatAlgebra* D_;
  QVec num_;
  Poly den_;
};

// ---------------------------------------------------------------------------
// Local symbols and ramification

/// Hilbert symbol (a, b)_v for odd residue characteristic; -1 iff the algebra
/// (a, b) is ramified at v.
inline int hilbert_symbol(const Poly& a, const Poly& b, const Place& v) {
  if (a.is_zero() || b.is_zero()) throw std::domain_error("hilbert_symbol: arguments must be nonzero");
  const Field& F = a.field();
  if (v.is_infinite()) {
    // uniformizer 1/t: v(a) = -deg a, residue of the unit part = leading coefficient
    const int alpha = -a.deg();
    const int beta = -b.deg();
    Elem s = 1;
    if ((alpha * beta) % 2 != 0) s = F.neg(s);
    if (beta % 2 != 0) s = F.mul(s, a.leading());
    if (alpha % 2 != 0) s = F.mul(s, b.leading());
    return F.chi(s);
  }
  const Poly& P = *v.prime;
  const int alpha = valuation(a, P);
  const int beta = valuation(b, P);
  const Poly u = (a / pow(P, std::uint64_t(alpha))) % P;
  const Poly w = (b / pow(P, std::uint64_t(beta))) % P;
  Poly s = Poly::one(F);
  if ((alpha * beta) % 2 != 0) s = -s;
  if (beta % 2 != 0) s = (s * u) % P;
  if (alpha % 2 != 0) s = (s * w) % P;
  return quadratic_character(s, P);
}

/// Places where (a, b) ramifies, finite ones in canonical order then infinity.
inline std::vector<Place> ramified_places(const Poly& a, const Poly& b) {
  std::vector<Place> out;
  for (const Poly& P : prime_factors(a * b)) {
    Place v{P};
    if (hilbert_symbol(a, b, v) == -1) out.push_back(std::move(v));
  }
  if (hilbert_symbol(a, b, Place::infinity()) == -1) out.push_back(Place::infinity());
  return out;
}

inline std::vector<Place> ramified_places(const QuatAlgebra& D) { return ramified_places(D.a(), D.b()); }

inline bool is_definite(const QuatAlgebra& D) { return hilbert_symbol(D.a(), D.b(), Place::infinity()) == -1; }

namespace detail {
// Nonzero polynomials of degree exactly d in canonical order.
inline std::vector<Poly> enumerate_nonzero(const Field& F, int d) {
  std::vector<Poly> out;
  std::vector<Elem> c(std::size_t(d) + 1, 0);
  c[d] = 1;
  while (true) {
    out.emplace_back(F, c);
    int k = d;
    while (k >= 0) {
      const Elem lo = (k == d) ? 1 : 0;
      if (++c[k] < F.q()) break;
      c[k] = lo;
      --k;
    }
    if (k < 0) break;
  }
  return out;
}
}  // namespace detail

/// Definite algebra ramified exactly at the primes of n0 and at infinity.
/// Candidates (a, b) are swept by (deg a + deg b, a, b) in canonical order and
/// the first pair whose ramification set matches is returned.
inline std::shared_ptr<QuatAlgebra> build_definite_algebra(const FieldPtr& F, const Poly& n0, int max_total_degree = -1) {
  if (n0.is_zero() || !n0.is_monic()) throw std::invalid_argument("build_definite_algebra: n0 must be monic");
  const auto fac = factor(n0);
  for (const auto& [P, e] : fac)
    if (e > 1) throw std::invalid_argument("build_definite_algebra: n0 is not squarefree");
  if (fac.size() % 2 == 0)
    throw std::invalid_argument("build_definite_algebra: n0 must have an odd number of prime factors");

  std::vector<Place> target;
  for (const auto& [P, e] : fac) target.push_back(Place{P});
  target.push_back(Place::infinity());

  const int bound = max_total_degree >= 0 ? max_total_degree : 2 * n0.deg() + 4;
  std::vector<std::vector<Poly>> by_degree;
  for (int total = n0.deg(); total <= bound; ++total) {
    while (int(by_degree.size()) <= total) by_degree.push_back(detail::enumerate_nonzero(*F, int(by_degree.size())));
    for (int da = 0; da <= total; ++da) {
      const int db = total - da;
      for (const Poly& a : by_degree[da]) {
        for (const Poly& b : by_degree[db]) {
          const Poly ab = a * b;
          bool covers = true;
          for (const auto& [P, e] : fac)
            if (!P.divides(ab)) {
              covers = false;
              break;
            }
          if (!covers) continue;
          if (ramified_places(a, b) == target) return std::make_shared<QuatAlgebra>(F, a, b);
        }
      }
    }
  }
  throw std::runtime_error("build_definite_algebra: search bound exhausted");
}

}  // namespace fqbrandt

#endif  // FQBRANDT_QUAT_HPP
