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

#ifndef FQBRANDT_FORMS_HPP
#define FQBRANDT_FORMS_HPP

#include <gmpxx.h>

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "picard.hpp"

namespace fqbrandt {

/// Fourier data of a form: c(a) for monic a of degree <= D and the constant
/// term scale kappa, c(r, 0) = kappa q^-r.
class CoefficientSeries {
 public:
  CoefficientSeries(const Field& F, Poly level, int D, mpq_class kappa)
      : F_(&F), level_(std::move(level)), D_(D), kappa_(std::move(kappa)) {
    for (int d = 0; d <= D; ++d) c_.emplace_back(monic_count(F, d), mpq_class(0));
  }

  const Field& field() const { return *F_; }
  const Poly& level() const { return level_; }
  int max_degree() const { return D_; }
  const mpq_class& kappa() const { return kappa_; }
  bool is_cuspidal() const { return kappa_ == 0; }

  const mpq_class& at(const Poly& a) const {
    check(a);
    return c_[std::size_t(a.deg())][monic_index(a)];
  }
  mpq_class& at(const Poly& a) {
    check(a);
    return c_[std::size_t(a.deg())][monic_index(a)];
  }
  const std::vector<mpq_class>& degree(int d) const { return c_.at(std::size_t(d)); }

  /// c(r, lambda) = q^(deg lambda + 2 - r) c(lambda A) when deg lambda + 2 <= r,
  /// else 0; lambda = 0 gives kappa q^-r.
  mpq_class evaluate(int r, const Poly& lambda) const {
    const std::uint32_t q = F_->q();
    if (lambda.is_zero()) return kappa_ * detail::q_power(q, -r);
    if (lambda.deg() > D_) throw std::out_of_range("series: degree beyond the computed horizon");
    if (lambda.deg() + 2 > r) return 0;
    return detail::q_power(q, lambda.deg() + 2 - r) * at(lambda.monic());
  }

  friend CoefficientSeries operator+(const CoefficientSeries& x, const CoefficientSeries& y) {
    return combine(x, y, 1);
  }
  friend CoefficientSeries operator-(const CoefficientSeries& x, const CoefficientSeries& y) {
    return combine(x, y, -1);
  }
  friend CoefficientSeries operator*(const mpq_class& s, const CoefficientSeries& x) {
    CoefficientSeries r = x;
    r.kappa_ *= s;
    for (auto& row : r.c_)
      for (auto& v : row) v *= s;
    return r;
  }
  friend bool operator==(const CoefficientSeries& x, const CoefficientSeries& y) {
    return x.F_ == y.F_ && x.level_ == y.level_ && x.D_ == y.D_ && x.kappa_ == y.kappa_ && x.c_ == y.c_;
  }

 private:
  void check(const Poly& a) const {
    if (a.is_zero() || !a.is_monic()) throw std::invalid_argument("series: index must be monic");
    if (a.deg() > D_) throw std::out_of_range("series: degree beyond the computed horizon");
  }
  static CoefficientSeries combine(const CoefficientSeries& x, const CoefficientSeries& y, int s) {
    if (x.F_ != y.F_ || x.D_ != y.D_ || !(x.level_ == y.level_))
      throw std::invalid_argument("series: incompatible operands");
    CoefficientSeries r = x;
    r.kappa_ += s * y.kappa_;
    for (std::size_t d = 0; d < r.c_.size(); ++d)
      for (std::size_t k = 0; k < r.c_[d].size(); ++k) r.c_[d][k] += s * y.c_[d][k];
    return r;
  }

  const Field* F_;
  Poly level_;
  int D_;
  mpq_class kappa_;
  std::vector<std::vector<mpq_class>> c_;
};

/// Theta_ij: c(a) = q^-(deg a + 2) B_ij(a), kappa = 1 / w_j.
inline CoefficientSeries theta_series(const ClassSet& C, const BrandtTable& T, std::size_t i, std::size_t j, int D) {
  if (D > T.max_degree()) throw std::invalid_argument("theta_series: Brandt table too short");
  const std::uint32_t q = C.field().q();
  mpq_class kappa(1, detail::to_mpz(C.weights.at(j)));
  kappa.canonicalize();
  CoefficientSeries s(C.field(), C.n0, D, kappa);
  for (int d = 0; d <= D; ++d) {
    const mpq_class scale = detail::q_power(q, -(d + 2));
    const auto& mats = T.degree(d);
    for (std::size_t k = 0; k < mats.size(); ++k) s.at(monic_from_index(C.field(), d, k)) = scale * detail::to_mpz(mats[k](i, j));
  }
  return s;
}

/// E: c(a) = q^-(deg a + 2) sigma_n0(a), kappa = mass.
inline CoefficientSeries eisenstein_series(const ClassSet& C, int D) {
  const std::uint32_t q = C.field().q();
  CoefficientSeries s(C.field(), C.n0, D, C.mass);
  for (int d = 0; d <= D; ++d) {
    const mpq_class scale = detail::q_power(q, -(d + 2));
    for (const Poly& a : enumerate_monic(C.field(), d)) s.at(a) = scale * detail::to_mpz(sigma_n0(a, C.n0));
  }
  return s;
}

/// g_ij = Theta_ij - E / (w_j mass).
inline CoefficientSeries cuspidal_part(const ClassSet& C, const BrandtTable& T, std::size_t i, std::size_t j, int D) {
  const mpq_class coef = 1 / (mpq_class(detail::to_mpz(C.weights.at(j))) * C.mass);
  CoefficientSeries g = theta_series(C, T, i, j, D) - coef * eisenstein_series(C, D);
  if (!g.is_cuspidal()) throw std::logic_error("cuspidal_part: constant term did not cancel");
  return g;
}

/// Exact checks tying the series to the Brandt matrices: E = sum_j Theta_ij
/// for every i, Theta_ij = g_ij + E / (w_j mass), kappa(g_ij) = 0,
/// sum_j g_ij = 0, and B_ij(m) = q^(deg m + 2) c_g(m) + sigma(m) / (w_j mass).
inline CheckReport check_decomposition(const ClassSet& C, const BrandtTable& T, int D) {
  CheckReport rep;
  const std::uint32_t q = C.field().q();
  const CoefficientSeries E = eisenstein_series(C, D);
  for (std::size_t i = 0; i < C.size(); ++i) {
    CoefficientSeries row_sum(C.field(), C.n0, D, 0);
    CoefficientSeries g_sum(C.field(), C.n0, D, 0);
    for (std::size_t j = 0; j < C.size(); ++j) {
      const CoefficientSeries th = theta_series(C, T, i, j, D);
      const CoefficientSeries g = cuspidal_part(C, T, i, j, D);
      const mpq_class coef = 1 / (mpq_class(detail::to_mpz(C.weights[j])) * C.mass);
      const std::string tag = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      ++rep.checked;
      if (!(th == g + coef * E)) rep.fail("decomposition " + tag);
      ++rep.checked;
      if (!g.is_cuspidal()) rep.fail("kappa(g) != 0 " + tag);
      for (int d = 0; d <= D; ++d) {
        const auto& mats = T.degree(d);
        for (std::size_t k = 0; k < mats.size(); ++k) {
          const Poly m = monic_from_index(C.field(), d, k);
          const mpq_class back =
              detail::q_power(q, d + 2) * g.at(m) + mpq_class(detail::to_mpz(sigma_n0(m, C.n0))) * coef;
          ++rep.checked;
          if (back != mpq_class(detail::to_mpz(mats[k](i, j))))
            rep.fail("reconstruction " + tag + " at m = " + m.to_string());
        }
      }
      row_sum = row_sum + th;
      g_sum = g_sum + g;
    }
    ++rep.checked;
    if (!(row_sum == E)) rep.fail("sum_j Theta_" + std::to_string(i + 1) + "j != E");
    ++rep.checked;
    if (!(g_sum == CoefficientSeries(C.field(), C.n0, D, 0))) rep.fail("sum_j g_" + std::to_string(i + 1) + "j != 0");
  }
  return rep;
}

/// Hecke covariance of the theta tuple: sum_k B_ik(m) c_{Theta_kj}(a) equals
/// c_{Theta_ij}(m a) q^(deg m) for coprime m, a with deg m + deg a <= D.
inline CheckReport check_theta_covariance(const ClassSet& C, const BrandtTable& T, int D) {
  CheckReport rep;
  const std::uint32_t q = C.field().q();
  const auto monics = detail::all_monic_up_to(C.field(), D);
  std::vector<std::vector<CoefficientSeries>> th;
  for (std::size_t i = 0; i < C.size(); ++i) {
    th.emplace_back();
    for (std::size_t j = 0; j < C.size(); ++j) th[i].push_back(theta_series(C, T, i, j, D));
  }
  for (const Poly& m : monics) {
    if (m.deg() == 0) continue;
    const IntMatrix& Bm = T.at(m);
    for (const Poly& a : monics) {
      if (m.deg() + a.deg() > D || !gcd(m, a).is_one()) continue;
      const Poly ma = m * a;
      for (std::size_t i = 0; i < C.size(); ++i)
        for (std::size_t j = 0; j < C.size(); ++j) {
          mpq_class lhs = 0;
          for (std::size_t k = 0; k < C.size(); ++k) lhs += detail::to_mpz(Bm(i, k)) * th[k][j].at(a);
          ++rep.checked;
          if (lhs != detail::q_power(q, m.deg()) * th[i][j].at(ma))
            rep.fail("covariance at m = " + m.to_string() + ", a = " + a.to_string());
        }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Coefficient bound

struct RamanujanRow {
  Poly m;
  /// rho^2 with rho = |c_g(m)| q^(deg m + 2) q^(-deg m / 2) / sigma0(m).
  mpq_class rho_sq;
  double rho() const { return std::sqrt(rho_sq.get_d()); }
};

struct RamanujanTable {
  std::vector<RamanujanRow> rows;
  std::map<int, mpq_class> max_sq_by_degree;
  mpq_class max_sq_small;  // over deg <= 4
  mpq_class max_sq;        // overall
  /// Degree where the overall maximum is first attained.
  int argmax_degree = 0;
  bool bounded() const { return max_sq <= max_sq_small; }
};

inline RamanujanTable ramanujan_table(const CoefficientSeries& g, int D) {
  if (!g.is_cuspidal()) throw std::invalid_argument("ramanujan_table: series is not cuspidal");
  if (D > g.max_degree()) throw std::invalid_argument("ramanujan_table: degree beyond the series horizon");
  const std::uint32_t q = g.field().q();
  RamanujanTable tab;
  tab.max_sq_small = 0;
  tab.max_sq = 0;
  for (const Poly& m : detail::all_monic_up_to(g.field(), D)) {
    const mpq_class s0(detail::to_mpz(sigma0(m)));
    const mpq_class c = g.at(m);
    // (c q^(d+2))^2 q^-d / sigma0^2 = c^2 q^(d+4) / sigma0^2
    RamanujanRow row{m, c * c * detail::q_power(q, m.deg() + 4) / (s0 * s0)};
    auto [it, fresh] = tab.max_sq_by_degree.emplace(m.deg(), row.rho_sq);
    if (!fresh && row.rho_sq > it->second) it->second = row.rho_sq;
    if (m.deg() <= 4 && row.rho_sq > tab.max_sq_small) tab.max_sq_small = row.rho_sq;
    if (row.rho_sq > tab.max_sq) {
      tab.max_sq = row.rho_sq;
      tab.argmax_degree = m.deg();
    }
    tab.rows.push_back(std::move(row));
  }
  return tab;
}

}  // namespace fqbrandt

#endif  // FQBRANDT_FORMS_HPP
