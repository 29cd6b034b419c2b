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

#ifndef FQBRANDT_PICARD_HPP
#define FQBRANDT_PICARD_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "brandt.hpp"

namespace fqbrandt {

namespace detail {
static_assert(sizeof(long) == 8, "mpz conversions assume a 64-bit long");
inline mpz_class to_mpz(std::int64_t x) { return mpz_class(static_cast<long>(x)); }
inline mpz_class to_mpz(std::uint64_t x) { return mpz_class(static_cast<unsigned long>(x)); }
}  // namespace detail

/// Divisor sum_i a_i e_i on the class basis.
struct PicElement {
  std::vector<mpz_class> a;

  static PicElement basis(std::size_t n, std::size_t i) {
    PicElement e;
    e.a.assign(n, 0);
    e.a.at(i) = 1;
    return e;
  }
  std::size_t size() const { return a.size(); }
  mpz_class degree() const {
    mpz_class s = 0;
    for (const auto& x : a) s += x;
    return s;
  }
  friend bool operator==(const PicElement& x, const PicElement& y) { return x.a == y.a; }
};

/// Exact rational weights on the class basis summing to one.
struct SignedMeasure {
  std::vector<mpq_class> w;

  std::size_t size() const { return w.size(); }
  mpq_class total() const {
    mpq_class s = 0;
    for (const auto& x : w) s += x;
    return s;
  }
  friend bool operator==(const SignedMeasure& x, const SignedMeasure& y) { return x.w == y.w; }
};

/// t_m e = sum_i a_i sum_j B_ij(m) e_j.
inline PicElement hecke_action(const BrandtTable& T, const Poly& m, const PicElement& e) {
  if (e.size() != T.n()) throw std::invalid_argument("hecke_action: size mismatch");
  const IntMatrix& B = T.at(m);
  PicElement out;
  out.a.assign(T.n(), 0);
  for (std::size_t i = 0; i < T.n(); ++i) {
    if (e.a[i] == 0) continue;
    for (std::size_t j = 0; j < T.n(); ++j) out.a[j] += e.a[i] * detail::to_mpz(B(i, j));
  }
  return out;
}

/// delta_e = (1 / deg e) sum_i a_i delta_{e_i}.
inline SignedMeasure measure_of(const PicElement& e) {
  const mpz_class d = e.degree();
  if (d == 0) throw std::domain_error("measure_of: divisor of degree zero");
  SignedMeasure mu;
  for (const auto& x : e.a) {
    mpq_class v(x, d);
    v.canonicalize();
    mu.w.push_back(v);
  }
  return mu;
}

/// The measure of e* = sum_i e_i / w_i: weights (1/w_j) / mass.
inline SignedMeasure mass_measure(const ClassSet& C) {
  SignedMeasure mu;
  for (std::uint64_t w : C.weights) {
    mpq_class v(1, detail::to_mpz(w));
    v.canonicalize();
    mu.w.push_back(v / C.mass);
  }
  return mu;
}

/// sum_j |mu_j - nu_j|, the sup of |mu(f) - nu(f)| over max |f| <= 1.
inline mpq_class tv_distance(const SignedMeasure& mu, const SignedMeasure& nu) {
  if (mu.size() != nu.size()) throw std::invalid_argument("tv_distance: size mismatch");
  mpq_class s = 0;
  for (std::size_t j = 0; j < mu.size(); ++j) s += abs(mu.w[j] - nu.w[j]);
  return s;
}

// ---------------------------------------------------------------------------
// Equidistribution experiment

struct EquidRow {
  Poly m;
  int deg_coprime = 0;  // deg of the part of m coprime to n0
  bool coprime = true;
  std::size_t source = 0;
  mpq_class distance;
  /// (d q^(deg/2) / sigma0)^2, exact; the ratio itself may be irrational.
  mpq_class ratio_sq;

  double ratio() const { return std::sqrt(ratio_sq.get_d()); }
};

struct EquidReport {
  std::size_t source = 0;
  int D = 0;
  std::vector<EquidRow> rows;
  /// Largest ratio^2 over coprime m of degree <= 4.
  mpq_class bound_sq;
  /// Coprime m with 4 < deg m whose ratio exceeds the bound.
  std::vector<std::string> bound_violations;
  /// Per-degree maxima of the distance over coprime m.
  std::map<int, mpq_class> max_by_degree;
  /// Degrees d >= 3 with max(d) > max(d - 1).
  std::vector<int> monotonicity_violations;
  /// Rows whose distance does not match the Brandt-row formula.
  std::vector<std::string> formula_mismatches;

  double bound() const { return std::sqrt(bound_sq.get_d()); }
  bool bounded() const { return bound_violations.empty(); }
  bool monotone() const { return monotonicity_violations.empty(); }
  bool ok() const { return bounded() && monotone() && formula_mismatches.empty(); }
};

namespace detail {
inline mpq_class q_power(std::uint32_t q, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), q, unsigned(std::abs(e)));
  if (e >= 0) return mpq_class(r);
  mpq_class v(1, r);
  v.canonicalize();
  return v;
}
}  // namespace detail

/// d_i(m) = tv(delta_{t_m e_i}, mu) for every monic m of degree <= D, rows
/// sorted by (deg of the coprime part, m). The bound and monotonicity
/// verdicts are taken over coprime m only.
inline EquidReport equid_experiment(const ClassSet& C, const BrandtTable& T, std::size_t source, int D) {
  if (source >= C.size()) throw std::invalid_argument("equid_experiment: source index out of range");
  if (D > T.max_degree()) throw std::invalid_argument("equid_experiment: Brandt table too short");
  const std::uint32_t q = C.field().q();
  const SignedMeasure mu = mass_measure(C);
  EquidReport rep;
  rep.source = source;
  rep.D = D;
  for (const Poly& m : detail::all_monic_up_to(C.field(), D)) {
    EquidRow row;
    row.m = m;
    const Poly mc = coprime_part(m, C.n0);
    row.deg_coprime = mc.deg();
    row.coprime = mc == m;
    row.source = source;
    const SignedMeasure dm = measure_of(hecke_action(T, m, PicElement::basis(C.size(), source)));
    row.distance = tv_distance(dm, mu);
    // the same quantity straight from the Brandt row
    const IntMatrix& B = T.at(m);
    const mpq_class sigma(detail::to_mpz(sigma_n0(m, C.n0)));
    mpq_class direct = 0;
    for (std::size_t j = 0; j < C.size(); ++j) direct += abs(mpq_class(detail::to_mpz(B(source, j))) / sigma - mu.w[j]);
    if (direct != row.distance) rep.formula_mismatches.push_back(m.to_string());
    const mpq_class s0(detail::to_mpz(sigma0(mc)));
    row.ratio_sq = row.distance * row.distance * detail::q_power(q, row.deg_coprime) / (s0 * s0);
    rep.rows.push_back(std::move(row));
  }
  std::stable_sort(rep.rows.begin(), rep.rows.end(),
                   [](const EquidRow& x, const EquidRow& y) { return x.deg_coprime < y.deg_coprime; });
  rep.bound_sq = 0;
  for (const auto& r : rep.rows) {
    if (!r.coprime) continue;
    if (r.deg_coprime <= 4) rep.bound_sq = std::max(rep.bound_sq, r.ratio_sq);
    auto [it, fresh] = rep.max_by_degree.emplace(r.deg_coprime, r.distance);
    if (!fresh) it->second = std::max(it->second, r.distance);
  }
  for (const auto& r : rep.rows)
    if (r.coprime && r.deg_coprime > 4 && r.ratio_sq > rep.bound_sq) rep.bound_violations.push_back(r.m.to_string());
  for (int d = 3; d <= D; ++d) {
    auto cur = rep.max_by_degree.find(d), prev = rep.max_by_degree.find(d - 1);
    if (cur != rep.max_by_degree.end() && prev != rep.max_by_degree.end() && cur->second > prev->second)
      rep.monotonicity_violations.push_back(d);
  }
  return rep;
}

/// Weights (q^2 - 1) / (q^deg p - 1) / w_i of the supersingular measure.
struct SupersingularReport {
  mpq_class normalization;
  std::vector<mpq_class> weights;
  bool matches_mass_measure = false;
};

inline SupersingularReport supersingular_report(const ClassSet& C) {
  if (!is_irreducible(C.n0)) throw std::invalid_argument("supersingular_report: level is not prime");
  const std::uint32_t q = C.field().q();
  SupersingularReport rep;
  rep.normalization = mpq_class(mpz_class(q) * q - 1) / (detail::q_power(q, C.n0.deg()) - 1);
  for (std::uint64_t w : C.weights) rep.weights.push_back(rep.normalization / mpq_class(detail::to_mpz(w)));
  rep.matches_mass_measure = rep.weights == mass_measure(C).w;
  return rep;
}

}  // namespace fqbrandt

#endif  // FQBRANDT_PICARD_HPP
