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

#ifndef FQBRANDT_BRANDT_HPP
#define FQBRANDT_BRANDT_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "classset.hpp"
#include "theta.hpp"

namespace fqbrandt {

/// Square integer matrix, row-major.
struct IntMatrix {
  std::size_t n = 0;
  std::vector<std::int64_t> a;

  IntMatrix() = default;
  explicit IntMatrix(std::size_t size) : n(size), a(size * size, 0) {}
  static IntMatrix identity(std::size_t size) {
    IntMatrix I(size);
    for (std::size_t k = 0; k < size; ++k) I(k, k) = 1;
    return I;
  }

  std::int64_t& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  std::int64_t row_sum(std::size_t i) const {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < n; ++j) s += (*this)(i, j);
    return s;
  }

  friend bool operator==(const IntMatrix& x, const IntMatrix& y) { return x.n == y.n && x.a == y.a; }
  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    IntMatrix z(x.n);
    for (std::size_t i = 0; i < x.n; ++i)
      for (std::size_t k = 0; k < x.n; ++k) {
        const std::int64_t xik = x(i, k);
        if (!xik) continue;
        for (std::size_t j = 0; j < x.n; ++j) {
          std::int64_t prod, sum;
          if (__builtin_mul_overflow(xik, y(k, j), &prod) || __builtin_add_overflow(z(i, j), prod, &sum))
            throw std::overflow_error("IntMatrix: product overflows int64");
          z(i, j) = sum;
        }
      }
    return z;
  }
  friend IntMatrix operator-(const IntMatrix& x, const IntMatrix& y) {
    IntMatrix z = x;
    for (std::size_t k = 0; k < z.a.size(); ++k) z.a[k] -= y.a[k];
    return z;
  }
  friend IntMatrix operator*(std::int64_t s, const IntMatrix& x) {
    IntMatrix z = x;
    for (auto& v : z.a) v *= s;
    return z;
  }
  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < n; ++i) {
      s += i ? "; " : "";
      for (std::size_t j = 0; j < n; ++j) s += (j ? " " : "") + std::to_string((*this)(i, j));
    }
    return s + "]";
  }
};

inline IntMatrix matrix_pow(const IntMatrix& x, int e) {
  IntMatrix r = IntMatrix::identity(x.n);
  for (int k = 0; k < e; ++k) r = r * x;
  return r;
}

/// Brandt matrices B(m) for every monic m with deg m <= D.
class BrandtTable {
 public:
  BrandtTable() = default;
  BrandtTable(const Field& F, std::size_t n, int D) : F_(&F), n_(n), D_(D) {
    for (int d = 0; d <= D; ++d) by_degree_.emplace_back(monic_count(F, d), IntMatrix(n));
  }

  const Field& field() const { return *F_; }
  std::size_t n() const { return n_; }
  int max_degree() const { return D_; }
  bool has(const Poly& m) const { return m.is_monic() && m.deg() <= D_; }
  const IntMatrix& at(const Poly& m) const {
    if (!has(m)) throw std::out_of_range("BrandtTable: no matrix for " + m.to_string());
    return by_degree_[std::size_t(m.deg())][monic_index(m)];
  }
  IntMatrix& at(const Poly& m) {
    if (!has(m)) throw std::out_of_range("BrandtTable: no matrix for " + m.to_string());
    return by_degree_[std::size_t(m.deg())][monic_index(m)];
  }
  const std::vector<IntMatrix>& degree(int d) const { return by_degree_.at(std::size_t(d)); }
  std::vector<IntMatrix>& degree(int d) { return by_degree_.at(std::size_t(d)); }

  /// Restriction to degrees <= D.
  BrandtTable truncated(int D) const {
    BrandtTable t = *this;
    t.D_ = std::min(D, D_);
    t.by_degree_.resize(std::size_t(t.D_ + 1));
    return t;
  }

  friend bool operator==(const BrandtTable& x, const BrandtTable& y) {
    return x.n_ == y.n_ && x.D_ == y.D_ && x.by_degree_ == y.by_degree_;
  }

 private:
  const Field* F_ = nullptr;
  std::size_t n_ = 0;
  int D_ = -1;
  std::vector<std::vector<IntMatrix>> by_degree_;
};

/// Lattice whose elements of norm m Nr(I_i) Nr(I_j) count B_ij(m) times
/// #R_j^x, namely conj(I_j) I_i.
inline Lattice brandt_lattice(const ClassSet& C, std::size_t i, std::size_t j) {
  return lattice_product(conjugate(C.ideals[j]), C.ideals[i]);
}

/// Fills B_ij and B_ji for every m of degree <= D (conj(I_j) I_i and
/// conj(I_i) I_j are conjugate lattices, so they share their counts).
inline void fill_brandt_pair(const ClassSet& C, std::size_t i, std::size_t j, BrandtTable& T, unsigned jobs = 1) {
  const ThetaCounts th = theta_counts(brandt_lattice(C, i, j), C.norms[i] * C.norms[j], T.max_degree(), jobs);
  for (int d = 0; d <= T.max_degree(); ++d) {
    auto& mats = T.degree(d);
    for (std::size_t idx = 0; idx < mats.size(); ++idx) {
      const std::uint64_t raw = th.counts[std::size_t(d)][idx];
      if (raw % C.units[j] || raw % C.units[i])
        throw std::logic_error("brandt: raw count not divisible by the unit group order");
      mats[idx](i, j) = std::int64_t(raw / C.units[j]);
      mats[idx](j, i) = std::int64_t(raw / C.units[i]);
    }
  }
}

/// Brandt matrices through degree D; `progress` is told about each finished
/// pair of classes.
inline BrandtTable brandt_table(const ClassSet& C, int D, unsigned jobs = 1,
                                const std::function<void(std::size_t, std::size_t)>& progress = {}) {
  BrandtTable T(C.field(), C.size(), D);
  for (std::size_t i = 0; i < C.size(); ++i)
    for (std::size_t j = i; j < C.size(); ++j) {
      fill_brandt_pair(C, i, j, T, jobs);
      if (progress) progress(i, j);
    }
  return T;
}

inline IntMatrix brandt_matrix(const ClassSet& C, const Poly& m) {
  if (m.is_zero() || !m.is_monic()) throw std::invalid_argument("brandt_matrix: m must be monic");
  return brandt_table(C, m.deg()).at(m);
}

// ---------------------------------------------------------------------------
// Identity checks

struct CheckReport {
  std::uint64_t checked = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
  void fail(std::string what) { failures.push_back(std::move(what)); }
  void merge(const CheckReport& o) {
    checked += o.checked;
    failures.insert(failures.end(), o.failures.begin(), o.failures.end());
  }
};

namespace detail {
inline std::vector<Poly> all_monic_up_to(const Field& F, int D) {
  std::vector<Poly> out;
  for (int d = 0; d <= D; ++d)
    for (const Poly& m : enumerate_monic(F, d)) out.push_back(m);
  return out;
}
}  // namespace detail

/// B(1) = Id, non-negative entries, row sums sigma_n0(m).
inline CheckReport check_anchor(const BrandtTable& T, const Poly& n0) {
  CheckReport rep;
  const Field& F = T.field();
  if (!(T.at(Poly::one(F)) == IntMatrix::identity(T.n()))) rep.fail("B(1) is not the identity");
  for (const Poly& m : detail::all_monic_up_to(F, T.max_degree())) {
    const IntMatrix& B = T.at(m);
    const auto sigma = std::int64_t(sigma_n0(m, n0));
    for (std::size_t i = 0; i < T.n(); ++i) {
      ++rep.checked;
      for (std::size_t j = 0; j < T.n(); ++j)
        if (B(i, j) < 0) rep.fail("negative entry in B(" + m.to_string() + ")");
      if (B.row_sum(i) != sigma)
        rep.fail("row " + std::to_string(i + 1) + " of B(" + m.to_string() + ") sums to " +
                 std::to_string(B.row_sum(i)) + ", expected " + std::to_string(sigma));
    }
  }
  return rep;
}

/// w_j B_ij(m) = w_i B_ji(m).
inline CheckReport check_weighted_symmetry(const BrandtTable& T, const std::vector<std::uint64_t>& w) {
  CheckReport rep;
  for (const Poly& m : detail::all_monic_up_to(T.field(), T.max_degree())) {
    const IntMatrix& B = T.at(m);
    for (std::size_t i = 0; i < T.n(); ++i)
      for (std::size_t j = 0; j < T.n(); ++j) {
        ++rep.checked;
        if (std::int64_t(w[j]) * B(i, j) != std::int64_t(w[i]) * B(j, i))
          rep.fail("weighted symmetry fails at B(" + m.to_string() + ")_" + std::to_string(i + 1) +
                   std::to_string(j + 1));
      }
  }
  return rep;
}

/// Commutation, coprime multiplicativity, ramified powers and the prime-power
/// recursion, as exact integer-matrix identities through the table's degree.
inline CheckReport check_hecke_identities(const BrandtTable& T, const Poly& n0) {
  CheckReport rep;
  const Field& F = T.field();
  const int D = T.max_degree();
  const auto ms = detail::all_monic_up_to(F, D);
  for (std::size_t x = 0; x < ms.size(); ++x)
    for (std::size_t y = x + 1; y < ms.size(); ++y) {
      const IntMatrix& A = T.at(ms[x]);
      const IntMatrix& B = T.at(ms[y]);
      ++rep.checked;
      if (!(A * B == B * A)) rep.fail("B(" + ms[x].to_string() + ") and B(" + ms[y].to_string() + ") do not commute");
      if (ms[x].deg() + ms[y].deg() <= D && gcd(ms[x], ms[y]).is_one()) {
        ++rep.checked;
        if (!(T.at(ms[x] * ms[y]) == A * B))
          rep.fail("B(" + (ms[x] * ms[y]).to_string() + ") != B(" + ms[x].to_string() + ") B(" + ms[y].to_string() + ")");
      }
    }
  for (const Poly& P : prime_factors(n0))
    for (int l = 1; l * P.deg() <= D; ++l) {
      ++rep.checked;
      if (!(T.at(pow(P, std::uint64_t(l))) == matrix_pow(T.at(P), l)))
        rep.fail("B(" + P.to_string() + "^" + std::to_string(l) + ") != B(" + P.to_string() + ")^" + std::to_string(l));
    }
  for (int d = 1; d <= D; ++d)
    for (const Poly& Q : monic_irreducibles(F, d)) {
      if (Q.divides(n0)) continue;
      const auto qd = std::int64_t(detail::ipow(F.q(), d));
      for (int k = 1; (k + 1) * d <= D; ++k) {
        ++rep.checked;
        const IntMatrix lhs = T.at(pow(Q, std::uint64_t(k + 1)));
        const IntMatrix rhs = T.at(pow(Q, std::uint64_t(k))) * T.at(Q) - qd * T.at(pow(Q, std::uint64_t(k - 1)));
        if (!(lhs == rhs)) rep.fail("prime-power recursion fails at " + Q.to_string() + "^" + std::to_string(k + 1));
      }
    }
  return rep;
}

/// For m sharing a factor with n0 and each row i, an index k with
/// B_ij(m) / sigma(m) = B_kj(m') / sigma(m') for all j, m' the part of m
/// coprime to n0.
struct ReductionWitness {
  Poly m;
  std::vector<std::optional<std::size_t>> k;  // per row
};

inline std::vector<ReductionWitness> reduction_witnesses(const BrandtTable& T, const Poly& n0) {
  std::vector<ReductionWitness> out;
  for (const Poly& m : detail::all_monic_up_to(T.field(), T.max_degree())) {
    if (gcd(m, n0).is_one()) continue;
    const Poly mc = coprime_part(m, n0);
    const IntMatrix& B = T.at(m);
    const IntMatrix& Bc = T.at(mc);
    const auto s = std::int64_t(sigma_n0(m, n0)), sc = std::int64_t(sigma_n0(mc, n0));
    ReductionWitness w{m, {}};
    for (std::size_t i = 0; i < T.n(); ++i) {
      std::optional<std::size_t> found;
      for (std::size_t k = 0; k < T.n() && !found; ++k) {
        bool ok = true;
        for (std::size_t j = 0; j < T.n() && ok; ++j) ok = B(i, j) * sc == Bc(k, j) * s;
        if (ok) found = k;
      }
      w.k.push_back(found);
    }
    out.push_back(std::move(w));
  }
  return out;
}

inline CheckReport check_reduction(const BrandtTable& T, const Poly& n0) {
  CheckReport rep;
  for (const auto& w : reduction_witnesses(T, n0))
    for (std::size_t i = 0; i < w.k.size(); ++i) {
      ++rep.checked;
      if (!w.k[i]) rep.fail("no reduction witness for row " + std::to_string(i + 1) + " of B(" + w.m.to_string() + ")");
    }
  return rep;
}

}  // namespace fqbrandt

#endif  // FQBRANDT_BRANDT_HPP
