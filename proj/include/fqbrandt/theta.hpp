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

#ifndef FQBRANDT_THETA_HPP
#define FQBRANDT_THETA_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "reduce.hpp"

namespace fqbrandt {

/// counts[d][monic_index(m)] = number of nonzero x in the lattice with
/// monic(Nr(x) / N) = m, for every monic m of degree d <= D.
struct ThetaCounts {
  int D = -1;
  std::vector<std::vector<std::uint64_t>> counts;

  std::uint64_t at(const Poly& m) const { return counts.at(std::size_t(m.deg())).at(monic_index(m)); }
};

namespace detail {

constexpr int kMaxLanes = 32;

// Lane arithmetic for prime fields small enough for byte lanes.
struct SmallPrimeLanes {
  using T = std::uint8_t;
  std::uint32_t p;
  std::vector<std::uint8_t> mul_table;

  explicit SmallPrimeLanes(const Field& F) : p(F.p()), mul_table(std::size_t(F.p()) * F.p()) {
    for (std::uint32_t a = 0; a < p; ++a)
      for (std::uint32_t b = 0; b < p; ++b) mul_table[a * p + b] = std::uint8_t(a * b % p);
  }
  T from(Elem x) const { return T(x); }
  Elem to(T x) const { return Elem(x); }
  T mul(T a, T b) const { return mul_table[std::size_t(a) * p + b]; }
  template <int N>
  void add_into(T* dst, const T* a, const T* b) const {
    const T pp = T(p);
    for (int k = 0; k < N; ++k) {
      const T s = T(a[k] + b[k]);
      dst[k] = s >= pp ? T(s - pp) : s;
    }
  }
};

// Lane arithmetic through the field tables; any q.
struct FieldLanes {
  using T = Elem;
  const Field* F;

  explicit FieldLanes(const Field& f) : F(&f) {}
  T from(Elem x) const { return x; }
  Elem to(T x) const { return x; }
  T mul(T a, T b) const { return F->mul(a, b); }
  template <int N>
  void add_into(T* dst, const T* a, const T* b) const {
    for (int k = 0; k < N; ++k) dst[k] = F->add(a[k], b[k]);
  }
};

template <class Lanes, int kLanes>
class ThetaKernel {
  using T = typename Lanes::T;
  struct alignas(32) Vec {
    T v[kLanes];
  };

 public:
  // q[k][l] (k <= l): coefficients of the normalized form
  // Q(c) = sum_k c_k^2 q[k][k] + sum_{k<l} c_k c_l q[k][l]; e[k] = deg q[k][k].
  ThetaKernel(const Field& F, const std::array<std::array<Poly, 4>, 4>& q, const std::array<int, 4>& e, int D)
      : F_(F), ar_(F), D_(D), qsz_(F.q()) {
    if (D + 1 > kLanes) throw std::invalid_argument("theta: degree bound too large for the kernel");
    // packed histogram when q^(D+1) stays small
    std::uint64_t size = 1;
    for (int k = 0; k <= D && size <= kMaxHistogram; ++k) size *= qsz_;
    if (size <= kMaxHistogram) {
      use_hist_ = true;
      hist_size_ = std::size_t(size);
      std::uint32_t w = 1;
      for (int k = D; k >= 0; --k) {
        weight_[k] = w;
        w *= std::uint32_t(qsz_);
      }
    }
    for (int k = 0; k < 4; ++k) box_[k] = D - e[k] < 0 ? -1 : (D - e[k]) / 2;
    // innermost level gets the largest box
    order_ = {0, 1, 2, 3};
    std::stable_sort(order_.begin(), order_.end(), [&](int x, int y) { return box_[x] < box_[y]; });
    for (int a = 0; a < 4; ++a) {
      const int k = order_[a];
      lvl_[a].box = box_[k];
      lvl_[a].size = 1;
      for (int s = 0; s <= box_[k]; ++s) lvl_[a].size *= qsz_;
      lvl_[a].polys.reserve(lvl_[a].size);
      for (std::size_t r = 0; r < lvl_[a].size; ++r) lvl_[a].polys.push_back(digits_to_poly(r));
      for (std::size_t r = 0; r < lvl_[a].size; ++r) {
        const Poly& c = lvl_[a].polys[r];
        lvl_[a].sq.push_back(to_vec(c * c * q[k][k]));
        for (int b = a + 1; b < 4; ++b) {
          const int l = order_[b];
          lvl_[a].cross[b].push_back(to_vec(c * q[std::min(k, l)][std::max(k, l)]));
        }
        // decomposition r = rest + alpha q^top, alpha != 0 the top digit
        std::size_t top = 0, pw = 1, x = r;
        while (x >= qsz_) {
          x /= qsz_;
          pw *= qsz_;
          ++top;
        }
        lvl_[a].top.push_back(int(top));
        lvl_[a].alpha.push_back(Elem(x));
        lvl_[a].rest.push_back(r - x * pw);
      }
    }
  }

  static constexpr std::uint64_t kMaxHistogram = std::uint64_t(1) << 21;

  ThetaCounts run(unsigned jobs) const {
    ThetaCounts out;
    out.D = D_;
    for (int d = 0; d <= D_; ++d) out.counts.emplace_back(monic_count(F_, d), 0);
    jobs = std::max(1u, jobs);
    // work items: (first nonzero level, index at that level)
    std::vector<std::pair<int, std::size_t>> items;
    for (int a = 0; a < 4; ++a) {
      if (lvl_[a].box < 0) continue;
      for (std::size_t r = 1; r < lvl_[a].size; ++r)
        if (lvl_[a].alpha[r] == 1) items.emplace_back(a, r);
    }
    std::atomic<std::size_t> next{0};
    std::vector<Acc> partial(jobs);
    for (auto& acc : partial) {
      if (use_hist_)
        acc.hist.assign(hist_size_, 0);
      else
        acc.counts = out;
    }
    auto worker = [&](unsigned id) {
      State st;
      while (true) {
        const std::size_t it = next.fetch_add(1);
        if (it >= items.size()) break;
        const auto [a, r] = items[it];
        std::fill(std::begin(st.base[a].v), std::end(st.base[a].v), T(0));
        for (int b = 0; b < 4; ++b) std::fill(std::begin(st.lin[a][b].v), std::end(st.lin[a][b].v), T(0));
        step(st, a, r, partial[id]);
      }
    };
    if (jobs == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned id = 0; id < jobs; ++id) pool.emplace_back(worker, id);
      for (auto& th : pool) th.join();
    }
    const std::uint64_t units = F_.q() - 1;
    if (use_hist_) {
      std::vector<std::uint64_t> hist(hist_size_, 0);
      for (const auto& acc : partial)
        for (std::size_t J = 0; J < hist_size_; ++J) hist[J] += acc.hist[J];
      std::vector<Elem> val(std::size_t(D_) + 1);
      for (std::size_t J = 1; J < hist_size_; ++J) {
        if (!hist[J]) continue;
        std::size_t x = J;
        for (int k = D_; k >= 0; --k) {
          val[std::size_t(k)] = Elem(x % qsz_);
          x /= qsz_;
        }
        int d = D_;
        while (val[std::size_t(d)] == 0) --d;
        const Elem inv = F_.inv(val[std::size_t(d)]);
        std::uint64_t idx = 0;
        for (int k = 0; k < d; ++k) idx = idx * qsz_ + F_.mul(inv, val[std::size_t(k)]);
        out.counts[std::size_t(d)][idx] += hist[J] * units;
      }
      return out;
    }
    for (const auto& acc : partial)
      for (int d = 0; d <= D_; ++d)
        for (std::size_t i = 0; i < acc.counts.counts[d].size(); ++i)
          out.counts[d][i] += acc.counts.counts[d][i] * units;
    return out;
  }

 private:
  struct Level {
    int box = -1;
    std::size_t size = 0;
    std::vector<Poly> polys;
    std::vector<Vec> sq;
    std::array<std::vector<Vec>, 4> cross;
    std::vector<int> top;
    std::vector<Elem> alpha;
    std::vector<std::size_t> rest;
  };
  // Per-thread accumulator: either a histogram on the packed value
  // J = sum_k val[k] q^(D-k), or counts by monic polynomial.
  struct Acc {
    std::vector<std::uint64_t> hist;
    ThetaCounts counts;
  };
  struct State {
    std::array<Vec, 5> base;
    std::array<std::array<Vec, 4>, 5> lin;
    std::vector<Vec> table;
  };

  Poly digits_to_poly(std::size_t r) const {
    std::vector<Elem> c;
    while (r) {
      c.push_back(Elem(r % qsz_));
      r /= qsz_;
    }
    return Poly(F_, std::move(c));
  }
  Vec to_vec(const Poly& f) const {
    Vec v{};
    if (!f.is_zero() && f.deg() >= kLanes) throw std::logic_error("theta: value exceeds lane width");
    for (std::size_t k = 0; k < f.coeffs().size(); ++k) v.v[k] = ar_.from(f.coeffs()[k]);
    return v;
  }

  // Fill table[r] = base + c_r * x for every r at level L.
  void multiples(const Level& L, const Vec& base, const Vec& x, std::vector<Vec>& table) const {
    table.resize(L.size);
    table[0] = base;
    // shifted scalar multiples alpha t^s x
    std::vector<Vec> ml(std::size_t(L.box + 1) * qsz_);
    for (int s = 0; s <= L.box; ++s)
      for (std::size_t al = 0; al < qsz_; ++al) {
        Vec& w = ml[std::size_t(s) * qsz_ + al];
        for (int k = 0; k < kLanes; ++k) w.v[k] = (k >= s) ? ar_.mul(ar_.from(Elem(al)), x.v[k - s]) : T(0);
      }
    for (std::size_t r = 1; r < L.size; ++r)
      ar_.template add_into<kLanes>(table[r].v, table[L.rest[r]].v, ml[std::size_t(L.top[r]) * qsz_ + L.alpha[r]].v);
  }

  // Enter level a with coefficient index r; st.base[a], st.lin[a] describe
  // the contribution of the outer levels.
  void step(State& st, int a, std::size_t r, Acc& out) const {
    const Level& L = lvl_[a];
    // c_r * lin at this level
    Vec cl;
    single_multiple(L, r, st.lin[a][a], cl);
    Vec nb;
    ar_.template add_into<kLanes>(nb.v, st.base[a].v, L.sq[r].v);
    ar_.template add_into<kLanes>(nb.v, nb.v, cl.v);
    if (a == 3) {
      record(nb, out);
      return;
    }
    st.base[a + 1] = nb;
    for (int b = a + 1; b < 4; ++b) ar_.template add_into<kLanes>(st.lin[a + 1][b].v, st.lin[a][b].v, L.cross[b][r].v);
    if (a + 1 == 3) {
      inner(st, out);
    } else {
      const Level& M = lvl_[a + 1];
      for (std::size_t s = 0; s < M.size; ++s) step(st, a + 1, s, out);
    }
  }

  void single_multiple(const Level&, std::size_t r, const Vec& x, Vec& out) const {
    std::fill(std::begin(out.v), std::end(out.v), T(0));
    std::size_t rr = r;
    int s = 0;
    while (rr) {
      const T al = ar_.from(Elem(rr % qsz_));
      rr /= qsz_;
      if (al != 0) {
        Vec w{};
        for (int k = s; k < kLanes; ++k) w.v[k] = ar_.mul(al, x.v[k - s]);
        ar_.template add_into<kLanes>(out.v, out.v, w.v);
      }
      ++s;
    }
  }

  void inner(State& st, Acc& out) const {
    const Level& L = lvl_[3];
    multiples(L, st.base[3], st.lin[3][3], st.table);
    Vec val;
    if (use_hist_) {
      std::uint64_t* hist = out.hist.data();
      for (std::size_t r = 0; r < L.size; ++r) {
        ar_.template add_into<kLanes>(val.v, st.table[r].v, L.sq[r].v);
        std::uint32_t J = 0;
        for (int k = 0; k <= D_; ++k) J += std::uint32_t(ar_.to(val.v[k])) * weight_[k];
        ++hist[J];
      }
      return;
    }
    for (std::size_t r = 0; r < L.size; ++r) {
      ar_.template add_into<kLanes>(val.v, st.table[r].v, L.sq[r].v);
      record(val, out);
    }
  }

  void record(const Vec& val, Acc& out) const {
    if (use_hist_) {
      std::uint32_t J = 0;
      for (int k = 0; k <= D_; ++k) J += std::uint32_t(ar_.to(val.v[k])) * weight_[k];
      ++out.hist[J];
      return;
    }
    int d = D_;
    while (d >= 0 && val.v[d] == 0) --d;
    if (d < 0) return;  // only the zero vector has norm zero
    const T inv = ar_.from(F_.inv(ar_.to(val.v[d])));
    std::uint64_t idx = 0;
    for (int k = 0; k < d; ++k) idx = idx * qsz_ + ar_.to(ar_.mul(inv, val.v[k]));
    ++out.counts.counts[std::size_t(d)][idx];
  }

  const Field& F_;
  Lanes ar_;
  int D_;
  std::size_t qsz_;
  bool use_hist_ = false;
  std::size_t hist_size_ = 0;
  std::array<std::uint32_t, kLanes> weight_{};
  std::array<int, 4> box_{};
  std::array<int, 4> order_{};
  std::array<Level, 4> lvl_;
};

}  // namespace detail

/// Theta counts of the lattice L for norms scaled by 1/N (N must divide the
/// norm of every element), through degree D.
inline ThetaCounts theta_counts(const Lattice& L, const Poly& N, int D, unsigned jobs = 1) {
  const ReducedBasis R = reduce_basis(L);
  const QuatAlgebra& Dq = L.algebra();
  const Field& F = Dq.field();
  const Poly scale = N * R.den * R.den;
  std::array<std::array<Poly, 4>, 4> q;
  std::array<int, 4> e{};
  for (int k = 0; k < 4; ++k)
    for (int l = k; l < 4; ++l) {
      const Poly raw = k == l ? R.norm[k] : Dq.trace_conj(R.v[k], R.v[l]);
      auto [quo, rem] = divmod(raw, scale);
      if (!rem.is_zero()) throw std::domain_error("theta_counts: N does not divide the norm form");
      q[k][l] = std::move(quo);
    }
  for (int k = 0; k < 4; ++k) e[k] = q[k][k].deg();
  if (D < 0) return ThetaCounts{D, {}};
  if (D + 1 > detail::kMaxLanes) throw std::invalid_argument("theta_counts: degree bound too large");
  if (F.is_prime_field() && F.p() < 128) {
    if (D < 16) return detail::ThetaKernel<detail::SmallPrimeLanes, 16>(F, q, e, D).run(jobs);
    return detail::ThetaKernel<detail::SmallPrimeLanes, 32>(F, q, e, D).run(jobs);
  }
  if (D < 16) return detail::ThetaKernel<detail::FieldLanes, 16>(F, q, e, D).run(jobs);
  return detail::ThetaKernel<detail::FieldLanes, 32>(F, q, e, D).run(jobs);
}

}  // namespace fqbrandt

#endif  // FQBRANDT_THETA_HPP
