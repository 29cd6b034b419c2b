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

#ifndef FQBRANDT_FIELD_HPP
#define FQBRANDT_FIELD_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fqbrandt {

/// Element of F_q, encoded as sum_k coord[k] * p^k with coord[k] in [0, p).
/// 0 encodes zero and 1 encodes one in every field.
using Elem = std::uint32_t;

namespace detail {

inline bool is_prime_u32(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Dense arithmetic over F_p on little-endian coefficient vectors; only used
// while bootstrapping the tables of an extension field.
struct PrimePolyOps {
  std::uint32_t p;

  void trim(std::vector<std::uint32_t>& a) const {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }

  std::vector<std::uint32_t> mulmod(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                    const std::vector<std::uint32_t>& m) const {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t(a[i]) * b[j]) % p;
    std::vector<std::uint32_t> r(acc.begin(), acc.end());
    return rem(std::move(r), m);
  }

  // m is monic
  std::vector<std::uint32_t> rem(std::vector<std::uint32_t> r, const std::vector<std::uint32_t>& m) const {
    trim(r);
    const std::size_t dm = m.size() - 1;
    while (r.size() > dm) {
      const std::uint32_t c = r.back();
      const std::size_t shift = r.size() - 1 - dm;
      for (std::size_t k = 0; k <= dm; ++k) r[shift + k] = (r[shift + k] + (p - c) * std::uint64_t(m[k])) % p;
      trim(r);
    }
    return r;
  }

  bool irreducible(const std::vector<std::uint32_t>& f) const {
    // trial division by every monic polynomial of degree 1..deg/2
    const std::size_t n = f.size() - 1;
    for (std::size_t d = 1; 2 * d <= n; ++d) {
      std::uint64_t count = 1;
      for (std::size_t k = 0; k < d; ++k) count *= p;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<std::uint32_t> g(d + 1, 0);
        std::uint64_t v = idx;
        for (std::size_t k = 0; k < d; ++k) {
          g[k] = std::uint32_t(v % p);
          v /= p;
        }
        g[d] = 1;
        if (rem(f, g).empty()) return false;
      }
    }
    return true;
  }
};

}  // namespace detail

/// Finite field F_q, q = p^e with p odd. Immutable once built; share through
/// std::shared_ptr<const Field>.
class Field {
 public:
  static constexpr std::uint64_t kDefaultMaxOrder = std::uint64_t(1) << 16;

  static std::shared_ptr<const Field> create(std::uint32_t p, std::uint32_t e,
                                             std::uint64_t max_order = kDefaultMaxOrder) {
    if (p == 2) throw std::invalid_argument("field: even characteristic is not supported");
    if (!detail::is_prime_u32(p)) throw std::invalid_argument("field: p = " + std::to_string(p) + " is not prime");
    if (e == 0) throw std::invalid_argument("field: extension degree must be positive");
    std::uint64_t q = 1;
    for (std::uint32_t k = 0; k < e; ++k) {
      q *= p;
      if (q > max_order) throw std::invalid_argument("field: p^e exceeds the configured bound");
    }
    auto F = std::shared_ptr<Field>(new Field());
    F->p_ = p;
    F->e_ = e;
    F->q_ = std::uint32_t(q);
    F->build();
    return F;
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  std::uint32_t q() const { return q_; }
  bool is_prime_field() const { return e_ == 1; }
  /// Monic irreducible of degree e over F_p defining F_q (t itself when e = 1).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const {
    if (e_ == 1) {
      const Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (a == 0) return b;
    if (b == 0) return a;
    const std::uint32_t la = log_[a];
    std::uint32_t d = log_[b] + (q_ - 1) - la;
    if (d >= q_ - 1) d -= q_ - 1;
    const std::int32_t z = zech_[d];
    if (z < 0) return 0;
    return exp_[la + std::uint32_t(z)];
  }
  Elem neg(Elem a) const { return e_ == 1 ? (a == 0 ? 0 : p_ - a) : neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (e_ == 1) return Elem(std::uint64_t(a) * b % p_);
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("field: inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t n) const {
    if (n == 0) return 1;
    if (a == 0) return 0;
    return exp_[std::uint32_t((std::uint64_t(log_[a]) * (n % (q_ - 1))) % (q_ - 1))];
  }
  /// Image of an integer under Z -> F_p -> F_q.
  Elem from_int(std::int64_t v) const {
    std::int64_t r = v % std::int64_t(p_);
    if (r < 0) r += p_;
    return Elem(r);
  }
  /// Fixed primitive element.
  Elem generator() const { return exp_[1]; }
  std::uint32_t log(Elem a) const {
    if (a == 0) throw std::domain_error("field: log of zero");
    return log_[a];
  }
  Elem exp(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }

  bool is_square(Elem a) const { return a == 0 || log_[a] % 2 == 0; }
  /// Quadratic character: 0, +1 or -1.
  int chi(Elem a) const {
    if (a == 0) return 0;
    return log_[a] % 2 == 0 ? 1 : -1;
  }
  /// Some square root of a square; throws on nonsquares.
  Elem sqrt(Elem a) const {
    if (a == 0) return 0;
    if (log_[a] % 2 != 0) throw std::domain_error("field: sqrt of a nonsquare");
    return exp_[log_[a] / 2];
  }

  std::vector<std::uint32_t> coords(Elem a) const {
    std::vector<std::uint32_t> c(e_);
    for (std::uint32_t k = 0; k < e_; ++k) {
      c[k] = a % p_;
      a /= p_;
    }
    return c;
  }
  Elem from_coords(std::span<const std::uint32_t> c) const {
    if (c.size() != e_) throw std::invalid_argument("field: coordinate vector has wrong length");
    Elem v = 0;
    for (std::size_t k = c.size(); k-- > 0;) {
      if (c[k] >= p_) throw std::invalid_argument("field: coordinate out of range");
      v = v * p_ + c[k];
    }
    return v;
  }

 private:
  Field() = default;

  void build() {
    const detail::PrimePolyOps ops{p_};
    if (e_ == 1) {
      modulus_ = {0, 1};
    } else {
      std::uint64_t count = 1;
      for (std::uint32_t k = 0; k < e_; ++k) count *= p_;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<std::uint32_t> f(e_ + 1, 0);
        std::uint64_t v = idx;
        for (std::uint32_t k = 0; k < e_; ++k) {
          f[k] = std::uint32_t(v % p_);
          v /= p_;
        }
        f[e_] = 1;
        if (f[0] != 0 && ops.irreducible(f)) {
          modulus_ = f;
          break;
        }
      }
    }

    auto to_vec = [&](Elem a) {
      std::vector<std::uint32_t> c;
      while (a) {
        c.push_back(a % p_);
        a /= p_;
      }
      return c;
    };
    auto from_vec = [&](const std::vector<std::uint32_t>& c) {
      Elem v = 0;
      for (std::size_t k = c.size(); k-- > 0;) v = v * p_ + c[k];
      return v;
    };
    auto slow_mul = [&](Elem a, Elem b) {
      if (e_ == 1) return Elem(std::uint64_t(a) * b % p_);
      return from_vec(ops.mulmod(to_vec(a), to_vec(b), modulus_));
    };
    auto slow_pow = [&](Elem a, std::uint64_t n) {
      Elem r = 1;
      while (n) {
        if (n & 1) r = slow_mul(r, a);
        a = slow_mul(a, a);
        n >>= 1;
      }
      return r;
    };

    const std::uint64_t order = q_ - 1;
    const auto primes = detail::prime_divisors(order);
    Elem g = 0;
    for (Elem cand = 1; cand < q_; ++cand) {
      bool primitive = true;
      for (auto r : primes)
        if (slow_pow(cand, order / r) == 1) {
          primitive = false;
          break;
        }
      if (primitive) {
        g = cand;
        break;
      }
    }
    if (g == 0 && q_ > 2) throw std::logic_error("field: no primitive element found");

    exp_.assign(2 * order, 0);
    log_.assign(q_, 0);
    Elem x = 1;
    for (std::uint64_t k = 0; k < order; ++k) {
      exp_[k] = x;
      exp_[k + order] = x;
      log_[x] = std::uint32_t(k);
      x = slow_mul(x, g);
    }

    if (e_ > 1) {
      neg_.assign(q_, 0);
      for (Elem a = 0; a < q_; ++a) {
        auto c = coords(a);
        for (auto& ck : c) ck = ck == 0 ? 0 : p_ - ck;
        neg_[a] = from_coords(c);
      }
      // zech_[d] = log(1 + g^d), or -1 when 1 + g^d = 0
      zech_.assign(order, -1);
      for (std::uint64_t d = 0; d < order; ++d) {
        auto c = coords(exp_[d]);
        c[0] = (c[0] + 1) % p_;
        const Elem s = from_coords(c);
        zech_[d] = s == 0 ? -1 : std::int32_t(log_[s]);
      }
    }
  }

  std::uint32_t p_ = 0;
  std::uint32_t e_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> neg_;
  std::vector<std::int32_t> zech_;
};

using FieldPtr = std::shared_ptr<const Field>;

}  // namespace fqbrandt

#endif  // FQBRANDT_FIELD_HPP
