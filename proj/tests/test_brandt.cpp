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

#include <gtest/gtest.h>

#include <map>

#include "fqbrandt/brandt.hpp"
#include "test_util.hpp"

using namespace fqbrandt;
using fqbrandt::testing::P;

namespace {

// Slow reference: direct enumeration of short vectors, classified by norm.
std::map<Poly, std::uint64_t> slow_counts(const Lattice& L, const Poly& N, int D) {
  std::map<Poly, std::uint64_t> out;
  const ReducedBasis R = reduce_basis(L);
  const Poly scale = N * R.den * R.den;
  for_each_short_vector(R, D + N.deg(), [&](const QVec&, const Poly& n) {
    auto [quo, rem] = divmod(n, scale);
    EXPECT_TRUE(rem.is_zero());
    ++out[quo.monic()];
  });
  return out;
}

void expect_kernel_matches(const ClassSet& C, int D, unsigned jobs) {
  for (std::size_t i = 0; i < C.size(); ++i)
    for (std::size_t j = 0; j < C.size(); ++j) {
      const Lattice L = brandt_lattice(C, i, j);
      const Poly N = C.norms[i] * C.norms[j];
      const ThetaCounts fast = theta_counts(L, N, D, jobs);
      const auto slow = slow_counts(L, N, D);
      for (int d = 0; d <= D; ++d)
        for (const Poly& m : enumerate_monic(C.field(), d)) {
          auto it = slow.find(m);
          EXPECT_EQ(fast.at(m), it == slow.end() ? 0u : it->second) << i << j << " " << m;
        }
    }
}

const ClassSet& level(std::uint32_t p, std::uint32_t e, std::vector<Elem> n0) {
  static std::map<std::vector<Elem>, ClassSet> cache;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> fields;
  auto key = n0;
  key.push_back(p * 100 + e);
  if (!cache.count(key)) {
    auto& F = fields[{p, e}];
    if (!F) F = Field::create(p, e);
    cache.emplace(key, build_class_set(F, Poly(*F, n0)));
  }
  return cache.at(key);
}

}  // namespace

TEST(Theta, KernelMatchesDirectEnumeration) {
  expect_kernel_matches(level(3, 1, {0, 1}), 5, 1);
  expect_kernel_matches(level(3, 1, {1, 2, 0, 1}), 5, 1);
  expect_kernel_matches(level(3, 1, {1, 2, 0, 1}), 4, 3);
  expect_kernel_matches(level(5, 1, {1, 1, 0, 1}), 3, 2);
  expect_kernel_matches(level(3, 2, {0, 1}), 2, 1);
}

TEST(Theta, ConjugateLatticeHasSameCounts) {
  const ClassSet& C = level(3, 1, {1, 2, 0, 1});
  for (std::size_t i = 0; i < C.size(); ++i)
    for (std::size_t j = 0; j < C.size(); ++j) {
      const Poly N = C.norms[i] * C.norms[j];
      const auto a = theta_counts(brandt_lattice(C, i, j), N, 4);
      const auto b = theta_counts(brandt_lattice(C, j, i), N, 4);
      EXPECT_EQ(a.counts, b.counts);
    }
}

TEST(Brandt, LevelT) {
  const ClassSet& C = level(3, 1, {0, 1});
  const Field& F = C.field();
  const BrandtTable T = brandt_table(C, 6);
  EXPECT_EQ(T.at(P(F, {1})), IntMatrix::identity(1));
  EXPECT_EQ(T.at(P(F, {1, 1}))(0, 0), 4);
  EXPECT_EQ(brandt_matrix(C, P(F, {1, 1}))(0, 0), 4);
  EXPECT_TRUE(check_anchor(T, C.n0).ok());
  EXPECT_TRUE(check_hecke_identities(T, C.n0).ok());
  EXPECT_TRUE(check_reduction(T, C.n0).ok());
  const Poly q = P(F, {1, 1});
  EXPECT_EQ(T.at(q * q), T.at(q) * T.at(q) - 3 * T.at(P(F, {1})));
  EXPECT_EQ(T.at(P(F, {0, 0, 1})), T.at(P(F, {0, 1})) * T.at(P(F, {0, 1})));
  // m = t (t + 1): sigma_t(t (t + 1)) = sigma_t(t + 1) = 4, witness k = 1
  for (const auto& w : reduction_witnesses(T, C.n0))
    if (w.m == P(F, {0, 1, 1})) {
      EXPECT_EQ(w.k[0], std::optional<std::size_t>(0));
    }
}

TEST(Brandt, CubicLevelIdentities) {
  const ClassSet& C = level(3, 1, {1, 2, 0, 1});
  const BrandtTable T = brandt_table(C, 6, 2);
  EXPECT_TRUE(check_anchor(T, C.n0).ok());
  const auto hecke = check_hecke_identities(T, C.n0);
  EXPECT_TRUE(hecke.ok()) << (hecke.failures.empty() ? "" : hecke.failures[0]);
  EXPECT_TRUE(check_reduction(T, C.n0).ok());
  EXPECT_TRUE(check_weighted_symmetry(T, C.weights).ok());
  // B((1)) = Id means distinct classes are inequivalent
  EXPECT_EQ(T.at(P(C.field(), {1})), IntMatrix::identity(C.size()));
}

TEST(Brandt, OtherFieldsAndLevels) {
  for (const ClassSet* C : {&level(3, 1, {1, 1}), &level(3, 1, {1, 0, 1}), &level(5, 1, {1, 1, 0, 1}),
                            &level(3, 2, {0, 1})}) {
    const int D = C->field().q() > 3 ? 3 : 5;
    const BrandtTable T = brandt_table(*C, D);
    EXPECT_TRUE(check_anchor(T, C->n0).ok()) << C->n0;
    EXPECT_TRUE(check_hecke_identities(T, C->n0).ok()) << C->n0;
    EXPECT_TRUE(check_reduction(T, C->n0).ok()) << C->n0;
  }
}

TEST(Brandt, PermutationInvariance) {
  auto F = Field::create(3, 1);
  const Poly n0 = P(*F, {1, 2, 0, 1});
  const ClassSet& C = level(3, 1, {1, 2, 0, 1});
  const ClassSet C2 = enumerate_classes(C.R, n0, 4, {P(*F, {2, 1}), P(*F, {1, 0, 1})});
  ASSERT_EQ(C2.size(), C.size());
  const BrandtTable T = brandt_table(C, 4), T2 = brandt_table(C2, 4);
  // find the permutation from matching classes, then compare every matrix
  std::vector<std::size_t> perm(C.size());
  for (std::size_t i = 0; i < C.size(); ++i) {
    int hits = 0;
    for (std::size_t k = 0; k < C2.size(); ++k)
      if (are_equivalent(C.ideals[i], C2.ideals[k], C.R)) {
        perm[i] = k;
        ++hits;
      }
    ASSERT_EQ(hits, 1);
  }
  for (int d = 0; d <= 4; ++d)
    for (const Poly& m : enumerate_monic(*F, d))
      for (std::size_t i = 0; i < C.size(); ++i)
        for (std::size_t j = 0; j < C.size(); ++j) EXPECT_EQ(T.at(m)(i, j), T2.at(m)(perm[i], perm[j]));
}
