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

#include <random>

#include "fixtures.hpp"
#include "fqbrandt/picard.hpp"
#include "test_util.hpp"

using namespace fqbrandt;
using fqbrandt::testing::level;
using fqbrandt::testing::P;
using fqbrandt::testing::table;

namespace {
const std::vector<Elem> kLinear{0, 1};
const std::vector<Elem> kCubic{1, 2, 0, 1};

PicElement random_element(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> coef(-5, 9);
  PicElement e;
  do {
    e.a.assign(n, 0);
    for (auto& x : e.a) x = coef(rng);
  } while (e.degree() == 0);
  return e;
}

SignedMeasure random_measure(std::mt19937_64& rng, std::size_t n) { return measure_of(random_element(rng, n)); }
}  // namespace

TEST(Measure, PointMassAndScaleInvariance) {
  const SignedMeasure d1 = measure_of(PicElement::basis(3, 0));
  EXPECT_EQ(d1.w, (std::vector<mpq_class>{1, 0, 0}));
  PicElement e{{2, -1, 3}};
  PicElement e2{{4, -2, 6}};
  EXPECT_EQ(measure_of(e), measure_of(e2));
  EXPECT_EQ(measure_of(e).total(), 1);
  EXPECT_THROW(measure_of(PicElement{{1, -1}}), std::domain_error);
}

TEST(Measure, MassMeasureWeights) {
  const ClassSet& C = level(3, 1, kCubic);
  const SignedMeasure mu = mass_measure(C);
  EXPECT_EQ(mu.total(), 1);
  mpq_class inv_sum = 0;
  for (auto w : C.weights) inv_sum += mpq_class(1, w);
  for (std::size_t j = 0; j < C.size(); ++j) EXPECT_EQ(mu.w[j], mpq_class(1, C.weights[j]) / inv_sum);
}

TEST(Measure, TotalVariation) {
  std::mt19937_64 rng(11);
  const SignedMeasure a = measure_of(PicElement::basis(4, 0));
  const SignedMeasure b = measure_of(PicElement::basis(4, 1));
  EXPECT_EQ(tv_distance(a, a), 0);
  EXPECT_EQ(tv_distance(a, b), 2);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = random_measure(rng, 4), y = random_measure(rng, 4), z = random_measure(rng, 4);
    EXPECT_LE(tv_distance(x, z), tv_distance(x, y) + tv_distance(y, z));
    EXPECT_EQ(tv_distance(x, y), tv_distance(y, x));
    EXPECT_GE(tv_distance(x, y), 0);
  }
  EXPECT_THROW(tv_distance(a, measure_of(PicElement::basis(3, 0))), std::invalid_argument);
}

TEST(Hecke, ActionDegreeIsSigma) {
  const ClassSet& C = level(3, 1, kCubic);
  const BrandtTable& T = table(3, 1, kCubic, 6);
  const Field& F = C.field();
  for (std::size_t i = 0; i < C.size(); ++i) {
    const PicElement e = PicElement::basis(C.size(), i);
    EXPECT_EQ(hecke_action(T, P(F, {1}), e), e);
    for (const Poly& m : detail::all_monic_up_to(F, 6)) {
      const PicElement tm = hecke_action(T, m, e);
      EXPECT_EQ(tm.degree(), detail::to_mpz(sigma_n0(m, C.n0))) << m;
      for (const auto& x : tm.a) EXPECT_GE(x, 0);
    }
  }
}

TEST(Hecke, SingleClassActsBySigma) {
  const ClassSet& C = level(3, 1, kLinear);
  const BrandtTable& T = table(3, 1, kLinear, 5);
  ASSERT_EQ(C.size(), 1u);
  for (const Poly& m : detail::all_monic_up_to(C.field(), 5))
    EXPECT_EQ(hecke_action(T, m, PicElement::basis(1, 0)).a[0], detail::to_mpz(sigma_n0(m, C.n0)));
}

TEST(Hecke, MeasureLevelMultiplicativity) {
  const ClassSet& C = level(3, 1, kCubic);
  const BrandtTable& T = table(3, 1, kCubic, 6);
  const auto monics = detail::all_monic_up_to(C.field(), 3);
  for (std::size_t i = 0; i < C.size(); ++i)
    for (const Poly& m : monics)
      for (const Poly& m2 : monics) {
        if (!gcd(m, m2).is_one()) continue;
        const PicElement e = PicElement::basis(C.size(), i);
        EXPECT_EQ(measure_of(hecke_action(T, m, hecke_action(T, m2, e))), measure_of(hecke_action(T, m * m2, e)));
      }
}

TEST(Equid, SingleClassDistancesVanish) {
  const ClassSet& C = level(3, 1, kLinear);
  const EquidReport rep = equid_experiment(C, table(3, 1, kLinear, 5), 0, 5);
  EXPECT_EQ(rep.rows.size(), 1u + 3 + 9 + 27 + 81 + 243);
  for (const auto& r : rep.rows) EXPECT_EQ(r.distance, 0) << r.m;
  EXPECT_TRUE(rep.ok());
}

TEST(Equid, RowsMatchFormulaAndTwists) {
  const ClassSet& C = level(3, 1, kCubic);
  const BrandtTable& T = table(3, 1, kCubic, 6);
  std::vector<EquidReport> reps;
  for (std::size_t i = 0; i < C.size(); ++i) reps.push_back(equid_experiment(C, T, i, 6));
  std::map<std::pair<Poly, std::size_t>, mpq_class> dist;
  for (const auto& rep : reps) {
    EXPECT_TRUE(rep.formula_mismatches.empty());
    for (const auto& r : rep.rows) {
      EXPECT_GE(r.distance, 0);
      dist[{r.m, r.source}] = r.distance;
    }
    for (std::size_t k = 1; k < rep.rows.size(); ++k) EXPECT_LE(rep.rows[k - 1].deg_coprime, rep.rows[k].deg_coprime);
  }
  // twists by the level: d_i(m) = d_k(coprime part) with the reduction witness k
  std::size_t twists = 0;
  for (const auto& w : reduction_witnesses(T, C.n0)) {
    const Poly mc = coprime_part(w.m, C.n0);
    for (std::size_t i = 0; i < C.size(); ++i) {
      ASSERT_TRUE(w.k[i].has_value());
      EXPECT_EQ(dist.at({w.m, i}), dist.at({mc, *w.k[i]})) << w.m;
      ++twists;
    }
  }
  EXPECT_GT(twists, 0u);
}

TEST(Supersingular, Weights) {
  const auto lin = supersingular_report(level(3, 1, kLinear));
  EXPECT_EQ(lin.weights, std::vector<mpq_class>{1});
  EXPECT_TRUE(lin.matches_mass_measure);
  const auto cub = supersingular_report(level(3, 1, kCubic));
  EXPECT_EQ(cub.normalization, mpq_class(4, 13));
  EXPECT_TRUE(cub.matches_mass_measure);
  mpq_class s = 0;
  for (const auto& w : cub.weights) s += w;
  EXPECT_EQ(s, 1);
}
