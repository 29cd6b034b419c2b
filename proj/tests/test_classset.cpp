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

#include "fqbrandt/classset.hpp"
#include "test_util.hpp"

using namespace fqbrandt;
using fqbrandt::testing::P;

TEST(ClassSet, LevelT) {
  auto F = Field::create(3, 1);
  const Poly t = P(*F, {0, 1});
  const ClassSet C = build_class_set(F, t);
  ASSERT_EQ(C.size(), 1u);
  EXPECT_EQ(C.weights[0], 4u);
  EXPECT_EQ(C.units[0], 8u);
  EXPECT_EQ(C.mass, mpq_class(1, 4));
  EXPECT_TRUE(C.certified);
  EXPECT_EQ(C.ideals[0], C.R);
  // neighbours
  EXPECT_EQ(norm_q_ideals(C.R, C.R, P(*F, {1, 1})).size(), 4u);
  const auto ram = norm_q_ideals(C.R, C.R, t);
  ASSERT_EQ(ram.size(), 1u);
  for (const Lattice& J : norm_q_ideals(C.R, C.R, P(*F, {1, 1}))) {
    EXPECT_EQ(reduced_discriminant(right_order(J)), t);
    EXPECT_EQ(left_order(J), C.R);
    EXPECT_TRUE(are_equivalent(C.R, J, C.R));
  }
  EXPECT_THROW(norm_q_ideals(C.R, C.R, P(*F, {2, 0, 1})), std::invalid_argument);
}

TEST(ClassSet, MassFormulaSmallPrimes) {
  auto F = Field::create(3, 1);
  for (const Poly& p : {P(*F, {0, 1}), P(*F, {1, 1}), P(*F, {1, 0, 1}), P(*F, {1, 2, 0, 1})}) {
    const ClassSet C = build_class_set(F, p);
    EXPECT_EQ(C.mass, mass_target(3, p.deg())) << p;
    for (std::size_t i = 0; i < C.size(); ++i) {
      EXPECT_EQ(reduced_discriminant(C.right_orders[i]), p);
      EXPECT_EQ(left_order(C.ideals[i]), C.R);
      EXPECT_EQ(C.units[i], C.weights[i] * 2);
      for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(are_equivalent(C.ideals[i], C.ideals[j], C.R));
    }
  }
}

TEST(ClassSet, EquivalenceUnderPrincipalTwist) {
  auto F = Field::create(3, 1);
  const Poly p = P(*F, {1, 2, 0, 1});
  const ClassSet C = build_class_set(F, p);
  ASSERT_GE(C.size(), 2u);
  const QuatAlgebra& D = *C.D;
  const QuatElem x(D, {P(*F, {1}), P(*F, {1, 1}), P(*F, {0, 2}), P(*F, {1})}, P(*F, {2, 1}));
  for (std::size_t i = 0; i < C.size(); ++i) {
    const Lattice Ix = right_mul(C.ideals[i], x);
    EXPECT_TRUE(are_equivalent(C.ideals[i], Ix, C.R));
    EXPECT_TRUE(are_equivalent(C.ideals[i], C.ideals[i], C.R));
  }
  // Nr(I J) = Nr(I) Nr(J) for composable products
  const Lattice J = C.ideals[1];
  const Lattice prod = lattice_product(J, ideal_inverse(J, C.R));
  EXPECT_EQ(prod, C.R);
}

TEST(ClassSet, MassTargetValues) {
  EXPECT_EQ(mass_target(3, 1), mpq_class(1, 4));
  EXPECT_EQ(mass_target(3, 3), mpq_class(13, 4));
  EXPECT_EQ(mass_target(3, 2), mpq_class(1));
}
