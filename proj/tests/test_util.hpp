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

// Shared helpers for the unit and acceptance suites.
#ifndef FQBRANDT_TEST_UTIL_HPP
#define FQBRANDT_TEST_UTIL_HPP

#include <initializer_list>
#include <random>
#include <vector>

#include "fqbrandt/poly.hpp"

namespace fqbrandt::testing {

inline Poly P(const Field& F, std::initializer_list<Elem> c) { return Poly(F, std::vector<Elem>(c)); }

inline Poly random_poly(const Field& F, std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<Elem> coeff(0, F.q() - 1);
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::vector<Elem> c(std::size_t(deg(rng)) + 1);
  for (auto& x : c) x = coeff(rng);
  return Poly(F, std::move(c));
}

inline Poly random_nonzero(const Field& F, std::mt19937_64& rng, int max_deg) {
  while (true) {
    Poly f = random_poly(F, rng, max_deg);
    if (!f.is_zero()) return f;
  }
}

inline Poly random_monic(const Field& F, std::mt19937_64& rng, int max_deg) {
  return random_nonzero(F, rng, max_deg).monic();
}

}  // namespace fqbrandt::testing

#endif
