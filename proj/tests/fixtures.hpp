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

// Cached class sets and Brandt tables shared by the test suites.
#ifndef FQBRANDT_TEST_FIXTURES_HPP
#define FQBRANDT_TEST_FIXTURES_HPP

#include <map>
#include <tuple>
#include <vector>

#include "fqbrandt/brandt.hpp"

namespace fqbrandt::testing {

inline FieldPtr field(std::uint32_t p, std::uint32_t e) {
  static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> fields;
  auto& F = fields[{p, e}];
  if (!F) F = Field::create(p, e);
  return F;
}

// Class set of level n0 (little-endian coefficients) over F_{p^e}.
inline const ClassSet& level(std::uint32_t p, std::uint32_t e, const std::vector<Elem>& n0) {
  static std::map<std::tuple<std::uint32_t, std::uint32_t, std::vector<Elem>>, ClassSet> cache;
  const auto key = std::make_tuple(p, e, n0);
  auto it = cache.find(key);
  if (it == cache.end()) {
    const FieldPtr F = field(p, e);
    it = cache.emplace(key, build_class_set(F, Poly(*F, n0))).first;
  }
  return it->second;
}

inline const BrandtTable& table(std::uint32_t p, std::uint32_t e, const std::vector<Elem>& n0, int D) {
  static std::map<std::tuple<std::uint32_t, std::uint32_t, std::vector<Elem>, int>, BrandtTable> cache;
  const auto key = std::make_tuple(p, e, n0, D);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, brandt_table(level(p, e, n0), D, 2)).first;
  return it->second;
}

}  // namespace fqbrandt::testing

#endif
