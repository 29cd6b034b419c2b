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

#include <filesystem>
#include <random>

#include "fixtures.hpp"
#include "fqbrandt/io.hpp"
#include "test_util.hpp"

using namespace fqbrandt;
using fqbrandt::testing::level;
using fqbrandt::testing::P;
using fqbrandt::testing::table;
namespace fs = std::filesystem;

namespace {
const std::vector<Elem> kLinear{0, 1};
const std::vector<Elem> kCubic{1, 2, 0, 1};

fs::path scratch_root() { return fs::temp_directory_path() / ("fqbrandt_test_io_" + std::to_string(::getpid())); }

fs::path scratch(const std::string& name) {
  const fs::path dir = scratch_root() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}
class ScratchCleanup : public ::testing::Environment {
 public:
  void TearDown() override { fs::remove_all(scratch_root()); }
};

const auto* const kCleanup = ::testing::AddGlobalTestEnvironment(new ScratchCleanup);
}  // namespace

TEST(Io, PolynomialText) {
  const FieldPtr F3 = Field::create(3, 1);
  EXPECT_EQ(io::poly_key(P(*F3, {1, 2, 0, 1})), "[1,2,0,1]");
  EXPECT_EQ(io::poly_key(Poly(*F3)), "[]");
  EXPECT_EQ(io::poly_from_json(*F3, io::json::parse("[1,2,0,1]")), P(*F3, {1, 2, 0, 1}));
  EXPECT_THROW(io::poly_from_json(*F3, io::json::parse("[1,3]")), io::FormatError);
  EXPECT_THROW(io::poly_from_json(*F3, io::json::parse("[1,0]")), io::FormatError);
  const FieldPtr F9 = Field::create(3, 2);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const Poly f = fqbrandt::testing::random_poly(*F9, rng, 5);
    const io::json j = io::poly_to_json(f);
    for (const auto& c : j) EXPECT_EQ(c.size(), 2u);
    EXPECT_EQ(io::poly_from_json(*F9, j), f);
  }
}

TEST(Io, RationalText) {
  EXPECT_EQ(io::rational_text(mpq_class(13, 4)), "13/4");
  EXPECT_EQ(io::rational_text(mpq_class(-6, 4)), "-3/2");
  EXPECT_EQ(io::rational_text(mpq_class(0)), "0/1");
  EXPECT_EQ(io::rational_from_text("13/4"), mpq_class(13, 4));
  EXPECT_THROW(io::rational_from_text("26/8"), io::FormatError);
  EXPECT_THROW(io::rational_from_text("13"), io::FormatError);
  EXPECT_THROW(io::rational_from_text("1/0"), io::FormatError);
}

TEST(Io, ClassSetRoundTrip) {
  for (const auto& n0 : {kLinear, kCubic}) {
    const ClassSet& C = level(3, 1, n0);
    const std::string text = io::classset_text(C);
    const ClassSet back = io::classset_from_json(io::json::parse(text));
    EXPECT_EQ(io::classset_text(back), text);
    ASSERT_EQ(back.size(), C.size());
    EXPECT_EQ(back.mass, C.mass);
    for (std::size_t k = 0; k < C.size(); ++k) EXPECT_EQ(back.right_orders[k], C.right_orders[k]);
    // the rebuilt set gives the same Brandt matrices
    EXPECT_EQ(brandt_table(back, 3), table(3, 1, n0, 6).truncated(3));
  }
  const io::json j = io::classset_to_json(level(3, 1, kCubic));
  EXPECT_EQ(j.at("mass"), "13/4");
  io::json bad = j;
  bad["classes"][1]["weight"] = 2;
  EXPECT_THROW(io::classset_from_json(bad), io::FormatError);
  bad = j;
  bad["mass"] = "7/2";
  EXPECT_THROW(io::classset_from_json(bad), io::FormatError);
}

TEST(Io, BrandtCacheRoundTripAndIntegrity) {
  const ClassSet& C = level(3, 1, kCubic);
  const BrandtTable& T = table(3, 1, kCubic, 4);
  const fs::path dir = scratch("cache");
  io::BrandtCache cache(dir, C);
  EXPECT_EQ(cache.cached_through(), -1);
  for (int d = 0; d <= 4; ++d) EXPECT_TRUE(cache.store_degree(T, d));
  EXPECT_FALSE(cache.store_degree(T, 2));
  EXPECT_EQ(cache.cached_through(), 4);
  EXPECT_EQ(cache.entry_count(), 1u + 3 + 9 + 27 + 81);
  EXPECT_EQ(cache.load_table(4), T);
  // write -> read -> write is byte-identical
  const std::string before = io::read_file(cache.file(3));
  BrandtTable back = cache.load_table(4);
  EXPECT_EQ(cache.degree_text(back, 3), before);

  // perturb one entry while keeping the file well formed
  io::json j = io::json::parse(before);
  auto& rows = j["matrices"][5]["rows"];
  rows[0][0] = rows[0][0].get<std::int64_t>() + 1;
  io::atomic_write(cache.file(3), j.dump());
  EXPECT_THROW(cache.load_degree(3), io::FormatError);
  io::atomic_write(cache.file(3), before);
  EXPECT_NO_THROW(cache.load_degree(3));

  // a cache from another level is rejected
  io::BrandtCache other(dir, level(3, 1, kLinear));
  EXPECT_THROW(other.load_degree(0), io::FormatError);
  for (const auto& e : fs::directory_iterator(dir)) EXPECT_EQ(e.path().string().find(".tmp."), std::string::npos);
}

TEST(Io, SeriesRoundTrip) {
  const ClassSet& C = level(3, 1, kCubic);
  const CoefficientSeries g = cuspidal_part(C, table(3, 1, kCubic, 4), 0, 1, 4);
  const io::json j = io::series_to_json(g);
  EXPECT_EQ(j.at("kappa"), "0/1");
  EXPECT_EQ(io::series_from_json(C.field(), j), g);
  EXPECT_EQ(io::series_to_json(io::series_from_json(C.field(), j)).dump(), j.dump());
}

TEST(Io, ReportCsv) {
  const ClassSet& C = level(3, 1, kCubic);
  const EquidReport rep = equid_experiment(C, table(3, 1, kCubic, 4), 0, 4);
  const std::string csv = io::equid_csv(rep);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "m,deg_m_n0,i,tv_distance,normalized_ratio,certified_bound_C");
  EXPECT_NE(csv.find("\n\"[1]\",0,1,"), std::string::npos);
  EXPECT_EQ(io::decimal12(1.0 / 3.0), "0.333333333333");
}
