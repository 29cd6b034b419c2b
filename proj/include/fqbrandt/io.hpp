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

#ifndef FQBRANDT_IO_HPP
#define FQBRANDT_IO_HPP

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "forms.hpp"
#include "spectral.hpp"

namespace fqbrandt::io {

using json = nlohmann::json;

/// Malformed or inconsistent persisted data.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Files

/// Write through a temporary file in the same directory, then rename.
inline void atomic_write(const std::filesystem::path& path, const std::string& data) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << data;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline json parse(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(what + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Scalars

inline json elem_to_json(const Field& F, Elem x) {
  if (F.is_prime_field()) return x;
  json a = json::array();
  for (auto c : F.coords(x)) a.push_back(c);
  return a;
}

inline Elem elem_from_json(const Field& F, const json& j) {
  if (F.is_prime_field()) {
    if (!j.is_number_unsigned() || j.get<std::uint64_t>() >= F.p()) throw FormatError("coefficient out of range");
    return Elem(j.get<std::uint64_t>());
  }
  if (!j.is_array() || j.size() != F.e()) throw FormatError("extension coefficient must have length e");
  std::vector<std::uint32_t> c;
  for (const auto& x : j) {
    if (!x.is_number_unsigned() || x.get<std::uint64_t>() >= F.p()) throw FormatError("coefficient out of range");
    c.push_back(std::uint32_t(x.get<std::uint64_t>()));
  }
  return F.from_coords(c);
}

/// Little-endian coefficient list; the zero polynomial is [].
inline json poly_to_json(const Poly& f) {
  json a = json::array();
  for (Elem c : f.coeffs()) a.push_back(elem_to_json(f.field(), c));
  return a;
}

inline Poly poly_from_json(const Field& F, const json& j) {
  if (!j.is_array()) throw FormatError("polynomial must be a coefficient array");
  std::vector<Elem> c;
  for (const auto& x : j) c.push_back(elem_from_json(F, x));
  if (!c.empty() && c.back() == 0) throw FormatError("polynomial has a trailing zero coefficient");
  return Poly(F, std::move(c));
}

/// Text key of a polynomial: its JSON coefficient list.
inline std::string poly_key(const Poly& f) { return poly_to_json(f).dump(); }

/// "num/den" in lowest terms with den > 0.
inline std::string rational_text(const mpq_class& x) {
  mpq_class y = x;
  y.canonicalize();
  return y.get_num().get_str() + "/" + y.get_den().get_str();
}

inline mpq_class rational_from_text(const std::string& s) {
  static const std::regex re("(-?[0-9]+)/([1-9][0-9]*)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw FormatError("rational must be written num/den: " + s);
  mpq_class v(mpz_class(m[1].str()), mpz_class(m[2].str()));
  v.canonicalize();
  if (rational_text(v) != s) throw FormatError("rational not in lowest terms: " + s);
  return v;
}

// ---------------------------------------------------------------------------
// Lattices and class sets

/// {denominator, basis}: basis[k] holds the coordinates of the k-th generator.
inline json lattice_to_json(const Lattice& L) {
  json basis = json::array();
  for (const QVec& v : L.basis()) {
    json col = json::array();
    for (const Poly& x : v) col.push_back(poly_to_json(x));
    basis.push_back(col);
  }
  return json{{"basis", basis}, {"denominator", poly_to_json(L.den())}};
}

inline Lattice lattice_from_json(const AlgebraPtr& D, const json& j) {
  const Field& F = D->field();
  if (!j.is_object() || !j.contains("basis") || !j.contains("denominator")) throw FormatError("malformed lattice");
  const json& b = j.at("basis");
  if (!b.is_array() || b.size() != 4) throw FormatError("lattice basis must have 4 vectors");
  std::vector<QVec> gens;
  for (const auto& col : b) {
    if (!col.is_array() || col.size() != 4) throw FormatError("lattice vector must have 4 coordinates");
    QVec v;
    for (int r = 0; r < 4; ++r) v[r] = poly_from_json(F, col[r]);
    gens.push_back(v);
  }
  const Poly den = poly_from_json(F, j.at("denominator"));
  Lattice L = Lattice::from_generators(D, gens, den);
  if (lattice_to_json(L) != j) throw FormatError("lattice record is not in canonical form");
  return L;
}

inline json field_to_json(const Field& F) { return json{{"e", F.e()}, {"p", F.p()}}; }

inline FieldPtr field_from_json(const json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("e")) throw FormatError("malformed field record");
  return Field::create(j.at("p").get<std::uint32_t>(), j.at("e").get<std::uint32_t>());
}

inline json classset_to_json(const ClassSet& C) {
  json classes = json::array();
  for (std::size_t k = 0; k < C.size(); ++k)
    classes.push_back(json{{"ideal", lattice_to_json(C.ideals[k])},
                           {"index", k + 1},
                           {"norm", poly_to_json(C.norms[k])},
                           {"units", C.units[k]},
                           {"weight", C.weights[k]}});
  return json{{"algebra", json{{"a", poly_to_json(C.D->a())}, {"b", poly_to_json(C.D->b())}}},
              {"certified", C.certified},
              {"classes", classes},
              {"field", field_to_json(C.field())},
              {"format", "fqbrandt.classset/1"},
              {"mass", rational_text(C.mass)},
              {"maximal_order", lattice_to_json(C.R)},
              {"n", C.size()},
              {"n0", poly_to_json(C.n0)}};
}

inline std::string classset_text(const ClassSet& C) { return classset_to_json(C).dump(2) + "\n"; }

/// Rebuild a class set; right orders are recomputed and every stored
/// invariant (unit counts, mass, I_1 = R) is revalidated.
inline ClassSet classset_from_json(const json& j) {
  try {
    if (j.value("format", "") != "fqbrandt.classset/1") throw FormatError("not a class set record");
    const FieldPtr F = field_from_json(j.at("field"));
    const json& alg = j.at("algebra");
    auto D = std::make_shared<QuatAlgebra>(F, poly_from_json(*F, alg.at("a")), poly_from_json(*F, alg.at("b")));
    ClassSet C;
    C.D = D;
    C.n0 = poly_from_json(*F, j.at("n0"));
    C.R = lattice_from_json(D, j.at("maximal_order"));
    C.certified = j.at("certified").get<bool>();
    for (const auto& c : j.at("classes")) {
      const Lattice I = lattice_from_json(D, c.at("ideal"));
      C.ideals.push_back(I);
      C.right_orders.push_back(right_order(I));
      C.norms.push_back(poly_from_json(*F, c.at("norm")));
      C.units.push_back(c.at("units").get<std::uint64_t>());
      C.weights.push_back(c.at("weight").get<std::uint64_t>());
      if (C.weights.back() == 0 || C.units.back() != C.weights.back() * (F->q() - 1))
        throw FormatError("class " + std::to_string(C.size()) + ": units and weight disagree");
      if (c.at("index").get<std::size_t>() != C.size()) throw FormatError("class indices out of order");
      C.mass += mpq_class(1, C.weights.back());
    }
    if (C.ideals.empty() || !(C.ideals[0] == C.R)) throw FormatError("first class must be the maximal order");
    if (j.at("n").get<std::size_t>() != C.size()) throw FormatError("class count mismatch");
    if (rational_from_text(j.at("mass").get<std::string>()) != C.mass) throw FormatError("mass does not match weights");
    return C;
  } catch (const json::exception& e) {
    throw FormatError(std::string("class set: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Brandt cache: one file per degree, one matrix per monic m

inline json brandt_matrix_to_json(const Poly& m, const IntMatrix& B) {
  json rows = json::array();
  for (std::size_t i = 0; i < B.n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < B.n; ++j) row.push_back(B(i, j));
    rows.push_back(row);
  }
  return json{{"m", poly_to_json(m)}, {"rows", rows}};
}

/// Identifies the class set a cache belongs to.
inline json level_fingerprint(const ClassSet& C) {
  json w = json::array();
  for (auto x : C.weights) w.push_back(x);
  return json{{"algebra", json{{"a", poly_to_json(C.D->a())}, {"b", poly_to_json(C.D->b())}}},
              {"field", field_to_json(C.field())},
              {"n", C.size()},
              {"n0", poly_to_json(C.n0)},
              {"weights", w}};
}

class BrandtCache {
 public:
  BrandtCache(std::filesystem::path dir, const ClassSet& C) : dir_(std::move(dir)), C_(&C), level_(level_fingerprint(C)) {}

  std::filesystem::path file(int d) const { return dir_ / ("brandt_deg" + std::to_string(d) + ".json"); }
  bool has_degree(int d) const { return std::filesystem::exists(file(d)); }
  /// Largest D with every degree 0..D present, or -1.
  int cached_through() const {
    int d = -1;
    while (has_degree(d + 1)) ++d;
    return d;
  }

  /// Compact text of one degree: a header line and one matrix per line.
  std::string degree_text(const BrandtTable& T, int d) const {
    const auto& mats = T.degree(d);
    std::string s = "{\"degree\":" + std::to_string(d) + ",\"format\":\"fqbrandt.brandt/1\",\"level\":" + level_.dump() +
                    ",\"matrices\":[\n";
    for (std::size_t k = 0; k < mats.size(); ++k) {
      s += brandt_matrix_to_json(monic_from_index(T.field(), d, k), mats[k]).dump();
      s += k + 1 < mats.size() ? ",\n" : "\n";
    }
    return s + "]}\n";
  }

  /// Writes degree d unless it is already cached; returns whether it wrote.
  bool store_degree(const BrandtTable& T, int d) const {
    if (has_degree(d)) return false;
    atomic_write(file(d), degree_text(T, d));
    return true;
  }

  /// Loads and revalidates degree d: level fingerprint, entry order, shape,
  /// non-negativity, row sums sigma_n0(m), and B(1) = Id.
  std::vector<IntMatrix> load_degree(int d) const {
    const std::string where = file(d).string();
    const json j = parse(read_file(file(d)), where);
    const Field& F = C_->field();
    const std::size_t n = C_->size();
    std::vector<IntMatrix> out;
    try {
      if (j.at("format") != "fqbrandt.brandt/1" || j.at("degree").get<int>() != d)
        throw FormatError(where + ": wrong format or degree");
      if (j.at("level") != level_) throw FormatError(where + ": cache belongs to a different class set");
      const json& mats = j.at("matrices");
      if (mats.size() != monic_count(F, d)) throw FormatError(where + ": wrong number of matrices");
      for (std::size_t k = 0; k < mats.size(); ++k) {
        const Poly m = poly_from_json(F, mats[k].at("m"));
        if (!(m == monic_from_index(F, d, k))) throw FormatError(where + ": entries out of order at " + std::to_string(k));
        const json& rows = mats[k].at("rows");
        if (rows.size() != n) throw FormatError(where + ": wrong matrix size for m = " + m.to_string());
        IntMatrix B(n);
        for (std::size_t i = 0; i < n; ++i) {
          if (rows[i].size() != n) throw FormatError(where + ": wrong row length for m = " + m.to_string());
          for (std::size_t jj = 0; jj < n; ++jj) B(i, jj) = rows[i][jj].get<std::int64_t>();
        }
        validate(m, B, where);
        out.push_back(std::move(B));
      }
    } catch (const json::exception& e) {
      throw FormatError(where + ": " + e.what());
    }
    return out;
  }

  BrandtTable load_table(int D) const {
    BrandtTable T(C_->field(), C_->size(), D);
    for (int d = 0; d <= D; ++d) {
      if (!has_degree(d)) throw FormatError("Brandt cache has no degree " + std::to_string(d) + " in " + dir_.string());
      T.degree(d) = load_degree(d);
    }
    return T;
  }

  std::size_t entry_count() const {
    std::size_t total = 0;
    for (int d = 0; d <= cached_through(); ++d) total += std::size_t(monic_count(C_->field(), d));
    return total;
  }

 private:
  void validate(const Poly& m, const IntMatrix& B, const std::string& where) const {
    const auto sigma = std::int64_t(sigma_n0(m, C_->n0));
    for (std::size_t i = 0; i < B.n; ++i) {
      for (std::size_t j = 0; j < B.n; ++j)
        if (B(i, j) < 0) throw FormatError(where + ": negative entry at m = " + m.to_string());
      if (B.row_sum(i) != sigma)
        throw FormatError(where + ": row sum " + std::to_string(i + 1) + " of B(" + m.to_string() + ") is " +
                          std::to_string(B.row_sum(i)) + ", expected " + std::to_string(sigma));
    }
    if (m.deg() == 0 && !(B == IntMatrix::identity(B.n))) throw FormatError(where + ": B(1) is not the identity");
  }

  std::filesystem::path dir_;
  const ClassSet* C_;
  json level_;
};

// ---------------------------------------------------------------------------
// Series and reports

inline json series_to_json(const CoefficientSeries& s) {
  json coeffs = json::array();
  for (int d = 0; d <= s.max_degree(); ++d) {
    const auto& row = s.degree(d);
    for (std::size_t k = 0; k < row.size(); ++k)
      coeffs.push_back(json{{"c", rational_text(row[k])}, {"m", poly_to_json(monic_from_index(s.field(), d, k))}});
  }
  return json{{"coefficients", coeffs},
              {"kappa", rational_text(s.kappa())},
              {"level", poly_to_json(s.level())},
              {"max_degree", s.max_degree()}};
}

inline CoefficientSeries series_from_json(const Field& F, const json& j) {
  try {
    const int D = j.at("max_degree").get<int>();
    CoefficientSeries s(F, poly_from_json(F, j.at("level")), D, rational_from_text(j.at("kappa").get<std::string>()));
    std::size_t seen = 0;
    for (const auto& c : j.at("coefficients")) {
      s.at(poly_from_json(F, c.at("m"))) = rational_from_text(c.at("c").get<std::string>());
      ++seen;
    }
    std::size_t expected = 0;
    for (int d = 0; d <= D; ++d) expected += std::size_t(monic_count(F, d));
    if (seen != expected) throw FormatError("series: wrong number of coefficients");
    return s;
  } catch (const json::exception& e) {
    throw FormatError(std::string("series: ") + e.what());
  }
}

/// Decimal with 12 significant digits.
inline std::string decimal12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// CSV cell holding the coefficient-list text of a polynomial, quoted.
inline std::string poly_cell(const Poly& f) { return "\"" + poly_key(f) + "\""; }

inline std::string equid_csv(const EquidReport& rep) {
  std::string s = "m,deg_m_n0,i,tv_distance,normalized_ratio,certified_bound_C\n";
  const std::string C = decimal12(rep.bound());
  for (const auto& r : rep.rows)
    s += poly_cell(r.m) + "," + std::to_string(r.deg_coprime) + "," + std::to_string(r.source + 1) + "," +
         decimal12(r.distance.get_d()) + "," + decimal12(r.ratio()) + "," + C + "\n";
  return s;
}

/// Exact variant of the equidistribution report.
inline json equid_to_json(const EquidReport& rep) {
  json rows = json::array();
  for (const auto& r : rep.rows)
    rows.push_back(json{{"deg_m_n0", r.deg_coprime},
                        {"i", r.source + 1},
                        {"m", poly_to_json(r.m)},
                        {"normalized_ratio_sq", rational_text(r.ratio_sq)},
                        {"tv_distance", rational_text(r.distance)}});
  json maxima = json::object();
  for (const auto& [d, v] : rep.max_by_degree) maxima[std::to_string(d)] = rational_text(v);
  return json{{"bounded", rep.bounded()},
              {"certified_bound_C_sq", rational_text(rep.bound_sq)},
              {"max_degree", rep.D},
              {"max_distance_by_degree", maxima},
              {"monotone", rep.monotone()},
              {"rows", rows},
              {"source", rep.source + 1}};
}

inline std::string ramanujan_csv(const std::vector<std::pair<std::pair<std::size_t, std::size_t>, RamanujanTable>>& tabs) {
  std::string s = "i,j,m,deg_m,rho\n";
  for (const auto& [ij, tab] : tabs)
    for (const auto& r : tab.rows)
      s += std::to_string(ij.first + 1) + "," + std::to_string(ij.second + 1) + "," + poly_cell(r.m) + "," +
           std::to_string(r.m.deg()) + "," + decimal12(r.rho()) + "\n";
  return s;
}

inline std::string spectral_csv(const std::vector<SpectralReport>& reps) {
  std::string s = "q,deg_q,sigma,charpoly,real_rooted,bound_sq,within_bound,sigma_multiplicity\n";
  for (const auto& r : reps) {
    const std::string cp = "\"" + r.charpoly.to_string() + "\"";
    s += poly_cell(r.prime) + "," + std::to_string(r.prime.deg()) + "," + std::to_string(r.sigma) + "," + cp + "," +
         (r.real_rooted ? "1" : "0") + "," + r.bound_sq.get_str() + "," + (r.within_bound ? "1" : "0") + "," +
         std::to_string(r.sigma_multiplicity) + "\n";
  }
  return s;
}

}  // namespace fqbrandt::io

#endif  // FQBRANDT_IO_HPP
