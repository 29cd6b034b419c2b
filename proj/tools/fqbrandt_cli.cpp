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

// fqbrandt: build class sets, cache Brandt matrices, and run the identity,
// equidistribution and Ramanujan reports.
//
//   fqbrandt build     --config run.json
//   fqbrandt brandt    --config run.json --jobs 4
//   fqbrandt check     --config run.json
//   fqbrandt equid     --config run.json --source-index 1
//   fqbrandt ramanujan --config run.json
//
// Exit status: 0 success, 1 assertion failure, 2 configuration error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "fqbrandt/fqbrandt.hpp"

namespace fs = std::filesystem;
using namespace fqbrandt;
using io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitConfig = 2;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failed invariant; reported with exit status 1.
class AssertionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint32_t p = 3;
  std::uint32_t e = 1;
  std::vector<json> n0;
  int max_degree = 6;
  std::size_t source_index = 1;
  fs::path out = "out";
  std::optional<fs::path> cache;
  std::uint64_t seed = 1;
  unsigned jobs = 0;

  fs::path cache_dir() const { return cache ? *cache : out / "cache"; }
  fs::path classset_file() const { return out / "classset.json"; }
};

struct Overrides {
  std::string config;
  std::optional<std::string> out, cache, n0;
  std::optional<int> max_degree;
  std::optional<std::size_t> source_index;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> jobs;
  std::optional<std::uint32_t> p, e;
};

RunConfig load_config(const Overrides& ov) {
  RunConfig cfg;
  if (!ov.config.empty()) {
    json j;
    try {
      j = json::parse(io::read_file(ov.config));
    } catch (const std::exception& ex) {
      throw ConfigError("cannot read config " + ov.config + ": " + ex.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const std::vector<std::string> known{"p", "e", "n0", "max_brandt_degree", "source_index",
                                                "out", "cache", "seed", "jobs"};
    for (const auto& [key, value] : j.items())
      if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("unknown config key: " + key);
    try {
      if (j.contains("p")) cfg.p = j["p"].get<std::uint32_t>();
      if (j.contains("e")) cfg.e = j["e"].get<std::uint32_t>();
      if (j.contains("n0")) cfg.n0 = j["n0"].get<std::vector<json>>();
      if (j.contains("max_brandt_degree")) cfg.max_degree = j["max_brandt_degree"].get<int>();
      if (j.contains("source_index")) cfg.source_index = j["source_index"].get<std::size_t>();
      if (j.contains("out")) cfg.out = j["out"].get<std::string>();
      if (j.contains("cache")) cfg.cache = fs::path(j["cache"].get<std::string>());
      if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
      if (j.contains("jobs")) cfg.jobs = j["jobs"].get<unsigned>();
    } catch (const json::exception& ex) {
      throw ConfigError(std::string("bad config value: ") + ex.what());
    }
  }
  if (ov.p) cfg.p = *ov.p;
  if (ov.e) cfg.e = *ov.e;
  if (ov.n0) {
    try {
      const json j = json::parse(*ov.n0);
      cfg.n0 = (j.is_array() && !j.empty() && j[0].is_array()) ? j.get<std::vector<json>>() : std::vector<json>{j};
    } catch (const json::exception& ex) {
      throw ConfigError(std::string("bad --n0: ") + ex.what());
    }
  }
  if (ov.out) cfg.out = *ov.out;
  if (ov.cache) cfg.cache = fs::path(*ov.cache);
  if (ov.max_degree) cfg.max_degree = *ov.max_degree;
  if (ov.source_index) cfg.source_index = *ov.source_index;
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.jobs) cfg.jobs = *ov.jobs;
  if (cfg.jobs == 0) cfg.jobs = std::max(1u, std::thread::hardware_concurrency());

  if (cfg.n0.size() != 1) throw ConfigError("n0 must list exactly one prime");
  if (cfg.max_degree < 2 || cfg.max_degree > 31) throw ConfigError("max_brandt_degree must lie in [2, 31]");
  if (cfg.source_index < 1) throw ConfigError("source_index is 1-based");
  return cfg;
}

FieldPtr make_field(const RunConfig& cfg) {
  try {
    return Field::create(cfg.p, cfg.e);
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(ex.what());
  }
}

Poly level_of(const RunConfig& cfg, const Field& F) {
  Poly n0;
  try {
    n0 = io::poly_from_json(F, cfg.n0[0]);
  } catch (const std::exception& ex) {
    throw ConfigError(std::string("bad n0: ") + ex.what());
  }
  if (n0.is_zero() || !n0.is_monic() || !is_irreducible(n0)) throw ConfigError("n0 must be a monic irreducible");
  return n0;
}

ClassSet load_classset(const RunConfig& cfg) {
  if (!fs::exists(cfg.classset_file()))
    throw ConfigError("no class set at " + cfg.classset_file().string() + "; run `fqbrandt build` first");
  ClassSet C;
  try {
    C = io::classset_from_json(io::parse(io::read_file(cfg.classset_file()), cfg.classset_file().string()));
  } catch (const io::FormatError& ex) {
    throw AssertionFailure(ex.what());
  }
  if (C.field().p() != cfg.p || C.field().e() != cfg.e || !(io::poly_to_json(C.n0) == io::poly_to_json(level_of(cfg, C.field()))))
    throw ConfigError("class set at " + cfg.classset_file().string() + " was built for a different configuration");
  if (cfg.source_index > C.size())
    throw ConfigError("source_index " + std::to_string(cfg.source_index) + " exceeds the class number " + std::to_string(C.size()));
  return C;
}

BrandtTable load_table(const RunConfig& cfg, const ClassSet& C) {
  const io::BrandtCache cache(cfg.cache_dir(), C);
  if (cache.cached_through() < cfg.max_degree)
    throw ConfigError("Brandt cache in " + cfg.cache_dir().string() + " stops at degree " +
                      std::to_string(cache.cached_through()) + "; run `fqbrandt brandt` first");
  try {
    return cache.load_table(cfg.max_degree);
  } catch (const io::FormatError& ex) {
    throw AssertionFailure(std::string("cache integrity: ") + ex.what());
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// Commands

int cmd_build(const RunConfig& cfg) {
  const FieldPtr F = make_field(cfg);
  const Poly n0 = level_of(cfg, *F);
  const auto t0 = std::chrono::steady_clock::now();
  const ClassSet C = build_class_set(F, n0);
  io::atomic_write(cfg.classset_file(), io::classset_text(C));
  std::cout << "class set: n = " << C.size() << ", weights =";
  for (auto w : C.weights) std::cout << ' ' << w;
  std::cout << ", mass = " << io::rational_text(C.mass) << (C.certified ? " (certified)" : " (uncertified)") << "\n"
            << "algebra: (" << C.D->a() << ", " << C.D->b() << ")\n"
            << "wrote " << cfg.classset_file().string() << " in " << seconds_since(t0) << " s\n";
  return kExitOk;
}

int cmd_brandt(const RunConfig& cfg) {
  const ClassSet C = load_classset(cfg);
  const io::BrandtCache cache(cfg.cache_dir(), C);
  const int have = cache.cached_through();
  if (have >= cfg.max_degree) {
    std::cout << "cache hit: degrees 0.." << have << " present, nothing to compute (" << cache.entry_count()
              << " matrices)\n";
    return kExitOk;
  }
  // cached degrees are never recomputed into the cache: they are loaded and
  // must agree with the fresh table
  BrandtTable cached;
  try {
    if (have >= 0) cached = cache.load_table(have);
  } catch (const io::FormatError& ex) {
    throw AssertionFailure(std::string("cache integrity: ") + ex.what());
  }
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t pairs = C.size() * (C.size() + 1) / 2;
  std::size_t done = 0;
  const BrandtTable T = brandt_table(C, cfg.max_degree, cfg.jobs, [&](std::size_t i, std::size_t j) {
    ++done;
    std::cerr << "  pair (" << i + 1 << "," << j + 1 << ") " << done << "/" << pairs << "  " << seconds_since(t0)
              << " s\n";
  });
  for (int d = 0; d <= have; ++d)
    if (!(T.degree(d) == cached.degree(d)))
      throw AssertionFailure("cached degree " + std::to_string(d) + " disagrees with a fresh computation");
  int written = 0;
  for (int d = have + 1; d <= cfg.max_degree; ++d) written += cache.store_degree(T, d) ? 1 : 0;
  std::cout << "computed Brandt matrices through degree " << cfg.max_degree << " in " << seconds_since(t0)
            << " s; wrote " << written << " degree files; cache holds " << cache.entry_count() << " matrices\n";
  return kExitOk;
}

struct Verdicts {
  bool all_ok = true;
  void report(const std::string& name, const CheckReport& r) {
    if (r.ok()) {
      std::cout << "PASS " << name << " (" << r.checked << " checks)\n";
    } else {
      all_ok = false;
      std::cout << "FAIL " << name << ": " << r.failures.size() << " failures; first: " << r.failures.front() << "\n";
    }
  }
};

std::vector<Poly> spectral_primes(const ClassSet& C, int D) {
  std::vector<Poly> out;
  for (int d = 1; d <= std::min(3, D); ++d)
    for (const Poly& P : monic_irreducibles(C.field(), d))
      if (!P.divides(C.n0)) out.push_back(P);
  return out;
}

int cmd_check(const RunConfig& cfg) {
  const ClassSet C = load_classset(cfg);
  const BrandtTable T = load_table(cfg, C);
  const int D = cfg.max_degree;
  Verdicts v;
  v.report("anchor: B(1) = Id, row sums sigma", check_anchor(T, C.n0));
  v.report("weighted symmetry", check_weighted_symmetry(T, C.weights));
  v.report("Hecke identities", check_hecke_identities(T, C.n0));
  v.report("reduction witnesses", check_reduction(T, C.n0));
  v.report("decomposition Theta = g + E / (w mass)", check_decomposition(C, T, D));
  v.report("theta covariance", check_theta_covariance(C, T, D));

  CheckReport bounds;
  for (const Poly& P : spectral_primes(C, D)) {
    const SpectralReport r = spectral_check(C, T, P);
    ++bounds.checked;
    if (!r.ok()) bounds.fail("B(" + P.to_string() + "): " + (r.error.empty() ? "root outside the bound" : r.error));
  }
  v.report("spectral bound, primes of degree <= 3", bounds);

  // measures: random divisors of positive degree, seeded
  CheckReport meas;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> coef(0, 5);
  const auto monics = detail::all_monic_up_to(C.field(), D / 2);
  std::uniform_int_distribution<std::size_t> pick(0, monics.size() - 1);
  for (int trial = 0; trial < 64; ++trial) {
    PicElement e;
    e.a.assign(C.size(), 0);
    for (auto& x : e.a) x = coef(rng);
    e.a[0] += 1;
    const Poly& m = monics[pick(rng)];
    const Poly& m2 = monics[pick(rng)];
    ++meas.checked;
    const mpz_class want = e.degree() * detail::to_mpz(sigma_n0(m, C.n0));
    if (hecke_action(T, m, e).degree() != want) meas.fail("deg t_m e at m = " + m.to_string());
    if (gcd(m, m2).is_one() &&
        !(measure_of(hecke_action(T, m, hecke_action(T, m2, e))) == measure_of(hecke_action(T, m * m2, e))))
      meas.fail("measure multiplicativity at " + m.to_string() + ", " + m2.to_string());
  }
  if (is_irreducible(C.n0)) {
    ++meas.checked;
    if (!supersingular_report(C).matches_mass_measure) meas.fail("supersingular weights differ from the mass measure");
  }
  v.report("measures (seed " + std::to_string(cfg.seed) + ")", meas);

  std::cout << (v.all_ok ? "all checks passed\n" : "some checks failed\n");
  return v.all_ok ? kExitOk : kExitAssertion;
}

int cmd_equid(const RunConfig& cfg) {
  const ClassSet C = load_classset(cfg);
  const BrandtTable T = load_table(cfg, C);
  const EquidReport rep = equid_experiment(C, T, cfg.source_index - 1, cfg.max_degree);
  io::atomic_write(cfg.out / "equid.csv", io::equid_csv(rep));
  io::atomic_write(cfg.out / "equid.json", io::equid_to_json(rep).dump(1) + "\n");
  std::cout << "source i = " << cfg.source_index << ", degrees 0.." << cfg.max_degree << ", " << rep.rows.size()
            << " rows\n";
  std::cout << "certified bound C (max normalized ratio over deg <= 4) = " << io::decimal12(rep.bound()) << "\n";
  std::cout << "max distance by degree (coprime m):";
  for (const auto& [d, x] : rep.max_by_degree) std::cout << "  " << d << ":" << io::decimal12(x.get_d());
  std::cout << "\n";
  std::cout << (rep.bounded() ? "PASS" : "FAIL") << " normalized ratio bounded by C for deg > 4";
  if (!rep.bounded()) std::cout << " (" << rep.bound_violations.size() << " violations, first " << rep.bound_violations.front() << ")";
  std::cout << "\n" << (rep.monotone() ? "PASS" : "FAIL") << " per-degree maxima weakly decreasing from degree 2";
  if (!rep.monotone()) std::cout << " (first increase at degree " << rep.monotonicity_violations.front() << ")";
  std::cout << "\n" << (rep.formula_mismatches.empty() ? "PASS" : "FAIL") << " distance matches the Brandt-row formula\n";
  std::cout << "wrote " << (cfg.out / "equid.csv").string() << "\n";
  return rep.ok() ? kExitOk : kExitAssertion;
}

int cmd_ramanujan(const RunConfig& cfg) {
  const ClassSet C = load_classset(cfg);
  const BrandtTable T = load_table(cfg, C);
  const int D = cfg.max_degree;
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, RamanujanTable>> tabs;
  bool bounded = true;
  std::map<int, mpq_class> max_by_degree;
  for (std::size_t i = 0; i < C.size(); ++i)
    for (std::size_t j = 0; j < C.size(); ++j) {
      RamanujanTable tab = ramanujan_table(cuspidal_part(C, T, i, j, D), D);
      bounded = bounded && tab.bounded();
      for (const auto& [d, x] : tab.max_sq_by_degree) max_by_degree[d] = std::max(max_by_degree[d], x);
      tabs.emplace_back(std::make_pair(i, j), std::move(tab));
    }
  io::atomic_write(cfg.out / "ramanujan.csv", io::ramanujan_csv(tabs));
  std::cout << "max rho by degree over all (i, j):";
  for (const auto& [d, x] : max_by_degree) std::cout << "  " << d << ":" << io::decimal12(std::sqrt(x.get_d()));
  std::cout << "\n" << (bounded ? "PASS" : "FAIL") << " rho bounded by its maximum over deg <= 4\n";

  std::vector<SpectralReport> reps;
  bool spectral_ok = true;
  for (const Poly& P : spectral_primes(C, D)) {
    reps.push_back(spectral_check(C, T, P));
    spectral_ok = spectral_ok && reps.back().ok();
  }
  io::atomic_write(cfg.out / "spectral.csv", io::spectral_csv(reps));
  std::cout << (spectral_ok ? "PASS" : "FAIL") << " spectral bound |lambda| <= 2 q^(deg/2) for " << reps.size()
            << " primes (eigenvalue lambda = q^deg c_f)\n";
  std::cout << "wrote " << (cfg.out / "ramanujan.csv").string() << " and " << (cfg.out / "spectral.csv").string() << "\n";
  return bounded && spectral_ok ? kExitOk : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fqbrandt: Brandt matrices and Hecke equidistribution over F_q(t)"};
  app.require_subcommand(1);
  Overrides ov;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", ov.config, "JSON run configuration");
    sub->add_option("--out", ov.out, "output directory");
    sub->add_option("--cache", ov.cache, "Brandt cache directory (default <out>/cache)");
    sub->add_option("--max-degree", ov.max_degree, "largest degree of m");
    sub->add_option("--source-index", ov.source_index, "source class (1-based)");
    sub->add_option("--seed", ov.seed, "seed for randomized checks");
    sub->add_option("--jobs", ov.jobs, "worker threads");
    sub->add_option("--p", ov.p, "characteristic");
    sub->add_option("--e", ov.e, "extension degree");
    sub->add_option("--n0", ov.n0, "level as a coefficient list, e.g. [1,2,0,1]");
  };
  std::vector<std::pair<CLI::App*, int (*)(const RunConfig&)>> commands{
      {app.add_subcommand("build", "build the algebra, maximal order and class set"), cmd_build},
      {app.add_subcommand("brandt", "compute and cache Brandt matrices"), cmd_brandt},
      {app.add_subcommand("check", "run the identity checks on the cache"), cmd_check},
      {app.add_subcommand("equid", "equidistribution report"), cmd_equid},
      {app.add_subcommand("ramanujan", "coefficient and spectral bound reports"), cmd_ramanujan}};
  for (auto& [sub, fn] : commands) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }
  try {
    const RunConfig cfg = load_config(ov);
    for (auto& [sub, fn] : commands)
      if (sub->parsed()) return fn(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const AssertionFailure& e) {
    std::cerr << "assertion failure: " << e.what() << "\n";
    return kExitAssertion;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssertion;
  }
  return kExitConfig;
}
