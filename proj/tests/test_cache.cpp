#include "doctest.h"

#include <fstream>
#include <random>

#include "padicg/gamma_cache.hpp"
#include "padicg/padic.hpp"

using namespace padicg;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("padicg_cache_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("gamma records round-trip through JSON") {
  const GammaRecord rec{5, 3, {0, 3, 17}, {1, 123, 45}};
  const auto doc = rec.to_json();
  const auto back = GammaRecord::from_json(nlohmann::json::parse(doc.dump()));
  CHECK(back.reps == rec.reps);
  CHECK(back.residues == rec.residues);
  CHECK(back.checksum() == rec.checksum());

  auto tampered = doc;
  tampered["residues"][1] = "124";
  CHECK_THROWS_AS(GammaRecord::from_json(tampered), std::runtime_error);
  auto truncated = doc;
  truncated.erase("checksum");
  CHECK_THROWS(GammaRecord::from_json(truncated));
}

TEST_CASE("in-memory cache counts hits and sweeps") {
  GammaCache cache;
  const Modulus m(5, 4);
  const std::vector<std::uint64_t> a{0, 3, 100}, b{3, 100}, c{3, 500};
  CHECK(cache.lookup(5, 4, a) == gamma_sweep_reps(a, m, 1));
  CHECK(cache.sweeps() == 1);
  CHECK(cache.lookup(5, 4, b) == gamma_sweep_reps(b, m, 1));
  CHECK(cache.hits() == 1);
  CHECK(cache.lookup(5, 4, c) == gamma_sweep_reps(c, m, 1));
  CHECK(cache.sweeps() == 2);
  // the union was kept
  CHECK(cache.lookup(5, 4, a) == gamma_sweep_reps(a, m, 1));
  CHECK(cache.hits() == 2);
}

TEST_CASE("disk cache persists and survives corruption") {
  TempDir tmp;
  std::vector<std::string> warnings;
  auto warn = [&](const std::string& m) { warnings.push_back(m); };
  const std::vector<std::uint64_t> reps{0, 3, 24};
  const auto expect = gamma_sweep_reps(reps, Modulus(5, 2), 1);
  {
    GammaCache cache(tmp.path, warn);
    CHECK(cache.lookup(5, 2, reps) == expect);
    CHECK(fs::exists(cache.file_for(5, 2)));
  }
  {
    GammaCache cache(tmp.path, warn);
    CHECK(cache.lookup(5, 2, reps) == expect);
    CHECK(cache.hits() == 1);
    CHECK(cache.sweeps() == 0);
  }
  {
    std::ofstream out(tmp.path / "gamma_p5_M2.json");
    out << "{ not json";
  }
  {
    GammaCache cache(tmp.path, warn);
    CHECK(cache.lookup(5, 2, reps) == expect);
    CHECK(cache.sweeps() == 1);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("recomputing") != std::string::npos);
  }
  // the corrupt file was overwritten with a valid one
  GammaCache again(tmp.path, warn);
  CHECK(again.lookup(5, 2, reps) == expect);
  CHECK(again.hits() == 1);
  CHECK(warnings.size() == 1);
}

TEST_CASE("gamma tables through the cache match uncached ones") {
  GammaCache cache;
  const std::vector<Rational> args{Rational(1, 3), Rational(2, 3), Rational(1, 4)};
  const auto direct = gamma_sweep(args, 5, 5, 1, nullptr);
  const auto cached = gamma_sweep(args, 5, 5, 1, &cache);
  for (const auto& x : args) CHECK(direct.at(x) == cached.at(x));
}
