#include "doctest.h"

#include <fstream>

#include "json.hpp"
#include "padicg/dwork.hpp"
#include "padicg/gamma_cache.hpp"

using namespace padicg;

namespace {

// Affine points over F_p with plain integer arithmetic.
std::uint64_t naive_affine(unsigned d, std::uint64_t p, std::uint64_t lambda) {
  std::vector<std::uint64_t> x(d, 0);
  std::uint64_t count = 0;
  while (true) {
    std::uint64_t sum = 0, prod = d * lambda % p;
    for (auto v : x) {
      std::uint64_t pw = 1;
      for (unsigned k = 0; k < d; ++k) pw = pw * v % p;
      sum = (sum + pw) % p;
      prod = prod * v % p;
    }
    count += sum == prod;
    unsigned i = 0;
    while (i < d && ++x[i] == p) x[i++] = 0;
    if (i == d) break;
  }
  return count;
}

std::uint64_t naive_curve(std::uint64_t p, std::uint64_t lambda) {
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < p; ++x)
    for (std::uint64_t y = 0; y < p; ++y)
      count += (x * x * x + y * y * y + 1) % p == 3 * lambda * x % p * y % p;
  return count;
}

}  // namespace

TEST_CASE("brute counts") {
  const auto f5 = build_field(5, 1), f7 = build_field(7, 1);
  CHECK(brute_count_affine(DworkInstance::make(3, f5, FqElem{0})) == 25);
  CHECK(projective_count(DworkInstance::make(3, f5, FqElem{0})) == 6);
  CHECK(brute_count_affine(DworkInstance::make(5, f7, FqElem{0})) == 2401);
  CHECK(projective_count(DworkInstance::make(5, f7, FqElem{0})) == 400);
}

TEST_CASE("brute counts against plain enumeration") {
  for (auto [d, p] : {std::pair{3u, 5u}, {3u, 11u}, {5u, 7u}, {7u, 3u}, {5u, 3u}}) {
    const auto f = build_field(p, 1);
    for (std::uint32_t l = 0; l < p; ++l) {
      const auto inst = DworkInstance::make(d, f, FqElem{l});
      CAPTURE(d);
      CAPTURE(p);
      CAPTURE(l);
      const auto n = naive_affine(d, p, l);
      CHECK(brute_count_affine(inst) == n);
      CHECK(brute_count_affine(inst, {.workers = 3}) == n);
    }
  }
}

TEST_CASE("hypotheses are enforced") {
  const auto f7 = build_field(7, 1);
  try {
    DworkInstance::make(7, f7, FqElem{1});
    FAIL("p = d accepted");
  } catch (const InvalidInstance& e) {
    CHECK(std::string(e.what()).find("p != d") != std::string::npos);
  }
  try {
    DworkInstance::make(3, f7, FqElem{1});
    FAIL("q = 1 mod d accepted");
  } catch (const InvalidInstance& e) {
    CHECK(std::string(e.what()).find("q != 1 (mod d)") != std::string::npos);
  }
  CHECK_THROWS_AS(DworkInstance::make(9, f7, FqElem{1}), InvalidInstance);
  CHECK_THROWS_AS(DworkInstance::make(5, f7, FqElem{7}), InvalidInstance);
  CHECK_THROWS_AS(DworkInstance::make(3, build_field(5, 2), FqElem{1}), InvalidInstance);
}

TEST_CASE("enumeration budget") {
  const auto inst = DworkInstance::make(5, build_field(7, 1), FqElem{1});
  CHECK_THROWS_AS(brute_count_affine(inst, {.budget = 1000}), BudgetExceeded);
  CHECK_THROWS_AS(projective_from_affine(26, 5), std::logic_error);
}

TEST_CASE("default precision") {
  auto M = [](unsigned d, std::uint32_t p, unsigned r) {
    return default_precision(DworkInstance::make(d, build_field(p, r), FqElem{0}));
  };
  CHECK(M(3, 5, 1) == 4);
  CHECK(M(3, 5, 3) == 7);
  CHECK(M(5, 7, 1) == 5);
  CHECK(M(7, 3, 1) == 7);
}

TEST_CASE("theorem and conjecture over prime fields") {
  GammaCache cache;
  for (auto [d, p] : {std::pair{3u, 5u}, {3u, 11u}, {5u, 7u}, {7u, 3u}}) {
    const auto f = build_field(p, 1);
    for (std::uint32_t l = 0; l < p; ++l) {
      const auto rep = verify_theorem(DworkInstance::make(d, f, FqElem{l}), std::nullopt,
                                      {.cache = &cache});
      CAPTURE(d);
      CAPTURE(p);
      CAPTURE(l);
      CHECK(rep.match_theorem);
      REQUIRE(rep.match_conjecture.has_value());
      CHECK(!*rep.match_conjecture);
      CHECK(rep.theorem_value.residue == rep.projective);
    }
  }
}

TEST_CASE("conjectured count at lambda = 0") {
  const auto inst = DworkInstance::make(3, build_field(5, 1), FqElem{0});
  CHECK(conjecture_count(inst, 3).residue == 100);
  CHECK(theorem_count(inst, 3).residue == 6);
  CHECK_THROWS(conjecture_count(DworkInstance::make(5, build_field(3, 2), FqElem{0}), 4));
}

TEST_CASE("theorem over F_9") {
  const auto f = build_field(3, 2);
  GammaCache cache;
  for (std::uint32_t l = 0; l < 9; ++l) {
    const auto rep =
        verify_theorem(DworkInstance::make(5, f, FqElem{l}), std::nullopt, {.cache = &cache});
    CHECK(rep.match_theorem);
    CHECK(!rep.conjecture_value);
  }
}

TEST_CASE("generator choice does not change G") {
  const auto a = build_field(7, 1), b = build_field(7, 1, {.generator_rank = 1});
  const auto ga = dwork_G(DworkInstance::make(5, a, FqElem{3}), 5);
  const auto gb = dwork_G(DworkInstance::make(5, b, FqElem{3}), 5);
  CHECK(ga == gb);
}

TEST_CASE("cubic curve counts") {
  for (std::uint32_t p : {5u, 11u, 17u}) {
    const auto f = build_field(p, 1);
    for (std::uint32_t l = 0; l < p; ++l) CHECK(curve_count(*f, FqElem{l}) == naive_curve(p, l));
  }
}

TEST_CASE("corollary over prime fields") {
  for (std::uint32_t p : {5u, 11u}) {
    const auto f = build_field(p, 1);
    const GContext ctx = corollary_context(f, corollary_precision(f));
    int checked = 0;
    for (std::uint32_t l = 1; l < p; ++l) {
      const auto rep = verify_corollary(f, FqElem{l}, ctx);
      CAPTURE(p);
      CAPTURE(l);
      CHECK(rep.ok());
      checked += !rep.skipped;
    }
    CHECK(checked == static_cast<int>(p) - 2);  // only lambda = 1 has lambda^3 = 1
  }
}

TEST_CASE("corollary preconditions") {
  const auto f5 = build_field(5, 1);
  CHECK(*corollary_precondition(*f5, FqElem{0}) == "requires lambda != 0");
  CHECK(*corollary_precondition(*f5, FqElem{1}) == "requires lambda^3 != 1");
  CHECK(*corollary_precondition(*build_field(7, 1), FqElem{2}) == "requires q != 1 (mod 3)");
  CHECK(*corollary_precondition(*build_field(3, 1), FqElem{2}) == "requires p >= 5");
  CHECK(!corollary_precondition(*f5, FqElem{2}));
  CHECK(verify_corollary(f5, FqElem{1}, 4).skipped);
}

TEST_CASE("golden brute counts") {
  std::ifstream in(PADICG_FIXTURE_DIR "/brute_counts.json");
  REQUIRE(in);
  const auto fixtures = nlohmann::json::parse(in);
  REQUIRE(fixtures.size() >= 30);
  GammaCache cache;
  for (const auto& fx : fixtures) {
    const auto f = build_field(fx["p"].get<std::uint32_t>(), fx["r"].get<unsigned>());
    const auto inst = DworkInstance::make(fx["d"].get<unsigned>(), f,
                                          FqElem{fx["lambda"].get<std::uint32_t>()});
    CAPTURE(fx.dump());
    CHECK(brute_count_affine(inst) == fx["N_affine"].get<std::uint64_t>());
    const auto M = default_precision(inst);
    CHECK(theorem_count(inst, M, {.cache = &cache}).residue == fx["projective"].get<std::uint64_t>());
  }
}

TEST_CASE("cubic curve against the d=3 surface count") {
  CHECK(curve_count(*build_field(5, 1), FqElem{0}) == 5);
  for (auto [p, r] : {std::pair{5u, 1u}, {11u, 1u}, {17u, 1u}, {5u, 3u}}) {
    const auto f = build_field(p, r);
    for (std::uint32_t l = 0; l < f->q(); l += f->q() > 20 ? 17 : 1)
      CHECK(1 + curve_count(*f, FqElem{l}) ==
            projective_count(DworkInstance::make(3, f, FqElem{l})));
  }
}

TEST_CASE("affine counts are 1 mod q-1") {
  for (auto [d, p, r] : {std::tuple{3u, 5u, 1u}, {5u, 3u, 2u}, {3u, 5u, 2u}}) {
    const auto f = build_field(p, r);
    if (f->q() % d == 1) continue;
    for (std::uint32_t l = 0; l < f->q(); ++l)
      CHECK((brute_count_affine(DworkInstance::make(d, f, FqElem{l})) - 1) % (f->q() - 1) == 0);
  }
}
