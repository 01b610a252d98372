#include "doctest.h"

#include <random>

#include "padicg/field.hpp"
#include "padicg/padic.hpp"

using namespace padicg;

namespace {

using u128 = unsigned __int128;

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Oracle: x = a/b mod m by brute-force search for the inverse of b, then the
// defining product of Gamma_p at that representative.
std::uint64_t naive_rep(std::int64_t a, std::int64_t b, std::uint64_t m) {
  std::uint64_t binv = 0;
  const std::uint64_t bm = static_cast<std::uint64_t>(((b % static_cast<std::int64_t>(m)) +
                                                      static_cast<std::int64_t>(m)) %
                                                     static_cast<std::int64_t>(m));
  while (static_cast<u128>(binv) * bm % m != 1 % m) ++binv;
  const std::uint64_t am = static_cast<std::uint64_t>(
      ((a % static_cast<std::int64_t>(m)) + static_cast<std::int64_t>(m)) %
      static_cast<std::int64_t>(m));
  return static_cast<std::uint64_t>(static_cast<u128>(am) * binv % m);
}

std::uint64_t naive_gamma(std::uint64_t n, std::uint64_t p, std::uint64_t m) {
  u128 acc = 1 % m;
  for (std::uint64_t j = 1; j < n; ++j)
    if (j % p != 0) acc = acc * j % m;
  std::uint64_t v = static_cast<std::uint64_t>(acc);
  if (n & 1) v = v == 0 ? 0 : m - v;
  return v;
}

}  // namespace

TEST_CASE("rationals") {
  CHECK(Rational::parse("6/-4") == Rational(-3, 2));
  CHECK(Rational::parse(" 5 ") == Rational(5));
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
  CHECK(Rational(-1, 3).floor() == -1);
  CHECK(Rational(-1, 3).frac() == Rational(2, 3));
  CHECK(Rational(7, 3).frac() == Rational(1, 3));
  CHECK(Rational(-6, 3).frac() == Rational(0));
  const auto ff = frac_floor(Rational(-7, 4));
  CHECK(ff.floor == -2);
  CHECK(ff.frac == Rational(1, 4));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(2, 3).str() == "2/3");
}

TEST_CASE("modular arithmetic") {
  const Modulus m(5, 3);
  CHECK(m.value() == 125);
  CHECK(m.inv(4) == 94);
  CHECK_THROWS_AS(m.inv(10), PrecisionError);
  CHECK(m.from_rational(Rational(1, 2)) == 63);
  CHECK_THROWS_AS(m.from_rational(Rational(1, 5)), PrecisionError);
  CHECK_THROWS_AS(Modulus(5, 40), PrecisionError);

  // Barrett path against plain 128-bit reduction
  std::mt19937_64 rng(7);
  for (const auto& mod : {Modulus(3, 20), Modulus(7, 11), Modulus(5, 26), Modulus(3, 39)}) {
    for (int i = 0; i < 2000; ++i) {
      const std::uint64_t a = rng() % mod.value(), b = rng() % mod.value();
      CHECK(mod.mul(a, b) == static_cast<std::uint64_t>(static_cast<u128>(a) * b % mod.value()));
    }
  }
}

TEST_CASE("p-adic approximations") {
  const auto x = PadicApprox::from_rational(Rational(-1, 4), 5, 3);
  CHECK((x * PadicApprox::from_int(4, 5, 3)).residue == 124);
  CHECK(PadicApprox::from_int(-2, 5, 3).centered() == -2);
  CHECK(x.truncate(1).residue == x.residue % 5);
  CHECK_THROWS_AS(x + PadicApprox::from_int(1, 5, 4), PrecisionError);
  CHECK_THROWS_AS(PadicApprox::from_int(10, 5, 3).inverse(), PrecisionError);
}

TEST_CASE("Gamma_p at integers") {
  CHECK(gamma_p(Rational(3), 5, 1).residue == 3);  // -2 mod 5
  CHECK(gamma_p(Rational(3), 5, 4).centered() == -2);
  CHECK(gamma_p(Rational(0), 5, 4).residue == 1);
  CHECK(gamma_p(Rational(1), 5, 4).centered() == -1);
  CHECK(gamma_p(Rational(7), 5, 4).centered() == -(1 * 2 * 3 * 4 * 6));
}

TEST_CASE("Gamma_p sweep") {
  const Modulus m(5, 2);
  const std::vector<std::uint64_t> reps{0, 3};
  CHECK(gamma_sweep_reps(reps, m, 1) == std::vector<std::uint64_t>{1, 23});

  // the chunked sweep agrees with the defining product for every worker count
  const Modulus big(3, 7);
  std::vector<std::uint64_t> all;
  for (std::uint64_t n = 0; n < big.value(); n += 37) all.push_back(n);
  std::vector<std::uint64_t> expect;
  for (auto n : all) expect.push_back(naive_gamma(n, 3, big.value()));
  for (unsigned w : {1u, 2u, 3u, 8u}) CHECK(gamma_sweep_reps(all, big, w) == expect);

  const std::vector<std::uint64_t> unsorted{3, 2};
  CHECK_THROWS(gamma_sweep_reps(unsorted, m, 1));
}

TEST_CASE("Gamma_p at rationals against the defining product") {
  for (auto [p, M] : {std::pair{5u, 4}, {3u, 6}, {7u, 3}}) {
    const std::uint64_t pm = ipow(p, M);
    for (std::int64_t b : {2, 3, 4, 8, 24}) {
      if (b % p == 0) continue;
      for (std::int64_t a = -b; a <= 2 * b; ++a) {
        const Rational x(a, b);
        CAPTURE(x.str());
        CHECK(gamma_p(x, p, M).residue == naive_gamma(naive_rep(a, b, pm), p, pm));
      }
    }
  }
}

TEST_CASE("Gamma_p identities") {
  // Gamma_5(1/2)^2 = -1 (reflection, since 1/2 reduces to 3 mod 5)
  const auto h = gamma_p(Rational(1, 2), 5, 6);
  CHECK((h * h).centered() == -1);

  // functional equation and precision coherence
  for (std::int64_t a = -12; a <= 12; ++a) {
    const Rational x(a, 7);
    const auto g = gamma_p(x, 5, 5);
    const auto g1 = gamma_p(x + Rational(1), 5, 5);
    const auto xp = PadicApprox::from_rational(x, 5, 5);
    if (xp.is_unit())
      CHECK(g1 == -(xp * g));
    else
      CHECK(g1 == -g);
    CHECK(gamma_p(x, 5, 6).truncate(5) == g);
  }
}

TEST_CASE("Gamma_p tables and lookups") {
  const std::vector<Rational> args{Rational(1, 4), Rational(3, 4), Rational(0)};
  const auto tab = gamma_sweep(args, 5, 4, 2, nullptr);
  CHECK(tab.size() == 3);
  for (const auto& x : args) CHECK(tab.at(x) == gamma_p(x, 5, 4));
  CHECK_THROWS_AS(tab.residue(Rational(1, 2)), std::out_of_range);
}

TEST_CASE("Z_q arithmetic") {
  const auto f = build_field(3, 2);
  std::mt19937 rng(3);
  for (int i = 0; i < 50; ++i) {
    std::vector<std::uint64_t> c{rng() % 729, rng() % 729};
    const auto x = ZqApprox::from_coeffs(f, c, 6);
    if (!x.is_unit()) continue;
    CHECK(x * x.inverse() == ZqApprox::constant(f, 1, 6));
    CHECK(x.pow(-3) * x.pow(3) == ZqApprox::constant(f, 1, 6));
  }
  const auto three = ZqApprox::constant(f, 3, 4);
  CHECK(!three.is_unit());
  CHECK(three.divide_by_p() == ZqApprox::constant(f, 1, 3));
  CHECK(ZqApprox::constant(f, 5, 4).in_zp());
  CHECK(!ZqApprox::lift(f, FqElem{3}, 4).in_zp());
  CHECK(ZqApprox::lift(f, FqElem{7}, 4).reduce() == FqElem{7});
}

TEST_CASE("Teichmueller lifts") {
  const auto f5 = build_field(5, 1);
  CHECK(teichmuller(f5, FqElem{2}, 3).coeffs()[0] == 57);
  for (auto [p, r] : {std::pair{5u, 1u}, {3u, 2u}, {5u, 2u}, {7u, 1u}}) {
    const auto f = build_field(p, r);
    const CharacterTable chars(f, 5);
    const auto one = ZqApprox::constant(f, 1, 5);
    for (auto a : f->enumerate()) {
      if (a == f->zero()) {
        CHECK(chars.omega(a).is_zero());
        CHECK(chars.omega_pow(a, 0).is_zero());
        continue;
      }
      const auto w = teichmuller(f, a, 5);
      CHECK(w == chars.omega(a));
      CHECK(w.pow(f->q() - 1) == one);
      CHECK(w.reduce() == a);
      CHECK(chars.omega_pow(a, -1) * w == one);
      for (auto b : f->enumerate())
        if (b != f->zero()) CHECK(chars.omega(f->mul(a, b)) == w * chars.omega(b));
    }
  }
}
