#include "doctest.h"

#include "padicg/gauss.hpp"

using namespace padicg;

namespace {

// J(w-bar^a, w-bar^b) = sum_x w-bar^a(x) w-bar^b(1 - x), straight from the
// characters; no Gamma_p involved.
ZqApprox jacobi(const CharacterTable& chars, std::int64_t a, std::int64_t b) {
  const FieldDesc& f = *chars.field();
  ZqApprox sum(chars.field(), chars.precision());
  for (auto x : f.enumerate())
    sum += chars.omega_pow(x, -a) * chars.omega_pow(f.sub(f.one(), x), -b);
  return sum;
}

}  // namespace

TEST_CASE("pi-graded folding") {
  const auto f = build_field(5, 1);
  const PiGraded x{9, ZqApprox::constant(f, 2, 4)};
  const auto n = x.normalized();
  CHECK(n.grade == 1);
  CHECK(n.unit == ZqApprox::constant(f, 2 * 25, 4));
  CHECK(x == PiGraded{1, ZqApprox::constant(f, 50, 4)});
  const PiGraded neg{-3, ZqApprox::constant(f, 1, 4)};
  CHECK_THROWS(neg.normalized());
  const auto one = PiGraded::one(f, 4);
  CHECK(pi_mul(one, x) == x);
}

TEST_CASE("g(w-bar) g(w-bar^-1) = -5 over F_5") {
  const auto f = build_field(5, 1);
  const GaussContext ctx(f, 4);
  const auto prod = pi_mul(gauss_sum(ctx, 1), gauss_sum(ctx, -1));
  CHECK(prod == PiGraded{0, ZqApprox::constant(f, -5, 4)});
  // the trivial character: g = -1 by the formula with every <.> = 0
  CHECK(gauss_sum(ctx, 0) == PiGraded{0, ZqApprox::constant(f, -1, 4)});
}

TEST_CASE("Gross-Koblitz against Jacobi sums") {
  for (auto [p, r] : {std::pair{5u, 1u}, {7u, 1u}, {3u, 2u}, {5u, 2u}, {3u, 3u}}) {
    const auto f = build_field(p, r);
    const int M = 5;
    const GaussContext ctx(f, M);
    const std::int64_t n = f->q() - 1;
    CAPTURE(f->q());
    for (std::int64_t a = 1; a < n; ++a) {
      for (std::int64_t b = 1; b < n; ++b) {
        if ((a + b) % n == 0) continue;
        // g(a) g(b) = J(a, b) g(a + b)
        const auto lhs = pi_mul(gauss_sum(ctx, a), gauss_sum(ctx, b));
        const auto rhs = pi_mul(gauss_sum(ctx, a + b), PiGraded{0, jacobi(ctx.chars(), a, b)});
        CAPTURE(a);
        CAPTURE(b);
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("Gauss sums are invariant under Frobenius") {
  // g(w-bar^(ap)) = g(w-bar^a): the Gamma_p product permutes cyclically
  const auto f = build_field(3, 3);
  const GaussContext ctx(f, 4);
  for (std::int64_t a = 1; a < 26; ++a) CHECK(gauss_sum(ctx, a) == gauss_sum(ctx, 3 * a));
}

TEST_CASE("A-sum needs lambda != 0") {
  const auto f = build_field(5, 1);
  const GaussContext ctx(f, 6);
  CHECK_THROWS(a_sum(DworkInstance::make(3, f, FqElem{0}), ctx));
  // q N_affine = q^d + A - (1 - q) with the known count 37 at lambda = 2
  const auto A = a_sum(DworkInstance::make(3, f, FqElem{2}), ctx);
  CHECK(A == ZqApprox::constant(f, 5 * 37 - 125 + (1 - 5), 6));
}
