#include "padicg/dwork.hpp"

#include <algorithm>
#include <thread>
#include <vector>

#include "padicg/arith.hpp"

namespace padicg {

DworkInstance DworkInstance::make(unsigned d, FieldPtr field, FqElem lambda) {
  if (!field) throw InvalidInstance("no field given");
  if (d < 3 || !is_prime(d))
    throw InvalidInstance("d must be an odd prime, got " + std::to_string(d));
  if (field->p() == d)
    throw InvalidInstance("hypothesis p != d violated (p = d = " + std::to_string(d) + ")");
  if (field->q() % d == 1)
    throw InvalidInstance("hypothesis q != 1 (mod d) violated (q = " +
                          std::to_string(field->q()) + ", d = " + std::to_string(d) + ")");
  if (lambda.enc >= field->q())
    throw InvalidInstance("lambda encoding " + std::to_string(lambda.enc) +
                          " is not an element of F_" + std::to_string(field->q()));
  return DworkInstance{d, std::move(field), lambda};
}

namespace {

void check_budget(std::uint64_t q, unsigned k, std::uint64_t budget) {
  if (!checked_pow(q, k, budget))
    throw BudgetExceeded("enumeration of " + std::to_string(q) + "^" + std::to_string(k) +
                         " tuples exceeds the budget of " + std::to_string(budget));
}

// Recursive enumeration over coordinates 2..d with running power sum and
// product; the last coordinate is scanned directly.
struct AffineCounter {
  const FieldDesc& field;
  const std::vector<FqElem>& powd;  // x -> x^d
  FqElem coef;                      // d * lambda
  unsigned d;

  std::uint64_t count(unsigned depth, FqElem sum, FqElem prod) const {
    const std::uint32_t q = field.q();
    std::uint64_t total = 0;
    if (depth + 1 == d) {
      const FqElem c = field.mul(coef, prod);
      for (std::uint32_t x = 0; x < q; ++x) {
        const FqElem lhs = field.add(sum, powd[x]);
        if (lhs == field.mul(c, FqElem{x})) ++total;
      }
      return total;
    }
    for (std::uint32_t x = 0; x < q; ++x)
      total += count(depth + 1, field.add(sum, powd[x]), field.mul(prod, FqElem{x}));
    return total;
  }
};

}  // namespace

std::uint64_t brute_count_affine(const DworkInstance& inst, const CountOptions& opts) {
  const FieldDesc& field = *inst.field;
  check_budget(field.q(), inst.d, opts.budget);
  std::vector<FqElem> powd(field.q());
  for (std::uint32_t x = 0; x < field.q(); ++x) powd[x] = field.pow(FqElem{x}, inst.d);
  const AffineCounter counter{field, powd,
                              field.mul(field.from_int(inst.d), inst.lambda), inst.d};

  // Partition on the first coordinate.
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.workers, field.q()));
  std::vector<std::uint64_t> partial(workers, 0);
  auto job = [&](unsigned w) {
    for (std::uint32_t x = w; x < field.q(); x += workers)
      partial[w] += counter.count(1, powd[x], FqElem{x});
  };
  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(job, w);
  }
  std::uint64_t total = 0;
  for (auto c : partial) total += c;
  return total;
}

std::uint64_t projective_from_affine(std::uint64_t n_affine, std::uint64_t q) {
  if (n_affine == 0 || (n_affine - 1) % (q - 1) != 0)
    throw std::logic_error("affine count " + std::to_string(n_affine) +
                           " is not 1 modulo q-1; homogeneity violated");
  return (n_affine - 1) / (q - 1);
}

std::uint64_t projective_count(const DworkInstance& inst, const CountOptions& opts) {
  return projective_from_affine(brute_count_affine(inst, opts), inst.field->q());
}

int default_precision(const DworkInstance& inst) {
  const std::uint64_t p = inst.field->p();
  u128 bound = 2;
  for (unsigned k = 0; k + 1 < inst.d; ++k) bound *= inst.field->q();
  int M = 0;
  for (u128 pm = 1; pm <= bound; pm *= p) ++M;
  return std::max(M, 4);
}

namespace {

// (q^(d-1) - 1)/(q - 1) = 1 + q + ... + q^(d-2), modulo p^M.
PadicApprox projective_space_count(const DworkInstance& inst, int M) {
  const Modulus mod(inst.field->p(), M);
  std::uint64_t acc = 0, term = 1 % mod.value();
  const std::uint64_t q = inst.field->q() % mod.value();
  for (unsigned k = 0; k + 1 < inst.d; ++k) {
    acc = mod.add(acc, term);
    term = mod.mul(term, q);
  }
  return {inst.field->p(), M, acc};
}

}  // namespace

PadicApprox theorem_count(const DworkInstance& inst, int M, const EngineOptions& opts) {
  return projective_space_count(inst, M) - dwork_G(inst, M, opts);
}

PadicApprox conjecture_count(const DworkInstance& inst, int M, const EngineOptions& opts) {
  if (inst.field->r() != 1)
    throw std::invalid_argument("the conjectured formula is stated over prime fields only (r = 1)");
  const auto p = static_cast<std::int64_t>(inst.field->p());
  const PadicApprox inv = PadicApprox::from_int(p - 1, inst.field->p(), M).inverse();
  return projective_space_count(inst, M) + inv + dwork_G(inst, M, opts);
}

std::uint64_t curve_count(const FieldDesc& field, FqElem lambda, const CountOptions& opts) {
  check_budget(field.q(), 2, opts.budget);
  const std::uint32_t q = field.q();
  std::vector<FqElem> cube(q);
  for (std::uint32_t x = 0; x < q; ++x) cube[x] = field.pow(FqElem{x}, 3);
  const FqElem coef = field.mul(field.from_int(3), lambda);
  std::uint64_t total = 0;
  for (std::uint32_t x = 0; x < q; ++x) {
    const FqElem base = field.add(cube[x], field.one());
    const FqElem cx = field.mul(coef, FqElem{x});
    for (std::uint32_t y = 0; y < q; ++y)
      if (field.add(base, cube[y]) == field.mul(cx, FqElem{y})) ++total;
  }
  return total;
}

CountReport verify_theorem(const DworkInstance& inst, std::optional<int> M,
                           const EngineOptions& engine, const CountOptions& count) {
  CountReport rep;
  rep.d = inst.d;
  rep.p = inst.field->p();
  rep.r = inst.field->r();
  rep.lambda = inst.lambda.enc;
  rep.M = M.value_or(default_precision(inst));
  rep.n_affine = brute_count_affine(inst, count);
  rep.projective = projective_from_affine(rep.n_affine, inst.field->q());

  rep.g_value = dwork_G(inst, rep.M, engine);
  rep.theorem_value = projective_space_count(inst, rep.M) - rep.g_value;
  const PadicApprox truth = PadicApprox::from_int(static_cast<std::int64_t>(rep.projective),
                                                  rep.p, rep.M);
  rep.match_theorem = rep.theorem_value == truth;
  if (rep.r == 1) {
    const PadicApprox inv = PadicApprox::from_int(rep.p - 1, rep.p, rep.M).inverse();
    rep.conjecture_value = projective_space_count(inst, rep.M) + inv + rep.g_value;
    rep.match_conjecture = *rep.conjecture_value == truth;
  }
  return rep;
}

// -------------------------------------------------------------- corollary

GSpec corollary_lhs_spec(const FieldPtr& field, FqElem lambda) {
  return GSpec{{Rational(1, 3), Rational(2, 3)}, {Rational(0), Rational(0)},
               field->pow(lambda, 3), field};
}

GSpec corollary_rhs_spec(const FieldPtr& field, FqElem lambda) {
  return GSpec{{Rational(1, 2), Rational(1, 2)}, {Rational(1, 6), Rational(5, 6)},
               field->pow(lambda, -3), field};
}

GContext corollary_context(const FieldPtr& field, int M, const EngineOptions& opts) {
  const std::vector<GSpec> specs{corollary_lhs_spec(field, field->one()),
                                 corollary_rhs_spec(field, field->one())};
  return GContext(specs, M, opts);
}

int corollary_precision(const FieldPtr& field) {
  // d = 3 never violates instance hypotheses that matter for the bound.
  const std::uint64_t p = field->p();
  const u128 bound = static_cast<u128>(2) * field->q() * field->q();
  int M = 0;
  for (u128 pm = 1; pm <= bound; pm *= p) ++M;
  return std::max(M, 4);
}

std::optional<std::string> corollary_precondition(const FieldDesc& field, FqElem lambda) {
  if (field.p() < 5) return "requires p >= 5";
  if (field.q() % 3 == 1) return "requires q != 1 (mod 3)";
  if (lambda == field.zero()) return "requires lambda != 0";
  if (field.pow(lambda, 3) == field.one()) return "requires lambda^3 != 1";
  return std::nullopt;
}

CorollaryReport verify_corollary(const FieldPtr& field, FqElem lambda, const GContext& ctx,
                                 const CountOptions& count) {
  CorollaryReport rep;
  rep.p = field->p();
  rep.r = field->r();
  rep.lambda = lambda.enc;
  rep.M = ctx.target_precision();
  if (auto why = corollary_precondition(*field, lambda)) {
    rep.skipped = true;
    rep.reason = *why;
    return rep;
  }
  const int M = rep.M;
  rep.lhs = evaluate_G(corollary_lhs_spec(field, lambda), ctx);

  // q phi(-3 lambda) G_rhs, with q = (-1)^r (-p)^r and phi = omega^((q-1)/2).
  const FqElem arg = field->neg(field->mul(field->from_int(3), lambda));
  ZqApprox phi = ctx.chars().omega_pow(arg, (field->q() - 1) / 2);
  if (field->r() & 1) phi = -phi;
  rep.rhs = evaluate_G(corollary_rhs_spec(field, lambda), ctx)
                .shifted(static_cast<int>(field->r()))
                .times(phi)
                .normalized();
  rep.match_sides = congruent(*rep.lhs, *rep.rhs, M);

  rep.curve_points = curve_count(*field, lambda, count);
  rep.expected = static_cast<std::int64_t>(field->q()) - static_cast<std::int64_t>(rep.curve_points);
  const ValuedZq expected = ValuedZq::from_int(field, rep.expected, M);
  rep.match_curve = congruent(*rep.lhs, expected, M) && congruent(*rep.rhs, expected, M);
  return rep;
}

CorollaryReport verify_corollary(const FieldPtr& field, FqElem lambda, int M,
                                 const EngineOptions& engine, const CountOptions& count) {
  if (auto why = corollary_precondition(*field, lambda)) {
    CorollaryReport rep;
    rep.p = field->p();
    rep.r = field->r();
    rep.lambda = lambda.enc;
    rep.M = M;
    rep.skipped = true;
    rep.reason = *why;
    return rep;
  }
  const GContext ctx = corollary_context(field, M, engine);
  return verify_corollary(field, lambda, ctx, count);
}

}  // namespace padicg
