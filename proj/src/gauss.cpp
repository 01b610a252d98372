#include "padicg/gauss.hpp"

#include <string>

#include "padicg/arith.hpp"

namespace padicg {

PiGraded PiGraded::normalized() const {
  if (grade < 0) throw PrecisionError("negative pi-grade");
  const int step = static_cast<int>(unit.modulus().p()) - 1;
  PiGraded out = *this;
  const std::uint64_t minus_p = unit.modulus().neg(unit.modulus().p() % unit.modulus().value());
  while (out.grade >= step) {
    out.grade -= step;
    out.unit = out.unit.scale(minus_p);
  }
  return out;
}

PiGraded PiGraded::one(const FieldPtr& field, int M) {
  return {0, ZqApprox::constant(field, 1, M)};
}

bool operator==(const PiGraded& a, const PiGraded& b) {
  const PiGraded x = a.normalized(), y = b.normalized();
  return x.grade == y.grade && x.unit == y.unit;
}

PiGraded pi_mul(const PiGraded& a, const PiGraded& b) {
  return PiGraded{a.grade + b.grade, a.unit * b.unit}.normalized();
}

namespace {

std::vector<Rational> gauss_gamma_args(const FieldDesc& field) {
  const std::int64_t n = field.q() - 1;
  std::vector<Rational> args;
  args.reserve(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) args.emplace_back(k, n);
  return args;
}

}  // namespace

GaussContext::GaussContext(FieldPtr field, int M, const EngineOptions& opts)
    : field_(std::move(field)), M_(M), chars_(field_, M) {
  const auto args = gauss_gamma_args(*field_);
  gammas_ = gamma_sweep(args, field_->p(), M, opts.workers, opts.cache);
}

PiGraded gauss_sum(const GaussContext& ctx, std::int64_t a) {
  const FieldDesc& field = *ctx.field();
  const std::int64_t n = field.q() - 1;
  const std::int64_t p = field.p();
  const Modulus mod(field.p(), ctx.precision());

  Rational exponent_sum = 0;
  std::uint64_t gamma_prod = 1 % mod.value();
  std::int64_t pi_pow = 1;  // p^i mod (q-1) keeps the numerators small
  for (unsigned i = 0; i < field.r(); ++i) {
    const Rational x = Rational(mod_floor(a, n) * pi_pow % n, n);
    exponent_sum = exponent_sum + x;
    gamma_prod = mod.mul(gamma_prod, ctx.gammas().residue(x));
    pi_pow = pi_pow * p % n;
  }
  const Rational grade = exponent_sum * Rational(p - 1);
  if (!grade.is_integer())
    throw std::logic_error("Gross-Koblitz grade " + grade.str() + " is not integral for a=" +
                           std::to_string(a));
  const ZqApprox unit =
      ZqApprox::constant(ctx.field(), PadicApprox{field.p(), ctx.precision(), mod.neg(gamma_prod)});
  return PiGraded{static_cast<int>(grade.num()), unit}.normalized();
}

ZqApprox a_sum(const DworkInstance& inst, const GaussContext& ctx) {
  const FieldDesc& field = *inst.field;
  if (inst.lambda == field.zero())
    throw std::invalid_argument("a_sum requires lambda != 0");
  const std::int64_t n = field.q() - 1;
  const auto d = static_cast<std::int64_t>(inst.d);
  const FqElem arg = field.neg(field.mul(field.from_int(d), inst.lambda));

  ZqApprox total(ctx.field(), ctx.precision());
  for (std::int64_t a = 0; a < n; ++a) {
    const PiGraded g = gauss_sum(ctx, a);
    PiGraded term = PiGraded::one(ctx.field(), ctx.precision());
    for (std::int64_t k = 0; k < d; ++k) term = pi_mul(term, g);
    term = pi_mul(term, gauss_sum(ctx, -d * a));
    if (term.grade != 0)
      throw std::logic_error("A-sum term for a=" + std::to_string(a) +
                             " does not fold to a power of -p");
    total += term.unit * ctx.chars().omega_pow(arg, -d * a);
  }
  return total;
}

}  // namespace padicg
