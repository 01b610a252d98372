#include "padicg/gfunc.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <thread>

#include "padicg/arith.hpp"

namespace padicg {

// ---------------------------------------------------------------- GSpec

void GSpec::validate() const {
  if (!field) throw std::invalid_argument("G spec has no field");
  if (a.empty()) throw std::invalid_argument("G spec needs at least one parameter pair");
  if (a.size() != b.size())
    throw std::invalid_argument("G spec needs as many lower parameters as upper ones");
  const auto p = static_cast<std::int64_t>(field->p());
  for (const auto* list : {&a, &b})
    for (const auto& x : *list)
      if (x.den() % p == 0)
        throw std::invalid_argument("G parameter " + x.str() + " is not in Z_" +
                                    std::to_string(p));
  if (t.enc >= field->q()) throw std::invalid_argument("G argument t is not in F_q");
}

// ------------------------------------------------------------- ValuedZq

ValuedZq ValuedZq::from_int(const FieldPtr& field, std::int64_t v, int M) {
  return ValuedZq{0, ZqApprox::constant(field, v, M)}.normalized();
}

ValuedZq ValuedZq::normalized() const {
  ValuedZq out = *this;
  while (out.unit.precision() > 0 && !out.unit.is_unit()) {
    out.unit = -out.unit.divide_by_p();
    ++out.grade;
  }
  return out;
}

ValuedZq ValuedZq::times(const ZqApprox& factor) const {
  if (factor.precision() < unit.precision())
    throw PrecisionError("factor known to fewer digits than the value");
  return {grade, unit * factor.truncate(unit.precision())};
}

PadicApprox ValuedZq::to_padic(int M) const {
  const ValuedZq v = normalized();
  const std::uint64_t p = v.unit.modulus().p();
  if (v.absolute_precision() < M)
    throw PrecisionError("value known only modulo p^" + std::to_string(v.absolute_precision()) +
                         ", requested p^" + std::to_string(M));
  if (v.unit.precision() == 0) return PadicApprox{p, M, 0};
  if (v.grade < 0)
    throw NotIntegral("value has negative valuation " + std::to_string(v.grade));
  if (!v.unit.in_zp()) throw NotIntegral("value does not lie in Z_p");
  const Modulus mod(p, M);
  if (v.grade >= M) return PadicApprox{p, M, 0};
  std::uint64_t s = mod.pow(p, static_cast<std::uint64_t>(v.grade));
  if (v.grade & 1) s = mod.neg(s);
  return PadicApprox{p, M, mod.mul(s, v.unit.coeffs()[0] % mod.value())};
}

namespace {

// Coefficients of x as (-p)^(x.grade - base) * unit modulo p^N.
std::vector<std::uint64_t> coeffs_at(const ValuedZq& x, int base, int N) {
  const std::uint64_t p = x.unit.modulus().p();
  const Modulus mod(p, N);
  std::vector<std::uint64_t> out(x.unit.coeffs().size(), 0);
  const int shift = x.grade - base;
  if (shift >= N) return out;
  const int need = N - shift;
  if (x.unit.precision() < need) throw PrecisionError("comparison beyond known precision");
  const Modulus low(p, need);
  std::uint64_t s = mod.pow(p, static_cast<std::uint64_t>(shift));
  if (shift & 1) s = mod.neg(s);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = mod.mul(x.unit.coeffs()[i] % low.value(), s);
  return out;
}

}  // namespace

bool congruent(const ValuedZq& x, const ValuedZq& y, int abs_precision) {
  if (x.absolute_precision() < abs_precision || y.absolute_precision() < abs_precision)
    throw PrecisionError("congruence requested beyond known precision");
  const int base = std::min(x.grade, y.grade);
  const int N = abs_precision - base;
  if (N <= 0) return true;
  return coeffs_at(x, base, N) == coeffs_at(y, base, N);
}

// ------------------------------------------------------------- arguments

namespace {

std::int64_t ipow(std::int64_t base, unsigned e) {
  std::int64_t acc = 1;
  for (unsigned i = 0; i < e; ++i) acc *= base;
  return acc;
}

}  // namespace

std::vector<Rational> g_gamma_arguments(const GSpec& spec) {
  spec.validate();
  const FieldDesc& field = *spec.field;
  const std::int64_t n = field.q() - 1;
  std::vector<Rational> out;
  for (unsigned k = 0; k < field.r(); ++k) {
    const std::int64_t pk = ipow(field.p(), k);
    for (std::size_t i = 0; i < spec.n(); ++i) {
      const Rational ap = spec.a[i] * Rational(pk);
      const Rational bp = -spec.b[i] * Rational(pk);
      out.push_back(ap.frac());
      out.push_back(bp.frac());
      for (std::int64_t j = 0; j < n; ++j) {
        const Rational x(j * pk, n);
        out.push_back((ap - x).frac());
        out.push_back((bp + x).frac());
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// --------------------------------------------------------------- GContext

namespace {

const FieldPtr& common_field(std::span<const GSpec> specs) {
  if (specs.empty() || !specs.front().field)
    throw std::invalid_argument("GContext needs at least one spec with a field");
  return specs.front().field;
}

int default_slack(std::span<const GSpec> specs) {
  int s = 0;
  for (const auto& sp : specs) s = std::max(s, static_cast<int>(sp.n() * sp.field->r()));
  return s;
}

}  // namespace

GContext::GContext(std::span<const GSpec> specs, int M, const EngineOptions& opts)
    : field_(common_field(specs)),
      M_(M),
      slack_(opts.slack.value_or(default_slack(specs))),
      workers_(std::max(1u, opts.workers)),
      chars_(field_, M + slack_) {
  if (M < 1) throw PrecisionError("target precision must be at least 1");
  if (slack_ < 0) throw PrecisionError("grade slack must be nonnegative");
  std::vector<Rational> args;
  for (const auto& sp : specs) {
    if (sp.field->p() != field_->p() || sp.field->modulus() != field_->modulus())
      throw std::invalid_argument("GContext specs must share one field");
    const auto more = g_gamma_arguments(sp);
    args.insert(args.end(), more.begin(), more.end());
  }
  std::sort(args.begin(), args.end());
  args.erase(std::unique(args.begin(), args.end()), args.end());
  gammas_ = gamma_sweep(args, field_->p(), working_precision(), workers_, opts.cache);
}

// ------------------------------------------------------------------ terms

ValuedZq g_term(const GSpec& spec, std::int64_t j, const GContext& ctx) {
  const FieldDesc& field = *spec.field;
  const std::int64_t n = field.q() - 1;
  const int Mw = ctx.working_precision();
  if (j < 0 || j >= n) throw std::out_of_range("term index outside [0, q-2]");
  if (spec.t == field.zero()) return ValuedZq{Mw, ZqApprox(ctx.field(), 0)};

  const Modulus mod(field.p(), Mw);
  const GammaTable& gam = ctx.gammas();
  int grade = 0;
  std::uint64_t num = 1 % mod.value(), den = 1 % mod.value();
  for (unsigned k = 0; k < field.r(); ++k) {
    const std::int64_t pk = ipow(field.p(), k);
    const Rational x(j * pk, n);
    for (std::size_t i = 0; i < spec.n(); ++i) {
      const Rational ap = spec.a[i] * Rational(pk);
      const Rational bp = -spec.b[i] * Rational(pk);
      const Rational alpha = ap.frac(), beta = bp.frac();
      const std::int64_t e = -(alpha - x).floor() - (beta + x).floor();
      if (e < -1 || e > 1)
        throw std::logic_error("per-factor (-p)-exponent " + std::to_string(e) +
                               " outside {-1, 0, 1}");
      grade += static_cast<int>(e);
      num = mod.mul(num, gam.residue((ap - x).frac()));
      num = mod.mul(num, gam.residue((bp + x).frac()));
      den = mod.mul(den, gam.residue(alpha));
      den = mod.mul(den, gam.residue(beta));
    }
  }
  std::uint64_t scalar = mod.mul(num, mod.inv(den));
  if ((j * static_cast<std::int64_t>(spec.n())) & 1) scalar = mod.neg(scalar);
  const ZqApprox chi = ctx.chars().omega_pow(spec.t, -j);
  return ValuedZq{grade, chi.scale(scalar)};
}

std::vector<ValuedZq> g_terms(const GSpec& spec, const GContext& ctx) {
  spec.validate();
  const std::int64_t n = spec.field->q() - 1;
  std::vector<ValuedZq> out(static_cast<std::size_t>(n));
  const unsigned workers =
      static_cast<unsigned>(std::min<std::int64_t>(ctx.workers(), n));
  auto job = [&](unsigned w) {
    for (std::int64_t j = w; j < n; j += workers)
      out[static_cast<std::size_t>(j)] = g_term(spec, j, ctx);
  };
  if (workers <= 1) {
    job(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(job, w);
  }
  return out;
}

ValuedZq sum_g_terms(std::span<const ValuedZq> terms, std::span<const std::size_t> order,
                     const GContext& ctx) {
  const FieldDesc& field = *ctx.field();
  const int Mw = ctx.working_precision();
  const int slack = ctx.slack();
  const Modulus mod(field.p(), Mw);

  // Accumulate X = sum (-p)^(grade + slack) u_j; the value is
  // -(q-1)^(-1) (-p)^(-slack) X.
  ZqApprox acc(ctx.field(), Mw);
  for (std::size_t idx : order) {
    const ValuedZq& term = terms[idx];
    if (term.unit.precision() == 0) continue;  // vanishing term
    const int shift = term.grade + slack;
    if (shift < 0)
      throw PrecisionError("term grade " + std::to_string(term.grade) +
                           " is below the configured slack -" + std::to_string(slack));
    if (shift >= Mw) continue;
    std::uint64_t s = mod.pow(field.p(), static_cast<std::uint64_t>(shift));
    if (shift & 1) s = mod.neg(s);
    acc += term.unit.scale(s);
  }
  const std::uint64_t prefactor = mod.neg(mod.inv((field.q() - 1) % mod.value()));
  return ValuedZq{-slack, acc.scale(prefactor)}.normalized();
}

ValuedZq evaluate_G(const GSpec& spec, const GContext& ctx) {
  const auto terms = g_terms(spec, ctx);
  std::vector<std::size_t> order(terms.size());
  std::iota(order.begin(), order.end(), 0);
  return sum_g_terms(terms, order, ctx);
}

ValuedZq evaluate_G(const GSpec& spec, int M, const EngineOptions& opts) {
  const GContext ctx(spec, M, opts);
  return evaluate_G(spec, ctx);
}

// ----------------------------------------------------------------- Dwork

GSpec dwork_spec(const DworkInstance& inst) {
  GSpec spec;
  const auto d = static_cast<std::int64_t>(inst.d);
  for (std::int64_t h = 1; h < d; ++h) {
    spec.a.emplace_back(h, d);
    spec.b.emplace_back(0);
  }
  spec.t = inst.field->pow(inst.lambda, d);
  spec.field = inst.field;
  return spec;
}

PadicApprox dwork_G(const DworkInstance& inst, int M, const EngineOptions& opts) {
  return evaluate_G(dwork_spec(inst), M, opts).to_padic(M);
}

}  // namespace padicg
