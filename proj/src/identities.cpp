#include "padicg/identities.hpp"

#include <algorithm>
#include <string>

#include "padicg/arith.hpp"
#include "padicg/gauss.hpp"

namespace padicg {

namespace {

std::string field_tag(const FieldDesc& field) {
  return "q=" + std::to_string(field.q()) + " (p=" + std::to_string(field.p()) +
         ", r=" + std::to_string(field.r()) + ")";
}

std::int64_t ipow(std::int64_t base, unsigned e) {
  std::int64_t acc = 1;
  for (unsigned i = 0; i < e; ++i) acc *= base;
  return acc;
}

}  // namespace

IdentityReport check_orthogonality(const FieldPtr& field, int M, const EngineOptions&) {
  IdentityReport rep;
  rep.name = "orthogonality";
  rep.ranges = field_tag(*field) + "; m in [0, q-2], x in F_q";
  rep.params = {"relation", "m_or_x"};
  const CharacterTable chars(field, M);
  const std::int64_t n = field->q() - 1;
  const ZqApprox zero(field, M);
  const ZqApprox full = ZqApprox::constant(field, n, M);

  // Sum over x of chi(x), for every character chi = omega^m.
  for (std::int64_t m = 0; m < n; ++m) {
    ZqApprox sum = zero;
    for (const FqElem x : field->enumerate()) sum += chars.omega_pow(x, m);
    ++rep.cases;
    if (!(sum == (m == 0 ? full : zero))) rep.failures.push_back({1, m});
  }
  // Sum over characters of chi(x), for every x (chi(0) = 0 throughout).
  for (const FqElem x : field->enumerate()) {
    ZqApprox sum = zero;
    for (std::int64_t m = 0; m < n; ++m) sum += chars.omega_pow(x, m);
    ++rep.cases;
    if (!(sum == (x == field->one() ? full : zero)))
      rep.failures.push_back({2, static_cast<std::int64_t>(x.enc)});
  }
  return rep;
}

IdentityReport check_gauss_product(const FieldPtr& field, int M, const EngineOptions& opts) {
  IdentityReport rep;
  rep.name = "gauss_product";
  rep.ranges = field_tag(*field) + "; k in [1, q-2]";
  rep.params = {"k"};
  const GaussContext ctx(field, M, opts);
  const std::int64_t n = field->q() - 1;
  const FqElem minus_one = field->neg(field->one());
  for (std::int64_t k = 1; k < n; ++k) {
    const PiGraded prod = pi_mul(gauss_sum(ctx, k), gauss_sum(ctx, -k));
    const PiGraded expect{0, ctx.chars().omega_pow(minus_one, -k).scale(field->q())};
    ++rep.cases;
    if (!(prod == expect)) rep.failures.push_back({k});
  }
  return rep;
}

IdentityReport check_gamma_product(const FieldPtr& field, std::int64_t t, int M,
                                   const EngineOptions& opts) {
  const auto p = static_cast<std::int64_t>(field->p());
  if (t < 1 || t % p == 0)
    throw std::invalid_argument("gamma product identity requires t >= 1 with p !| t");
  IdentityReport rep;
  rep.name = "gamma_product";
  rep.ranges = field_tag(*field) + ", t=" + std::to_string(t) + "; j in [0, q-2]";
  rep.params = {"equation", "j"};

  const std::int64_t n = field->q() - 1;
  const unsigned r = field->r();

  // Arguments per (j, i): the two sides of both displayed equations.
  auto lhs1 = [&](std::int64_t j, unsigned i) {
    return Rational(t * ipow(p, i) * j, n).frac();
  };
  auto lhs2 = [&](std::int64_t j, unsigned i) {
    return Rational(-t * ipow(p, i) * j, n).frac();
  };
  auto fixed = [&](std::int64_t h, unsigned i) { return Rational(h * ipow(p, i), t).frac(); };
  auto rhs1 = [&](std::int64_t j, std::int64_t h, unsigned i) {
    return (Rational(ipow(p, i) * h, t) + Rational(ipow(p, i) * j, n)).frac();
  };
  auto rhs2 = [&](std::int64_t j, std::int64_t h, unsigned i) {
    return (Rational(ipow(p, i) * (1 + h), t) - Rational(ipow(p, i) * j, n)).frac();
  };

  std::vector<Rational> args;
  for (unsigned i = 0; i < r; ++i) {
    for (std::int64_t h = 1; h < t; ++h) args.push_back(fixed(h, i));
    for (std::int64_t j = 0; j < n; ++j) {
      args.push_back(lhs1(j, i));
      args.push_back(lhs2(j, i));
      for (std::int64_t h = 0; h < t; ++h) {
        args.push_back(rhs1(j, h, i));
        args.push_back(rhs2(j, h, i));
      }
    }
  }
  std::sort(args.begin(), args.end());
  args.erase(std::unique(args.begin(), args.end()), args.end());
  const GammaTable gam = gamma_sweep(args, field->p(), M, opts.workers, opts.cache);
  const CharacterTable chars(field, M);
  const Modulus mod(field->p(), M);
  const FqElem t_elem = field->from_int(t);

  for (std::int64_t j = 0; j < n; ++j) {
    std::uint64_t l1 = 1 % mod.value(), l2 = l1, r1 = l1, r2 = l1;
    for (unsigned i = 0; i < r; ++i) {
      l1 = mod.mul(l1, gam.residue(lhs1(j, i)));
      l2 = mod.mul(l2, gam.residue(lhs2(j, i)));
      for (std::int64_t h = 1; h < t; ++h) {
        l1 = mod.mul(l1, gam.residue(fixed(h, i)));
        l2 = mod.mul(l2, gam.residue(fixed(h, i)));
      }
      for (std::int64_t h = 0; h < t; ++h) {
        r1 = mod.mul(r1, gam.residue(rhs1(j, h, i)));
        r2 = mod.mul(r2, gam.residue(rhs2(j, h, i)));
      }
    }
    // omega(t^(tj)) and omega(t^(-tj)) as powers of omega(t).
    const ZqApprox left1 = chars.omega_pow(t_elem, t * j).scale(l1);
    const ZqApprox left2 = chars.omega_pow(t_elem, -t * j).scale(l2);
    rep.cases += 2;
    if (!(left1 == ZqApprox::constant(field, PadicApprox{field->p(), M, r1})))
      rep.failures.push_back({1, j});
    if (!(left2 == ZqApprox::constant(field, PadicApprox{field->p(), M, r2})))
      rep.failures.push_back({2, j});
  }
  return rep;
}

IdentityReport check_floor_identity(unsigned d, std::uint64_t p, unsigned r) {
  if (!is_prime(d) || d == p)
    throw std::invalid_argument("floor identity requires a prime d != p");
  const std::uint64_t q = *checked_pow(p, r);
  if (q % d == 1) throw std::invalid_argument("floor identity requires q != 1 (mod d)");
  IdentityReport rep;
  rep.name = "floor_identity";
  rep.ranges = "d=" + std::to_string(d) + ", q=" + std::to_string(q) +
               "; a in [1, q-2], i in [0, r-1]";
  rep.params = {"d", "q", "a", "i"};

  const i128 n = static_cast<i128>(q) - 1;
  const i128 dd = d;
  for (std::uint64_t a = 1; a + 1 < q; ++a) {
    i128 pi = 1;
    for (unsigned i = 0; i < r; ++i, pi *= p) {
      const i128 ap = static_cast<i128>(a) * pi;
      const i128 base = floor_div(ap, n);
      const i128 lhs = dd * base + floor_div(-dd * ap, n);
      i128 rhs = (dd - 1) * base - 1;
      for (i128 h = 1; h < dd; ++h) {
        // floor(<h p^i/d> - a p^i/(q-1)) = floor(((h p^i mod d)(q-1) - a p^i d) / (d (q-1)))
        const i128 frac_num = (h * pi) % dd;
        rhs += floor_div(frac_num * n - ap * dd, dd * n);
      }
      ++rep.cases;
      if (lhs != rhs)
        rep.failures.push_back({static_cast<std::int64_t>(d), static_cast<std::int64_t>(q),
                                static_cast<std::int64_t>(a), static_cast<std::int64_t>(i)});
    }
  }
  return rep;
}

IdentityReport check_floor_identity(unsigned d, const FieldDesc& field) {
  return check_floor_identity(d, field.p(), field.r());
}

IdentityReport check_reflection(const FieldPtr& field, int M, const EngineOptions& opts) {
  IdentityReport rep;
  rep.name = "reflection";
  rep.ranges = field_tag(*field) + "; a in [1, q-2]";
  rep.params = {"a"};
  const GaussContext ctx(field, M, opts);
  const Modulus mod(field->p(), M);
  const std::int64_t n = field->q() - 1;
  const auto p = static_cast<std::int64_t>(field->p());
  const FqElem minus_one = field->neg(field->one());
  for (std::int64_t a = 1; a < n; ++a) {
    std::uint64_t prod = 1 % mod.value();
    std::int64_t pi = 1;
    for (unsigned i = 0; i < field->r(); ++i) {
      prod = mod.mul(prod, ctx.gammas().residue(Rational(a * pi % n, n)));
      prod = mod.mul(prod, ctx.gammas().residue((Rational(pi) - Rational(a * pi, n)).frac()));
      pi *= p;
    }
    ZqApprox expect = ctx.chars().omega_pow(minus_one, -a);
    if (field->r() & 1) expect = -expect;
    ++rep.cases;
    if (!(ZqApprox::constant(field, PadicApprox{field->p(), M, prod}) == expect))
      rep.failures.push_back({a});
  }
  return rep;
}

int asum_precision(const DworkInstance& inst) {
  const std::uint64_t p = inst.field->p();
  u128 bound = 2;
  for (unsigned k = 0; k <= inst.d; ++k) bound *= inst.field->q();
  int M = 0;
  for (u128 pm = 1; pm <= bound; pm *= p) ++M;
  return M;
}

IdentityReport check_asum_consistency(const DworkInstance& inst, std::optional<int> M_opt,
                                      const EngineOptions& opts, const CountOptions& count) {
  const FieldPtr& field = inst.field;
  const int M = M_opt.value_or(asum_precision(inst));
  IdentityReport rep;
  rep.name = "asum_consistency";
  rep.ranges = "d=" + std::to_string(inst.d) + ", " + field_tag(*field) +
               ", lambda=" + std::to_string(inst.lambda.enc);
  rep.params = {"d", "q", "lambda"};

  const std::uint64_t n_affine = brute_count_affine(inst, count);
  const i128 q = field->q();
  i128 qd = 1;
  for (unsigned k = 0; k < inst.d; ++k) qd *= q;
  // A = q N_A - q^d + B with B = 1 - q.
  const i128 expected_a = q * static_cast<i128>(n_affine) - qd + (1 - q);
  const Modulus mod(field->p(), M);
  i128 red = expected_a % static_cast<i128>(mod.value());
  if (red < 0) red += mod.value();
  const ZqApprox expect = ZqApprox::constant(field, PadicApprox{field->p(), M,
                                                                static_cast<std::uint64_t>(red)});

  ZqApprox a_value(field, M);
  if (inst.lambda == field->zero()) {
    // f reduces to the diagonal form, so A coincides with B = 1 - q.
    a_value = ZqApprox::constant(field, 1 - static_cast<std::int64_t>(field->q()), M);
  } else {
    const GaussContext ctx(field, M, opts);
    a_value = a_sum(inst, ctx);
  }
  ++rep.cases;
  if (!(a_value == expect))
    rep.failures.push_back({static_cast<std::int64_t>(inst.d), static_cast<std::int64_t>(q),
                            static_cast<std::int64_t>(inst.lambda.enc)});
  return rep;
}

}  // namespace padicg

namespace padicg {

std::vector<PrimePower> floor_identity_moduli(unsigned d, std::size_t count) {
  std::vector<PrimePower> out;
  for (std::uint64_t bound = 64; out.size() < count; bound *= 4) {
    out.clear();
    for (const auto& pp : odd_prime_powers(bound)) {
      if (pp.p == d || pp.q % d == 1) continue;
      out.push_back(pp);
      if (out.size() == count) break;
    }
  }
  return out;
}

bool SuiteResult::pass() const {
  return std::all_of(reports.begin(), reports.end(),
                     [](const IdentityReport& r) { return r.pass(); });
}

void SuiteResult::append(SuiteResult other) {
  for (auto& r : other.reports) reports.push_back(std::move(r));
  for (auto& s : other.skipped) skipped.push_back(std::move(s));
}

namespace {

enum Layer { kFloor, kOrthogonality, kGamma, kReflection, kGauss, kAsum, kLayers };

Layer layer_of(const std::string& name) {
  if (name == "floor_identity") return kFloor;
  if (name == "orthogonality") return kOrthogonality;
  if (name == "gamma_product") return kGamma;
  if (name == "reflection") return kReflection;
  if (name == "gauss_product") return kGauss;
  return kAsum;
}

void ladder_sort(SuiteResult& res) {
  std::stable_sort(res.reports.begin(), res.reports.end(),
                   [](const IdentityReport& a, const IdentityReport& b) {
                     return layer_of(a.name) < layer_of(b.name);
                   });
}

void gamma_checks(SuiteResult& res, const FieldPtr& field, std::int64_t t, int M,
                  const EngineOptions& opts) {
  if (t % static_cast<std::int64_t>(field->p()) == 0) {
    res.skipped.push_back({"gamma_product",
                           "q=" + std::to_string(field->q()) + ", t=" + std::to_string(t),
                           "requires p !| t"});
    return;
  }
  res.reports.push_back(check_gamma_product(field, t, M, opts));
}

}  // namespace

SuiteResult run_field_identities(const FieldPtr& field, std::optional<unsigned> d,
                                 const std::vector<FqElem>& lambdas,
                                 const std::vector<std::int64_t>& gamma_t, int M,
                                 const EngineOptions& opts, const CountOptions& count) {
  SuiteResult res;
  if (d) {
    if (*d == field->p() || field->q() % *d == 1 || !is_prime(*d))
      res.skipped.push_back({"floor_identity", "d=" + std::to_string(*d),
                             "requires a prime d != p with q != 1 (mod d)"});
    else
      res.reports.push_back(check_floor_identity(*d, *field));
  }
  res.reports.push_back(check_orthogonality(field, M, opts));
  for (auto t : gamma_t) gamma_checks(res, field, t, M, opts);
  res.reports.push_back(check_reflection(field, M, opts));
  res.reports.push_back(check_gauss_product(field, M, opts));
  if (d && (*d != field->p() && field->q() % *d != 1 && is_prime(*d) && *d >= 3)) {
    std::vector<FqElem> ls = lambdas;
    if (ls.empty())
      for (std::uint32_t e = 1; e < field->q(); ++e) ls.push_back(FqElem{e});
    for (auto l : ls)
      res.reports.push_back(
          check_asum_consistency(DworkInstance::make(*d, field, l), std::nullopt, opts, count));
  }
  ladder_sort(res);
  return res;
}

SuiteResult run_standard_identities(int M, const EngineOptions& opts,
                                    const CountOptions& count) {
  SuiteResult res;
  for (unsigned d : {3u, 5u, 7u, 11u})
    for (const auto& pp : floor_identity_moduli(d, 10))
      res.reports.push_back(check_floor_identity(d, pp.p, pp.r));

  auto field = [](std::uint32_t p, unsigned r) { return build_field(p, r); };
  for (auto [p, r] : {std::pair{5u, 1u}, {7u, 1u}, {3u, 2u}})
    res.reports.push_back(check_orthogonality(field(p, r), M, opts));
  for (auto [p, r] : {std::pair{5u, 1u}, {3u, 2u}}) {
    const auto f = field(p, r);
    for (std::int64_t t : {2, 3, 6}) gamma_checks(res, f, t, M, opts);
  }
  gamma_checks(res, field(3, 2), 5, M, opts);
  for (auto [p, r] : {std::pair{5u, 1u}, {7u, 1u}, {5u, 3u}})
    res.reports.push_back(check_reflection(field(p, r), M, opts));
  for (auto [p, r] : {std::pair{5u, 1u}, {7u, 1u}, {3u, 2u}, {5u, 2u}})
    res.reports.push_back(check_gauss_product(field(p, r), M, opts));

  const auto f5 = field(5, 1);
  for (std::uint32_t l = 1; l < 5; ++l)
    res.reports.push_back(check_asum_consistency(DworkInstance::make(3, f5, FqElem{l}),
                                                 std::nullopt, opts, count));
  const auto f7 = field(7, 1);
  for (std::uint32_t l : {1u, 3u})
    res.reports.push_back(check_asum_consistency(DworkInstance::make(5, f7, FqElem{l}),
                                                 std::nullopt, opts, count));
  ladder_sort(res);
  return res;
}

}  // namespace padicg
