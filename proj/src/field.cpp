#include "padicg/field.hpp"

#include <string>

#include "padicg/arith.hpp"

namespace padicg {

namespace {

using Poly = std::vector<std::uint32_t>;

// Remainder of a modulo monic b over F_p. Both constant term first.
Poly poly_rem(Poly a, std::span<const std::uint32_t> b, std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    if (lead != 0) {
      for (std::size_t i = 0; i < db; ++i) {
        const std::uint64_t sub = lead * b[i] % p;
        a[i + shift] = static_cast<std::uint32_t>((a[i + shift] + p - sub) % p);
      }
    }
    a.pop_back();
  }
  return a;
}

bool all_zero(const Poly& a) {
  for (auto c : a)
    if (c != 0) return false;
  return true;
}

// Monic polynomial of degree k whose lower coefficients are the base-p digits
// of `index`, with c_{k-1} the most significant digit.
Poly monic_from_index(std::uint64_t index, unsigned k, std::uint32_t p) {
  Poly out(k + 1, 0);
  for (unsigned i = 0; i < k; ++i) {
    out[i] = static_cast<std::uint32_t>(index % p);
    index /= p;
  }
  out[k] = 1;
  return out;
}

}  // namespace

bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p) {
  if (poly.empty() || poly.back() != 1)
    throw FieldError("is_irreducible: polynomial must be monic");
  const unsigned n = static_cast<unsigned>(poly.size() - 1);
  if (n == 0) return false;
  Poly a(poly.begin(), poly.end());
  for (unsigned k = 1; 2 * k <= n; ++k) {
    const std::uint64_t count = *checked_pow(p, k);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      const Poly h = monic_from_index(idx, k, p);
      if (all_zero(poly_rem(a, h, p))) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, unsigned r) {
  const std::uint64_t count = *checked_pow(p, r);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Poly f = monic_from_index(idx, r, p);
    if (is_irreducible(f, p)) return f;
  }
  throw FieldError("no irreducible polynomial found");  // unreachable for prime p
}

FieldDesc::FieldDesc(std::uint32_t p, unsigned r, std::vector<std::uint32_t> f)
    : p_(p), r_(r), q_(static_cast<std::uint32_t>(*checked_pow(p, r))), f_(std::move(f)) {
  pw_.resize(r_);
  std::uint32_t acc = 1;
  for (unsigned i = 0; i < r_; ++i) {
    pw_[i] = acc;
    acc *= p_;
  }
}

FieldPtr FieldDesc::build(std::uint32_t p, unsigned r, const FieldOptions& opts) {
  if (p == 2 || !is_prime(p))
    throw FieldError("characteristic must be an odd prime, got " + std::to_string(p));
  if (r == 0) throw FieldError("extension degree must be positive");
  const auto q = checked_pow(p, r, opts.max_q);
  if (!q)
    throw FieldError("field of order " + std::to_string(p) + "^" + std::to_string(r) +
                     " exceeds the tabulation bound " + std::to_string(opts.max_q));

  std::shared_ptr<FieldDesc> field(new FieldDesc(p, r, smallest_irreducible(p, r)));
  field->g_ = find_generator(*field, opts.generator_rank);

  const std::uint32_t n = field->q_ - 1;
  field->exp_.resize(n);
  field->log_.assign(field->q_, 0);
  FqElem cur = field->one();
  for (std::uint32_t k = 0; k < n; ++k) {
    field->exp_[k] = cur.enc;
    field->log_[cur.enc] = k;
    cur = field->slow_mul(cur, field->g_);
  }
  return field;
}

FieldPtr build_field(std::uint32_t p, unsigned r, const FieldOptions& opts) {
  return FieldDesc::build(p, r, opts);
}

void FieldDesc::check(FqElem x) const {
  if (x.enc >= q_)
    throw FieldError("element encoding " + std::to_string(x.enc) + " out of range for q=" +
                     std::to_string(q_));
}

FqElem FieldDesc::from_int(std::int64_t v) const {
  return {static_cast<std::uint32_t>(mod_floor(v, p_))};
}

FqElem FieldDesc::from_encoding(std::uint64_t enc) const {
  if (enc >= q_)
    throw FieldError("element encoding " + std::to_string(enc) + " out of range for q=" +
                     std::to_string(q_));
  return {static_cast<std::uint32_t>(enc)};
}

FqElem FieldDesc::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > r_) throw FieldError("too many coefficients for F_q element");
  std::uint32_t enc = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) enc += (coeffs[i] % p_) * pw_[i];
  return {enc};
}

std::vector<std::uint32_t> FieldDesc::coeffs(FqElem x) const {
  check(x);
  std::vector<std::uint32_t> out(r_);
  for (unsigned i = 0; i < r_; ++i) {
    out[i] = x.enc % p_;
    x.enc /= p_;
  }
  return out;
}

FqElem FieldDesc::add(FqElem a, FqElem b) const {
  std::uint32_t out = 0;
  for (unsigned i = 0; i < r_; ++i) {
    const std::uint32_t s = a.enc % p_ + b.enc % p_;
    out += (s >= p_ ? s - p_ : s) * pw_[i];
    a.enc /= p_;
    b.enc /= p_;
  }
  return {out};
}

FqElem FieldDesc::neg(FqElem a) const {
  std::uint32_t out = 0;
  for (unsigned i = 0; i < r_; ++i) {
    const std::uint32_t c = a.enc % p_;
    out += (c == 0 ? 0 : p_ - c) * pw_[i];
    a.enc /= p_;
  }
  return {out};
}

FqElem FieldDesc::sub(FqElem a, FqElem b) const { return add(a, neg(b)); }

FqElem FieldDesc::mul(FqElem a, FqElem b) const {
  if (a.enc == 0 || b.enc == 0) return zero();
  std::uint32_t k = log_[a.enc] + log_[b.enc];
  if (k >= q_ - 1) k -= q_ - 1;
  return {exp_[k]};
}

FqElem FieldDesc::inv(FqElem a) const {
  check(a);
  if (a.enc == 0) throw FieldError("inverse of zero in F_q");
  const std::uint32_t k = log_[a.enc];
  return {exp_[k == 0 ? 0 : q_ - 1 - k]};
}

FqElem FieldDesc::pow(FqElem a, std::int64_t k) const {
  check(a);
  if (a.enc == 0) {
    if (k < 0) throw FieldError("negative power of zero in F_q");
    return k == 0 ? one() : zero();
  }
  return exp(static_cast<std::int64_t>(log_[a.enc]) * (k % (q_ - 1)));
}

std::uint32_t FieldDesc::dlog(FqElem x) const {
  check(x);
  if (x.enc == 0) throw FieldError("discrete logarithm of zero");
  return log_[x.enc];
}

FqElem FieldDesc::exp(std::int64_t k) const {
  return {exp_[static_cast<std::size_t>(mod_floor(k, q_ - 1))]};
}

std::uint64_t FieldDesc::order(FqElem x) const {
  const std::uint32_t n = q_ - 1;
  return n / gcd_u64(dlog(x), n);
}

std::vector<FqElem> FieldDesc::enumerate() const {
  std::vector<FqElem> out(q_);
  for (std::uint32_t i = 0; i < q_; ++i) out[i] = {i};
  return out;
}

std::vector<std::uint32_t> FieldDesc::poly_mul(std::span<const std::uint32_t> a,
                                               std::span<const std::uint32_t> b) const {
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = static_cast<std::uint32_t>(
          (prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p_);
  prod = poly_rem(std::move(prod), f_, p_);
  prod.resize(r_, 0);
  return prod;
}

FqElem FieldDesc::slow_mul(FqElem a, FqElem b) const {
  const auto ca = coeffs(a);
  const auto cb = coeffs(b);
  return from_coeffs(poly_mul(ca, cb));
}

FqElem FieldDesc::slow_pow(FqElem a, std::uint64_t k) const {
  FqElem acc = one();
  while (k != 0) {
    if (k & 1) acc = slow_mul(acc, a);
    a = slow_mul(a, a);
    k >>= 1;
  }
  return acc;
}

FqElem find_generator(const FieldDesc& field, unsigned rank) {
  const std::uint64_t n = field.q() - 1;
  const auto factors = prime_factors(n);
  for (std::uint32_t enc = 1; enc < field.q(); ++enc) {
    const FqElem x{enc};
    bool primitive = true;
    for (auto ell : factors) {
      if (field.slow_pow(x, n / ell) == field.one()) {
        primitive = false;
        break;
      }
    }
    if (primitive && rank-- == 0) return x;
  }
  throw FieldError("requested generator rank exceeds the number of generators");
}

}  // namespace padicg
