#include "padicg/padic.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>
#include <thread>

#include "padicg/arith.hpp"
#include "padicg/gamma_cache.hpp"

namespace padicg {

// ---------------------------------------------------------------- Rational

namespace {

Rational make_rational(i128 n, i128 d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 a = n < 0 ? -n : n, b = d;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    n /= a;
    d /= a;
  }
  constexpr i128 lim = INT64_MAX;
  if (n > lim || n < -lim || d > lim) throw std::overflow_error("rational overflow");
  return {static_cast<std::int64_t>(n), static_cast<std::int64_t>(d)};
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const auto g = static_cast<std::int64_t>(gcd_u64(n < 0 ? -static_cast<std::uint64_t>(n) : n, d));
  num_ = n / g;
  den_ = d / g;
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
      throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return {parse_int(text)};
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return {parse_int(text.substr(0, slash)), den};
}

std::int64_t Rational::floor() const { return floor_div(num_, den_); }

Rational Rational::frac() const { return {mod_floor(num_, den_), den_}; }

Rational operator+(const Rational& a, const Rational& b) {
  return make_rational(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                       static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return make_rational(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return make_rational(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const i128 lhs = static_cast<i128>(a.num_) * b.den_;
  const i128 rhs = static_cast<i128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

FracFloor frac_floor(const Rational& x) { return {x.frac(), x.floor()}; }

// ----------------------------------------------------------------- Modulus

Modulus::Modulus(std::uint64_t p, int M) : p_(p), M_(M) {
  if (p < 2) throw PrecisionError("modulus base must be at least 2");
  if (M < 0) throw PrecisionError("negative precision");
  const auto pm = checked_pow(p, static_cast<unsigned>(M), std::uint64_t{1} << 62);
  if (!pm)
    throw PrecisionError("p^M = " + std::to_string(p) + "^" + std::to_string(M) +
                         " exceeds the 2^62 word bound");
  pm_ = *pm;
  small_ = pm_ < (std::uint64_t{1} << 32);
  barrett_ = UINT64_MAX / pm_;
}

std::uint64_t Modulus::reduce(std::int64_t v) const {
  const std::int64_t m = static_cast<std::int64_t>(pm_);
  std::int64_t r = v % m;
  return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

std::uint64_t Modulus::pow(std::uint64_t a, std::uint64_t k) const {
  std::uint64_t acc = 1 % pm_;
  a %= pm_;
  while (k != 0) {
    if (k & 1) acc = mul(acc, a);
    a = mul(a, a);
    k >>= 1;
  }
  return acc;
}

std::uint64_t Modulus::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw PrecisionError("inverse of a non-unit modulo p^M");
  return *inverse_mod(a % pm_, pm_);
}

std::uint64_t Modulus::from_rational(const Rational& x) const {
  if (x.den() % static_cast<std::int64_t>(p_) == 0)
    throw PrecisionError("rational " + x.str() + " is not p-integral for p=" +
                         std::to_string(p_));
  if (pm_ == 1) return 0;
  return mul(reduce(x.num()), inv(reduce(x.den())));
}

// ------------------------------------------------------------- PadicApprox

namespace {

void same_precision(const PadicApprox& a, const PadicApprox& b) {
  if (a.p != b.p || a.M != b.M)
    throw PrecisionError("mixed-precision p-adic arithmetic (" + std::to_string(a.p) + "^" +
                         std::to_string(a.M) + " vs " + std::to_string(b.p) + "^" +
                         std::to_string(b.M) + ")");
}

}  // namespace

PadicApprox PadicApprox::from_int(std::int64_t v, std::uint64_t p, int M) {
  return {p, M, Modulus(p, M).reduce(v)};
}

PadicApprox PadicApprox::from_rational(const Rational& x, std::uint64_t p, int M) {
  return {p, M, Modulus(p, M).from_rational(x)};
}

PadicApprox PadicApprox::inverse() const { return {p, M, modulus().inv(residue)}; }

PadicApprox PadicApprox::truncate(int N) const {
  if (N > M) throw PrecisionError("cannot raise precision by truncation");
  const Modulus mod(p, N);
  return {p, N, residue % mod.value()};
}

std::int64_t PadicApprox::centered() const {
  const std::uint64_t pm = modulus().value();
  return residue > pm / 2 ? static_cast<std::int64_t>(residue) - static_cast<std::int64_t>(pm)
                          : static_cast<std::int64_t>(residue);
}

PadicApprox operator+(const PadicApprox& a, const PadicApprox& b) {
  same_precision(a, b);
  return {a.p, a.M, a.modulus().add(a.residue, b.residue)};
}

PadicApprox operator-(const PadicApprox& a, const PadicApprox& b) {
  same_precision(a, b);
  return {a.p, a.M, a.modulus().sub(a.residue, b.residue)};
}

PadicApprox operator*(const PadicApprox& a, const PadicApprox& b) {
  same_precision(a, b);
  return {a.p, a.M, a.modulus().mul(a.residue, b.residue)};
}

PadicApprox PadicApprox::operator-() const { return {p, M, modulus().neg(residue)}; }

// ---------------------------------------------------------------- ZqApprox

ZqApprox::ZqApprox(FieldPtr field, int M)
    : field_(std::move(field)), mod_(field_->p(), M), c_(field_->r(), 0) {}

ZqApprox ZqApprox::constant(FieldPtr field, std::int64_t v, int M) {
  ZqApprox out(std::move(field), M);
  out.c_[0] = out.mod_.reduce(v);
  return out;
}

ZqApprox ZqApprox::constant(FieldPtr field, const PadicApprox& v) {
  if (v.p != field->p()) throw PrecisionError("constant from a different prime");
  ZqApprox out(std::move(field), v.M);
  out.c_[0] = v.residue;
  return out;
}

ZqApprox ZqApprox::lift(FieldPtr field, FqElem a, int M) {
  const auto digits = field->coeffs(a);
  ZqApprox out(std::move(field), M);
  for (std::size_t i = 0; i < digits.size(); ++i) out.c_[i] = digits[i] % out.mod_.value();
  return out;
}

ZqApprox ZqApprox::from_coeffs(FieldPtr field, std::vector<std::uint64_t> coeffs, int M) {
  ZqApprox out(std::move(field), M);
  if (coeffs.size() != out.c_.size()) throw PrecisionError("coefficient count must equal r");
  for (std::size_t i = 0; i < coeffs.size(); ++i) out.c_[i] = coeffs[i] % out.mod_.value();
  return out;
}

bool ZqApprox::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::uint64_t c) { return c == 0; });
}

bool ZqApprox::is_unit() const {
  if (precision() == 0) return false;
  const std::uint64_t p = mod_.p();
  return std::any_of(c_.begin(), c_.end(), [p](std::uint64_t c) { return c % p != 0; });
}

bool ZqApprox::in_zp() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](std::uint64_t c) { return c == 0; });
}

PadicApprox ZqApprox::constant_term() const { return {mod_.p(), precision(), c_[0]}; }

FqElem ZqApprox::reduce() const {
  if (precision() == 0) throw PrecisionError("reduction of a value with no known digits");
  std::vector<std::uint32_t> digits(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i)
    digits[i] = static_cast<std::uint32_t>(c_[i] % mod_.p());
  return field_->from_coeffs(digits);
}

ZqApprox ZqApprox::truncate(int N) const {
  if (N > precision()) throw PrecisionError("cannot raise precision by truncation");
  ZqApprox out(field_, N);
  for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = c_[i] % out.mod_.value();
  return out;
}

ZqApprox ZqApprox::divide_by_p() const {
  if (precision() == 0) throw PrecisionError("division by p of a value with no known digits");
  ZqApprox out(field_, precision() - 1);
  const std::uint64_t p = mod_.p();
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] % p != 0) throw PrecisionError("divide_by_p: value is not divisible by p");
    out.c_[i] = c_[i] / p;
  }
  return out;
}

void ZqApprox::same_ring(const ZqApprox& b) const {
  if (!field_ || !b.field_) throw PrecisionError("arithmetic on an unbound Z_q value");
  if (field_ != b.field_ && (field_->p() != b.field_->p() || field_->modulus() != b.field_->modulus()))
    throw PrecisionError("Z_q arithmetic across different fields");
  if (!(mod_ == b.mod_))
    throw PrecisionError("mixed-precision Z_q arithmetic (M=" + std::to_string(precision()) +
                         " vs M=" + std::to_string(b.precision()) + ")");
}

ZqApprox ZqApprox::operator-() const {
  ZqApprox out = *this;
  for (auto& c : out.c_) c = mod_.neg(c);
  return out;
}

ZqApprox operator+(const ZqApprox& a, const ZqApprox& b) {
  ZqApprox out = a;
  out += b;
  return out;
}

ZqApprox& ZqApprox::operator+=(const ZqApprox& b) {
  same_ring(b);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = mod_.add(c_[i], b.c_[i]);
  return *this;
}

ZqApprox operator-(const ZqApprox& a, const ZqApprox& b) { return a + (-b); }

ZqApprox operator*(const ZqApprox& a, const ZqApprox& b) {
  a.same_ring(b);
  const std::size_t r = a.c_.size();
  const Modulus& mod = a.mod_;
  if (r == 1) {
    ZqApprox out(a.field_, a.precision());
    out.c_[0] = mod.mul(a.c_[0], b.c_[0]);
    return out;
  }
  std::vector<std::uint64_t> prod(2 * r - 1, 0);
  for (std::size_t i = 0; i < r; ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < r; ++j) prod[i + j] = mod.add(prod[i + j], mod.mul(a.c_[i], b.c_[j]));
  }
  // x^r = -(f_0 + f_1 x + ... + f_{r-1} x^{r-1})
  const auto& f = a.field_->modulus();
  for (std::size_t k = 2 * r - 2; k >= r; --k) {
    const std::uint64_t lead = prod[k];
    if (lead == 0) continue;
    for (std::size_t i = 0; i < r; ++i)
      if (f[i] != 0) prod[k - r + i] = mod.sub(prod[k - r + i], mod.mul(lead, f[i]));
  }
  ZqApprox out(a.field_, a.precision());
  std::copy(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(r), out.c_.begin());
  return out;
}

ZqApprox& ZqApprox::operator*=(const ZqApprox& b) {
  *this = *this * b;
  return *this;
}

ZqApprox ZqApprox::scale(std::uint64_t s) const {
  ZqApprox out = *this;
  s %= mod_.value();
  for (auto& c : out.c_) c = mod_.mul(c, s);
  return out;
}

ZqApprox operator*(const ZqApprox& a, const PadicApprox& s) {
  if (s.p != a.mod_.p() || s.M != a.precision())
    throw PrecisionError("mixed-precision Z_q by Z_p scaling");
  return a.scale(s.residue);
}

bool operator==(const ZqApprox& a, const ZqApprox& b) {
  a.same_ring(b);
  return a.c_ == b.c_;
}

ZqApprox ZqApprox::inverse() const {
  if (!is_unit()) throw PrecisionError("inverse of a non-unit in Z_q");
  const FqElem inv0 = field_->inv(reduce());
  ZqApprox v = lift(field_, inv0, precision());
  const ZqApprox two = constant(field_, 2, precision());
  // Newton: each step doubles the number of correct digits.
  for (int known = 1; known < precision(); known *= 2) v = v * (two - *this * v);
  return v;
}

ZqApprox ZqApprox::pow(std::int64_t k) const {
  if (k < 0) return inverse().pow(-k);
  ZqApprox acc = constant(field_, 1, precision());
  ZqApprox base = *this;
  auto e = static_cast<std::uint64_t>(k);
  while (e != 0) {
    if (e & 1) acc *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return acc;
}

std::string ZqApprox::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? ", " : "") << c_[i];
  os << "] mod " << mod_.p() << "^" << precision();
  return os.str();
}

// ------------------------------------------------------------- gamma_p

PadicApprox gamma_p(const Rational& x, std::uint64_t p, int M) {
  const Modulus mod(p, M);
  const std::uint64_t n = mod.from_rational(x);
  std::uint64_t prod = 1 % mod.value();
  for (std::uint64_t j = 1; j < n; ++j)
    if (j % p != 0) prod = mod.mul(prod, j);
  return {p, M, (n & 1) ? mod.neg(prod) : prod};
}

namespace {

// Product of j in [lo, hi) with p !| j; checkpoints the running product
// (relative to lo) just before each rep in `reps`, which lie in [lo, hi].
std::uint64_t sweep_range(std::uint64_t lo, std::uint64_t hi,
                          std::span<const std::uint64_t> reps, std::span<std::uint64_t> out,
                          const Modulus& mod) {
  const std::uint64_t p = mod.p();
  std::uint64_t prod = 1 % mod.value();
  std::uint64_t j = lo;
  std::uint64_t digit = lo % p;
  std::size_t idx = 0;
  auto advance_to = [&](std::uint64_t stop) {
    for (; j < stop; ++j) {
      if (digit != 0) prod = mod.mul(prod, j);
      if (++digit == p) digit = 0;
    }
  };
  for (; idx < reps.size(); ++idx) {
    advance_to(reps[idx]);
    out[idx] = prod;
  }
  advance_to(hi);
  return prod;
}

}  // namespace

std::vector<std::uint64_t> gamma_sweep_reps(std::span<const std::uint64_t> sorted_reps,
                                            const Modulus& mod, unsigned workers) {
  std::vector<std::uint64_t> out(sorted_reps.size());
  if (sorted_reps.empty()) return out;
  for (std::size_t i = 0; i < sorted_reps.size(); ++i) {
    if (sorted_reps[i] >= mod.value() && mod.value() > 1)
      throw PrecisionError("gamma sweep representative out of range");
    if (i > 0 && sorted_reps[i] <= sorted_reps[i - 1])
      throw std::invalid_argument("gamma sweep representatives must be sorted and unique");
  }

  // Running products P(n) = prod_{0<j<n, p!|j} j over chunks [lo_w, hi_w).
  const std::uint64_t end = std::max<std::uint64_t>(sorted_reps.back(), 1);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::uint64_t>(end, 64))));
  std::vector<std::uint64_t> bounds(workers + 1);
  for (unsigned w = 0; w <= workers; ++w) bounds[w] = 1 + (end - 1) * w / workers;

  std::vector<std::size_t> first(workers + 1);
  for (unsigned w = 0; w <= workers; ++w)
    first[w] = static_cast<std::size_t>(
        std::lower_bound(sorted_reps.begin(), sorted_reps.end(), bounds[w]) - sorted_reps.begin());
  first[0] = 0;  // reps 0 and 1 belong to the first chunk (empty product)
  first[workers] = sorted_reps.size();

  std::vector<std::uint64_t> totals(workers);
  auto job = [&](unsigned w) {
    const std::size_t b = first[w], e = first[w + 1];
    totals[w] = sweep_range(bounds[w], bounds[w + 1], sorted_reps.subspan(b, e - b),
                            std::span(out).subspan(b, e - b), mod);
  };
  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(job, w);
  }

  std::uint64_t carry = 1 % mod.value();
  for (unsigned w = 0; w < workers; ++w) {
    for (std::size_t i = first[w]; i < first[w + 1]; ++i) out[i] = mod.mul(out[i], carry);
    carry = mod.mul(carry, totals[w]);
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    if (sorted_reps[i] & 1) out[i] = mod.neg(out[i]);
  return out;
}

PadicApprox GammaTable::at(const Rational& x) const {
  return {p_, M_, residue(x)};
}

std::uint64_t GammaTable::residue(const Rational& x) const {
  const auto it = values_.find(x);
  if (it == values_.end())
    throw std::out_of_range("Gamma_p(" + x.str() + ") was not tabulated");
  return it->second;
}

GammaTable gamma_sweep(std::span<const Rational> args, std::uint64_t p, int M,
                       unsigned workers, GammaCache* cache) {
  const Modulus mod(p, M);
  std::vector<std::pair<Rational, std::uint64_t>> keyed;
  keyed.reserve(args.size());
  for (const auto& x : args) keyed.emplace_back(x, mod.from_rational(x));
  std::vector<std::uint64_t> reps;
  reps.reserve(keyed.size());
  for (const auto& kv : keyed) reps.push_back(kv.second);
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());

  const std::vector<std::uint64_t> values =
      cache ? cache->lookup(p, M, reps, workers) : gamma_sweep_reps(reps, mod, workers);

  GammaTable table(p, M);
  for (const auto& [x, rep] : keyed) {
    const auto pos = std::lower_bound(reps.begin(), reps.end(), rep) - reps.begin();
    table.insert(x, values[static_cast<std::size_t>(pos)]);
  }
  return table;
}

// ------------------------------------------------------------ Teichmueller

ZqApprox teichmuller(const FieldPtr& field, FqElem a, int M) {
  if (a == field->zero()) throw PrecisionError("Teichmueller lift of zero");
  ZqApprox w = ZqApprox::lift(field, a, M);
  // w_k = omega(a) mod p^(k+1)
  for (int k = 1; k < M; ++k) w = w.pow(field->q());
  return w;
}

CharacterTable::CharacterTable(FieldPtr field, int M)
    : field_(std::move(field)), M_(M), zero_(field_, M) {
  const std::uint32_t n = field_->q() - 1;
  powers_.reserve(n);
  const ZqApprox w = teichmuller(field_, field_->generator(), M);
  ZqApprox cur = ZqApprox::constant(field_, 1, M);
  for (std::uint32_t k = 0; k < n; ++k) {
    powers_.push_back(cur);
    cur *= w;
  }
}

const ZqApprox& CharacterTable::root_pow(std::int64_t k) const {
  return powers_[static_cast<std::size_t>(mod_floor(k, field_->q() - 1))];
}

ZqApprox CharacterTable::omega_pow(FqElem x, std::int64_t k) const {
  if (x == field_->zero()) return zero_;
  const std::int64_t n = field_->q() - 1;
  return root_pow(mod_floor(k % n, n) * field_->dlog(x) % n);
}

}  // namespace padicg
