#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "padicg/field.hpp"

namespace padicg {

class PrecisionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact rational with int64 numerator/denominator, always reduced, den > 0.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d);

  /// Parses "a", "-a", or "a/b".
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  std::int64_t floor() const;
  /// Fractional part in [0, 1).
  Rational frac() const;
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const { return {-num_, den_}; }
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  std::string str() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

struct FracFloor {
  Rational frac;
  std::int64_t floor;
};
FracFloor frac_floor(const Rational& x);

/// Arithmetic modulo p^M. M may be zero (the trivial ring) for fully
/// cancelled values.
class Modulus {
 public:
  Modulus(std::uint64_t p, int M);

  std::uint64_t p() const { return p_; }
  int precision() const { return M_; }
  std::uint64_t value() const { return pm_; }

  std::uint64_t reduce(std::int64_t v) const;
  std::uint64_t reduce_u128(unsigned __int128 v) const {
    return static_cast<std::uint64_t>(v % pm_);
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= pm_ ? s - pm_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + pm_ - b;
  }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : pm_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (small_) {
      // Barrett reduction; a*b < 2^64 because p^M < 2^32.
      const std::uint64_t x = a * b;
      const std::uint64_t est =
          static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * barrett_) >> 64);
      std::uint64_t r = x - est * pm_;
      return r >= pm_ ? r - pm_ : r;
    }
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % pm_);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t k) const;
  /// Throws PrecisionError unless p does not divide a.
  std::uint64_t inv(std::uint64_t a) const;
  /// Residue of the rational x = n/d with p not dividing d.
  std::uint64_t from_rational(const Rational& x) const;

  friend bool operator==(const Modulus& a, const Modulus& b) {
    return a.p_ == b.p_ && a.M_ == b.M_;
  }

 private:
  std::uint64_t p_;
  int M_;
  std::uint64_t pm_;
  bool small_;
  std::uint64_t barrett_;
};

/// Element of Z_p known modulo p^M.
struct PadicApprox {
  std::uint64_t p = 0;
  int M = 0;
  std::uint64_t residue = 0;

  static PadicApprox from_int(std::int64_t v, std::uint64_t p, int M);
  static PadicApprox from_rational(const Rational& x, std::uint64_t p, int M);

  Modulus modulus() const { return {p, M}; }
  bool is_unit() const { return residue % p != 0; }
  PadicApprox inverse() const;
  /// Same value known to fewer digits.
  PadicApprox truncate(int N) const;
  /// Signed representative in (-p^M/2, p^M/2].
  std::int64_t centered() const;

  friend PadicApprox operator+(const PadicApprox& a, const PadicApprox& b);
  friend PadicApprox operator-(const PadicApprox& a, const PadicApprox& b);
  friend PadicApprox operator*(const PadicApprox& a, const PadicApprox& b);
  PadicApprox operator-() const;
  friend bool operator==(const PadicApprox&, const PadicApprox&) = default;
};

/// Element of Z_q = Z_p[x]/(f^), f^ the coefficient-wise lift of the field
/// modulus, known modulo p^M. Holds r coefficients, constant term first.
class ZqApprox {
 public:
  ZqApprox() = default;
  ZqApprox(FieldPtr field, int M);  // zero

  static ZqApprox constant(FieldPtr field, std::int64_t v, int M);
  static ZqApprox constant(FieldPtr field, const PadicApprox& v);
  /// Coefficient-wise lift of an F_q element (digits in [0, p)).
  static ZqApprox lift(FieldPtr field, FqElem a, int M);
  static ZqApprox from_coeffs(FieldPtr field, std::vector<std::uint64_t> coeffs, int M);

  const FieldPtr& field() const { return field_; }
  int precision() const { return mod_.precision(); }
  const Modulus& modulus() const { return mod_; }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }

  bool is_zero() const;
  /// Nonzero modulo p, i.e. invertible.
  bool is_unit() const;
  /// True when every coefficient of degree >= 1 vanishes (value lies in Z_p).
  bool in_zp() const;
  PadicApprox constant_term() const;
  /// Reduction modulo p as an F_q element.
  FqElem reduce() const;

  ZqApprox truncate(int N) const;
  /// Exact division by p; requires every coefficient divisible by p. The
  /// result is known to one digit fewer.
  ZqApprox divide_by_p() const;

  ZqApprox inverse() const;
  ZqApprox pow(std::int64_t k) const;
  ZqApprox scale(std::uint64_t s) const;

  ZqApprox operator-() const;
  friend ZqApprox operator+(const ZqApprox& a, const ZqApprox& b);
  friend ZqApprox operator-(const ZqApprox& a, const ZqApprox& b);
  friend ZqApprox operator*(const ZqApprox& a, const ZqApprox& b);
  friend ZqApprox operator*(const ZqApprox& a, const PadicApprox& s);
  ZqApprox& operator+=(const ZqApprox& b);
  ZqApprox& operator*=(const ZqApprox& b);
  friend bool operator==(const ZqApprox& a, const ZqApprox& b);

  std::string str() const;

 private:
  void same_ring(const ZqApprox& b) const;

  FieldPtr field_;
  Modulus mod_{3, 0};
  std::vector<std::uint64_t> c_;
};

// ---------------------------------------------------------------------------
// Morita's p-adic gamma function.
//
// Gamma_p(n) = (-1)^n prod_{0<j<n, p !| j} j for positive integers, extended
// continuously to Z_p. For p odd, x = y (mod p^M) implies
// Gamma_p(x) = Gamma_p(y) (mod p^M), so a rational x is evaluated through its
// representative n in [0, p^M).
// ---------------------------------------------------------------------------

/// Single evaluation by direct product; O(p^M).
PadicApprox gamma_p(const Rational& x, std::uint64_t p, int M);

/// Gamma_p at every integer representative in `sorted_reps` (ascending,
/// unique, each < p^M), in one pass of the running product. Work is split
/// over `workers` threads.
std::vector<std::uint64_t> gamma_sweep_reps(std::span<const std::uint64_t> sorted_reps,
                                            const Modulus& mod, unsigned workers = 1);

class GammaCache;

/// Gamma_p values at a set of rationals, modulo p^M.
class GammaTable {
 public:
  GammaTable() = default;
  GammaTable(std::uint64_t p, int M) : p_(p), M_(M) {}

  std::uint64_t p() const { return p_; }
  int precision() const { return M_; }
  std::size_t size() const { return values_.size(); }
  bool contains(const Rational& x) const { return values_.count(x) != 0; }
  PadicApprox at(const Rational& x) const;
  std::uint64_t residue(const Rational& x) const;

  void insert(const Rational& x, std::uint64_t residue) { values_[x] = residue; }

 private:
  std::uint64_t p_ = 0;
  int M_ = 0;
  std::map<Rational, std::uint64_t> values_;
};

/// Gamma_p over a set of rationals via one sweep (or a cache hit).
GammaTable gamma_sweep(std::span<const Rational> args, std::uint64_t p, int M,
                       unsigned workers = 1, GammaCache* cache = nullptr);

// ---------------------------------------------------------------------------
// Teichmueller character.
// ---------------------------------------------------------------------------

/// omega(a): the (q-1)-th root of unity in Z_q congruent to a mod p, computed
/// by iterating w -> w^q from the lift of a.
ZqApprox teichmuller(const FieldPtr& field, FqElem a, int M);

/// Powers omega(g)^k, k in [0, q-2], for the field generator g. Serves every
/// character value omega^k(x) = omega(g)^(k dlog x) by table lookup.
class CharacterTable {
 public:
  CharacterTable(FieldPtr field, int M);

  const FieldPtr& field() const { return field_; }
  int precision() const { return M_; }

  /// omega^k(x), with the convention chi(0) = 0 for every character,
  /// including the trivial one.
  ZqApprox omega_pow(FqElem x, std::int64_t k) const;
  ZqApprox omega(FqElem x) const { return omega_pow(x, 1); }
  /// omega(g)^k.
  const ZqApprox& root_pow(std::int64_t k) const;

 private:
  FieldPtr field_;
  int M_;
  ZqApprox zero_;
  std::vector<ZqApprox> powers_;
};

}  // namespace padicg
