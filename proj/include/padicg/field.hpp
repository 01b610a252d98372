#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace padicg {

/// An element of F_q = F_p[x]/(f), identified by its encoding sum c_i p^i.
struct FqElem {
  std::uint32_t enc = 0;

  friend constexpr bool operator==(FqElem, FqElem) = default;
  friend constexpr auto operator<=>(FqElem, FqElem) = default;
};

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FieldOptions {
  std::uint64_t max_q = std::uint64_t{1} << 20;
  // 0 selects the smallest generator by encoding, 1 the next one, and so on.
  unsigned generator_rank = 0;
};

class FieldDesc;
using FieldPtr = std::shared_ptr<const FieldDesc>;

/// A tabulated model of F_{p^r}.
///
/// The modulus f is the lexicographically smallest monic irreducible of
/// degree r (coefficient tuples compared from c_{r-1} down to c_0), and the
/// generator is chosen by ascending encoding. Both choices are deterministic,
/// so encodings are stable across runs. Instances are immutable once built.
class FieldDesc {
 public:
  static FieldPtr build(std::uint32_t p, unsigned r, const FieldOptions& opts = {});

  std::uint32_t p() const { return p_; }
  unsigned r() const { return r_; }
  std::uint32_t q() const { return q_; }
  /// Modulus coefficients, constant term first; length r + 1, leading 1.
  const std::vector<std::uint32_t>& modulus() const { return f_; }
  FqElem generator() const { return g_; }

  FqElem zero() const { return {0}; }
  FqElem one() const { return {1}; }
  /// Image of an integer in the prime subfield.
  FqElem from_int(std::int64_t v) const;
  FqElem from_coeffs(std::span<const std::uint32_t> coeffs) const;
  FqElem from_encoding(std::uint64_t enc) const;
  std::vector<std::uint32_t> coeffs(FqElem x) const;

  FqElem add(FqElem a, FqElem b) const;
  FqElem sub(FqElem a, FqElem b) const;
  FqElem neg(FqElem a) const;
  FqElem mul(FqElem a, FqElem b) const;
  FqElem inv(FqElem a) const;
  /// a^k; negative k requires a != 0. 0^0 = 1.
  FqElem pow(FqElem a, std::int64_t k) const;

  /// Exponent k in [0, q-2] with g^k = x.
  std::uint32_t dlog(FqElem x) const;
  /// g^k for any integer k.
  FqElem exp(std::int64_t k) const;
  std::uint64_t order(FqElem x) const;

  /// All q elements in ascending encoding.
  std::vector<FqElem> enumerate() const;

 private:
  FieldDesc(std::uint32_t p, unsigned r, std::vector<std::uint32_t> f);

  std::vector<std::uint32_t> poly_mul(std::span<const std::uint32_t> a,
                                      std::span<const std::uint32_t> b) const;
  FqElem slow_mul(FqElem a, FqElem b) const;
  FqElem slow_pow(FqElem a, std::uint64_t k) const;
  void check(FqElem x) const;

  std::uint32_t p_;
  unsigned r_;
  std::uint32_t q_;
  std::vector<std::uint32_t> f_;
  std::vector<std::uint32_t> pw_;  // p^i, i < r
  FqElem g_{};
  std::vector<std::uint32_t> log_;  // indexed by encoding; log_[0] unused
  std::vector<std::uint32_t> exp_;  // g^k for k in [0, q-2]

  friend FqElem find_generator(const FieldDesc& field, unsigned rank);
};

FieldPtr build_field(std::uint32_t p, unsigned r, const FieldOptions& opts = {});

/// Exhaustive trial division by every monic polynomial of degree <= deg/2.
bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p);

/// Smallest monic irreducible of degree r over F_p, constant term first.
std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, unsigned r);

/// The `rank`-th smallest (by encoding) element of multiplicative order q-1.
/// Uses polynomial arithmetic only, so it is valid before tables exist.
FqElem find_generator(const FieldDesc& field, unsigned rank = 0);

}  // namespace padicg
