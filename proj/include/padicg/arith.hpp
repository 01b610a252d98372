#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace padicg {

using i128 = __int128;
using u128 = unsigned __int128;

bool is_prime(std::uint64_t n);

/// Distinct prime factors of n in ascending order, by trial division.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// base^exp as an exact integer, or nullopt on overflow past `limit`.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp,
                                         std::uint64_t limit = UINT64_MAX);

std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t mod_floor(std::int64_t a, std::int64_t b);
i128 floor_div(i128 a, i128 b);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

/// Inverse of a modulo m (m > 1), nullopt if gcd(a, m) != 1.
std::optional<std::uint64_t> inverse_mod(std::uint64_t a, std::uint64_t m);

/// Odd prime powers q = p^r in ascending order, up to and including `max_q`.
struct PrimePower {
  std::uint64_t q;
  std::uint64_t p;
  unsigned r;
};
std::vector<PrimePower> odd_prime_powers(std::uint64_t max_q);

}  // namespace padicg
