#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "padicg/gfunc.hpp"
#include "padicg/instance.hpp"
#include "padicg/padic.hpp"

namespace padicg {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CountOptions {
  std::uint64_t budget = 300'000'000;  // enumerated tuples
  unsigned workers = 1;
};

/// Number of (x_1..x_d) in F_q^d on the affine Dwork hypersurface, by
/// exhaustive enumeration.
std::uint64_t brute_count_affine(const DworkInstance& inst, const CountOptions& opts = {});

/// (N_affine - 1) / (q - 1); throws std::logic_error if not divisible.
std::uint64_t projective_from_affine(std::uint64_t n_affine, std::uint64_t q);
std::uint64_t projective_count(const DworkInstance& inst, const CountOptions& opts = {});

/// Smallest M with p^M > 2 q^(d-1), and never below 4: the projective count
/// and (q^(d-1)-1)/(q-1) are nonnegative integers below q^(d-1), so a
/// congruence modulo p^M decides equality.
int default_precision(const DworkInstance& inst);

/// (q^(d-1)-1)/(q-1) - G[1/d..(d-1)/d; 0..0 | lambda^d], modulo p^M.
PadicApprox theorem_count(const DworkInstance& inst, int M, const EngineOptions& opts = {});

/// (p^(d-1)-1)/(p-1) + 1/(p-1) + G[...], modulo p^M, with 1/(p-1) the p-adic
/// inverse. Only defined over prime fields.
PadicApprox conjecture_count(const DworkInstance& inst, int M, const EngineOptions& opts = {});

/// #{(x, y) in F_q^2 : x^3 + y^3 + 1 = 3 lambda x y}.
std::uint64_t curve_count(const FieldDesc& field, FqElem lambda, const CountOptions& opts = {});

struct CountReport {
  unsigned d = 0;
  std::uint32_t p = 0;
  unsigned r = 0;
  std::uint32_t lambda = 0;
  int M = 0;
  std::uint64_t n_affine = 0;
  std::uint64_t projective = 0;
  PadicApprox theorem_value;
  std::optional<PadicApprox> conjecture_value;
  PadicApprox g_value;
  bool match_theorem = false;
  std::optional<bool> match_conjecture;
};

/// Brute count vs. the G-function formula (and the conjectured one over
/// prime fields). M defaults to default_precision(inst).
CountReport verify_theorem(const DworkInstance& inst, std::optional<int> M = std::nullopt,
                           const EngineOptions& engine = {}, const CountOptions& count = {});

struct CorollaryReport {
  std::uint32_t p = 0;
  unsigned r = 0;
  std::uint32_t lambda = 0;
  int M = 0;
  bool skipped = false;
  std::string reason;
  std::optional<ValuedZq> lhs;
  std::optional<ValuedZq> rhs;
  std::uint64_t curve_points = 0;
  std::int64_t expected = 0;  // q - curve_points
  bool match_sides = false;
  bool match_curve = false;

  bool ok() const { return skipped || (match_sides && match_curve); }
};

/// Why the corollary does not apply at (field, lambda), if it does not.
std::optional<std::string> corollary_precondition(const FieldDesc& field, FqElem lambda);

/// Specs of both sides of the 2G2 transformation at argument lambda; t is
/// set to lambda^3 and 1/lambda^3 respectively (lambda must be nonzero).
GSpec corollary_lhs_spec(const FieldPtr& field, FqElem lambda);
GSpec corollary_rhs_spec(const FieldPtr& field, FqElem lambda);

/// Shared Gamma_p/character tables for both corollary sides at precision M.
GContext corollary_context(const FieldPtr& field, int M, const EngineOptions& opts = {});

/// G[1/3,2/3; 0,0 | l^3] against q phi(-3l) G[1/2,1/2; 1/6,5/6 | 1/l^3] modulo
/// p^M, both also checked against q - #{affine curve points}. Precondition
/// failures (p < 5, q = 1 mod 3, lambda = 0, lambda^3 = 1) yield a skipped
/// report.
CorollaryReport verify_corollary(const FieldPtr& field, FqElem lambda, const GContext& ctx,
                                 const CountOptions& count = {});
CorollaryReport verify_corollary(const FieldPtr& field, FqElem lambda, int M,
                                 const EngineOptions& engine = {},
                                 const CountOptions& count = {});

/// Precision used for corollary checks: the theorem default for d = 3.
int corollary_precision(const FieldPtr& field);

}  // namespace padicg
