#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padicg/arith.hpp"
#include "padicg/dwork.hpp"
#include "padicg/field.hpp"
#include "padicg/instance.hpp"

namespace padicg {

/// Outcome of an exhaustive sweep of one identity. Each failure lists the
/// offending parameters in the order given by `params`.
struct IdentityReport {
  std::string name;
  std::string ranges;
  std::vector<std::string> params;
  std::uint64_t cases = 0;
  std::vector<std::vector<std::int64_t>> failures;

  bool pass() const { return failures.empty(); }
};

/// sum_x chi(x) and sum_chi chi(x) over all characters omega^m and all x.
IdentityReport check_orthogonality(const FieldPtr& field, int M,
                                   const EngineOptions& opts = {});

/// g(w-bar^k) g(w-bar^-k) = q w^k(-1) in pi-graded form, k in [1, q-2].
IdentityReport check_gauss_product(const FieldPtr& field, int M,
                                   const EngineOptions& opts = {});

/// Both Gamma_p multiplication identities with Teichmueller twist, for all
/// j in [0, q-2]. Requires p !| t.
IdentityReport check_gamma_product(const FieldPtr& field, std::int64_t t, int M,
                                   const EngineOptions& opts = {});

/// d floor(a p^i/(q-1)) + floor(-d a p^i/(q-1)) =
///   (d-1) floor(a p^i/(q-1)) + sum_h floor(<h p^i/d> - a p^i/(q-1)) - 1
/// over a in [1, q-2], i in [0, r-1]. Pure integer arithmetic; requires
/// d prime, d != p and q != 1 (mod d).
IdentityReport check_floor_identity(unsigned d, std::uint64_t p, unsigned r);
IdentityReport check_floor_identity(unsigned d, const FieldDesc& field);

/// prod_i Gamma_p(<a p^i/(q-1)>) Gamma_p(<(1 - a/(q-1)) p^i>) = (-1)^r w-bar^a(-1)
/// for a in [1, q-2].
IdentityReport check_reflection(const FieldPtr& field, int M, const EngineOptions& opts = {});

/// q N_affine = q^d + A - (1 - q) with A from the Gauss-sum character sum and
/// N_affine by enumeration. M defaults to the smallest with p^M > 2 q^(d+1).
IdentityReport check_asum_consistency(const DworkInstance& inst,
                                      std::optional<int> M = std::nullopt,
                                      const EngineOptions& opts = {},
                                      const CountOptions& count = {});
int asum_precision(const DworkInstance& inst);

/// The first `count` odd prime powers q = p^r with p != d and q != 1 (mod d).
std::vector<PrimePower> floor_identity_moduli(unsigned d, std::size_t count);

struct SkippedCheck {
  std::string name;
  std::string ranges;
  std::string reason;
};

/// Reports in ladder order: floor identity, orthogonality, gamma products,
/// reflection, Gauss products, A-sum. The first failing layer localizes the
/// faulty component.
struct SuiteResult {
  std::vector<IdentityReport> reports;
  std::vector<SkippedCheck> skipped;

  bool pass() const;
  void append(SuiteResult other);
};

/// Every identity over one field. `d` enables the floor identity and the
/// A-sum check (over `lambdas`, or all nonzero lambda when empty).
SuiteResult run_field_identities(const FieldPtr& field, std::optional<unsigned> d,
                                 const std::vector<FqElem>& lambdas,
                                 const std::vector<std::int64_t>& gamma_t, int M,
                                 const EngineOptions& opts = {},
                                 const CountOptions& count = {});

/// The fixed desk-scale campaign: orthogonality for q in {5,7,9}; Gauss
/// products for q in {5,7,9,25}; Gamma_p products for q in {5,9} and
/// t in {2,3,6} (plus q=9, t=5); floor identity for d in {3,5,7,11} over the
/// first ten admissible q; reflection for q in {5,7,125}; A-sum consistency
/// for d=3, q=5 (all lambda != 0) and d=5, q=7 (lambda in {1,3}).
SuiteResult run_standard_identities(int M, const EngineOptions& opts = {},
                                    const CountOptions& count = {});

}  // namespace padicg
