#pragma once

#include <cstdint>

#include "padicg/instance.hpp"
#include "padicg/padic.hpp"

namespace padicg {

/// u * pi^grade with pi^(p-1) = -p. Normalized values have
/// 0 <= grade < p-1; folding moves whole multiples of p-1 into the unit part
/// as powers of -p, so the "unit" may carry factors of p afterwards.
struct PiGraded {
  int grade = 0;
  ZqApprox unit;

  PiGraded normalized() const;
  static PiGraded one(const FieldPtr& field, int M);

  /// Equality of normalized forms.
  friend bool operator==(const PiGraded& a, const PiGraded& b);
};

PiGraded pi_mul(const PiGraded& a, const PiGraded& b);

/// Character and Gamma_p tables needed for every Gauss sum over one field at
/// one precision: Gamma_p(k/(q-1)) for all k in [0, q-2].
class GaussContext {
 public:
  GaussContext(FieldPtr field, int M, const EngineOptions& opts = {});

  const FieldPtr& field() const { return field_; }
  int precision() const { return M_; }
  const CharacterTable& chars() const { return chars_; }
  const GammaTable& gammas() const { return gammas_; }

 private:
  FieldPtr field_;
  int M_;
  CharacterTable chars_;
  GammaTable gammas_;
};

/// g(omega-bar^a) by Gross-Koblitz:
/// -pi^((p-1) sum_i <a p^i/(q-1)>) prod_i Gamma_p(<a p^i/(q-1)>), normalized.
PiGraded gauss_sum(const GaussContext& ctx, std::int64_t a);

/// A = sum_{a=0}^{q-2} g(w-bar^a)^d g(w-bar^(-da)) w^(-da)(-d lambda), the
/// character sum of the point-count derivation with T = omega. Requires
/// lambda != 0.
ZqApprox a_sum(const DworkInstance& inst, const GaussContext& ctx);

}  // namespace padicg
