#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "padicg/instance.hpp"
#include "padicg/padic.hpp"

namespace padicg {

/// Parameters of nGn[a_1..a_n; b_1..b_n | t]_q.
struct GSpec {
  std::vector<Rational> a;
  std::vector<Rational> b;
  FqElem t{};
  FieldPtr field;

  std::size_t n() const { return a.size(); }
  /// Throws std::invalid_argument on a malformed spec.
  void validate() const;
};

class NotIntegral : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// (-p)^grade * unit, where unit is known modulo p^unit.precision(). The
/// represented value is therefore known modulo p^(grade + unit.precision()).
/// Normalized values have a unit part or no known digits at all (zero to the
/// available precision).
struct ValuedZq {
  int grade = 0;
  ZqApprox unit;

  static ValuedZq from_int(const FieldPtr& field, std::int64_t v, int M);

  int absolute_precision() const { return grade + unit.precision(); }
  bool is_zero() const { return unit.is_zero(); }
  ValuedZq normalized() const;
  /// Multiplies by (-p)^k.
  ValuedZq shifted(int k) const { return {grade + k, unit}; }
  /// Multiplies by a Z_q unit known to at least the unit part's precision.
  ValuedZq times(const ZqApprox& factor) const;

  /// Residue modulo p^M; throws NotIntegral unless the value is a p-adic
  /// integer lying in Z_p, and PrecisionError if fewer than M digits are known.
  PadicApprox to_padic(int M) const;
};

/// x == y modulo p^abs_precision. Both must be known at least that far.
bool congruent(const ValuedZq& x, const ValuedZq& y, int abs_precision);

/// Working tables for one or more specs over a common field: the Teichmueller
/// character table and Gamma_p at every argument the definition touches, both
/// at working precision M + slack.
class GContext {
 public:
  GContext(std::span<const GSpec> specs, int M, const EngineOptions& opts = {});
  GContext(const GSpec& spec, int M, const EngineOptions& opts = {})
      : GContext(std::span<const GSpec>(&spec, 1), M, opts) {}

  const FieldPtr& field() const { return field_; }
  int target_precision() const { return M_; }
  int slack() const { return slack_; }
  int working_precision() const { return M_ + slack_; }
  unsigned workers() const { return workers_; }
  const CharacterTable& chars() const { return chars_; }
  const GammaTable& gammas() const { return gammas_; }

 private:
  FieldPtr field_;
  int M_;
  int slack_;
  unsigned workers_;
  CharacterTable chars_;
  GammaTable gammas_;
};

/// Every rational at which Gamma_p is evaluated for this spec.
std::vector<Rational> g_gamma_arguments(const GSpec& spec);

/// The j-th summand (-1)^(jn) w-bar^j(t) prod_{i,k} (-p)^e_{ik} Gamma_p-ratios,
/// before the -1/(q-1) prefactor. Each e_{ik} is asserted to lie in {-1,0,1}.
ValuedZq g_term(const GSpec& spec, std::int64_t j, const GContext& ctx);

/// All q-1 summands in ascending j, partitioned over ctx.workers() threads.
std::vector<ValuedZq> g_terms(const GSpec& spec, const GContext& ctx);

/// -1/(q-1) times the sum of `terms`, accumulated in the given order.
ValuedZq sum_g_terms(std::span<const ValuedZq> terms, std::span<const std::size_t> order,
                     const GContext& ctx);

/// The value of nGn with absolute precision p^M.
ValuedZq evaluate_G(const GSpec& spec, const GContext& ctx);
ValuedZq evaluate_G(const GSpec& spec, int M, const EngineOptions& opts = {});

/// The specialization (1/d, ..., (d-1)/d ; 0, ..., 0 | lambda^d).
GSpec dwork_spec(const DworkInstance& inst);

/// Value of the specialization, asserted to be a p-adic integer in Z_p.
PadicApprox dwork_G(const DworkInstance& inst, int M, const EngineOptions& opts = {});

}  // namespace padicg
